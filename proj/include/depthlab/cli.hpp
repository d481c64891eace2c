#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "depthlab/cone.hpp"
#include "depthlab/errors.hpp"
#include "depthlab/measure.hpp"
#include "depthlab/regions.hpp"

namespace depthlab::cli {

using Json = nlohmann::ordered_json;

// Malformed files, flags or JSON documents. Mapped to exit code 2.
class InputError : public DepthError {
 public:
  using DepthError::DepthError;
};

struct Dataset {
  WeightedSample sample;
  std::size_t rows = 0;
  bool has_header = false;
  bool weighted = false;
  bool normalized = false;
};

// Rows of x1..xd with an optional trailing weight. The first row is a header
// when any field fails to parse as a number. The last column holds weights
// when the header names it "w" or "weight", or when `weighted` is set.
// Blank lines and lines starting with '#' are skipped.
Dataset parse_csv(std::istream& in, bool weighted);
Dataset read_dataset(const std::string& path, bool weighted);

// "x,y;x,y" -> points; every point must have `dim` coordinates.
std::vector<Vector> parse_points(std::string_view text, std::size_t dim);
// Comma separated reals.
std::vector<double> parse_reals(std::string_view text);
// "identity" or a generator matrix "g11,g12;g21,g22" (rows separated by ';').
ConeOrder parse_order(std::string_view text, std::size_t dim);

Json order_to_json(const ConeOrder& order);
// {"kind", "alpha", "vertices"} plus "order", "lower", "upper" for boxes.
Json region_to_json(const RegionPolytope& region);
RegionPolytope region_from_json(const Json& doc);

// Reals are written with 17 significant digits.
void write_json(const Json& doc, std::ostream& out);
std::string format_real(double v);

// Entry point of the depthlab tool. Returns the process exit code: 0 on
// success, 2 on input errors, 3 when an enumeration budget is exceeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace depthlab::cli
