#include "depthlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "depthlab/depth.hpp"
#include "depthlab/jensen.hpp"
#include "depthlab/order.hpp"

namespace depthlab::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Json to_json(std::span<const double> v) { return Json(std::vector<double>(v.begin(), v.end())); }

// ---- JSON and CSV writers ------------------------------------------------

bool scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write_scalar(const Json& j, std::ostream& out) {
  if (j.is_number_float())
    out << format_real(j.get<double>());
  else
    out << j.dump();
}

void write_value(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (scalar(j)) return write_scalar(j, out);
  if (j.empty()) {
    out << (j.is_array() ? "[]" : "{}");
    return;
  }
  if (j.is_array() && std::all_of(j.begin(), j.end(), scalar)) {
    out << '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out << ", ";
      write_scalar(j[i], out);
    }
    out << ']';
    return;
  }
  // one item per line; scalar arrays such as vertices stay inline
  out << (j.is_array() ? "[\n" : "{\n");
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out << ",\n";
    first = false;
    out << pad;
    if (j.is_object()) out << Json(it.key()).dump() << ": ";
    write_value(*it, out, indent + 2);
  }
  out << '\n' << std::string(static_cast<std::size_t>(indent), ' ') << (j.is_array() ? ']' : '}');
}

std::string csv_field(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ";" : "") + csv_field(j[i]);
    return s;
  }
  std::ostringstream os;
  write_scalar(j, os);
  return os.str();
}

// Records become rows (vector fields spread over key_1..key_k columns),
// geometry objects become their vertex list, anything else key,value lines.
void write_csv(const Json& doc, std::ostream& out) {
  if (doc.is_array()) {
    if (doc.empty()) return;
    std::vector<std::string> head;
    for (auto it = doc[0].begin(); it != doc[0].end(); ++it) {
      if (it->is_array())
        for (std::size_t k = 0; k < it->size(); ++k)
          head.push_back(it.key() + "_" + std::to_string(k + 1));
      else
        head.push_back(it.key());
    }
    for (std::size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i];
    out << '\n';
    for (const Json& rec : doc) {
      bool first = true;
      for (const Json& v : rec) {
        const auto emit = [&](const Json& x) {
          out << (first ? "" : ",") << csv_field(x);
          first = false;
        };
        if (v.is_array())
          for (const Json& x : v) emit(x);
        else
          emit(v);
      }
      out << '\n';
    }
    return;
  }
  if (doc.contains("vertices")) {
    out << "x,y\n";
    for (const Json& v : doc["vertices"])
      out << csv_field(v[0]) << ',' << csv_field(v[1]) << '\n';
    return;
  }
  out << "key,value\n";
  for (auto it = doc.begin(); it != doc.end(); ++it)
    out << it.key() << ',' << csv_field(*it) << '\n';
}

// ---- commands ------------------------------------------------------------

struct Options {
  std::string data;
  bool weighted = false;
  std::string format = "json";
  std::string family = "halfspace";
  std::string order = "identity";
  std::string points;
  std::string angles;
  std::string function;
  std::string params;
  double alpha = 0.5;
  double radius_cap = 1.0;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t grid = 64;
};

DepthFamily family_from(const std::string& name, const ConeOrder& order, double radius_cap) {
  if (name == "halfspace") return HalfspaceAll{};
  if (name == "convex") return ConvexCompactComplements{};
  if (name == "axis") return AxisParallel{order};
  if (name == "interval") return IntervalComplements{order};
  if (name == "ball") return BallComplements{radius_cap};
  throw InputError("unknown family " + name);
}

Json cmd_depth(const Options& o, const Dataset& ds) {
  const auto& s = ds.sample;
  const ConeOrder order = parse_order(o.order, s.dim());
  Json out = Json::array();
  for (const Vector& x : parse_points(o.points, s.dim())) {
    const DepthValue v = o.family == "mc" ? monte_carlo_depth(x, s, o.trials, o.seed)
                                          : depth(x, s, family_from(o.family, order, o.radius_cap));
    out.push_back(
        {{"point", to_json(x)}, {"family", o.family}, {"depth", v.value()}, {"exact", v.exact}});
  }
  return out;
}

Json cmd_median(const Options& o, const Dataset& ds) {
  const ConeOrder order = parse_order(o.order, ds.sample.dim());
  const OrderInterval box = median_set(order, ds.sample);
  return {{"order", order_to_json(order)},
          {"lower_cone", to_json(box.lower)},
          {"upper_cone", to_json(box.upper)},
          {"lower", to_json(order.from_cone(box.lower))},
          {"upper", to_json(order.from_cone(box.upper))}};
}

Json cmd_region(const Options& o, const Dataset& ds) {
  const auto& s = ds.sample;
  if (!o.angles.empty()) {
    const auto angles = parse_reals(o.angles);
    return region_to_json(rotated_axis_intersection(s, angles, o.alpha));
  }
  const ConeOrder order = parse_order(o.order, s.dim());
  const DepthFamily fam = family_from(o.family, order, o.radius_cap);
  if (const auto* a = std::get_if<AxisParallel>(&fam))
    return region_to_json(region_axis(a->order, s, o.alpha));
  if (const auto* a = std::get_if<IntervalComplements>(&fam))
    return region_to_json(region_axis(a->order, s, o.alpha));
  if (std::holds_alternative<BallComplements>(fam))
    throw InputError("regions are not available for the ball family");
  return region_to_json(region_halfspace_2d(s, o.alpha));
}

Json cmd_center(const Options& o, const Dataset& ds) {
  const ConeOrder order = parse_order(o.order, ds.sample.dim());
  const DepthFamily fam = family_from(o.family, order, o.radius_cap);
  const CenterResult c = center(ds.sample, fam);
  Json out{{"family", family_name(fam)}};
  const Json region = region_to_json(c.region);
  for (auto it = region.begin(); it != region.end(); ++it) out[it.key()] = *it;
  out["alpha"] = c.alpha_max;
  return out;
}

Json cmd_bound(const Options&, const Dataset& ds) {
  const BoundCheck b = bound_check(ds.sample);
  return {{"dim", ds.sample.dim()},
          {"alpha_max", b.alpha_max},
          {"bound", b.bound},
          {"holds", b.holds}};
}

Json cmd_jensen(const Options& o, const Dataset& ds) {
  const auto& s = ds.sample;
  const ConeOrder order = parse_order(o.order, s.dim());
  const auto params = o.params.empty() ? std::vector<double>{} : parse_reals(o.params);
  const CFunctionSpec f = builtin_cfunction(o.function, params, order);
  if (o.family == "median") {
    const JensenMedian r = jensen_median(order, f, s, o.grid);
    return {{"function", f.label},
            {"mode", "median"},
            {"m_star", to_json(r.m_star)},
            {"lhs", r.f_m},
            {"rhs", r.medians.q_lo},
            {"median_lo", r.medians.q_lo},
            {"median_hi", r.medians.q_hi},
            {"grid", o.grid},
            {"holds", r.holds}};
  }
  const JensenGeneral r = jensen_general(family_from(o.family, order, o.radius_cap), f, s, o.grid);
  return {{"function", f.label},
          {"mode", "center"},
          {"family", o.family},
          {"alpha_max", r.alpha_max},
          {"argmax", to_json(r.argmax)},
          {"lhs", r.f_max},
          {"rhs", r.q},
          {"worst_gap", r.worst_gap},
          {"evaluated", r.evaluated},
          {"grid", o.grid},
          {"holds", r.holds}};
}

Json cmd_member(const Options& o) {
  std::ifstream in(o.data);
  if (!in) throw InputError("cannot open " + o.data);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad region document: ") + e.what());
  }
  const RegionPolytope r = region_from_json(doc);
  Json out = Json::array();
  for (const Vector& x : parse_points(o.points, r.dim))
    out.push_back({{"point", to_json(x)}, {"inside", r.contains(x)}});
  return out;
}

}  // namespace

// ---- parsing --------------------------------------------------------------

Dataset parse_csv(std::istream& in, bool weighted) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> cols;
  bool header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t, ',');
    std::vector<double> row;
    bool numeric = true;
    for (auto f : fields) {
      const auto v = to_real(f);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (cols || header)
        throw InputError("line " + std::to_string(lineno) + ": not a number");
      header = true;
      cols = fields.size();
      const std::string last = lower(fields.back());
      if (last == "w" || last == "weight") weighted = true;
      continue;
    }
    if (cols && *cols != row.size())
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(*cols) +
                       " columns, got " + std::to_string(row.size()));
    cols = row.size();
    for (double v : row)
      if (!std::isfinite(v))
        throw InputError("line " + std::to_string(lineno) + ": non-finite value");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("no data rows");
  const std::size_t dim = *cols - (weighted ? 1 : 0);
  if (dim == 0) throw InputError("no coordinate columns");
  std::vector<double> coords, weights;
  for (const auto& r : rows) {
    coords.insert(coords.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(dim));
    weights.push_back(weighted ? r.back() : 1.0);
  }
  for (double w : weights)
    if (w < 0.0) throw InputError("negative weight");
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw InputError("weights sum to zero");
  WeightedSample s(dim, std::move(coords), weights);
  const bool normalized = weighted && s.was_normalized();
  return Dataset{std::move(s), rows.size(), header, weighted, normalized};
}

Dataset read_dataset(const std::string& path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_csv(in, weighted);
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  for (auto f : split(text, ',')) {
    const auto v = to_real(f);
    if (!v || !std::isfinite(*v)) throw InputError("not a finite number: '" + std::string(f) + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<Vector> parse_points(std::string_view text, std::size_t dim) {
  std::vector<Vector> out;
  if (trim(text).empty()) return out;
  for (auto p : split(text, ';')) {
    Vector x = parse_reals(p);
    if (x.size() != dim)
      throw InputError("point '" + std::string(p) + "' has " + std::to_string(x.size()) +
                       " coordinates, the data has " + std::to_string(dim));
    out.push_back(std::move(x));
  }
  return out;
}

ConeOrder parse_order(std::string_view text, std::size_t dim) {
  text = trim(text);
  if (text.empty() || text == "identity") return ConeOrder::identity(dim);
  if (text.substr(0, 9) == "rotation:") {
    if (dim != 2) throw InputError("rotation orders are planar");
    const auto a = parse_reals(text.substr(9));
    if (a.size() != 1) throw InputError("rotation takes one angle");
    return ConeOrder::rotation(a[0]);
  }
  const auto rows = split(text, ';');
  if (rows.size() != dim) throw InputError("order matrix must have one row per dimension");
  Eigen::MatrixXd g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto r = parse_reals(rows[i]);
    if (r.size() != dim) throw InputError("order matrix must be square");
    for (std::size_t j = 0; j < dim; ++j)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[j];
  }
  if (g == Eigen::MatrixXd::Identity(g.rows(), g.cols())) return ConeOrder::identity(dim);
  return ConeOrder(g);
}

Json order_to_json(const ConeOrder& order) {
  Json rows = Json::array();
  const auto& g = order.generators();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(g(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json region_to_json(const RegionPolytope& region) {
  static const char* const names[] = {"empty", "box", "polygon", "full"};
  Json out{{"kind", names[static_cast<int>(region.kind)]}, {"alpha", region.alpha}};
  Json verts = Json::array();
  for (const Point2& p : region.vertices) verts.push_back(Json::array({p.x, p.y}));
  out["vertices"] = verts;
  out["dim"] = region.dim;
  if (region.box) {
    out["order"] = order_to_json(region.box->order);
    out["lower"] = to_json(region.box->lower);
    out["upper"] = to_json(region.box->upper);
  }
  return out;
}

RegionPolytope region_from_json(const Json& doc) {
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    RegionPolytope r;
    r.alpha = doc.at("alpha").get<double>();
    r.dim = doc.value("dim", std::size_t{2});
    if (kind == "empty") return r;
    if (kind == "full") {
      r.kind = RegionPolytope::Kind::FullSpace;
      return r;
    }
    if (kind == "polygon") {
      std::vector<RationalPoint2> pts;
      for (const auto& v : doc.at("vertices"))
        pts.push_back({Rational(v.at(0).get<double>()), Rational(v.at(1).get<double>())});
      if (pts.empty()) throw InputError("polygon without vertices");
      return RegionPolytope::polygon(std::move(pts), r.alpha);
    }
    if (kind == "box") {
      const auto rows = doc.at("order");
      const std::size_t d = rows.size();
      Eigen::MatrixXd g(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              rows.at(i).at(j).get<double>();
      const ConeOrder order = g == Eigen::MatrixXd::Identity(g.rows(), g.cols())
                                  ? ConeOrder::identity(d)
                                  : ConeOrder(g);
      r.kind = RegionPolytope::Kind::Box;
      r.dim = d;
      r.box.emplace(order, doc.at("lower").get<Vector>(), doc.at("upper").get<Vector>());
      for (const auto& v : doc.value("vertices", Json::array()))
        r.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      return r;
    }
    throw InputError("unknown region kind " + kind);
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad region document: ") + e.what());
  }
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const Json& doc, std::ostream& out) {
  write_value(doc, out, 0);
  out << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Depth functions, medians, depth regions and centers of weighted point clouds"};
  app.name("depthlab");
  app.require_subcommand(1);
  Options o;

  auto add_data = [&](CLI::App* c) {
    c->add_option("data", o.data, "CSV file: columns x1..xd and an optional weight column")
        ->required();
    c->add_flag("--weighted", o.weighted, "the last column holds weights (headerless files)");
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_order = [&](CLI::App* c) {
    c->add_option("--order", o.order,
                  "cone order: identity, rotation:<radians> or \"g11,g12;g21,g22\"");
  };
  auto add_family = [&](CLI::App* c, std::vector<std::string> names) {
    c->add_option("--family", o.family, "depth family")->check(CLI::IsMember(names));
  };

  auto* depth_cmd = app.add_subcommand("depth", "depth of query points");
  add_data(depth_cmd);
  add_order(depth_cmd);
  add_family(depth_cmd, {"halfspace", "convex", "axis", "interval", "ball", "mc"});
  depth_cmd->add_option("--points", o.points, "query points \"x,y;x,y\"");
  depth_cmd->add_option("--trials", o.trials, "random directions for --family mc");
  depth_cmd->add_option("--seed", o.seed, "seed for --family mc");
  depth_cmd->add_option("--radius-cap", o.radius_cap, "largest ball radius for --family ball");

  auto* median_cmd = app.add_subcommand("median", "order median box");
  add_data(median_cmd);
  add_order(median_cmd);

  auto* region_cmd = app.add_subcommand("region", "depth region {x : D(x) >= alpha}");
  add_data(region_cmd);
  add_order(region_cmd);
  add_family(region_cmd, {"halfspace", "convex", "axis", "interval"});
  region_cmd->add_option("--alpha", o.alpha, "depth level")->required();
  region_cmd->add_option("--angles", o.angles,
                         "intersect the axis regions of orders rotated by these angles");

  auto* center_cmd = app.add_subcommand("center", "maximal depth and the region attaining it");
  add_data(center_cmd);
  add_order(center_cmd);
  add_family(center_cmd, {"halfspace", "convex", "axis", "interval"});

  auto* bound_cmd = app.add_subcommand("bound", "maximal halfspace depth against 1/(d+1)");
  add_data(bound_cmd);

  auto* jensen_cmd = app.add_subcommand("jensen", "median Jensen inequalities");
  add_data(jensen_cmd);
  add_order(jensen_cmd);
  add_family(jensen_cmd, {"median", "halfspace", "convex", "axis", "interval"});
  jensen_cmd->add_option("--function", o.function, "gauge-box, sqnorm, proj-i or exp-line")
      ->required();
  jensen_cmd->add_option("--params", o.params, "comma separated function parameters");
  jensen_cmd->add_option("--grid", o.grid, "grid points per axis")->check(CLI::Range(2, 4096));

  auto* member_cmd = app.add_subcommand("member", "membership of points in a region document");
  member_cmd->add_option("region", o.data, "JSON region written by region or center")->required();
  member_cmd->add_option("--points", o.points, "query points \"x,y;x,y\"");
  member_cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    Json doc;
    if (member_cmd->parsed()) {
      doc = cmd_member(o);
    } else {
      const Dataset ds = read_dataset(o.data, o.weighted);
      if (depth_cmd->parsed()) doc = cmd_depth(o, ds);
      if (median_cmd->parsed()) doc = cmd_median(o, ds);
      if (region_cmd->parsed()) doc = cmd_region(o, ds);
      if (center_cmd->parsed()) doc = cmd_center(o, ds);
      if (bound_cmd->parsed()) doc = cmd_bound(o, ds);
      if (jensen_cmd->parsed()) doc = cmd_jensen(o, ds);
    }
    if (o.format == "csv")
      write_csv(doc, out);
    else
      write_json(doc, out);
    return 0;
  } catch (const BudgetExceeded& e) {
    err << "depthlab: " << e.what() << '\n';
    return 3;
  } catch (const DepthError& e) {
    err << "depthlab: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace depthlab::cli
