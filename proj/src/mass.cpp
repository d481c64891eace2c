#include "depthlab/mass.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "depthlab/errors.hpp"

namespace depthlab {

Mass Mass::threshold(double alpha) {
  if (!(alpha > 0.0)) return Mass{0};
  if (alpha > 1.0) return Mass{kTotal + 1};
  mpq_class scaled = mpq_class(alpha) * mpq_class(static_cast<long>(kTotal));
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Mass{std::max<Ticks>(1, static_cast<Ticks>(c.get_si()) - kThresholdSlack)};
}

double Mass::value() const {
  return static_cast<double>(ticks_) / static_cast<double>(kTotal);
}

std::vector<Mass> normalize_weights(std::span<const double> weights) {
  if (weights.empty()) throw ParameterError("at least one weight is required");
  mpq_class total = 0;
  for (double w : weights) {
    if (!std::isfinite(w) || !(w > 0.0)) throw ParameterError("weights must be positive and finite");
    total += mpq_class(w);
  }
  const std::size_t n = weights.size();
  if (n > static_cast<std::size_t>(Mass::kTotal)) throw ParameterError("too many atoms");

  std::vector<Mass::Ticks> ticks(n);
  std::vector<mpq_class> remainder(n);
  Mass::Ticks assigned = 0;
  const mpq_class grid(static_cast<long>(Mass::kTotal));
  for (std::size_t i = 0; i < n; ++i) {
    const mpq_class share = mpq_class(weights[i]) * grid / total;
    mpz_class floor_share;
    mpz_fdiv_q(floor_share.get_mpz_t(), share.get_num_mpz_t(), share.get_den_mpz_t());
    ticks[i] = static_cast<Mass::Ticks>(floor_share.get_si());
    remainder[i] = share - mpq_class(floor_share);
    assigned += ticks[i];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < Mass::kTotal; k = (k + 1) % n) {
    ++ticks[order[k]];
    ++assigned;
  }

  // every atom keeps positive mass; borrow from the heaviest atoms
  for (std::size_t i = 0; i < n; ++i) {
    if (ticks[i] > 0) continue;
    const auto heaviest = std::max_element(ticks.begin(), ticks.end()) - ticks.begin();
    --ticks[heaviest];
    ticks[i] = 1;
  }

  std::vector<Mass> out;
  out.reserve(n);
  for (auto t : ticks) out.emplace_back(t);
  return out;
}

}  // namespace depthlab
