#include "charslope/slope.hpp"

#include <numeric>
#include <stdexcept>

#include "charslope/number_theory.hpp"

namespace charslope {

Slope::Slope(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
  if (q_ == 0) throw std::invalid_argument("1/0 is the trivial slope, not a Slope");
  if (q_ < 0) {
    p_ = -p_;
    q_ = -q_;
  }
  if (std::gcd(p_, q_) != 1) {
    throw std::invalid_argument("slope " + std::to_string(p) + "/" + std::to_string(q) +
                                " is not reduced");
  }
}

Slope Slope::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::int64_t p = parse_int64(text.substr(0, slash), "slope");
  const std::int64_t q = slash == std::string_view::npos ? 1 : parse_int64(text.substr(slash + 1), "slope");
  return Slope(p, q);
}

std::string Slope::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

namespace {

struct PQ {
  std::int64_t p;
  std::int64_t q;
};

PQ as_pair(const SlopeOrTrivial& s) {
  if (std::holds_alternative<TrivialSlope>(s)) return {1, 0};
  const auto& slope = std::get<Slope>(s);
  return {slope.p(), slope.q()};
}

}  // namespace

std::int64_t slope_distance(const SlopeOrTrivial& a, const SlopeOrTrivial& b) {
  const auto [p, q] = as_pair(a);
  const auto [m, n] = as_pair(b);
  const __int128 d = static_cast<__int128>(p) * n - static_cast<__int128>(q) * m;
  return checked_int64(d < 0 ? -d : d);
}

}  // namespace charslope
