#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "charslope/rational.hpp"

namespace charslope {

// A nontrivial surgery slope p/q in meridian-longitude coordinates.
// Always gcd(p, q) == 1 and q >= 1; the meridian 1/0 is TrivialSlope.
class Slope {
 public:
  Slope(std::int64_t p, std::int64_t q);

  // Accepts "p/q" or "p". Rejects "1/0" and non-reduced fractions.
  static Slope parse(std::string_view text);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  Rational value() const { return Rational(p_, q_); }
  Slope negated() const { return Slope(-p_, q_); }

  std::string str() const;

  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope& a, const Slope& b) { return a.value() <=> b.value(); }

 private:
  std::int64_t p_;
  std::int64_t q_;
};

struct TrivialSlope {
  friend bool operator==(const TrivialSlope&, const TrivialSlope&) = default;
};

using SlopeOrTrivial = std::variant<Slope, TrivialSlope>;

// |p n - q m| for slopes p/q and m/n; the meridian is 1/0.
std::int64_t slope_distance(const SlopeOrTrivial& a, const SlopeOrTrivial& b);

}  // namespace charslope
