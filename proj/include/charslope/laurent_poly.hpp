#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charslope/rational.hpp"

namespace charslope {

// Integer Laurent polynomial in one variable T. Terms are kept sorted by
// exponent with no zero coefficients, so equality is coefficient-wise.
// Coefficient arithmetic is overflow-checked.
class LaurentPoly {
 public:
  using Term = std::pair<std::int64_t, std::int64_t>;  // (exponent, coefficient)

  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<Term> terms);
  explicit LaurentPoly(std::vector<Term> terms);

  static LaurentPoly constant(std::int64_t c);
  static LaurentPoly monomial(std::int64_t exponent, std::int64_t c = 1);
  // Builds from dense coefficients, coeffs[i] is the coefficient of T^(low + i).
  static LaurentPoly from_dense(std::int64_t low, const std::vector<std::int64_t>& coeffs);

  // Accepts the sparse "e:c,e:c" form written by sparse_str().
  static LaurentPoly parse_sparse(std::string_view text);

  bool is_zero() const { return terms_.empty(); }
  std::int64_t coeff(std::int64_t exponent) const;
  std::int64_t min_exponent() const;
  std::int64_t max_exponent() const;
  // max - min exponent; 0 for constants.
  std::int64_t span() const { return is_zero() ? 0 : max_exponent() - min_exponent(); }
  const std::vector<Term>& terms() const { return terms_; }

  std::int64_t eval_at_one() const;
  std::int64_t eval_at_minus_one() const;
  bool is_symmetric() const;

  // T -> T^k, k != 0.
  LaurentPoly substitute_power(std::int64_t k) const;
  LaurentPoly shifted(std::int64_t by) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // "2:1,1:-1,0:1,-1:-1,-2:1" (descending exponents); "0" for the zero polynomial.
  std::string sparse_str() const;
  // "T^2 - T + 1 - T^-1 + T^-2".
  std::string pretty_str() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace charslope
