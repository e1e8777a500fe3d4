#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "charslope/laurent_poly.hpp"
#include "charslope/rational.hpp"

namespace charslope {

// Floor division and the non-negative residue, for any sign of a and b > 0.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}
constexpr std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t checked_int64(__int128 v);
BigInt int128_to_big(__int128 v);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t parse_int64(std::string_view text, std::string_view what);

// b in [0, p) with a*b = 1 (mod p). Throws std::domain_error("not invertible").
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

// s(q, p) = sum_{k=1}^{p-1} ((k/p))((kq/p)), evaluated exactly by the direct sum.
Rational dedekind_sum(std::int64_t q, std::int64_t p);

// Resultant of two integer polynomials given by ascending coefficient lists,
// computed by fraction-free (Bareiss) elimination of the Sylvester matrix.
BigInt resultant(std::span<const BigInt> f, std::span<const BigInt> g);

// |prod over xi^j = 1 of delta(xi)|, via |Res(T^m delta(T), T^j - 1)|.
BigInt cyclotomic_norm(const LaurentPoly& delta, std::int64_t j);

}  // namespace charslope
