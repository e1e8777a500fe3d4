#include "charslope/number_theory.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace charslope {

std::int64_t checked_int64(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("64-bit integer overflow");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const __int128 r = (static_cast<__int128>(pos_mod(a, m)) * pos_mod(b, m)) % m;
  return static_cast<std::int64_t>(r);
}

std::int64_t parse_int64(std::string_view text, std::string_view what) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return out;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  if (p <= 0) throw std::domain_error("modulus must be positive");
  if (p == 1) return 0;
  std::int64_t old_r = pos_mod(a, p), r = p;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1) throw std::domain_error("not invertible");
  return pos_mod(old_s, p);
}

BigInt int128_to_big(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<unsigned long>(mag >> 64);
  const auto lo = static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL);
  BigInt out = (BigInt(hi) << 64) + BigInt(lo);
  return negative ? BigInt(-out) : out;
}

Rational dedekind_sum(std::int64_t q, std::int64_t p) {
  if (p <= 0) throw std::domain_error("dedekind_sum requires p > 0");
  if (p > 1000000000000LL) throw std::domain_error("dedekind_sum: p too large for the direct sum");
  // ((k/p)) = (2k - p) / 2p for 0 < k < p; ((kq/p)) vanishes when p | kq.
  // The numerator over 4p^2 is bounded by p^3, which fits in 128 bits here.
  __int128 total = 0;
  const std::int64_t qr = pos_mod(q, p);
  std::int64_t kq = 0;
  for (std::int64_t k = 1; k < p; ++k) {
    kq += qr;
    if (kq >= p) kq -= p;
    if (kq == 0) continue;
    total += static_cast<__int128>(2 * k - p) * (2 * kq - p);
  }
  return Rational(int128_to_big(total), to_big(4) * to_big(p) * to_big(p));
}

BigInt resultant(std::span<const BigInt> f, std::span<const BigInt> g) {
  const std::size_t m = f.empty() ? 0 : f.size() - 1;
  const std::size_t n = g.empty() ? 0 : g.size() - 1;
  if (f.empty() || g.empty() || f.back() == 0 || g.back() == 0) {
    throw std::invalid_argument("resultant needs polynomials with nonzero leading coefficient");
  }
  const std::size_t size = m + n;
  if (size == 0) return 1;
  // Sylvester matrix: n shifted rows of f, m shifted rows of g, descending powers.
  std::vector<std::vector<BigInt>> mat(size, std::vector<BigInt>(size, 0));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t i = 0; i <= m; ++i) mat[row][row + i] = f[m - i];
  }
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t i = 0; i <= n; ++i) mat[n + row][row + i] = g[n - i];
  }
  // Bareiss fraction-free determinant.
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && mat[swap_row][k] == 0) ++swap_row;
      if (swap_row == size) return 0;
      std::swap(mat[k], mat[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        BigInt v = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        mat[i][j] = std::move(v);
      }
      mat[i][k] = 0;
    }
    prev = mat[k][k];
  }
  BigInt det = mat[size - 1][size - 1];
  if (sign < 0) det = -det;
  return det;
}

BigInt cyclotomic_norm(const LaurentPoly& delta, std::int64_t j) {
  if (j < 1) throw std::domain_error("cyclotomic_norm requires j >= 1");
  if (delta.is_zero()) throw std::domain_error("cyclotomic_norm of the zero polynomial");
  const std::int64_t low = delta.min_exponent();
  std::vector<BigInt> f(static_cast<std::size_t>(delta.span() + 1), 0);
  for (const auto& [e, c] : delta.terms()) f[static_cast<std::size_t>(e - low)] = to_big(c);
  std::vector<BigInt> g(static_cast<std::size_t>(j + 1), 0);
  g.front() = -1;
  g.back() = 1;
  BigInt r = resultant(f, g);
  return abs(r);
}

}  // namespace charslope
