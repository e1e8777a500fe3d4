#include "charslope/laurent_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "charslope/number_theory.hpp"

namespace charslope {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("polynomial coefficient overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("polynomial coefficient overflow");
  return out;
}

LaurentPoly::LaurentPoly(std::initializer_list<Term> terms) : terms_(terms) { normalize(); }

LaurentPoly::LaurentPoly(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

LaurentPoly LaurentPoly::constant(std::int64_t c) { return LaurentPoly({{0, c}}); }

LaurentPoly LaurentPoly::monomial(std::int64_t exponent, std::int64_t c) {
  return LaurentPoly({{exponent, c}});
}

LaurentPoly LaurentPoly::from_dense(std::int64_t low, const std::vector<std::int64_t>& coeffs) {
  LaurentPoly out;
  out.terms_.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) out.terms_.emplace_back(low + static_cast<std::int64_t>(i), coeffs[i]);
  }
  return out;
}

LaurentPoly LaurentPoly::parse_sparse(std::string_view text) {
  std::vector<Term> terms;
  if (text == "0") return {};
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("malformed polynomial term '" + std::string(item) + "'");
    }
    terms.emplace_back(parse_int64(item.substr(0, colon), "exponent"),
                       parse_int64(item.substr(colon + 1), "coefficient"));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return LaurentPoly(std::move(terms));
}

void LaurentPoly::normalize() {
  std::sort(terms_.begin(), terms_.end());
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    if (!merged.empty() && merged.back().first == e) {
      merged.back().second = checked_add(merged.back().second, c);
    } else {
      merged.emplace_back(e, c);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.second == 0; });
  terms_ = std::move(merged);
}

std::int64_t LaurentPoly::coeff(std::int64_t exponent) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{exponent, INT64_MIN});
  return (it != terms_.end() && it->first == exponent) ? it->second : 0;
}

std::int64_t LaurentPoly::min_exponent() const {
  if (is_zero()) throw std::domain_error("zero polynomial has no exponents");
  return terms_.front().first;
}

std::int64_t LaurentPoly::max_exponent() const {
  if (is_zero()) throw std::domain_error("zero polynomial has no exponents");
  return terms_.back().first;
}

std::int64_t LaurentPoly::eval_at_one() const {
  std::int64_t sum = 0;
  for (const auto& t : terms_) sum = checked_add(sum, t.second);
  return sum;
}

std::int64_t LaurentPoly::eval_at_minus_one() const {
  std::int64_t sum = 0;
  for (const auto& [e, c] : terms_) sum = checked_add(sum, (e % 2 == 0) ? c : -c);
  return sum;
}

bool LaurentPoly::is_symmetric() const {
  const std::size_t n = terms_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = terms_[i];
    const auto& b = terms_[n - 1 - i];
    if (a.first != -b.first || a.second != b.second) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::substitute_power(std::int64_t k) const {
  if (k == 0) throw std::invalid_argument("substitute_power needs k != 0");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.emplace_back(checked_mul(e, k), c);
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::shifted(std::int64_t by) const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.first = checked_add(t.first, by);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.second = checked_mul(t.second, -1);
  return out;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::int64_t low = a.min_exponent() + b.min_exponent();
  const std::int64_t width = a.span() + b.span() + 1;
  // Dense accumulation is cheaper than sparse merging once either side has
  // more than a handful of terms.
  if (width <= 64 * static_cast<std::int64_t>(a.terms().size() * b.terms().size()) + 1024) {
    std::vector<__int128> acc(static_cast<std::size_t>(width), 0);
    for (const auto& [ea, ca] : a.terms()) {
      for (const auto& [eb, cb] : b.terms()) {
        acc[static_cast<std::size_t>(ea + eb - low)] += static_cast<__int128>(ca) * cb;
      }
    }
    std::vector<std::int64_t> coeffs(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) coeffs[i] = checked_int64(acc[i]);
    return LaurentPoly::from_dense(low, coeffs);
  }
  std::map<std::int64_t, __int128> acc;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) acc[ea + eb] += static_cast<__int128>(ca) * cb;
  }
  std::vector<LaurentPoly::Term> terms;
  for (const auto& [e, c] : acc) terms.emplace_back(e, checked_int64(c));
  return LaurentPoly(std::move(terms));
}

std::string LaurentPoly::sparse_str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (it != terms_.rbegin()) os << ',';
    os << it->first << ':' << it->second;
  }
  return os.str();
}

std::string LaurentPoly::pretty_str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto [e, c] = *it;
    const std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag;
    os << 'T';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

}  // namespace charslope
