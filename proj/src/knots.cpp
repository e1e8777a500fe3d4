#include "charslope/knots.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "charslope/cfk.hpp"
#include "charslope/number_theory.hpp"

namespace charslope {

namespace {

constexpr std::int64_t kMaxTorusProduct = 200'000'000;

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// Divides the dense polynomial `num` (ascending, constant term first) by
// T^m - 1, throwing if the division is not exact.
std::vector<std::int64_t> divide_by_binomial(const std::vector<std::int64_t>& num, std::int64_t m) {
  const auto deg_num = static_cast<std::int64_t>(num.size()) - 1;
  const std::int64_t deg_q = deg_num - m;
  if (deg_q < 0) throw std::logic_error("binomial division: degree too small");
  std::vector<std::int64_t> q(static_cast<std::size_t>(deg_q + 1), 0);
  // num_i = q_{i-m} - q_i
  for (std::int64_t i = 0; i <= deg_q; ++i) {
    const std::int64_t prev = i >= m ? q[static_cast<std::size_t>(i - m)] : 0;
    q[static_cast<std::size_t>(i)] = prev - num[static_cast<std::size_t>(i)];
  }
  for (std::int64_t i = deg_q + 1; i <= deg_num; ++i) {
    const std::int64_t prev = i >= m ? q[static_cast<std::size_t>(i - m)] : 0;
    if (num[static_cast<std::size_t>(i)] != prev) throw std::logic_error("binomial division is not exact");
  }
  return q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

TorusKnot parse_torus(std::string_view text) {
  text = trim(text);
  if (text == "U" || text == "unknot") return TorusKnot::unknot();
  if (text.size() < 5 || text.front() != 'T' || text[1] != '(' || text.back() != ')') {
    throw std::invalid_argument("malformed torus knot '" + std::string(text) + "'");
  }
  const std::string_view body = text.substr(2, text.size() - 3);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("malformed torus knot '" + std::string(text) + "'");
  return TorusKnot(parse_int64(trim(body.substr(0, comma)), "torus parameter"),
                   parse_int64(trim(body.substr(comma + 1)), "torus parameter"));
}

}  // namespace

TorusKnot::TorusKnot(std::int64_t r, std::int64_t s) {
  if (std::gcd(r, s) != 1) {
    throw std::invalid_argument("torus knot parameters must be coprime: T(" + std::to_string(r) + "," +
                                std::to_string(s) + ")");
  }
  const std::int64_t big = std::max(iabs(r), iabs(s));
  const std::int64_t small = std::min(iabs(r), iabs(s));
  if (small <= 1) {
    r_ = 1;
    s_ = 0;
    return;
  }
  const bool negative = (r < 0) != (s < 0);
  r_ = big;
  s_ = negative ? -small : small;
}

std::string TorusKnot::str() const {
  return "T(" + std::to_string(r_) + "," + std::to_string(s_) + ")";
}

CableKnot::CableKnot(std::int64_t a_, std::int64_t b_, TorusKnot companion_)
    : a(a_), b(b_), companion(companion_) {
  if (b < 2) throw std::invalid_argument("cable winding number must be >= 2");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("cable parameters must be coprime");
  if (companion.is_unknot()) throw std::invalid_argument("cable of the unknot is a torus knot; use T(a,b)");
}

std::string CableKnot::str() const {
  return "C(" + std::to_string(a) + "," + std::to_string(b) + ";" + companion.str() + ")";
}

std::string knot_str(const KnotDesc& k) {
  return std::visit([](const auto& v) { return v.str(); }, k);
}

KnotDesc parse_knot(std::string_view text) {
  text = trim(text);
  if (text.starts_with("C(")) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos || text.back() != ')') {
      throw std::invalid_argument("malformed cable '" + std::string(text) + "'");
    }
    const std::string_view params = text.substr(2, semi - 2);
    const auto comma = params.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("malformed cable '" + std::string(text) + "'");
    const TorusKnot companion = parse_torus(text.substr(semi + 1, text.size() - semi - 2));
    return CableKnot(parse_int64(trim(params.substr(0, comma)), "cable parameter"),
                     parse_int64(trim(params.substr(comma + 1)), "cable parameter"), companion);
  }
  return parse_torus(text);
}

LaurentPoly LSpaceForm::polynomial() const {
  const auto k = static_cast<std::int64_t>(exponents.size());
  std::vector<LaurentPoly::Term> terms;
  terms.emplace_back(0, k % 2 == 0 ? 1 : -1);
  for (std::int64_t i = 1; i <= k; ++i) {
    const std::int64_t sign = (k - i) % 2 == 0 ? 1 : -1;
    const std::int64_t n = exponents[static_cast<std::size_t>(i - 1)];
    terms.emplace_back(n, sign);
    terms.emplace_back(-n, sign);
  }
  return LaurentPoly(std::move(terms));
}

LaurentPoly torus_alexander(std::int64_t r, std::int64_t s) {
  const TorusKnot t(r, s);
  if (t.is_unknot()) return LaurentPoly::constant(1);
  const std::int64_t big = t.r();
  const std::int64_t small = iabs(t.s());
  if (big > kMaxTorusProduct / small) throw std::overflow_error("torus knot too large for dense expansion");
  const std::int64_t n = big * small;
  // (T^n - 1)(T - 1) = T^{n+1} - T^n - T + 1
  std::vector<std::int64_t> num(static_cast<std::size_t>(n + 2), 0);
  num[0] += 1;
  num[1] -= 1;
  num[static_cast<std::size_t>(n)] -= 1;
  num[static_cast<std::size_t>(n + 1)] += 1;
  const auto quotient = divide_by_binomial(divide_by_binomial(num, big), small);
  const std::int64_t degree = (big - 1) * (small - 1);
  if (static_cast<std::int64_t>(quotient.size()) - 1 != degree) {
    throw std::logic_error("torus Alexander polynomial has unexpected degree");
  }
  return LaurentPoly::from_dense(-degree / 2, quotient);
}

LaurentPoly alexander(const KnotDesc& k) {
  if (const auto* t = std::get_if<TorusKnot>(&k)) return torus_alexander(t->r(), t->s());
  if (const auto* c = std::get_if<CableKnot>(&k)) {
    const LaurentPoly companion = torus_alexander(c->companion.r(), c->companion.s());
    return companion.substitute_power(c->b) * torus_alexander(c->a, c->b);
  }
  return std::get<ExplicitKnot>(k).complex->euler_characteristic();
}

std::int64_t torsion_coeff(const LaurentPoly& delta, std::int64_t i) {
  __int128 total = 0;
  for (const auto& [e, c] : delta.terms()) {
    if (e > i) total += static_cast<__int128>(e - i) * c;
  }
  return checked_int64(total);
}

TorsionWindow torsion_window(const LaurentPoly& delta, std::int64_t start, std::int64_t end) {
  TorsionWindow w;
  w.start = start;
  for (std::int64_t i = start; i < end; ++i) w.values.push_back(torsion_coeff(delta, i));
  return w;
}

std::int64_t coeff_from_torsion(const TorsionWindow& t, std::int64_t s) {
  const std::int64_t end = t.start + static_cast<std::int64_t>(t.values.size());
  if (s - 1 < t.start || s + 1 >= end) {
    throw std::out_of_range("torsion window [" + std::to_string(t.start) + "," + std::to_string(end) +
                            ") does not cover " + std::to_string(s - 1) + ".." + std::to_string(s + 1));
  }
  const auto at = [&](std::int64_t i) { return t.values[static_cast<std::size_t>(i - t.start)]; };
  return at(s - 1) - 2 * at(s) + at(s + 1);
}

Rational second_deriv_at_1(const LaurentPoly& delta) {
  if (!delta.is_symmetric() || delta.eval_at_one() != 1) {
    throw std::invalid_argument("second_deriv_at_1 expects a symmetric polynomial with value 1 at T = 1");
  }
  __int128 total = 0;
  for (const auto& [e, c] : delta.terms()) total += static_cast<__int128>(e) * (e - 1) * c;
  return Rational(int128_to_big(total));
}

std::optional<LSpaceForm> lspace_form(const LaurentPoly& delta) {
  if (delta.is_zero() || !delta.is_symmetric()) return std::nullopt;
  LSpaceForm form;
  std::int64_t expected = 1;
  const auto& terms = delta.terms();
  for (auto it = terms.rbegin(); it != terms.rend() && it->first > 0; ++it) {
    if (it->second != expected) return std::nullopt;
    form.exponents.push_back(it->first);
    expected = -expected;
  }
  std::reverse(form.exponents.begin(), form.exponents.end());
  if (delta.coeff(0) != expected) return std::nullopt;
  return form;
}

std::int64_t torus_genus(const TorusKnot& t) {
  if (t.is_unknot()) return 0;
  return (t.r() - 1) * (iabs(t.s()) - 1) / 2;
}

std::int64_t genus(const KnotDesc& k) {
  if (const auto* t = std::get_if<TorusKnot>(&k)) return torus_genus(*t);
  if (const auto* c = std::get_if<CableKnot>(&k)) {
    return c->b * torus_genus(c->companion) + (iabs(c->a) - 1) * (c->b - 1) / 2;
  }
  throw std::invalid_argument("genus of an explicit complex: use the cfk engine");
}

bool fibred_flag(const LaurentPoly& delta) {
  if (lspace_form(delta)) return true;
  return !delta.is_zero() && iabs(delta.terms().back().second) == 1;
}

std::vector<SatelliteFactorization> satellite_factorization_search(const LaurentPoly& delta,
                                                                   std::int64_t bound) {
  std::vector<SatelliteFactorization> out;
  if (delta.is_zero()) return out;
  const std::int64_t degree = delta.max_exponent();
  if (degree <= 0 || delta.terms().back().second != 1) return out;
  if (bound <= 0) bound = 2 * degree + 1;
  // deg = b g(c,d) + g(a,b) fixes a once b, c, d are chosen.
  for (std::int64_t b = 2; b <= bound; ++b) {
    for (std::int64_t c = 3; c <= bound; ++c) {
      for (std::int64_t d = 2; d < c; ++d) {
        if (std::gcd(c, d) != 1) continue;
        const std::int64_t companion_genus = (c - 1) * (d - 1) / 2;
        const std::int64_t rest = degree - b * companion_genus;
        if (rest <= 0) break;
        if ((2 * rest) % (b - 1) != 0) continue;
        const std::int64_t a = 2 * rest / (b - 1) + 1;
        if (a < 2 || a > bound || std::gcd(a, b) != 1) continue;
        const LaurentPoly candidate = torus_alexander(c, d).substitute_power(b) * torus_alexander(a, b);
        if (candidate == delta) out.push_back({TorusKnot(a, b), TorusKnot(c, d), b});
      }
    }
  }
  return out;
}

}  // namespace charslope
