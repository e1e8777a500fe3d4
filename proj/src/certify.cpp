#include "charslope/certify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "charslope/number_theory.hpp"

namespace charslope {

namespace {

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

std::string bool_str(bool b) { return b ? "true" : "false"; }

TrailEntry entry(std::string predicate, bool holds, NamedValues values) {
  return TrailEntry{std::move(predicate), holds, std::move(values)};
}

Certificate finish(std::string subject, std::string rule, std::vector<TrailEntry> trail, NamedValues values = {}) {
  Certificate c{std::move(subject), false, std::move(rule), std::move(trail), std::move(values)};
  c.verdict = replay_verdict(c);
  return c;
}

using Factorization = std::vector<std::pair<std::int64_t, int>>;

Factorization factorize(std::int64_t n) {
  Factorization f;
  for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    f.emplace_back(d, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

void divisors_rec(const Factorization& f, std::size_t i, std::int64_t acc, std::vector<std::int64_t>& out) {
  if (i == f.size()) {
    out.push_back(acc);
    return;
  }
  std::int64_t pw = 1;
  for (int e = 0; e <= f[i].second; ++e) {
    divisors_rec(f, i + 1, acc * pw, out);
    pw *= f[i].first;
  }
}

std::vector<std::int64_t> divisors(const Factorization& f) {
  std::vector<std::int64_t> out;
  divisors_rec(f, 0, 1, out);
  std::sort(out.begin(), out.end());
  return out;
}

Factorization divide(const Factorization& f, std::int64_t d) {
  Factorization out;
  for (const auto& [prime, e] : f) {
    int k = e;
    while (d % prime == 0) {
      d /= prime;
      --k;
    }
    if (k > 0) out.emplace_back(prime, k);
  }
  return out;
}

// Splits n = r s with r > s >= 2 and gcd(r, s) = 1.
std::vector<std::pair<std::int64_t, std::int64_t>> coprime_splits(const Factorization& f) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const std::size_t m = f.size();
  if (m < 2) return out;
  std::int64_t n = 1;
  for (const auto& [prime, e] : f) n *= ipow(prime, e);
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
    std::int64_t s = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i)) s *= ipow(f[i].first, f[i].second);
    }
    const std::int64_t r = n / s;
    if (r > s) out.emplace_back(r, s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Candidate {
  SurgeryDescription desc;
  LensSpace lens;
};

void search_at(std::int64_t p, bool include_cables, std::int64_t max_r, std::vector<SearchHit>& out) {
  const bool bounded = max_r > 0;
  std::map<std::int64_t, Factorization> near;  // p - 1 and p + 1
  near.emplace(p - 1, factorize(p - 1));
  near.emplace(p + 1, factorize(p + 1));
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Candidate>> groups;  // (q, lens class)
  const auto add = [&](std::int64_t q, SurgeryDescription d, std::int64_t lens_q) {
    const LensSpace l(p, lens_q);
    groups[{q, canonical_lens_q(l)}].push_back({std::move(d), l});
  };
  for (const auto& [m, f] : near) {
    if (m < 6) continue;
    for (const std::int64_t q : divisors(f)) {
      const Factorization rest = divide(f, q);
      for (const auto& [r, s] : coprime_splits(rest)) {
        if (bounded && r > max_r) continue;
        add(q, SurgeryDescription{TorusKnot(r, s), Slope(p, q)}, mul_mod(q % p, mul_mod(s, s, p), p));
      }
    }
  }
  // A lens surgery on C_{a,b}(T(c,d)) needs |p - qab| = |p - q b^2 cd| = 1,
  // so b divides 2; the two conditions use p + 1 and p - 1 in some order.
  if (include_cables && p % 2 == 1) {
    for (const std::int64_t e : {-1, 1}) {
      const std::int64_t m_pattern = p + e;
      const std::int64_t m_companion = p - e;
      if (m_companion < 24) continue;
      const Factorization& fc = near.at(m_companion);
      for (const std::int64_t q : divisors(fc)) {
        if ((m_companion / q) % 4 != 0 || m_pattern % (2 * q) != 0) continue;
        const std::int64_t a = m_pattern / (2 * q);
        if (a % 2 == 0 || a < 3 || (bounded && a > max_r)) continue;
        const std::int64_t cd = m_companion / (4 * q);
        for (const auto& [c, d] : coprime_splits(factorize(cd))) {
          if (bounded && c > max_r) continue;
          add(q, SurgeryDescription{CableKnot(a, 2, TorusKnot(c, d)), Slope(p, q)},
              mul_mod(4 * q % p, mul_mod(d, d, p), p));
        }
      }
    }
  }
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const Candidate& x, const Candidate& y) { return x.desc.str() < y.desc.str(); });
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        out.push_back({members[i].desc.slope, members[i].desc, members[j].desc, members[i].lens, members[j].lens});
      }
    }
  }
}

}  // namespace

bool replay_verdict(const Certificate& c) {
  if (c.rule == "all") {
    return std::all_of(c.trail.begin(), c.trail.end(), [](const TrailEntry& e) { return e.holds; });
  }
  if (c.rule == "any") {
    return std::any_of(c.trail.begin(), c.trail.end(), [](const TrailEntry& e) { return e.holds; });
  }
  throw std::invalid_argument("unknown certificate rule '" + c.rule + "'");
}

Rational torus_threshold(std::int64_t r, std::int64_t s) {
  return Rational(30) * Rational(to_big(r) * to_big(r) - 1) * Rational(to_big(s) * to_big(s) - 1) / Rational(67);
}

Certificate torus_threshold_region(std::int64_t r, std::int64_t s, const Slope& slope) {
  if (!(r > s && s > 1)) throw std::invalid_argument("threshold region needs r > s > 1");
  const Rational threshold = torus_threshold(r, s);
  const Rational value = slope.value();
  const std::string subject = TorusKnot(r, s).str() + " " + slope.str();
  return finish(subject, "all",
                {entry("slope_exceeds_torus_threshold", value > threshold,
                       {{"slope", value.str()}, {"threshold", threshold.str()}})});
}

Certificate t52_slope_membership(const Slope& slope) {
  const std::int64_t p = slope.p();
  const std::int64_t q = slope.q();
  const Rational v = slope.value();
  const std::int64_t ap = iabs(p);
  static const std::vector<Rational> kExplicit = {Rational(9),     Rational(10),    Rational(11),
                                                  Rational(19, 2), Rational(21, 2), Rational(28, 3),
                                                  Rational(29, 3), Rational(31, 3), Rational(32, 3)};
  const bool in_list = std::find(kExplicit.begin(), kExplicit.end(), v) != kExplicit.end();
  const NamedValues pq = {{"p", std::to_string(p)}, {"q", std::to_string(q)}};
  return finish("T(5,2) " + slope.str(), "any",
                {entry("large_positive_slope", v > Rational(1) && ap >= 33, pq),
                 entry("large_negative_slope", v < Rational(-6) && ap >= 33 && q >= 2, pq),
                 entry("large_denominator", q >= 9, pq),
                 entry("lamination_window", q >= 3 && ap >= 2 && ap <= 2 * q - 3, pq),
                 entry("explicit_list", in_list, {{"slope", v.str()}})});
}

LaurentPoly genus_family_polynomial(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("family parameter n must be >= 1");
  LaurentPoly out = LaurentPoly::monomial(n + 1) + LaurentPoly::monomial(-n - 1);
  out -= LaurentPoly::monomial(n, 2) + LaurentPoly::monomial(-n, 2);
  out += LaurentPoly::monomial(n - 1) + LaurentPoly::monomial(1 - n);
  out += LaurentPoly::monomial(1) + LaurentPoly::monomial(-1);
  out -= LaurentPoly::constant(1);
  return out;
}

ConstraintProfile constraint_profiles(const SlopeOrTrivial& s) {
  const auto* slope = std::get_if<Slope>(&s);
  if (slope == nullptr) throw std::invalid_argument("constraint profiles need a nontrivial slope");
  ConstraintProfile out{slope->str(), {}};
  const std::int64_t p = slope->p();
  const Rational v = slope->value();
  const ProfileCase genus_two{"genus 2 fibred", "2", true, "T^2 - T + 1 - T^-1 + T^-2", genus_family_polynomial(1), {}};
  if (p == 0) {
    out.cases.push_back(genus_two);
    return out;
  }
  const bool n_is_one = v > Rational(1) || (v < Rational(-6) && slope->q() >= 2);
  ProfileCase family = n_is_one ? genus_two
                                : ProfileCase{"genus n+1 fibred", "n+1", true,
                                              "(T^{n+1} + T^{-n-1}) - 2(T^n + T^-n) + (T^{n-1} + T^{1-n}) + (T + T^-1) - 1",
                                              std::nullopt, {"n >= 1"}};
  bool genus_one_allowed = true;
  if (p % 2 == 0) {
    genus_one_allowed = false;
    if (!n_is_one) family.n_constraints.push_back("n odd");
  }
  if (p % 3 == 0) {
    genus_one_allowed = false;
    if (!n_is_one) family.n_constraints.push_back("n not divisible by 3");
  }
  out.cases.push_back(family);
  if (genus_one_allowed) {
    out.cases.push_back({"genus 1", "1", false, "3T - 5 + 3T^-1",
                         LaurentPoly({{1, 3}, {0, -5}, {-1, 3}}), {}});
  }
  return out;
}

Rational non_hyperbolic_filling_bound(std::int64_t genus) {
  if (genus < 1) throw std::invalid_argument("genus must be >= 1");
  return Rational(720 * (2 * genus - 1), 67);
}

Certificate hyperbolic_exclusions(const Slope& slope, std::int64_t genus) {
  const Rational bound = non_hyperbolic_filling_bound(genus);
  const std::int64_t ap = iabs(slope.p());
  const std::int64_t q = slope.q();
  const NamedValues pq = {{"p", std::to_string(slope.p())}, {"q", std::to_string(q)}};
  return finish(slope.str() + " genus " + std::to_string(genus), "any",
                {entry("exceeds_non_hyperbolic_filling_bound", Rational(ap) > bound,
                       {{"abs_p", std::to_string(ap)}, {"bound", bound.str()}}),
                 entry("lamination_window", q >= 3 && ap >= 1 && ap <= 2 * q - 3, pq),
                 entry("large_denominator", q >= 9, pq)});
}

Certificate satellite_exclusion_bound(std::int64_t r, std::int64_t s, const Slope& slope) {
  if (!(r > s && s > 1)) throw std::invalid_argument("satellite bound needs r > s > 1");
  if (slope.p() <= 0) throw std::invalid_argument("satellite bound needs a positive slope");
  const Rational v = slope.value();
  const Rational slope_bound = Rational(r * s) + Rational(3, 7) * Rational(std::max(r, s));
  const Rational threshold = torus_threshold(r, s);
  const bool p_branch = Rational(iabs(slope.p())) > threshold;
  const bool q_branch = slope.q() >= 3;
  return finish(TorusKnot(r, s).str() + " " + slope.str(), "all",
                {entry("slope_exceeds_satellite_bound", v > slope_bound,
                       {{"slope", v.str()}, {"bound", slope_bound.str()}}),
                 entry("large_p_or_denominator", p_branch || q_branch,
                       {{"abs_p", std::to_string(iabs(slope.p()))},
                        {"threshold", threshold.str()},
                        {"abs_p_exceeds_threshold", bool_str(p_branch)},
                        {"q", std::to_string(slope.q())},
                        {"q_at_least_3", bool_str(q_branch)}})});
}

std::vector<SearchHit> search_coincidences(std::int64_t max_p, bool include_cables, std::int64_t max_torus_param,
                                           unsigned threads) {
  if (max_p < 1) throw std::invalid_argument("max_p must be positive");
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::vector<SearchHit>> parts(threads);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::int64_t p = 2 + t; p <= max_p; p += threads) search_at(p, include_cables, max_torus_param, parts[t]);
    });
  }
  for (auto& w : workers) w.join();
  std::vector<SearchHit> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end(), [](const SearchHit& x, const SearchHit& y) {
    return std::tuple(x.slope.p(), x.slope.q(), x.first.str(), x.second.str()) <
           std::tuple(y.slope.p(), y.slope.q(), y.first.str(), y.second.str());
  });
  return out;
}

FamilyRecord family_pair(std::int64_t n) {
  FamilyRecord rec;
  rec.n = n;
  if (n < 1) {
    rec.witness = "n must be >= 1";
    return rec;
  }
  const __int128 big_p = static_cast<__int128>(n) * n * n + 6 * static_cast<__int128>(n) * n + 10 * n + 4;
  rec.p = checked_int64(big_p);
  const std::int64_t p = rec.p;
  const std::int64_t r1 = n * n + 3 * n + 1;
  const std::int64_t s1 = n + 3;
  const std::int64_t r2 = n * n + 5 * n + 5;
  const std::int64_t s2 = n + 1;
  rec.first = SurgeryDescription{TorusKnot(r1, s1), Slope(p, 1)};
  rec.second = SurgeryDescription{TorusKnot(r2, s2), Slope(p, 1)};
  const __int128 dist1 = big_p - static_cast<__int128>(r1) * s1;
  const __int128 dist2 = big_p - static_cast<__int128>(r2) * s2;
  if (dist1 != -1 && dist1 != 1) {
    rec.witness = "|p - rs| = " + std::to_string(checked_int64(dist1 < 0 ? -dist1 : dist1)) + " for the first knot";
    return rec;
  }
  if (dist2 != -1 && dist2 != 1) {
    rec.witness = "|p - rs| = " + std::to_string(checked_int64(dist2 < 0 ? -dist2 : dist2)) + " for the second knot";
    return rec;
  }
  const SurgeryClass c1 = classify_torus_surgery(r1, s1, Slope(p, 1));
  const SurgeryClass c2 = classify_torus_surgery(r2, s2, Slope(p, 1));
  rec.lens_first = std::get<LensSpace>(c1);
  rec.lens_second = std::get<LensSpace>(c2);
  if (!lens_oriented_homeo(*rec.lens_first, *rec.lens_second)) {
    rec.witness = rec.lens_first->str() + " and " + rec.lens_second->str() + " are not oriented-homeomorphic";
    return rec;
  }
  rec.verified = true;
  return rec;
}

}  // namespace charslope
