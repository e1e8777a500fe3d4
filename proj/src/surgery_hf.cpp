#include "charslope/surgery_hf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "charslope/knots.hpp"
#include "charslope/number_theory.hpp"

namespace charslope {

namespace {

void require_positive(const Slope& slope) {
  if (slope.p() <= 0) throw std::invalid_argument("surgery formula needs a positive slope, got " + slope.str());
}

// The mapping cone glues h_k into the next B summand; gradings line up only
// when H_k - V_k = k.
void check_grading_consistency(const KnotFloerData& k) {
  for (std::int64_t j = -k.window; j <= k.window; ++j) {
    if (k.v.h(j) - k.v.v(j) != j) {
      throw std::invalid_argument("V/H data violates H_k - V_k = k at k = " + std::to_string(j));
    }
  }
}

template <typename T>
std::vector<AffineMap> match_profiles(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<AffineMap> out;
  if (a.size() != b.size() || a.empty()) return out;
  const auto p = static_cast<std::int64_t>(a.size());
  std::map<T, int> ids;
  std::vector<int> ia(a.size());
  std::vector<int> ib(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ia[i] = ids.emplace(a[i], static_cast<int>(ids.size())).first->second;
  for (std::size_t i = 0; i < b.size(); ++i) ib[i] = ids.emplace(b[i], static_cast<int>(ids.size())).first->second;
  if (p == 1) {
    if (ia[0] == ib[0]) out.push_back({1, 0});
    return out;
  }
  std::vector<std::int64_t> starts;
  for (std::int64_t j = 0; j < p; ++j) {
    if (ib[static_cast<std::size_t>(j)] == ia[0]) starts.push_back(j);
  }
  for (std::int64_t s = 1; s < p; ++s) {
    if (std::gcd(s, p) != 1) continue;
    for (const std::int64_t start : starts) {
      std::int64_t idx = start;
      bool ok = true;
      for (std::int64_t i = 1; i < p && ok; ++i) {
        idx += s;
        if (idx >= p) idx -= p;
        ok = ib[static_cast<std::size_t>(idx)] == ia[static_cast<std::size_t>(i)];
      }
      if (ok) out.push_back({s, start});
    }
  }
  return out;
}

}  // namespace

VSequence::VSequence(std::int64_t lo, std::vector<std::int64_t> values) : lo_(lo), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("V sequence window is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0) throw std::invalid_argument("V_k must be non-negative");
    if (i + 1 < values_.size()) {
      const std::int64_t a = values_[i];
      const std::int64_t b = values_[i + 1];
      if (b > a || b < a - 1) throw std::invalid_argument("V sequence violates V_k >= V_{k+1} >= V_k - 1");
    }
  }
  if (values_.back() > 1) throw std::invalid_argument("V sequence does not reach 0 at the end of its window");
}

std::int64_t VSequence::v(std::int64_t k) const {
  if (k < lo_) return values_.front() + (lo_ - k);
  if (k >= hi()) return 0;
  return values_[static_cast<std::size_t>(k - lo_)];
}

std::int64_t KnotFloerData::reduced_dim(std::int64_t k) const {
  const auto it = reduced.find(k);
  if (it == reduced.end()) return 0;
  std::int64_t total = 0;
  for (const auto& s : it->second) total += s.dim;
  return total;
}

// For an L-space knot every A_k^+ is a single tower, so ker v_k is T_{V_k}
// and its Euler characteristic t_k equals V_k.
VSequence v_from_polynomial(const LaurentPoly& delta) {
  if (!lspace_form(delta)) throw std::invalid_argument("Alexander polynomial is not of L-space form; requires explicit complex");
  const std::int64_t g = delta.max_exponent();
  std::vector<std::int64_t> values;
  for (std::int64_t k = -g; k <= g; ++k) values.push_back(torsion_coeff(delta, k));
  return VSequence(-g, std::move(values));
}

KnotFloerData floer_from_polynomial(const LaurentPoly& delta) {
  VSequence v = v_from_polynomial(delta);
  const std::int64_t g = delta.max_exponent();
  return KnotFloerData{std::move(v), {}, g + 1};
}

KnotFloerData floer_from_complex(const CfkComplex& c) {
  const std::int64_t w = std::max(-c.min_alexander(), c.max_alexander());
  std::vector<std::int64_t> values;
  std::map<std::int64_t, std::vector<ReducedSummand>> reduced;
  for (std::int64_t k = -w; k <= w; ++k) {
    AkResult r = a_plus(c, k);
    values.push_back(r.big_v);
    if (!r.reduced.empty()) reduced.emplace(k, std::move(r.reduced));
  }
  if (values.back() != 0) throw std::invalid_argument("complex has V_k > 0 beyond its Alexander range");
  KnotFloerData out{VSequence(-w, std::move(values)), std::move(reduced), w + 1};
  check_grading_consistency(out);
  return out;
}

std::int64_t delta_i(std::int64_t p, std::int64_t q, std::int64_t i, const VSequence& v) {
  return std::max(v.v(floor_div(i, q)), v.v(floor_div(p + q - 1 - i, q)));
}

std::int64_t s_i(std::int64_t p, std::int64_t q, std::int64_t i, const VSequence& v) {
  return v.v(floor_div(i, q)) >= v.h(floor_div(i - p, q)) ? 0 : -1;
}

DProfile surgery_d_invariants(const KnotFloerData& k, const Slope& slope) {
  require_positive(slope);
  const std::int64_t p = slope.p();
  const std::int64_t q = slope.q();
  DProfile d = lens_d_invariants(p, q);
  for (std::int64_t i = 0; i < p; ++i) d[static_cast<std::size_t>(i)] -= Rational(2 * delta_i(p, q, i, k.v));
  return d;
}

std::int64_t hf_red_rank(const KnotFloerData& k, const Slope& slope) {
  require_positive(slope);
  const std::int64_t p = slope.p();
  const std::int64_t q = slope.q();
  __int128 per_q = k.reduced_dim(0) + k.v.v(0);
  for (std::int64_t j = 1; j <= k.window; ++j) per_q += 2 * static_cast<__int128>(k.reduced_dim(j) + k.v.v(j));
  __int128 total = per_q * q;
  for (std::int64_t i = 0; i < p; ++i) total -= delta_i(p, q, i, k.v);
  return checked_int64(total);
}

std::int64_t GradedGroup::reduced_dim() const {
  std::int64_t total = 0;
  for (const auto& r : reduced) total += r.second;
  return total;
}

std::vector<std::pair<Rational, std::int64_t>> GradedGroup::shifted_reduced() const {
  auto out = reduced;
  for (auto& r : out) r.first -= d;
  return out;
}

GradedProfile hf_red_graded(const KnotFloerData& k, const Slope& slope) {
  require_positive(slope);
  check_grading_consistency(k);
  const std::int64_t p = slope.p();
  const std::int64_t q = slope.q();
  const DProfile lens = lens_d_invariants(p, q);
  const std::int64_t w = k.window + 1;
  GradedProfile out;
  out.reserve(static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i < p; ++i) {
    const auto kof = [&](std::int64_t s) { return floor_div(i + p * s, q); };
    const std::int64_t s_lo = std::min<std::int64_t>(-1, floor_div(-w * q - i, p) - 1);
    const std::int64_t s_hi = std::max<std::int64_t>(0, floor_div(w * q - i, p) + 1);
    const std::int64_t si = s_i(p, q, i, k.v);
    const std::int64_t di = delta_i(p, q, i, k.v);

    // gr(s, 1): grading of the bottom of the B tower in summand s.
    std::map<std::int64_t, Rational> gr_b;
    gr_b[0] = lens[static_cast<std::size_t>(i)] - Rational(1);
    for (std::int64_t s = 1; s <= s_hi; ++s) gr_b[s] = gr_b[s - 1] + Rational(2 * kof(s - 1));
    for (std::int64_t s = -1; s >= s_lo; --s) gr_b[s] = gr_b[s + 1] - Rational(2 * kof(s));

    std::map<Rational, std::int64_t> groups;
    GradedGroup g;
    g.d = lens[static_cast<std::size_t>(i)] - Rational(2 * di);
    for (std::int64_t s = s_lo; s <= s_hi; ++s) {
      const std::int64_t kk = kof(s);
      const std::int64_t v = k.v.v(kk);
      const std::int64_t h = k.v.h(kk);
      const Rational bottom = gr_b[s] + Rational(1 - 2 * v);
      if (s == si) {
        if (std::min(v, h) != di) throw std::logic_error("delta_i differs from min(V, H) at s_i");
        if (bottom != g.d) throw std::logic_error("surviving tower bottom differs from the d-invariant");
      } else {
        for (std::int64_t j = 0; j < std::min(v, h); ++j) groups[bottom + Rational(2 * j)] += 1;
      }
      if (const auto it = k.reduced.find(kk); it != k.reduced.end()) {
        for (const auto& r : it->second) groups[bottom + Rational(r.grading)] += r.dim;
      }
    }
    g.reduced.assign(groups.begin(), groups.end());
    out.push_back(std::move(g));
  }
  return out;
}

GradedProfile reverse_orientation(const GradedProfile& g) {
  GradedProfile out;
  out.reserve(g.size());
  for (const auto& group : g) {
    GradedGroup r;
    r.d = -group.d;
    for (const auto& [grading, dim] : group.reduced) r.reduced.emplace_back(-grading - Rational(1), dim);
    std::sort(r.reduced.begin(), r.reduced.end());
    out.push_back(std::move(r));
  }
  return out;
}

std::int64_t conjugation(std::int64_t p, std::int64_t q, std::int64_t i) { return pos_mod(q - 1 - i, p); }

std::int64_t AffineMap::apply(std::int64_t i, std::int64_t p) const {
  return pos_mod(static_cast<std::int64_t>((static_cast<__int128>(a) * i + b) % p), p);
}

std::vector<AffineMap> affine_matchings(const DProfile& a, const DProfile& b) { return match_profiles(a, b); }

std::vector<AffineMap> affine_matchings(const GradedProfile& a, const GradedProfile& b) {
  return match_profiles(a, b);
}

std::vector<AffineMap> affine_maps_into(std::int64_t p, const std::vector<std::int64_t>& src,
                                        const std::vector<std::int64_t>& dst) {
  std::vector<AffineMap> out;
  if (p < 1) throw std::invalid_argument("affine maps need p >= 1");
  if (src.empty()) throw std::invalid_argument("affine_maps_into needs a nonempty source set");
  std::vector<char> in_dst(static_cast<std::size_t>(p), 0);
  for (const auto d : dst) in_dst[static_cast<std::size_t>(pos_mod(d, p))] = 1;
  for (std::int64_t a = 1; a < std::max<std::int64_t>(p, 2); ++a) {
    if (std::gcd(a, p) != 1) continue;
    std::vector<std::int64_t> bs;
    for (std::int64_t d = 0; d < p; ++d) {
      if (in_dst[static_cast<std::size_t>(d)]) bs.push_back(pos_mod(d - mul_mod(a, pos_mod(src[0], p), p), p));
    }
    std::sort(bs.begin(), bs.end());
    for (const auto b : bs) {
      const AffineMap m{a, b};
      const bool ok = std::all_of(src.begin(), src.end(),
                                  [&](std::int64_t x) { return in_dst[static_cast<std::size_t>(m.apply(x, p))] != 0; });
      if (ok) out.push_back(m);
    }
  }
  return out;
}

}  // namespace charslope
