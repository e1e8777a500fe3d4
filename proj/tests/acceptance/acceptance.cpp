#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charslope/certify.hpp"
#include "charslope/cfk.hpp"
#include "charslope/classify.hpp"
#include "charslope/knots.hpp"
#include "charslope/lens.hpp"
#include "charslope/number_theory.hpp"
#include "charslope/surgery_hf.hpp"

using namespace charslope;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

SurgeryDescription desc(const std::string& knot, const std::string& slope) {
  return SurgeryDescription::parse(knot, slope);
}

std::optional<LensSpace> lens_of(const SurgeryDescription& d) {
  const auto c = classify(d);
  if (!c || !std::holds_alternative<LensSpace>(*c)) return std::nullopt;
  return std::get<LensSpace>(*c);
}

struct CableRow {
  std::int64_t p;
  std::string torus;
  std::string cable;
  std::int64_t a;
};

const std::vector<CableRow>& cable_rows() {
  static const std::vector<CableRow> rows = {
      {119, "T(24,5)", "C(59,2;T(6,5))", 59},
      {697, "T(29,24)", "C(349,2;T(29,6))", 349},
      {4059, "T(140,29)", "C(2029,2;T(35,29))", 2029},
      {23661, "T(169,140)", "C(11831,2;T(169,35))", 11831},
  };
  return rows;
}

// Torus knots T(r, s) with r > s >= 2 and rs <= bound.
std::vector<std::pair<std::int64_t, std::int64_t>> torus_knots(std::int64_t bound) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t s = 2; s * (s + 1) <= bound; ++s) {
    for (std::int64_t r = s + 1; r * s <= bound; ++r) {
      if (std::gcd(r, s) == 1) out.emplace_back(r, s);
    }
  }
  return out;
}

Outcome example_pair() {
  Outcome o;
  const auto a = desc("T(5,4)", "21");
  const auto b = desc("T(11,2)", "21");
  const SurgeryClass ca = classify_torus_surgery(5, 4, Slope(21, 1));
  const SurgeryClass cb = classify_torus_surgery(11, 2, Slope(21, 1));
  o.require(ca == SurgeryClass(LensSpace(21, 16)), "T(5,4) 21 is " + class_str(ca));
  o.require(cb == SurgeryClass(LensSpace(21, 4)), "T(11,2) 21 is " + class_str(cb));
  o.require(lens_oriented_homeo(LensSpace(21, 16), LensSpace(21, 4)), "L(21,16) and L(21,4) not homeomorphic");
  const auto da = d_profile(a);
  const auto db = d_profile(b);
  o.require(da && db && !affine_matchings(*da, *db).empty(), "no affine d-profile match");
  if (o.pass) o.detail = "L(21,16) = L(21,4), d-profiles match";
  return o;
}

Outcome cable_table() {
  Outcome o;
  for (const auto& row : cable_rows()) {
    const std::string tag = "p = " + std::to_string(row.p);
    const auto transfer = cable_slope_transfer(row.a, 2, Slope(row.p, 1));
    o.require(transfer == Slope(row.p, 4), tag + ": cable slope transfer");
    const auto lt = lens_of(desc(row.torus, std::to_string(row.p)));
    const auto lc = lens_of(desc(row.cable, std::to_string(row.p)));
    o.require(lt && lc, tag + ": not both lens spaces");
    if (!lt || !lc) continue;
    o.require(mul_mod(lt->q(), lc->q(), row.p) == 1, tag + ": q q' != 1 mod p");
    o.require(lens_oriented_homeo(*lt, *lc), tag + ": lens spaces differ");
    if (row.p == 119) {
      const auto dt = d_profile(desc(row.torus, "119"));
      const auto dc = d_profile(desc(row.cable, "119"));
      o.require(dt && dc && !affine_matchings(*dt, *dc).empty(), tag + ": no affine d-profile match");
    }
  }
  if (o.pass) o.detail = "4 rows, q q' = 1 mod p, d-match at 119";
  return o;
}

Outcome family() {
  Outcome o;
  for (std::int64_t n = 1; n <= 50; ++n) {
    const FamilyRecord f = family_pair(n);
    o.require(f.verified, "n = " + std::to_string(n) + ": " + f.witness);
  }
  if (o.pass) o.detail = "n = 1..50 verified";
  return o;
}

Outcome lspace_window() {
  Outcome o;
  const KnotFloerData k = floer_from_polynomial(torus_alexander(5, 2));
  int slopes = 0;
  for (std::int64_t p = 1; p <= 80; ++p) {
    for (std::int64_t q = 1; q <= 8; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++slopes;
      const bool lspace = hf_red_rank(k, Slope(p, q)) == 0;
      o.require(lspace == (p >= 3 * q), "slope " + Slope(p, q).str());
    }
  }
  if (o.pass) o.detail = std::to_string(slopes) + " slopes, rank 0 exactly when p/q >= 3";
  return o;
}

std::vector<std::vector<std::pair<Rational, std::int64_t>>> shifted(const GradedProfile& g) {
  std::vector<std::vector<std::pair<Rational, std::int64_t>>> out;
  for (const auto& grp : g) out.push_back(grp.shifted_reduced());
  return out;
}

// F_(0) on [0, q), F_(2) on [q, 2q) and [p - q, p), zero elsewhere.
std::vector<std::vector<std::pair<Rational, std::int64_t>>> three_band(std::int64_t p, std::int64_t q) {
  std::vector<std::vector<std::pair<Rational, std::int64_t>>> out(static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i < q; ++i) out[static_cast<std::size_t>(i)] = {{Rational(0), 1}};
  for (std::int64_t i = q; i < 2 * q; ++i) out[static_cast<std::size_t>(i)] = {{Rational(2), 1}};
  for (std::int64_t i = p - q; i < p; ++i) out[static_cast<std::size_t>(i)] = {{Rational(2), 1}};
  return out;
}

Outcome figure_one_surgeries() {
  Outcome o;
  const KnotFloerData k = floer_from_complex(preset("T5m2"));
  o.require(shifted(hf_red_graded(k, Slope(7, 2))) == three_band(7, 2), "7/2 band pattern");
  o.require(shifted(hf_red_graded(k, Slope(13, 4))) == three_band(13, 4), "13/4 band pattern");
  if (o.pass) o.detail = "7/2 and 13/4 give F_(0) on [0,q), F_(2) on [q,2q) and [p-q,p), 0 elsewhere";
  return o;
}

Outcome moser_cross_check() {
  Outcome o;
  int cases = 0;
  for (const auto& [r, s] : torus_knots(40)) {
    const KnotFloerData k = floer_from_polynomial(torus_alexander(r, s));
    for (std::int64_t q = 1; q * r * s - 1 <= 500; ++q) {
      for (const std::int64_t p : {q * r * s - 1, q * r * s + 1}) {
        if (p > 500 || std::gcd(p, q) != 1) continue;
        ++cases;
        const DProfile lens = lens_d_invariants(p, pos_mod(mul_mod(q, s * s, p), p));
        o.require(!affine_matchings(surgery_d_invariants(k, Slope(p, q)), lens).empty(),
                  TorusKnot(r, s).str() + " " + Slope(p, q).str());
      }
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " lens slopes matched";
  return o;
}

Outcome casson_walker() {
  Outcome o;
  o.require(cw_value(desc("T(3,2)", "1")) == Rational(1), "lambda(S^3_1(T(3,2))) != 1");
  o.require(cw_obstruction(desc("T(5,4)", "21"), desc("T(11,2)", "21")), "21 pair");
  for (const auto& row : cable_rows()) {
    o.require(cw_obstruction(desc(row.torus, std::to_string(row.p)), desc(row.cable, std::to_string(row.p))),
              "cable row p = " + std::to_string(row.p));
  }
  for (std::int64_t n = 1; n <= 50; ++n) {
    const FamilyRecord f = family_pair(n);
    o.require(f.first && f.second && cw_obstruction(*f.first, *f.second), "family n = " + std::to_string(n));
  }
  int cases = 0;
  for (const auto& [r, s] : torus_knots(40)) {
    for (std::int64_t q = 1; q * r * s - 1 <= 500; ++q) {
      for (const std::int64_t p : {q * r * s - 1, q * r * s + 1}) {
        if (p > 500 || std::gcd(p, q) != 1) continue;
        ++cases;
        const auto l = std::get<LensSpace>(classify_torus_surgery(r, s, Slope(p, q)));
        o.require(cw_value({TorusKnot(r, s), Slope(p, q)}) == casson_walker_lens(l.p(), l.q()),
                  "surgery formula at " + TorusKnot(r, s).str() + " " + Slope(p, q).str());
      }
    }
  }
  if (o.pass) o.detail = "normalization, 55 pairs, " + std::to_string(cases) + " lens surgeries";
  return o;
}

Outcome branched_covers() {
  Outcome o;
  const LaurentPoly t52 = torus_alexander(5, 2);
  const LaurentPoly g1{{1, 3}, {0, -5}, {-1, 3}};
  o.require(branched_cover_h1(t52, 2, std::nullopt) == 5, "T(5,2), j = 2");
  o.require(branched_cover_h1(g1, 2, std::nullopt) == 11, "3T-5+3T^-1, j = 2");
  o.require(branched_cover_h1(t52, 3, std::nullopt) == 1, "T(5,2), j = 3");
  o.require(branched_cover_h1(g1, 3, std::nullopt) == 64, "3T-5+3T^-1, j = 3");
  if (o.pass) o.detail = "5, 11, 1, 64";
  return o;
}

Outcome affine_block_maps() {
  Outcome o;
  int first = 0;
  int second = 0;
  for (std::int64_t p = 5; p <= 200; ++p) {
    for (std::int64_t q = 2; 2 * q < p; ++q) {
      ++first;
      DProfile indicator(static_cast<std::size_t>(p), Rational(0));
      for (std::int64_t i = 0; i < q; ++i) indicator[static_cast<std::size_t>(i)] = Rational(1);
      o.require(affine_matchings(indicator, indicator) == std::vector<AffineMap>{{1, 0}, {p - 1, q - 1}},
                "self-maps at p = " + std::to_string(p) + ", q = " + std::to_string(q));
    }
    for (std::int64_t q = 3; 6 * q < p; ++q) {
      ++second;
      std::vector<std::int64_t> block;
      std::vector<std::int64_t> minus;
      std::vector<std::int64_t> plus;
      for (std::int64_t i = 0; i < q; ++i) {
        block.push_back(i);
        minus.push_back(p - q + i);
        plus.push_back(q + i);
      }
      std::vector<std::int64_t> flanks = minus;
      flanks.insert(flanks.end(), plus.begin(), plus.end());
      for (const auto& m : affine_maps_into(p, block, flanks)) {
        std::vector<std::int64_t> image;
        for (const auto i : block) image.push_back(m.apply(i, p));
        std::sort(image.begin(), image.end());
        o.require(image == minus || image == plus,
                  "flank map at p = " + std::to_string(p) + ", q = " + std::to_string(q));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(first) + " + " + std::to_string(second) + " (p, q) pairs";
  return o;
}

Outcome region_coherence() {
  Outcome o;
  o.require(!torus_threshold_region(5, 2, Slope(32, 1)).verdict, "32 inside the threshold region");
  o.require(torus_threshold_region(5, 2, Slope(33, 1)).verdict, "33 outside the threshold region");
  for (const auto& [p, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {9, 1}, {10, 1}, {11, 1}, {19, 2}, {21, 2}, {28, 3}, {29, 3}, {31, 3}, {32, 3}}) {
    o.require(t52_slope_membership(Slope(p, q)).verdict, "list slope " + Slope(p, q).str());
  }
  const ConstraintProfile c = constraint_profiles(Slope(3, 2));
  o.require(c.cases.size() == 1, "3/2 has " + std::to_string(c.cases.size()) + " cases");
  if (!c.cases.empty()) {
    o.require(c.cases[0].genus == "2" && c.cases[0].fibred, "3/2 case is not genus 2 fibred");
    o.require(c.cases[0].delta == torus_alexander(5, 2), "3/2 case has the wrong polynomial");
  }
  if (o.pass) o.detail = "32 -> 33 flip, 9 listed slopes, unique profile at 3/2";
  return o;
}

Outcome tier_agreement() {
  Outcome o;
  int knots = 0;
  for (const auto& [r, s] : torus_knots(35)) {
    ++knots;
    const LaurentPoly delta = torus_alexander(r, s);
    const CfkComplex c = staircase(*lspace_form(delta));
    const std::int64_t g = torus_genus(TorusKnot(r, s));
    for (std::int64_t k = 0; k <= g; ++k) {
      o.require(a_plus(c, k).big_v == torsion_coeff(delta, k),
                TorusKnot(r, s).str() + " k = " + std::to_string(k));
    }
  }
  if (o.pass) o.detail = std::to_string(knots) + " torus knots";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "lens pair at 21", 1, example_pair},
      {2, "torus/cable lens table", 30, cable_table},
      {3, "lens pair family", 5, family},
      {4, "L-space window of T(5,2)", 10, lspace_window},
      {5, "graded T(5,-2) surgeries", 5, figure_one_surgeries},
      {6, "surgery formula vs lens classification", 120, moser_cross_check},
      {7, "Casson-Walker calibration", 120, casson_walker},
      {8, "branched cover orders", 1, branched_covers},
      {9, "affine maps of index blocks", 30, affine_block_maps},
      {10, "certificate region coherence", 1, region_coherence},
      {11, "engine vs polynomial V", 60, tier_agreement},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && seconds > c.budget_seconds) {
      o.pass = false;
      o.detail = "over time budget of " + std::to_string(c.budget_seconds) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-40s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
