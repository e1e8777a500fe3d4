#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charslope/classify.hpp"
#include "charslope/laurent_poly.hpp"
#include "charslope/lens.hpp"
#include "charslope/slope.hpp"

namespace charslope {

using NamedValues = std::vector<std::pair<std::string, std::string>>;

struct TrailEntry {
  std::string predicate;
  bool holds = false;
  NamedValues values;  // exact values, rationals as "num/den"
};

// Verdict is the conjunction ("all") or disjunction ("any") of the trail.
struct Certificate {
  std::string subject;
  bool verdict = false;
  std::string rule;
  std::vector<TrailEntry> trail;
  NamedValues values;
};

// Recomputes the verdict from the trail alone.
bool replay_verdict(const Certificate& c);

// p/q > 30 (r^2 - 1)(s^2 - 1) / 67, the region where T(r,s) surgeries are
// known to be characterizing. Requires r > s > 1.
Rational torus_threshold(std::int64_t r, std::int64_t s);
Certificate torus_threshold_region(std::int64_t r, std::int64_t s, const Slope& slope);

// Membership in the known set of characterizing slopes of T(5,2).
Certificate t52_slope_membership(const Slope& slope);

struct ProfileCase {
  std::string label;
  std::string genus;      // "2", "1" or "n+1"
  bool fibred = false;
  std::string alexander;  // closed form
  std::optional<LaurentPoly> delta;  // when the case is a single polynomial
  std::vector<std::string> n_constraints;
};

// Allowed (genus, fibredness, Alexander polynomial) shapes for a knot K with
// S^3_{p/q}(K) = S^3_{p/q}(T(5,2)).
struct ConstraintProfile {
  std::string slope;
  std::vector<ProfileCase> cases;
};

// (T^{n+1} + T^{-n-1}) - 2 (T^n + T^-n) + (T^{n-1} + T^{1-n}) + (T + T^-1) - 1.
LaurentPoly genus_family_polynomial(std::int64_t n);

ConstraintProfile constraint_profiles(const SlopeOrTrivial& slope);

// Arithmetic criteria forcing a hyperbolic filling for a fibred knot of genus g.
Rational non_hyperbolic_filling_bound(std::int64_t genus);
Certificate hyperbolic_exclusions(const Slope& slope, std::int64_t genus);

// p/q > rs + (3/7) max(r, s) together with |p| above the torus threshold or
// |q| >= 3 rules out satellite knots sharing the surgery.
Certificate satellite_exclusion_bound(std::int64_t r, std::int64_t s, const Slope& slope);

struct SearchHit {
  Slope slope;
  SurgeryDescription first;
  SurgeryDescription second;
  LensSpace lens_first;
  LensSpace lens_second;
};

// Pairs of distinct knots (positive torus knots and, optionally, 2-cables of
// positive torus knots) whose surgeries along the same positive slope with
// p <= max_p are oriented-homeomorphic lens spaces. max_torus_param bounds
// r of every torus knot involved (0 = unbounded). Sorted by p, q, then text.
std::vector<SearchHit> search_coincidences(std::int64_t max_p, bool include_cables,
                                           std::int64_t max_torus_param = 0, unsigned threads = 0);

struct FamilyRecord {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::optional<SurgeryDescription> first;
  std::optional<SurgeryDescription> second;
  std::optional<LensSpace> lens_first;
  std::optional<LensSpace> lens_second;
  bool verified = false;
  std::string witness;  // why verification failed
};

// (n^3 + 6n^2 + 10n + 4)-surgery on T(n^2+3n+1, n+3) and T(n^2+5n+5, n+1).
FamilyRecord family_pair(std::int64_t n);

}  // namespace charslope
