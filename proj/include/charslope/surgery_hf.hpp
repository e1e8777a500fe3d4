#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "charslope/cfk.hpp"
#include "charslope/laurent_poly.hpp"
#include "charslope/lens.hpp"
#include "charslope/rational.hpp"
#include "charslope/slope.hpp"

namespace charslope {

// V_k on a window [lo, lo + size), extended by V_k = 0 above the window and
// V_k = V_lo + (lo - k) below it.
class VSequence {
 public:
  VSequence(std::int64_t lo, std::vector<std::int64_t> values);

  std::int64_t v(std::int64_t k) const;
  std::int64_t h(std::int64_t k) const { return v(-k); }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()); }

  friend bool operator==(const VSequence&, const VSequence&) = default;

 private:
  std::int64_t lo_;
  std::vector<std::int64_t> values_;
};

// Everything the mapping cone needs from a knot: V_k and graded A_red,k.
struct KnotFloerData {
  VSequence v;
  std::map<std::int64_t, std::vector<ReducedSummand>> reduced;  // nonzero A_red,k only
  std::int64_t window = 0;  // A_red,k = 0 and min(V_k, H_k) = 0 for |k| >= window

  std::int64_t reduced_dim(std::int64_t k) const;
};

// L-space knots: V_k = t_k and A_red = 0. Throws when delta is not of L-space shape.
VSequence v_from_polynomial(const LaurentPoly& delta);
KnotFloerData floer_from_polynomial(const LaurentPoly& delta);
KnotFloerData floer_from_complex(const CfkComplex& c);

std::int64_t delta_i(std::int64_t p, std::int64_t q, std::int64_t i, const VSequence& v);
// Index s (0 or -1) of the mapping-cone summand carrying the surviving tower.
std::int64_t s_i(std::int64_t p, std::int64_t q, std::int64_t i, const VSequence& v);

DProfile surgery_d_invariants(const KnotFloerData& k, const Slope& slope);
std::int64_t hf_red_rank(const KnotFloerData& k, const Slope& slope);

struct GradedGroup {
  Rational d;
  std::vector<std::pair<Rational, std::int64_t>> reduced;  // ascending grading, positive dims

  std::int64_t reduced_dim() const;
  // Same group with every reduced grading shifted down by d.
  std::vector<std::pair<Rational, std::int64_t>> shifted_reduced() const;
  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;
  friend std::strong_ordering operator<=>(const GradedGroup&, const GradedGroup&) = default;
};
using GradedProfile = std::vector<GradedGroup>;

GradedProfile hf_red_graded(const KnotFloerData& k, const Slope& slope);

// Orientation reversal: d -> -d and reduced grading g -> -g - 1.
GradedProfile reverse_orientation(const GradedProfile& g);

// J(i) = q - 1 - i (mod p).
std::int64_t conjugation(std::int64_t p, std::int64_t q, std::int64_t i);

struct AffineMap {
  std::int64_t a;
  std::int64_t b;
  std::int64_t apply(std::int64_t i, std::int64_t p) const;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
  friend auto operator<=>(const AffineMap&, const AffineMap&) = default;
};

// All phi(i) = a i + b with gcd(a, p) = 1 and A(i) = B(phi(i)) for every i,
// ordered by (a, b).
std::vector<AffineMap> affine_matchings(const DProfile& a, const DProfile& b);
std::vector<AffineMap> affine_matchings(const GradedProfile& a, const GradedProfile& b);

// All affine bijections phi of Z/pZ with phi(src) contained in dst.
std::vector<AffineMap> affine_maps_into(std::int64_t p, const std::vector<std::int64_t>& src,
                                        const std::vector<std::int64_t>& dst);

}  // namespace charslope
