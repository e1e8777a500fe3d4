#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "charslope/knots.hpp"
#include "charslope/lens.hpp"
#include "charslope/rational.hpp"
#include "charslope/slope.hpp"
#include "charslope/surgery_hf.hpp"

namespace charslope {

// The manifold S^3_{p/q}(K).
struct SurgeryDescription {
  KnotDesc knot;
  Slope slope;

  static SurgeryDescription parse(std::string_view knot, std::string_view slope);
  std::string str() const;
  friend bool operator==(const SurgeryDescription&, const SurgeryDescription&) = default;
};

// Connected sum L(r, s) # L(s, r), from surgery along the cabling annulus.
struct ReducibleClass {
  std::int64_t r;
  std::int64_t s;
  friend bool operator==(const ReducibleClass&, const ReducibleClass&) = default;
};

// Seifert fibred over S^2 with three exceptional fibres.
struct SeifertClass {
  std::array<std::int64_t, 3> cone_orders;  // ascending
  std::int64_t orientation;                 // signed p - q r s
  friend bool operator==(const SeifertClass&, const SeifertClass&) = default;
};

using SurgeryClass = std::variant<ReducibleClass, LensSpace, SeifertClass>;

std::string class_kind(const SurgeryClass& c);  // "Reducible", "Lens" or "SFS"
std::string class_str(const SurgeryClass& c);

SurgeryClass classify_torus_surgery(std::int64_t r, std::int64_t s, const Slope& slope);

// p/(q b^2) when |p - q a b| = 1; S^3_{p/q}(C_{a,b}(K)) = S^3_{p/(q b^2)}(K).
std::optional<Slope> cable_slope_transfer(std::int64_t a, std::int64_t b, const Slope& slope);

// Rewrites a cable surgery in the lens regime as surgery on its companion.
SurgeryDescription reduce_description(const SurgeryDescription& d);

// Moser classification after cable reduction; absent for knots it does not cover.
std::optional<SurgeryClass> classify(const SurgeryDescription& d);

KnotDesc mirror_knot(const KnotDesc& k);

// Delta''_K(1) without expanding cable polynomials.
Rational alexander_second_derivative(const KnotDesc& k);

// lambda(S^3_{p/q}(K)) = lambda(L(p, q)) + (q / 2p) Delta''_K(1).
Rational cw_value(const SurgeryDescription& d);
bool cw_obstruction(const SurgeryDescription& a, const SurgeryDescription& b);

// V and A_red data: polynomial data for L-space knots, the chain-complex
// engine for mirrors of torus knots and explicit complexes. Absent otherwise.
std::optional<KnotFloerData> floer_data(const KnotDesc& k);

// Nonzero slopes; negative ones are evaluated as reversed surgery on the mirror.
std::optional<DProfile> d_profile(const SurgeryDescription& d);
std::optional<GradedProfile> graded_profile(const SurgeryDescription& d);

struct InvariantComparison {
  std::string invariant;
  std::string left;
  std::string right;
  friend bool operator==(const InvariantComparison&, const InvariantComparison&) = default;
};

struct Verdict {
  enum class Kind { ProvablyHomeo, ProvablyDistinct, Consistent };
  Kind kind = Kind::Consistent;
  std::string reason;                            // ProvablyHomeo
  std::vector<InvariantComparison> mismatches;   // ProvablyDistinct; the first is the witness
  std::vector<std::string> matched;              // invariants that agreed
};

std::string verdict_kind_str(Verdict::Kind k);

Verdict compare_descriptions(const SurgeryDescription& a, const SurgeryDescription& b);

// |H_1| of the j-fold cyclic branched cover, times |ptilde| for the filled
// cover. Throws std::domain_error when a root of delta is a j-th root of unity.
BigInt branched_cover_h1(const LaurentPoly& delta, std::int64_t j, std::optional<std::int64_t> ptilde);

}  // namespace charslope
