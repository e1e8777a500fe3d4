#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "charslope/knots.hpp"
#include "charslope/laurent_poly.hpp"

namespace charslope {

struct CfkGenerator {
  std::string name;
  std::int64_t alexander;
  std::int64_t maslov;
  friend bool operator==(const CfkGenerator&, const CfkGenerator&) = default;
};

// Differential component source -> U^u_power * target.
struct CfkArrow {
  std::size_t source;
  std::size_t target;
  std::int64_t u_power;
  friend bool operator==(const CfkArrow&, const CfkArrow&) = default;
};

// Finite model of CFK^infinity over GF(2): a generator x sits at filtration
// level (0, alexander(x)) and U^n x at (-n, alexander(x) - n) with Maslov
// grading maslov(x) - 2n. Construction validates the filtration and grading
// rules, d^2 = 0, and the conjugation symmetry of the generator set.
class CfkComplex {
 public:
  CfkComplex(std::vector<CfkGenerator> generators, std::vector<CfkArrow> arrows);

  // Text format, one item per line ('#' starts a comment):
  //   name alexander maslov
  //   src -> dst ^k
  static CfkComplex parse(std::string_view text);
  std::string to_text() const;

  const std::vector<CfkGenerator>& generators() const { return generators_; }
  const std::vector<CfkArrow>& arrows() const { return arrows_; }

  // Graded Euler characteristic sum (-1)^m T^a, the Alexander polynomial.
  LaurentPoly euler_characteristic() const;

  std::int64_t min_alexander() const;
  std::int64_t max_alexander() const;
  std::int64_t min_maslov() const;
  std::int64_t max_maslov() const;

 private:
  void validate() const;

  std::vector<CfkGenerator> generators_;
  std::vector<CfkArrow> arrows_;
};

// Zig-zag complex of an L-space knot with the given Alexander polynomial shape.
CfkComplex staircase(const LSpaceForm& form);

// Dual complex: arrows reversed, both gradings negated.
CfkComplex mirror(const CfkComplex& c);

// Built-in complexes: "T52", "T5m2" (the two-bridge (5,2) torus knot and its
// mirror) and "unknot".
CfkComplex preset(std::string_view name);
std::string_view preset_text(std::string_view name);
std::vector<std::string> preset_names();

struct ReducedSummand {
  std::int64_t grading;  // relative to the tower bottom
  std::int64_t dim;
  friend bool operator==(const ReducedSummand&, const ReducedSummand&) = default;
};

struct AkResult {
  std::int64_t k = 0;
  std::int64_t big_v = 0;
  std::vector<ReducedSummand> reduced;  // ascending grading
  std::int64_t tower_bottom = 0;        // absolute Maslov grading of the tower bottom

  std::int64_t reduced_dim() const;
  friend bool operator==(const AkResult&, const AkResult&) = default;
};

// Homology of A_k^+ = C{i >= 0 or j >= k} by GF(2) elimination on a truncated
// model. depth == 0 picks the default truncation, which is then confirmed by
// recomputing at twice the depth.
AkResult a_plus(const CfkComplex& c, std::int64_t k, std::int64_t depth = 0);

// H_k = V_{-k}.
std::int64_t big_h(const CfkComplex& c, std::int64_t k);

}  // namespace charslope
