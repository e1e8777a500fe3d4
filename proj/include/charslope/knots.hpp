#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "charslope/laurent_poly.hpp"
#include "charslope/rational.hpp"

namespace charslope {

class CfkComplex;

// Torus knot T(r, s), stored canonically with r > |s| >= 2 (the sign of the
// knot lives on s), or the unknot sentinel T(1, 0).
class TorusKnot {
 public:
  TorusKnot(std::int64_t r, std::int64_t s);
  static TorusKnot unknot() { return TorusKnot(1, 0); }

  std::int64_t r() const { return r_; }
  std::int64_t s() const { return s_; }
  bool is_unknot() const { return s_ == 0; }
  TorusKnot mirror() const { return is_unknot() ? *this : TorusKnot(r_, -s_); }
  std::string str() const;

  friend bool operator==(const TorusKnot&, const TorusKnot&) = default;

 private:
  std::int64_t r_;
  std::int64_t s_;
};

// (a, b)-cable of a nontrivial torus knot; b >= 2 is the winding number.
struct CableKnot {
  CableKnot(std::int64_t a, std::int64_t b, TorusKnot companion);

  std::int64_t a;
  std::int64_t b;
  TorusKnot companion;

  std::string str() const;
  friend bool operator==(const CableKnot&, const CableKnot&) = default;
};

// A knot known only through a user-supplied knot Floer complex.
struct ExplicitKnot {
  std::string name;
  std::shared_ptr<const CfkComplex> complex;

  std::string str() const { return name; }
  friend bool operator==(const ExplicitKnot& a, const ExplicitKnot& b) {
    return a.name == b.name && a.complex == b.complex;
  }
};

using KnotDesc = std::variant<TorusKnot, CableKnot, ExplicitKnot>;

std::string knot_str(const KnotDesc& k);

// Parses "T(5,2)", "T(1,0)", "U" and "C(59,2;T(6,5))".
KnotDesc parse_knot(std::string_view text);

// Alternating L-space shape (-1)^k + sum_i (-1)^(k-i) (T^n_i + T^-n_i).
struct LSpaceForm {
  std::vector<std::int64_t> exponents;  // n_1 < ... < n_k
  std::size_t k() const { return exponents.size(); }
  LaurentPoly polynomial() const;
  friend bool operator==(const LSpaceForm&, const LSpaceForm&) = default;
};

LaurentPoly torus_alexander(std::int64_t r, std::int64_t s);
LaurentPoly alexander(const KnotDesc& k);

// t_i = sum_{j >= 1} j a_{i+j}; valid for every integer i.
std::int64_t torsion_coeff(const LaurentPoly& delta, std::int64_t i);

// Torsion coefficients t_start, t_start+1, ... .
struct TorsionWindow {
  std::int64_t start = 0;
  std::vector<std::int64_t> values;
};
TorsionWindow torsion_window(const LaurentPoly& delta, std::int64_t start, std::int64_t end);

// a_s = t_{s-1} - 2 t_s + t_{s+1}; throws when the window does not cover s-1..s+1.
std::int64_t coeff_from_torsion(const TorsionWindow& t, std::int64_t s);

// Sum_s s(s-1) a_s. Throws on inputs that are not symmetric with delta(1) = 1.
Rational second_deriv_at_1(const LaurentPoly& delta);

std::optional<LSpaceForm> lspace_form(const LaurentPoly& delta);

std::int64_t torus_genus(const TorusKnot& t);
std::int64_t genus(const KnotDesc& k);

// Monic leading coefficient or L-space shape; a derived flag, not a proof of fibredness.
bool fibred_flag(const LaurentPoly& delta);

struct SatelliteFactorization {
  TorusKnot pattern;    // T(a, b), b the winding number
  TorusKnot companion;  // T(c, d)
  std::int64_t winding;
  friend bool operator==(const SatelliteFactorization&, const SatelliteFactorization&) = default;
};

// All exact factorizations delta = Delta_{T(c,d)}(T^b) * Delta_{T(a,b)}(T) with
// nontrivial positive torus pattern and companion and every parameter <= bound.
// bound == 0 selects a limit derived from the degree of delta.
std::vector<SatelliteFactorization> satellite_factorization_search(const LaurentPoly& delta,
                                                                   std::int64_t bound = 0);

}  // namespace charslope
