#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charslope/rational.hpp"

namespace charslope {

// Oriented lens space L(p, q) = p/q surgery on the unknot, with p >= 1 and q
// reduced into [1, p); S^3 is L(1, 0).
class LensSpace {
 public:
  LensSpace(std::int64_t p, std::int64_t q);
  // S^3_{p/q}(unknot) for any p != 0; negative p reverses orientation.
  static LensSpace from_surgery(std::int64_t p, std::int64_t q);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  LensSpace reversed() const { return LensSpace(p_, p_ - q_); }
  std::string str() const;

  friend bool operator==(const LensSpace&, const LensSpace&) = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

// d-invariants indexed by i in Z/pZ.
using DProfile = std::vector<Rational>;

// d(L(p, q), i) for i = 0..p-1. Memoized; safe to call concurrently.
DProfile lens_d_invariants(std::int64_t p, std::int64_t q);

bool lens_oriented_homeo(const LensSpace& a, const LensSpace& b);

// Smallest q' with L(p, q') orientation-preservingly homeomorphic to L.
std::int64_t canonical_lens_q(const LensSpace& l);

// Casson-Walker invariant lambda(L(p, q)) = -s(q, p) / 2.
Rational casson_walker_lens(std::int64_t p, std::int64_t q);

}  // namespace charslope
