#include "charslope/lens.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

#include "charslope/number_theory.hpp"

namespace charslope {

namespace {

constexpr std::size_t kMemoLimit = 4096;

using ProfilePtr = std::shared_ptr<const DProfile>;

std::shared_mutex memo_mutex;
std::map<std::pair<std::int64_t, std::int64_t>, ProfilePtr> memo;

// d(L(p,q), i) = -1/4 + (2i+1-p-q)^2/(4pq) - d(L(q, p mod q), i mod q).
ProfilePtr compute_profile(std::int64_t p, std::int64_t q);

ProfilePtr profile(std::int64_t p, std::int64_t q) {
  const std::pair key{p, q};
  {
    std::shared_lock lock(memo_mutex);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
  }
  ProfilePtr out = compute_profile(p, q);
  std::unique_lock lock(memo_mutex);
  if (memo.size() >= kMemoLimit) memo.clear();
  return memo.emplace(key, std::move(out)).first->second;
}

ProfilePtr compute_profile(std::int64_t p, std::int64_t q) {
  if (p == 1) return std::make_shared<const DProfile>(DProfile{Rational(0)});
  const ProfilePtr inner = profile(q, q == 1 ? 0 : p % q);
  const BigInt denom = to_big(4) * to_big(p) * to_big(q);
  DProfile out;
  out.reserve(static_cast<std::size_t>(p));
  const Rational quarter(1, 4);
  for (std::int64_t i = 0; i < p; ++i) {
    const BigInt t = to_big(2 * i + 1 - p - q);
    out.push_back(Rational(t * t, denom) - quarter - (*inner)[static_cast<std::size_t>(i % q)]);
  }
  return std::make_shared<const DProfile>(std::move(out));
}

}  // namespace

LensSpace::LensSpace(std::int64_t p, std::int64_t q) {
  if (p < 1) throw std::invalid_argument("lens space needs p >= 1");
  if (std::gcd(p, q) != 1) {
    throw std::invalid_argument("lens space parameters must be coprime: L(" + std::to_string(p) + "," +
                                std::to_string(q) + ")");
  }
  p_ = p;
  q_ = p == 1 ? 0 : pos_mod(q, p);
}

LensSpace LensSpace::from_surgery(std::int64_t p, std::int64_t q) {
  if (p == 0) throw std::invalid_argument("0-surgery on the unknot is not a lens space");
  return p > 0 ? LensSpace(p, q) : LensSpace(-p, pos_mod(-q, -p));
}

std::string LensSpace::str() const { return "L(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

DProfile lens_d_invariants(std::int64_t p, std::int64_t q) {
  const LensSpace l(p, q);
  return *profile(l.p(), l.q());
}

bool lens_oriented_homeo(const LensSpace& a, const LensSpace& b) {
  if (a.p() != b.p()) return false;
  if (a.p() == 1) return true;
  return a.q() == b.q() || mul_mod(a.q(), b.q(), a.p()) == 1;
}

std::int64_t canonical_lens_q(const LensSpace& l) {
  if (l.p() == 1) return 0;
  return std::min(l.q(), mod_inverse(l.q(), l.p()));
}

Rational casson_walker_lens(std::int64_t p, std::int64_t q) {
  const LensSpace l(p, q);
  return Rational(-1, 2) * dedekind_sum(l.q(), l.p());
}

}  // namespace charslope
