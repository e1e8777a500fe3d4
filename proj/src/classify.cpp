#include "charslope/classify.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "charslope/cfk.hpp"
#include "charslope/number_theory.hpp"

namespace charslope {

namespace {

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

std::string profile_summary(const DProfile& d) {
  std::string out = "[";
  for (std::size_t i = 0; i < d.size() && i < 8; ++i) out += (i ? "," : "") + d[i].str();
  if (d.size() > 8) out += ",...";
  return out + "]";
}

std::string orders_str(const std::array<std::int64_t, 3>& o) {
  return "{" + std::to_string(o[0]) + "," + std::to_string(o[1]) + "," + std::to_string(o[2]) + "}";
}

std::mutex floer_cache_mutex;
std::map<std::string, KnotFloerData> floer_cache;

}  // namespace

SurgeryDescription SurgeryDescription::parse(std::string_view knot, std::string_view slope) {
  return SurgeryDescription{parse_knot(knot), Slope::parse(slope)};
}

std::string SurgeryDescription::str() const { return knot_str(knot) + " " + slope.str(); }

std::string class_kind(const SurgeryClass& c) {
  if (std::holds_alternative<ReducibleClass>(c)) return "Reducible";
  if (std::holds_alternative<LensSpace>(c)) return "Lens";
  return "SFS";
}

std::string class_str(const SurgeryClass& c) {
  if (const auto* r = std::get_if<ReducibleClass>(&c)) {
    return "Reducible(" + std::to_string(r->r) + "," + std::to_string(r->s) + ")";
  }
  if (const auto* l = std::get_if<LensSpace>(&c)) return l->str();
  const auto& s = std::get<SeifertClass>(c);
  return "SFS(" + orders_str(s.cone_orders) + "," + std::to_string(s.orientation) + ")";
}

SurgeryClass classify_torus_surgery(std::int64_t r, std::int64_t s, const Slope& slope) {
  const TorusKnot t(r, s);
  const std::int64_t p = slope.p();
  const std::int64_t q = slope.q();
  if (t.is_unknot()) return LensSpace::from_surgery(p, q);
  const __int128 rs = static_cast<__int128>(t.r()) * t.s();
  if (q == 1 && p == rs) return ReducibleClass{t.r(), t.s()};
  const std::int64_t dist = checked_int64(p - static_cast<__int128>(q) * rs);
  if (iabs(dist) == 1) {
    const std::int64_t n = iabs(p);
    const std::int64_t s2 = mul_mod(pos_mod(t.s(), n), pos_mod(t.s(), n), n);
    return LensSpace::from_surgery(p, mul_mod(pos_mod(q, n), s2, n));
  }
  std::array<std::int64_t, 3> orders{t.r(), iabs(t.s()), iabs(dist)};
  std::sort(orders.begin(), orders.end());
  return SeifertClass{orders, dist};
}

std::optional<Slope> cable_slope_transfer(std::int64_t a, std::int64_t b, const Slope& slope) {
  if (b < 2 || std::gcd(a, b) != 1) throw std::invalid_argument("cable parameters need b >= 2 and gcd(a, b) = 1");
  const __int128 p = slope.p();
  const __int128 qab = static_cast<__int128>(slope.q()) * a * b;
  if (p - qab != 1 && p - qab != -1) return std::nullopt;
  const std::int64_t qb2 = checked_int64(static_cast<__int128>(slope.q()) * b * b);
  if (std::gcd(slope.p(), qb2) != 1) throw std::invalid_argument("inconsistent cable transfer: gcd(p, q b^2) != 1");
  return Slope(slope.p(), qb2);
}

SurgeryDescription reduce_description(const SurgeryDescription& d) {
  if (const auto* c = std::get_if<CableKnot>(&d.knot)) {
    if (const auto s = cable_slope_transfer(c->a, c->b, d.slope)) return SurgeryDescription{c->companion, *s};
  }
  return d;
}

std::optional<SurgeryClass> classify(const SurgeryDescription& d) {
  const SurgeryDescription r = reduce_description(d);
  if (const auto* t = std::get_if<TorusKnot>(&r.knot)) return classify_torus_surgery(t->r(), t->s(), r.slope);
  return std::nullopt;
}

KnotDesc mirror_knot(const KnotDesc& k) {
  if (const auto* t = std::get_if<TorusKnot>(&k)) return t->mirror();
  if (const auto* c = std::get_if<CableKnot>(&k)) return CableKnot(-c->a, c->b, c->companion.mirror());
  const auto& e = std::get<ExplicitKnot>(k);
  return ExplicitKnot{"mirror(" + e.name + ")", std::make_shared<const CfkComplex>(mirror(*e.complex))};
}

Rational alexander_second_derivative(const KnotDesc& k) {
  const auto torus = [](const TorusKnot& t) {
    if (t.is_unknot()) return Rational(0);
    const BigInt r = to_big(t.r());
    const BigInt s = to_big(t.s());
    return Rational(BigInt(r * r - 1) * BigInt(s * s - 1), to_big(12));
  };
  if (const auto* t = std::get_if<TorusKnot>(&k)) return torus(*t);
  if (const auto* c = std::get_if<CableKnot>(&k)) {
    const BigInt b = to_big(c->b);
    return Rational(BigInt(b * b)) * torus(c->companion) + torus(TorusKnot(c->a, c->b));
  }
  return second_deriv_at_1(alexander(k));
}

Rational cw_value(const SurgeryDescription& d) {
  const std::int64_t p = d.slope.p();
  const std::int64_t q = d.slope.q();
  if (p == 0) throw std::invalid_argument("Casson-Walker invariant needs a rational homology sphere");
  const LensSpace l = LensSpace::from_surgery(p, q);
  return casson_walker_lens(l.p(), l.q()) + Rational(q, 2 * p) * alexander_second_derivative(d.knot);
}

bool cw_obstruction(const SurgeryDescription& a, const SurgeryDescription& b) {
  if (a.slope.p() != b.slope.p()) {
    throw std::invalid_argument("Casson-Walker comparison needs equal p, got " + a.slope.str() + " and " +
                                b.slope.str());
  }
  return cw_value(a) == cw_value(b);
}

std::optional<KnotFloerData> floer_data(const KnotDesc& k) {
  if (const auto* e = std::get_if<ExplicitKnot>(&k)) return floer_from_complex(*e->complex);
  const auto* t = std::get_if<TorusKnot>(&k);
  if (t == nullptr) return std::nullopt;
  const LaurentPoly delta = torus_alexander(t->r(), t->s());
  if (t->s() >= 0) return floer_from_polynomial(delta);
  const std::string key = t->str();
  {
    std::lock_guard lock(floer_cache_mutex);
    if (const auto it = floer_cache.find(key); it != floer_cache.end()) return it->second;
  }
  KnotFloerData data = floer_from_complex(mirror(staircase(*lspace_form(delta))));
  std::lock_guard lock(floer_cache_mutex);
  return floer_cache.emplace(key, std::move(data)).first->second;
}

std::optional<DProfile> d_profile(const SurgeryDescription& d) {
  const SurgeryDescription r = reduce_description(d);
  if (r.slope.p() == 0) throw std::invalid_argument("d-invariants need a rational homology sphere");
  if (r.slope.p() > 0) {
    const auto data = floer_data(r.knot);
    if (!data) return std::nullopt;
    return surgery_d_invariants(*data, r.slope);
  }
  const auto data = floer_data(mirror_knot(r.knot));
  if (!data) return std::nullopt;
  DProfile out = surgery_d_invariants(*data, r.slope.negated());
  for (auto& v : out) v = -v;
  return out;
}

std::optional<GradedProfile> graded_profile(const SurgeryDescription& d) {
  const SurgeryDescription r = reduce_description(d);
  if (r.slope.p() == 0) throw std::invalid_argument("Floer homology here needs a rational homology sphere");
  if (r.slope.p() > 0) {
    const auto data = floer_data(r.knot);
    if (!data) return std::nullopt;
    return hf_red_graded(*data, r.slope);
  }
  const auto data = floer_data(mirror_knot(r.knot));
  if (!data) return std::nullopt;
  return reverse_orientation(hf_red_graded(*data, r.slope.negated()));
}

std::string verdict_kind_str(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::ProvablyHomeo:
      return "ProvablyHomeo";
    case Verdict::Kind::ProvablyDistinct:
      return "ProvablyDistinct";
    case Verdict::Kind::Consistent:
      return "Consistent";
  }
  return "Consistent";
}

Verdict compare_descriptions(const SurgeryDescription& a, const SurgeryDescription& b) {
  if (a.slope.p() == 0 || b.slope.p() == 0) {
    throw std::invalid_argument("comparison requires rational homology sphere");
  }
  Verdict v;
  if (a == b) {
    v.kind = Verdict::Kind::ProvablyHomeo;
    v.reason = "identical descriptions";
    return v;
  }
  const auto mismatch = [&](std::string name, std::string l, std::string r) {
    v.mismatches.push_back({std::move(name), std::move(l), std::move(r)});
  };
  const auto finish = [&]() {
    v.kind = v.mismatches.empty() ? Verdict::Kind::Consistent : Verdict::Kind::ProvablyDistinct;
    return v;
  };

  if (iabs(a.slope.p()) != iabs(b.slope.p())) {
    mismatch("H1_order", std::to_string(iabs(a.slope.p())), std::to_string(iabs(b.slope.p())));
    return finish();
  }
  v.matched.push_back("H1_order");

  const auto ca = classify(a);
  const auto cb = classify(b);
  if (ca && cb) {
    const auto* la = std::get_if<LensSpace>(&*ca);
    const auto* lb = std::get_if<LensSpace>(&*cb);
    if (la && lb) {
      if (lens_oriented_homeo(*la, *lb)) {
        v.kind = Verdict::Kind::ProvablyHomeo;
        v.reason = "oriented-homeomorphic lens spaces " + la->str() + " and " + lb->str();
        return v;
      }
      mismatch("lens_type", la->str(), lb->str());
    } else if (ca->index() != cb->index()) {
      mismatch("surgery_class", class_str(*ca), class_str(*cb));
    } else if (const auto* sa = std::get_if<SeifertClass>(&*ca)) {
      const auto& sb = std::get<SeifertClass>(*cb);
      if (sa->cone_orders != sb.cone_orders) {
        mismatch("cone_orders", orders_str(sa->cone_orders), orders_str(sb.cone_orders));
      } else {
        v.matched.push_back("cone_orders");
      }
    } else {
      const auto& ra = std::get<ReducibleClass>(*ca);
      const auto& rb = std::get<ReducibleClass>(*cb);
      const auto summands = [](const ReducibleClass& c) {
        return std::pair{std::min(c.r, iabs(c.s)), std::max(c.r, iabs(c.s))};
      };
      if (summands(ra) != summands(rb)) {
        mismatch("reducible_summands", class_str(ra), class_str(rb));
      } else {
        v.matched.push_back("reducible_summands");
      }
    }
  }

  const Rational la = cw_value(a);
  const Rational lb = cw_value(b);
  if (la != lb) {
    mismatch("casson_walker", la.str(), lb.str());
  } else {
    v.matched.push_back("casson_walker");
  }

  const auto da = d_profile(a);
  const auto db = d_profile(b);
  if (da && db) {
    if (affine_matchings(*da, *db).empty()) {
      mismatch("d_invariants", profile_summary(*da), profile_summary(*db));
    } else {
      v.matched.push_back("d_invariants");
      const auto ga = graded_profile(a);
      const auto gb = graded_profile(b);
      if (affine_matchings(*ga, *gb).empty()) {
        std::int64_t ra = 0;
        std::int64_t rb = 0;
        for (const auto& g : *ga) ra += g.reduced_dim();
        for (const auto& g : *gb) rb += g.reduced_dim();
        mismatch("hf_red_graded", "rank " + std::to_string(ra), "rank " + std::to_string(rb));
      } else {
        v.matched.push_back("hf_red_graded");
      }
    }
  }
  return finish();
}

BigInt branched_cover_h1(const LaurentPoly& delta, std::int64_t j, std::optional<std::int64_t> ptilde) {
  if (j < 2) throw std::invalid_argument("branched cover order must be >= 2");
  const BigInt norm = cyclotomic_norm(delta, j);
  if (norm == 0) throw std::domain_error("order infinite or formula inapplicable");
  if (!ptilde) return norm;
  return norm * to_big(iabs(*ptilde));
}

}  // namespace charslope
