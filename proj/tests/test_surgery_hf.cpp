#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "charslope/cfk.hpp"
#include "charslope/knots.hpp"
#include "charslope/lens.hpp"
#include "charslope/number_theory.hpp"
#include "charslope/surgery_hf.hpp"

using namespace charslope;

namespace {

constexpr std::string_view kFigureEight = R"(a 0 0
b -1 -1
c 1 1
e 0 0
z 0 0
a -> b ^0
a -> c ^1
b -> e ^1
c -> e ^0
)";

struct KnotCase {
  const char* label;
  KnotFloerData data;
  std::int64_t (*v)(std::int64_t);  // independent V_k
  std::int64_t nu;                  // min { s : V_s = 0 }
  std::int64_t reduced_total;       // sum over s of dim A_red,s
};

std::int64_t v_t52(std::int64_t k) { return k >= 2 ? 0 : (k >= 0 ? 1 : (k == -1 ? 2 : -k)); }
std::int64_t v_zero_above(std::int64_t k) { return k >= 0 ? 0 : -k; }

std::vector<KnotCase> knot_cases() {
  return {
      {"T(5,2)", floer_from_complex(preset("T52")), v_t52, 2, 0},
      {"T(5,-2)", floer_from_complex(preset("T5m2")), v_zero_above, 0, 3},
      {"figure eight", floer_from_complex(CfkComplex::parse(kFigureEight)), v_zero_above, 0, 1},
      {"unknot", floer_from_complex(preset("unknot")), v_zero_above, 0, 0},
  };
}

// d(S^3_{p/q}(K), i) = d(L(p,q), i) - 2 max(V_{floor(i/q)}, H_{floor((i-p)/q)}).
DProfile d_oracle(const KnotCase& k, std::int64_t p, std::int64_t q) {
  DProfile d = lens_d_invariants(p, q);
  for (std::int64_t i = 0; i < p; ++i) {
    const std::int64_t v = k.v(floor_div(i, q));
    const std::int64_t h = k.v(-floor_div(i - p, q));
    d[static_cast<std::size_t>(i)] -= Rational(2 * std::max(v, h));
  }
  return d;
}

// rank HF_red from rank HF^hat = p + 2 max(0, (2 nu - 1) q - p) + 2 q sum dim A_red,s.
std::int64_t rank_oracle(const KnotCase& k, std::int64_t p, std::int64_t q) {
  return std::max<std::int64_t>(0, (2 * k.nu - 1) * q - p) + q * k.reduced_total;
}

GradedProfile band(const std::vector<int>& pattern) {
  // -1 empty, otherwise a single F in that grading above d.
  GradedProfile out;
  for (const int g : pattern) {
    GradedGroup grp{Rational(0), {}};
    if (g >= 0) grp.reduced.push_back({Rational(g), 1});
    out.push_back(grp);
  }
  return out;
}

std::vector<std::vector<std::pair<Rational, std::int64_t>>> shifted(const GradedProfile& g) {
  std::vector<std::vector<std::pair<Rational, std::int64_t>>> out;
  for (const auto& grp : g) out.push_back(grp.shifted_reduced());
  return out;
}

}  // namespace

TEST_CASE("V sequences") {
  const VSequence v(-2, {2, 1, 1, 0});
  CHECK(v.v(-5) == 5);
  CHECK(v.v(-3) == 3);
  CHECK(v.v(-2) == 2);
  CHECK(v.v(0) == 1);
  CHECK(v.v(1) == 0);
  CHECK(v.v(9) == 0);
  CHECK(v.h(2) == 2);
  CHECK(v.lo() == -2);
  CHECK(v.hi() == 2);
  CHECK_THROWS(VSequence(0, {}));
  CHECK_THROWS(VSequence(0, {-1}));
  CHECK_THROWS(VSequence(0, {1, 2}));
  CHECK_THROWS(VSequence(0, {3, 1}));
  CHECK_THROWS(VSequence(0, {2}));
}

TEST_CASE("V from the Alexander polynomial") {
  const VSequence v = v_from_polynomial(torus_alexander(5, 2));
  for (std::int64_t k = -6; k <= 6; ++k) CHECK(v.v(k) == v_t52(k));
  CHECK_THROWS_WITH(v_from_polynomial(LaurentPoly{{1, -1}, {0, 3}, {-1, -1}}),
                    doctest::Contains("requires explicit complex"));
  for (std::int64_t r = 3; r <= 13; ++r) {
    for (std::int64_t s = 2; s < r; ++s) {
      if (std::gcd(r, s) != 1) continue;
      const auto d = torus_alexander(r, s);
      const VSequence w = v_from_polynomial(d);
      for (std::int64_t k = -3; k <= d.max_exponent() + 2; ++k) CHECK(w.v(k) == torsion_coeff(d, k));
    }
  }
}

TEST_CASE("delta_i") {
  const VSequence v = v_from_polynomial(torus_alexander(5, 2));
  CHECK(delta_i(1, 1, 0, v) == 1);
  CHECK(delta_i(9, 1, 0, v) == 1);
  CHECK(delta_i(9, 1, 4, v) == 0);
  CHECK(delta_i(9, 1, 8, v) == 1);
  for (std::int64_t p = 1; p <= 30; ++p) {
    for (std::int64_t q = 1; q <= 5; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (std::int64_t i = 0; i < p; ++i) {
        const std::int64_t a = v.v(floor_div(i, q));
        const std::int64_t b = v.h(floor_div(i - p, q));
        CHECK(delta_i(p, q, i, v) == std::max(a, b));
        const std::int64_t s = s_i(p, q, i, v);
        CHECK((s == 0 || s == -1));
        CHECK(std::min(a, b) <= delta_i(p, q, i, v));
      }
    }
  }
}

TEST_CASE("d-invariants against the surgery formula") {
  for (const auto& k : knot_cases()) {
    CAPTURE(k.label);
    for (std::int64_t p = 1; p <= 30; ++p) {
      for (std::int64_t q = 1; q <= 6; ++q) {
        if (std::gcd(p, q) != 1) continue;
        CHECK(surgery_d_invariants(k.data, Slope(p, q)) == d_oracle(k, p, q));
      }
    }
  }
  CHECK_THROWS(surgery_d_invariants(knot_cases()[0].data, Slope(-3, 1)));
  CHECK_THROWS(hf_red_rank(knot_cases()[0].data, Slope(-3, 1)));
  CHECK_THROWS(hf_red_graded(knot_cases()[0].data, Slope(-3, 1)));
}

TEST_CASE("d-invariants of lens space surgeries") {
  const auto unknot = floer_from_complex(preset("unknot"));
  CHECK(surgery_d_invariants(unknot, Slope(7, 3)) == lens_d_invariants(7, 3));
  const auto t54 = floer_from_polynomial(torus_alexander(5, 4));
  CHECK_FALSE(affine_matchings(surgery_d_invariants(t54, Slope(21, 1)), lens_d_invariants(21, 16)).empty());
  const auto t52 = floer_from_polynomial(torus_alexander(5, 2));
  CHECK_FALSE(affine_matchings(surgery_d_invariants(t52, Slope(9, 1)), lens_d_invariants(9, 4)).empty());
  CHECK(affine_matchings(surgery_d_invariants(t52, Slope(9, 1)), lens_d_invariants(9, 1)).empty());
}

TEST_CASE("reduced rank against the rank formula") {
  for (const auto& k : knot_cases()) {
    CAPTURE(k.label);
    for (std::int64_t p = 1; p <= 30; ++p) {
      for (std::int64_t q = 1; q <= 6; ++q) {
        if (std::gcd(p, q) != 1) continue;
        const Slope s(p, q);
        const std::int64_t rank = hf_red_rank(k.data, s);
        CHECK(rank == rank_oracle(k, p, q));
        const GradedProfile g = hf_red_graded(k.data, s);
        REQUIRE(g.size() == static_cast<std::size_t>(p));
        std::int64_t total = 0;
        for (const auto& grp : g) total += grp.reduced_dim();
        CHECK(total == rank);
        const DProfile d = surgery_d_invariants(k.data, s);
        for (std::int64_t i = 0; i < p; ++i) {
          CHECK(g[static_cast<std::size_t>(i)].d == d[static_cast<std::size_t>(i)]);
          CHECK(g[static_cast<std::size_t>(i)] == g[static_cast<std::size_t>(conjugation(p, q, i))]);
        }
      }
    }
  }
  CHECK(hf_red_rank(floer_from_polynomial(torus_alexander(5, 2)), Slope(1, 1)) == 2);
}

TEST_CASE("graded groups of T(5,-2) surgeries") {
  const auto k = floer_from_complex(preset("T5m2"));
  CHECK(shifted(hf_red_graded(k, Slope(7, 2))) == shifted(band({0, 0, 2, 2, -1, 2, 2})));
  CHECK(shifted(hf_red_graded(k, Slope(13, 4))) ==
        shifted(band({0, 0, 0, 0, 2, 2, 2, 2, -1, 2, 2, 2, 2})));
  CHECK(hf_red_rank(k, Slope(7, 2)) == 6);
  CHECK(hf_red_rank(k, Slope(13, 4)) == 12);
  // Slopes with p > 3q: every structure carries q-many copies of one band.
  for (std::int64_t q = 1; q <= 5; ++q) {
    for (std::int64_t p = 3 * q + 1; p <= 40; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const GradedProfile g = hf_red_graded(k, Slope(p, q));
      std::int64_t zeros = 0;
      std::int64_t twos = 0;
      for (const auto& grp : g) {
        for (const auto& [grading, dim] : grp.shifted_reduced()) {
          CHECK(dim == 1);
          if (grading == Rational(0)) ++zeros;
          else if (grading == Rational(2)) ++twos;
          else CHECK(false);
        }
      }
      CHECK(zeros == q);
      CHECK(twos == 2 * q);
    }
  }
}

TEST_CASE("polynomial and complex tiers agree") {
  for (const auto& [r, s] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 2}, {5, 2}, {4, 3}, {7, 3}, {5, 4}}) {
    const auto delta = torus_alexander(r, s);
    const auto poly = floer_from_polynomial(delta);
    const auto cplx = floer_from_complex(staircase(*lspace_form(delta)));
    for (std::int64_t p = 1; p <= 25; ++p) {
      for (std::int64_t q = 1; q <= 4; ++q) {
        if (std::gcd(p, q) != 1) continue;
        CHECK(hf_red_graded(poly, Slope(p, q)) == hf_red_graded(cplx, Slope(p, q)));
      }
    }
  }
}

TEST_CASE("orientation reversal and conjugation") {
  const GradedProfile g = hf_red_graded(floer_from_complex(preset("T5m2")), Slope(7, 2));
  const GradedProfile r = reverse_orientation(g);
  REQUIRE(r.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(r[i].d == -g[i].d);
    CHECK(r[i].reduced_dim() == g[i].reduced_dim());
    for (std::size_t j = 0; j < g[i].reduced.size(); ++j) {
      CHECK(r[i].reduced[r[i].reduced.size() - 1 - j].first == -g[i].reduced[j].first - Rational(1));
    }
  }
  CHECK(reverse_orientation(r) == g);
  CHECK(conjugation(7, 2, 0) == 1);
  CHECK(conjugation(7, 2, 3) == 5);
  for (std::int64_t p = 1; p <= 20; ++p) {
    for (std::int64_t q = 1; q < p; ++q) {
      for (std::int64_t i = 0; i < p; ++i) CHECK(conjugation(p, q, conjugation(p, q, i)) == i);
    }
  }
}

TEST_CASE("affine matchings") {
  const DProfile a = lens_d_invariants(13, 2);
  const DProfile b = lens_d_invariants(13, 7);
  const auto maps = affine_matchings(a, b);
  REQUIRE_FALSE(maps.empty());
  CHECK(std::is_sorted(maps.begin(), maps.end()));
  for (const auto& m : maps) {
    CHECK(std::gcd(m.a, std::int64_t{13}) == 1);
    for (std::int64_t i = 0; i < 13; ++i) CHECK(a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(m.apply(i, 13))]);
  }
  CHECK(affine_matchings(a, lens_d_invariants(13, 3)).empty());
  CHECK(affine_matchings(a, lens_d_invariants(11, 2)).empty());
  CHECK(affine_maps_into(7, {0}, {0}).size() == 6);
  CHECK(affine_maps_into(7, {0, 1}, {0, 1}) == std::vector<AffineMap>{{1, 0}, {6, 1}});
  CHECK(affine_maps_into(1, {0}, {0}) == std::vector<AffineMap>{{1, 0}});
  CHECK_THROWS(affine_maps_into(5, {}, {1}));
  // Brute force: every affine bijection of Z/pZ carrying src into dst, for small p.
  for (std::int64_t p = 2; p <= 12; ++p) {
    const std::vector<std::int64_t> src = {0, 1 % p, 3 % p};
    const std::vector<std::int64_t> dst = {0, 1 % p, 2 % p, (p - 1) % p};
    std::vector<AffineMap> brute;
    for (std::int64_t x = 1; x < p; ++x) {
      if (std::gcd(x, p) != 1) continue;
      for (std::int64_t y = 0; y < p; ++y) {
        bool ok = true;
        for (const auto s : src) {
          const std::int64_t img = (x * s + y) % p;
          ok = ok && std::find(dst.begin(), dst.end(), img) != dst.end();
        }
        if (ok) brute.push_back({x, y});
      }
    }
    CHECK(affine_maps_into(p, src, dst) == brute);
  }
}

TEST_CASE("affine self-maps of the initial block") {
  for (std::int64_t p = 5; p <= 200; ++p) {
    for (std::int64_t q = 2; 2 * q < p; ++q) {
      DProfile indicator(static_cast<std::size_t>(p), Rational(0));
      for (std::int64_t i = 0; i < q; ++i) indicator[static_cast<std::size_t>(i)] = Rational(1);
      CHECK(affine_matchings(indicator, indicator) == std::vector<AffineMap>{{1, 0}, {p - 1, q - 1}});
    }
  }
}

TEST_CASE("affine maps of the initial block into the flanking blocks") {
  for (std::int64_t q = 3; 6 * q < 200; ++q) {
    for (std::int64_t p = 6 * q + 1; p <= 200; ++p) {
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
        CHECK((image == minus || image == plus));
      }
    }
  }
}
