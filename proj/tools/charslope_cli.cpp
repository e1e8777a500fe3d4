#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>

#include "charslope/certify.hpp"
#include "charslope/cfk.hpp"
#include "charslope/classify.hpp"
#include "charslope/knots.hpp"
#include "charslope/lens.hpp"
#include "charslope/surgery_hf.hpp"

using namespace charslope;
using json = nlohmann::ordered_json;

namespace {

// "@preset:NAME", "@file:PATH" or a knot such as "T(5,2)" / "C(59,2;T(6,5))".
KnotDesc load_knot(const std::string& text) {
  if (text.starts_with("@preset:")) {
    const std::string name = text.substr(8);
    return ExplicitKnot{name, std::make_shared<const CfkComplex>(preset(name))};
  }
  if (text.starts_with("@file:")) {
    const std::string path = text.substr(6);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ExplicitKnot{path, std::make_shared<const CfkComplex>(CfkComplex::parse(ss.str()))};
  }
  return parse_knot(text);
}

json profile_json(const DProfile& d) {
  json out = json::object();
  for (std::size_t i = 0; i < d.size(); ++i) out[std::to_string(i)] = d[i].str();
  return out;
}

json graded_json(const GradedProfile& g) {
  json out = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    json reduced = json::array();
    for (const auto& [grading, dim] : g[i].reduced) reduced.push_back({{"grading", grading.str()}, {"dim", dim}});
    json shifted = json::array();
    for (const auto& [grading, dim] : g[i].shifted_reduced()) shifted.push_back({{"grading", grading.str()}, {"dim", dim}});
    out.push_back({{"i", i}, {"d", g[i].d.str()}, {"reduced", reduced}, {"reduced_minus_d", shifted}});
  }
  return out;
}

json values_json(const NamedValues& v) {
  json out = json::object();
  for (const auto& [k, val] : v) out[k] = val;
  return out;
}

json certificate_json(const Certificate& c) {
  json trail = json::array();
  for (const auto& e : c.trail) {
    trail.push_back({{"predicate", e.predicate}, {"holds", e.holds}, {"values", values_json(e.values)}});
  }
  return {{"subject", c.subject}, {"verdict", c.verdict}, {"rule", c.rule}, {"trail", trail},
          {"values", values_json(c.values)}};
}

void print_certificate(const Certificate& c, bool as_json) {
  if (as_json) {
    std::cout << certificate_json(c).dump(2) << "\n";
    return;
  }
  std::cout << c.subject << ": " << (c.verdict ? "true" : "false") << " (" << c.rule << ")\n";
  for (const auto& e : c.trail) {
    std::cout << "  " << (e.holds ? "[x] " : "[ ] ") << e.predicate;
    for (const auto& [k, v] : e.values) std::cout << " " << k << "=" << v;
    std::cout << "\n";
  }
}

json verdict_json(const SurgeryDescription& a, const SurgeryDescription& b, const Verdict& v) {
  json mismatches = json::array();
  for (const auto& m : v.mismatches) {
    mismatches.push_back({{"invariant", m.invariant}, {"left", m.left}, {"right", m.right}});
  }
  json values = json::object();
  if (v.kind == Verdict::Kind::ProvablyHomeo) values["reason"] = v.reason;
  if (!v.mismatches.empty()) values["witness"] = v.mismatches.front().invariant;
  return {{"subject", a.str() + " vs " + b.str()},
          {"verdict", verdict_kind_str(v.kind)},
          {"trail", mismatches},
          {"values", values},
          {"matched", v.matched}};
}

json hit_json(const SearchHit& h) {
  return {{"p", h.slope.p()},
          {"slope", h.slope.str()},
          {"first", knot_str(h.first.knot)},
          {"second", knot_str(h.second.knot)},
          {"lens_first", h.lens_first.str()},
          {"lens_second", h.lens_second.str()},
          {"verdict", "ProvablyHomeo"}};
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

json class_json(const SurgeryClass& c) {
  json out = {{"kind", class_kind(c)}, {"value", class_str(c)}};
  if (const auto* s = std::get_if<SeifertClass>(&c)) {
    out["cone_orders"] = s->cone_orders;
    out["orientation"] = s->orientation;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact surgery invariants of torus and cable knots"};
  app.require_subcommand(1);
  bool as_json = false;

  auto* dinv = app.add_subcommand("dinv", "d-invariants of a lens space");
  std::string dinv_kind;
  std::int64_t lens_p = 0;
  std::int64_t lens_q = 0;
  dinv->add_option("kind", dinv_kind, "only 'lens' is supported")->required()->check(CLI::IsMember({"lens"}));
  dinv->add_option("p", lens_p)->required();
  dinv->add_option("q", lens_q)->required();
  dinv->add_flag("--json", as_json);

  auto* hf = app.add_subcommand("hf", "Heegaard Floer data of a positive surgery");
  std::string hf_what;
  std::string knot_a;
  std::string slope_a;
  hf->add_option("what", hf_what, "d | rank | graded")->required()->check(CLI::IsMember({"d", "rank", "graded"}));
  hf->add_option("knot", knot_a, "T(r,s), C(a,b;T(r,s)), @preset:NAME or @file:PATH")->required();
  hf->add_option("slope", slope_a, "p/q")->required();
  hf->add_flag("--json", as_json);

  auto* cls = app.add_subcommand("classify", "classify a torus or cable knot surgery");
  cls->add_option("knot", knot_a)->required();
  cls->add_option("slope", slope_a)->required();
  cls->add_flag("--json", as_json);

  auto* cmp = app.add_subcommand("compare", "decide whether two surgeries are oriented-homeomorphic");
  std::string knot_b;
  std::string slope_b;
  cmp->add_option("knot1", knot_a)->required();
  cmp->add_option("slope1", slope_a)->required();
  cmp->add_option("knot2", knot_b)->required();
  cmp->add_option("slope2", slope_b)->required();
  cmp->add_flag("--json", as_json);

  auto* br = app.add_subcommand("branched", "first homology order of cyclic branched covers");
  std::int64_t cover = 0;
  std::int64_t ptilde = 0;
  std::string poly;
  br->add_option("knot", knot_a, "knot (omit when --poly is given)");
  br->add_option("--poly", poly, "Alexander polynomial as exponent:coeff,...");
  br->add_option("--cover", cover)->required();
  auto* ptilde_opt = br->add_option("--ptilde", ptilde, "filling parameter of the free cover");
  br->add_flag("--json", as_json);

  auto* cert = app.add_subcommand("certify", "region certificates with audit trails");
  cert->require_subcommand(1);
  std::int64_t cert_r = 0;
  std::int64_t cert_s = 0;
  std::int64_t cert_genus = 0;
  auto* c_threshold = cert->add_subcommand("threshold", "slope above the torus characterizing threshold");
  c_threshold->alias("thm13");
  c_threshold->add_option("r", cert_r)->required();
  c_threshold->add_option("s", cert_s)->required();
  c_threshold->add_option("slope", slope_a)->required();
  auto* c_t52 = cert->add_subcommand("t52", "known characterizing slope of T(5,2)");
  c_t52->alias("thm14");
  c_t52->add_option("slope", slope_a)->required();
  auto* c_profiles = cert->add_subcommand("profiles", "constraint profiles for a knot sharing a T(5,2) surgery");
  c_profiles->add_option("slope", slope_a)->required();
  auto* c_hyp = cert->add_subcommand("hyperbolic", "arithmetic criteria forcing hyperbolic fillings");
  c_hyp->add_option("slope", slope_a)->required();
  c_hyp->add_option("--genus", cert_genus)->required();
  auto* c_sat = cert->add_subcommand("satellite", "satellite exclusion bound for T(r,s)");
  c_sat->add_option("r", cert_r)->required();
  c_sat->add_option("s", cert_s)->required();
  c_sat->add_option("slope", slope_a)->required();
  for (auto* sub : {c_threshold, c_t52, c_profiles, c_hyp, c_sat}) sub->add_flag("--json", as_json);

  auto* search = app.add_subcommand("search", "enumerate lens-space surgery coincidences");
  std::int64_t max_p = 0;
  std::int64_t max_r = 0;
  unsigned threads = 0;
  bool cables = false;
  std::string jsonl_path;
  std::string csv_path;
  search->add_option("--max-p", max_p)->required();
  search->add_flag("--cables", cables);
  search->add_option("--max-r", max_r, "bound on torus knot parameters (0 = none)");
  search->add_option("--threads", threads, "worker threads (0 = hardware)");
  search->add_option("--jsonl", jsonl_path, "write JSON lines here instead of stdout");
  search->add_option("--csv", csv_path, "also write a CSV table");

  auto* fam = app.add_subcommand("family", "verify the infinite lens coincidence family at n");
  std::int64_t fam_n = 0;
  fam->add_option("n", fam_n)->required();
  fam->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dinv->parsed()) {
      const LensSpace l(lens_p, lens_q);
      const DProfile d = lens_d_invariants(l.p(), l.q());
      if (as_json) {
        std::cout << json{{"lens", l.str()}, {"d", profile_json(d)}}.dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < d.size(); ++i) std::cout << i << " " << d[i] << "\n";
      }
    } else if (hf->parsed()) {
      const SurgeryDescription desc{load_knot(knot_a), Slope::parse(slope_a)};
      const auto data = floer_data(reduce_description(desc).knot);
      if (!data) throw std::runtime_error("no Floer data available for " + knot_str(desc.knot));
      const SurgeryDescription r = reduce_description(desc);
      if (hf_what == "d") {
        const DProfile d = surgery_d_invariants(*data, r.slope);
        if (as_json) {
          std::cout << json{{"subject", desc.str()}, {"d", profile_json(d)}}.dump(2) << "\n";
        } else {
          for (std::size_t i = 0; i < d.size(); ++i) std::cout << i << " " << d[i] << "\n";
        }
      } else if (hf_what == "rank") {
        const std::int64_t rank = hf_red_rank(*data, r.slope);
        if (as_json) {
          std::cout << json{{"subject", desc.str()}, {"rank", rank}}.dump(2) << "\n";
        } else {
          std::cout << rank << "\n";
        }
      } else {
        const GradedProfile g = hf_red_graded(*data, r.slope);
        if (as_json) {
          std::cout << json{{"subject", desc.str()}, {"groups", graded_json(g)}}.dump(2) << "\n";
        } else {
          for (std::size_t i = 0; i < g.size(); ++i) {
            std::cout << i << " d=" << g[i].d << " reduced(shifted):";
            for (const auto& [grading, dim] : g[i].shifted_reduced()) std::cout << " F^" << dim << "_(" << grading << ")";
            std::cout << "\n";
          }
        }
      }
    } else if (cls->parsed()) {
      const SurgeryDescription desc{load_knot(knot_a), Slope::parse(slope_a)};
      const auto c = classify(desc);
      if (!c) throw std::runtime_error("no classification available for " + desc.str());
      if (as_json) {
        std::cout << json{{"subject", desc.str()}, {"class", class_json(*c)}}.dump(2) << "\n";
      } else {
        std::cout << class_str(*c) << "\n";
      }
    } else if (cmp->parsed()) {
      const SurgeryDescription a{load_knot(knot_a), Slope::parse(slope_a)};
      const SurgeryDescription b{load_knot(knot_b), Slope::parse(slope_b)};
      const Verdict v = compare_descriptions(a, b);
      if (as_json) {
        std::cout << verdict_json(a, b, v).dump(2) << "\n";
      } else {
        std::cout << verdict_kind_str(v.kind);
        if (!v.reason.empty()) std::cout << ": " << v.reason;
        std::cout << "\n";
        for (const auto& m : v.mismatches) std::cout << "  " << m.invariant << ": " << m.left << " vs " << m.right << "\n";
        for (const auto& m : v.matched) std::cout << "  matched " << m << "\n";
      }
    } else if (br->parsed()) {
      LaurentPoly delta;
      if (!poly.empty()) {
        delta = LaurentPoly::parse_sparse(poly);
      } else if (!knot_a.empty()) {
        delta = alexander(load_knot(knot_a));
      } else {
        throw std::runtime_error("give a knot or --poly");
      }
      const std::optional<std::int64_t> pt = ptilde_opt->count() > 0 ? std::optional(ptilde) : std::nullopt;
      const BigInt order = branched_cover_h1(delta, cover, pt);
      if (as_json) {
        std::cout << json{{"alexander", delta.sparse_str()}, {"cover", cover}, {"h1_order", to_string(order)}}.dump(2)
                  << "\n";
      } else {
        std::cout << order << "\n";
      }
    } else if (cert->parsed()) {
      if (c_threshold->parsed()) {
        print_certificate(torus_threshold_region(cert_r, cert_s, Slope::parse(slope_a)), as_json);
      } else if (c_t52->parsed()) {
        print_certificate(t52_slope_membership(Slope::parse(slope_a)), as_json);
      } else if (c_hyp->parsed()) {
        print_certificate(hyperbolic_exclusions(Slope::parse(slope_a), cert_genus), as_json);
      } else if (c_sat->parsed()) {
        print_certificate(satellite_exclusion_bound(cert_r, cert_s, Slope::parse(slope_a)), as_json);
      } else {
        const ConstraintProfile prof = constraint_profiles(Slope::parse(slope_a));
        json cases = json::array();
        for (const auto& c : prof.cases) {
          cases.push_back({{"label", c.label},
                           {"genus", c.genus},
                           {"fibred", c.fibred},
                           {"alexander", c.alexander},
                           {"n_constraints", c.n_constraints}});
        }
        if (as_json) {
          std::cout << json{{"subject", "T(5,2) " + prof.slope}, {"cases", cases}}.dump(2) << "\n";
        } else {
          for (const auto& c : prof.cases) {
            std::cout << c.label << ": genus " << c.genus << ", " << (c.fibred ? "fibred" : "not fibred")
                      << ", Delta = " << c.alexander;
            for (const auto& n : c.n_constraints) std::cout << ", " << n;
            std::cout << "\n";
          }
        }
      }
    } else if (search->parsed()) {
      const auto hits = search_coincidences(max_p, cables, max_r, threads);
      std::ofstream jsonl_file;
      if (!jsonl_path.empty()) {
        jsonl_file.open(jsonl_path);
        if (!jsonl_file) throw std::runtime_error("cannot write " + jsonl_path);
      }
      std::ostream& out = jsonl_path.empty() ? std::cout : jsonl_file;
      for (const auto& h : hits) out << hit_json(h).dump() << "\n";
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot write " + csv_path);
        csv << "p,slope,first,second,lens_first,lens_second\n";
        for (const auto& h : hits) {
          csv << h.slope.p() << "," << h.slope.str() << "," << csv_quote(knot_str(h.first.knot)) << ","
              << csv_quote(knot_str(h.second.knot)) << "," << csv_quote(h.lens_first.str()) << ","
              << csv_quote(h.lens_second.str()) << "\n";
        }
      }
    } else if (fam->parsed()) {
      const FamilyRecord rec = family_pair(fam_n);
      if (as_json) {
        json j = {{"n", rec.n}, {"p", rec.p}, {"verified", rec.verified}};
        if (rec.first) j["first"] = rec.first->str();
        if (rec.second) j["second"] = rec.second->str();
        if (rec.lens_first) j["lens_first"] = rec.lens_first->str();
        if (rec.lens_second) j["lens_second"] = rec.lens_second->str();
        if (!rec.witness.empty()) j["witness"] = rec.witness;
        std::cout << j.dump(2) << "\n";
      } else if (rec.verified) {
        std::cout << "p=" << rec.p << ": " << rec.first->str() << " -> " << rec.lens_first->str() << ", "
                  << rec.second->str() << " -> " << rec.lens_second->str() << ": verified\n";
      } else {
        std::cout << "n=" << rec.n << ": not verified: " << rec.witness << "\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
