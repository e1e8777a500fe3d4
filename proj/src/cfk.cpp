#include "charslope/cfk.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "charslope/number_theory.hpp"
#include "gf2.hpp"

namespace charslope {

namespace {

constexpr std::string_view kPresetT52 = R"(# T(5,2)
x0 2 0
x1 1 -1
x2 0 -2
x3 -1 -3
x4 -2 -4
x1 -> x0 ^1
x1 -> x2 ^0
x3 -> x2 ^1
x3 -> x4 ^0
)";

constexpr std::string_view kPresetT5m2 = R"(# T(5,-2)
x0 -2 0
x1 -1 1
x2 0 2
x3 1 3
x4 2 4
x0 -> x1 ^1
x2 -> x1 ^0
x2 -> x3 ^1
x4 -> x3 ^0
)";

constexpr std::string_view kPresetUnknot = R"(# unknot
x0 0 0
)";

constexpr int kMaxDepthDoublings = 3;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Quotient of the truncated complex spanned by U^n x with
// -depth <= n <= upper[x], split by Maslov grading.
class TruncatedModel {
 public:
  TruncatedModel(const CfkComplex& c, std::vector<std::int64_t> upper, std::int64_t depth)
      : c_(c), upper_(std::move(upper)), depth_(depth), out_(c.generators().size()) {
    for (const auto& a : c.arrows()) out_[a.source].push_back(a);
    const auto& gens = c.generators();
    index_.resize(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (std::int64_t n = -depth_; n <= upper_[g]; ++n) {
        auto& level = levels_[gens[g].maslov - 2 * n];
        index_[g].push_back(level.cells.size());
        level.cells.emplace_back(g, n);
      }
    }
    min_maslov_ = c.min_maslov();
  }

  // Every grading up to this one is computed without truncation error.
  std::int64_t exact_top() const { return min_maslov_ + 2 * depth_ - 1; }

  std::int64_t lowest_grading() const { return levels_.empty() ? 0 : levels_.begin()->first; }

  bool has_cell(std::size_t g, std::int64_t n) const { return n >= -depth_ && n <= upper_[g]; }

  std::size_t level_size(std::int64_t m) const {
    const auto it = levels_.find(m);
    return it == levels_.end() ? 0 : it->second.cells.size();
  }

  std::size_t cell_index(std::size_t g, std::int64_t n) const {
    return index_[g][static_cast<std::size_t>(n + depth_)];
  }

  const std::vector<std::pair<std::size_t, std::int64_t>>& cells(std::int64_t m) const {
    static const std::vector<std::pair<std::size_t, std::int64_t>> empty;
    const auto it = levels_.find(m);
    return it == levels_.end() ? empty : it->second.cells;
  }

  gf2::Vec boundary(std::size_t g, std::int64_t n, std::int64_t m) const {
    gf2::Vec v(level_size(m - 1));
    for (const auto& a : out_[g]) {
      const std::int64_t tn = n + a.u_power;
      if (has_cell(a.target, tn)) v.flip(cell_index(a.target, tn));
    }
    return v;
  }

  std::int64_t homology_dim(std::int64_t m) { return static_cast<std::int64_t>(homology(m).reps.size()); }

  const gf2::Vec& homology_rep(std::int64_t m, std::size_t i) { return homology(m).reps.at(i); }

  bool is_boundary(std::int64_t m, const gf2::Vec& v) { return homology(m).boundaries.contains(v); }

  gf2::Vec apply_u(std::int64_t m, const gf2::Vec& v) const {
    gf2::Vec out(level_size(m - 2));
    const auto& cs = cells(m);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!v.test(i)) continue;
      const auto [g, n] = cs[i];
      if (has_cell(g, n + 1)) out.flip(cell_index(g, n + 1));
    }
    return out;
  }

  // Image of a chain of `from` under the quotient map onto this model.
  gf2::Vec project(const TruncatedModel& from, std::int64_t m, const gf2::Vec& v) const {
    gf2::Vec out(level_size(m));
    const auto& cs = from.cells(m);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!v.test(i)) continue;
      const auto [g, n] = cs[i];
      if (has_cell(g, n)) out.flip(cell_index(g, n));
    }
    return out;
  }

 private:
  struct Level {
    std::vector<std::pair<std::size_t, std::int64_t>> cells;
  };

  struct Homology {
    gf2::Echelon boundaries;
    std::vector<gf2::Vec> reps;
  };

  const Homology& homology(std::int64_t m) {
    if (const auto it = homology_.find(m); it != homology_.end()) return it->second;
    Homology h;
    const auto& above = cells(m + 1);
    for (const auto& [g, n] : above) h.boundaries.insert(boundary(g, n, m + 1), gf2::Vec());
    const auto& here = cells(m);
    gf2::Echelon images;
    gf2::Echelon span = h.boundaries;
    for (std::size_t i = 0; i < here.size(); ++i) {
      gf2::Vec tag(here.size());
      tag.set(i);
      gf2::Vec cycle;
      if (!images.insert(boundary(here[i].first, here[i].second, m), std::move(tag), &cycle)) {
        if (span.insert(cycle, gf2::Vec())) h.reps.push_back(std::move(cycle));
      }
    }
    return homology_.emplace(m, std::move(h)).first->second;
  }

  const CfkComplex& c_;
  std::vector<std::int64_t> upper_;
  std::int64_t depth_;
  std::int64_t min_maslov_ = 0;
  std::vector<std::vector<CfkArrow>> out_;
  std::vector<std::vector<std::size_t>> index_;
  std::map<std::int64_t, Level> levels_;
  std::map<std::int64_t, Homology> homology_;
};

struct Tower {
  std::int64_t top = 0;
  std::int64_t bottom = 0;
  std::map<std::int64_t, gf2::Vec> chains;  // grading -> representative cycle
};

// Follows U from the top exact grading carrying homology down to the last
// nonzero class. `stable_from` is the first grading where the quotient agrees
// with HF^infinity.
Tower find_tower(TruncatedModel& model, std::int64_t stable_from) {
  const std::int64_t g_top = model.exact_top();
  if (g_top - 1 < stable_from) throw std::logic_error("truncation depth too small for the stable range");
  const std::int64_t d0 = model.homology_dim(g_top);
  const std::int64_t d1 = model.homology_dim(g_top - 1);
  if (d0 + d1 != 1) {
    throw std::invalid_argument("complex does not have rank-one HF^infinity in the stable range");
  }
  Tower t;
  t.top = d0 == 1 ? g_top : g_top - 1;
  std::int64_t m = t.top;
  gf2::Vec v = model.homology_rep(m, 0);
  while (true) {
    t.chains.emplace(m, v);
    gf2::Vec next = model.apply_u(m, v);
    if (model.level_size(m - 2) == 0 || model.is_boundary(m - 2, next)) break;
    v = std::move(next);
    m -= 2;
  }
  t.bottom = m;
  return t;
}

std::int64_t default_depth(const CfkComplex& c, std::int64_t k) {
  const std::int64_t mspan = c.max_maslov() - c.min_maslov();
  const std::int64_t aspan = c.max_alexander() - c.min_alexander();
  const std::int64_t n0 = std::min<std::int64_t>(0, c.min_alexander() - k);
  const std::int64_t needed = (mspan - 2 * n0 + 4) / 2 + 1;
  return std::max(mspan + aspan + (k < 0 ? -k : k) + 4, needed);
}

AkResult a_plus_at_depth(const CfkComplex& c, std::int64_t k, std::int64_t depth) {
  const auto& gens = c.generators();
  std::vector<std::int64_t> upper_a(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) upper_a[g] = std::max<std::int64_t>(0, gens[g].alexander - k);
  TruncatedModel model_a(c, upper_a, depth);
  TruncatedModel model_b(c, std::vector<std::int64_t>(gens.size(), 0), depth);

  const std::int64_t n0 = std::min<std::int64_t>(0, c.min_alexander() - k);
  const std::int64_t stable_a = c.max_maslov() - 2 * n0;
  const std::int64_t stable_b = c.max_maslov();
  const Tower ta = find_tower(model_a, stable_a);
  const Tower tb = find_tower(model_b, stable_b);
  if ((tb.bottom - ta.bottom) % 2 != 0 || tb.bottom < ta.bottom) {
    throw std::logic_error("A_k and B towers are incompatible");
  }

  AkResult r;
  r.k = k;
  r.big_v = (tb.bottom - ta.bottom) / 2;
  r.tower_bottom = ta.bottom;

  // v_k restricted to the tower is U^V: nonzero at the B bottom, zero below it.
  const auto at_b = ta.chains.find(tb.bottom);
  if (at_b == ta.chains.end() ||
      model_b.is_boundary(tb.bottom, model_b.project(model_a, tb.bottom, at_b->second))) {
    throw std::logic_error("v_k does not map the tower onto the B tower bottom");
  }
  if (const auto below = ta.chains.find(tb.bottom - 2); below != ta.chains.end()) {
    if (!model_b.is_boundary(tb.bottom - 2, model_b.project(model_a, tb.bottom - 2, below->second))) {
      throw std::logic_error("v_k is nonzero below the B tower bottom");
    }
  }

  for (std::int64_t m = model_a.lowest_grading(); m <= ta.top; ++m) {
    std::int64_t dim = model_a.homology_dim(m);
    if (m >= ta.bottom && (m - ta.bottom) % 2 == 0) --dim;
    if (dim < 0) throw std::logic_error("tower class missing from homology");
    if (dim == 0) continue;
    if (m >= stable_a) throw std::logic_error("reduced homology in the stable range");
    r.reduced.push_back({m - ta.bottom, dim});
  }
  return r;
}

}  // namespace

CfkComplex::CfkComplex(std::vector<CfkGenerator> generators, std::vector<CfkArrow> arrows)
    : generators_(std::move(generators)), arrows_(std::move(arrows)) {
  validate();
}

void CfkComplex::validate() const {
  if (generators_.empty()) throw std::invalid_argument("complex has no generators");
  std::map<std::string, std::size_t> names;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (!names.emplace(generators_[i].name, i).second) {
      throw std::invalid_argument("duplicate generator '" + generators_[i].name + "'");
    }
  }
  std::vector<std::vector<CfkArrow>> out(generators_.size());
  for (const auto& a : arrows_) {
    if (a.source >= generators_.size() || a.target >= generators_.size()) {
      throw std::invalid_argument("arrow refers to a missing generator");
    }
    const auto& s = generators_[a.source];
    const auto& t = generators_[a.target];
    const std::string label = s.name + " -> " + t.name;
    if (a.u_power < 0 || a.u_power < t.alexander - s.alexander) {
      throw std::invalid_argument("arrow " + label + " does not respect the filtration");
    }
    if (t.maslov - 2 * a.u_power != s.maslov - 1) {
      throw std::invalid_argument("arrow " + label + " does not lower the Maslov grading by one");
    }
    out[a.source].push_back(a);
  }
  for (std::size_t x = 0; x < generators_.size(); ++x) {
    std::map<std::pair<std::size_t, std::int64_t>, int> square;
    for (const auto& a : out[x]) {
      for (const auto& b : out[a.target]) square[{b.target, a.u_power + b.u_power}] ^= 1;
    }
    for (const auto& [key, parity] : square) {
      if (parity != 0) throw std::invalid_argument("d^2 != 0 at generator '" + generators_[x].name + "'");
    }
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> grades;
  std::vector<std::pair<std::int64_t, std::int64_t>> flipped;
  for (const auto& g : generators_) {
    grades.emplace_back(g.alexander, g.maslov);
    flipped.emplace_back(-g.alexander, g.maslov - 2 * g.alexander);
  }
  std::sort(grades.begin(), grades.end());
  std::sort(flipped.begin(), flipped.end());
  if (grades != flipped) throw std::invalid_argument("generators are not symmetric under conjugation");
}

CfkComplex CfkComplex::parse(std::string_view text) {
  std::vector<CfkGenerator> gens;
  std::vector<std::tuple<std::string, std::string, std::int64_t>> pending;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string where = " on line " + std::to_string(line_no);
    if (tok.size() == 4 && tok[1] == "->" && tok[3].starts_with('^')) {
      pending.emplace_back(std::string(tok[0]), std::string(tok[2]),
                           parse_int64(tok[3].substr(1), "U power" + where));
    } else if (tok.size() == 3) {
      gens.push_back({std::string(tok[0]), parse_int64(tok[1], "Alexander grading" + where),
                      parse_int64(tok[2], "Maslov grading" + where)});
    } else {
      throw std::invalid_argument("cannot parse '" + std::string(line) + "'" + where);
    }
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < gens.size(); ++i) index.emplace(gens[i].name, i);
  std::vector<CfkArrow> arrows;
  for (const auto& [src, dst, k] : pending) {
    const auto s = index.find(src);
    const auto t = index.find(dst);
    if (s == index.end() || t == index.end()) {
      throw std::invalid_argument("arrow " + src + " -> " + dst + " names an unknown generator");
    }
    arrows.push_back({s->second, t->second, k});
  }
  return CfkComplex(std::move(gens), std::move(arrows));
}

std::string CfkComplex::to_text() const {
  std::ostringstream os;
  for (const auto& g : generators_) os << g.name << ' ' << g.alexander << ' ' << g.maslov << '\n';
  for (const auto& a : arrows_) {
    os << generators_[a.source].name << " -> " << generators_[a.target].name << " ^" << a.u_power << '\n';
  }
  return os.str();
}

LaurentPoly CfkComplex::euler_characteristic() const {
  std::vector<LaurentPoly::Term> terms;
  for (const auto& g : generators_) terms.emplace_back(g.alexander, pos_mod(g.maslov, 2) == 0 ? 1 : -1);
  return LaurentPoly(std::move(terms));
}

std::int64_t CfkComplex::min_alexander() const {
  return std::min_element(generators_.begin(), generators_.end(),
                          [](const auto& a, const auto& b) { return a.alexander < b.alexander; })
      ->alexander;
}

std::int64_t CfkComplex::max_alexander() const {
  return std::max_element(generators_.begin(), generators_.end(),
                          [](const auto& a, const auto& b) { return a.alexander < b.alexander; })
      ->alexander;
}

std::int64_t CfkComplex::min_maslov() const {
  return std::min_element(generators_.begin(), generators_.end(),
                          [](const auto& a, const auto& b) { return a.maslov < b.maslov; })
      ->maslov;
}

std::int64_t CfkComplex::max_maslov() const {
  return std::max_element(generators_.begin(), generators_.end(),
                          [](const auto& a, const auto& b) { return a.maslov < b.maslov; })
      ->maslov;
}

CfkComplex staircase(const LSpaceForm& form) {
  std::vector<std::int64_t> e;
  for (auto it = form.exponents.rbegin(); it != form.exponents.rend(); ++it) e.push_back(*it);
  e.push_back(0);
  for (const auto n : form.exponents) e.push_back(-n);

  std::vector<CfkGenerator> gens;
  std::vector<CfkArrow> arrows;
  std::int64_t m = 0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (j > 0) {
      if (j % 2 == 1) {
        m = m - 2 * (e[j - 1] - e[j]) + 1;
        arrows.push_back({j, j - 1, e[j - 1] - e[j]});
      } else {
        m = m - 1;
        arrows.push_back({j - 1, j, 0});
      }
    }
    gens.push_back({"x" + std::to_string(j), e[j], m});
  }
  return CfkComplex(std::move(gens), std::move(arrows));
}

CfkComplex mirror(const CfkComplex& c) {
  std::vector<CfkGenerator> gens;
  for (const auto& g : c.generators()) gens.push_back({g.name, -g.alexander, -g.maslov});
  std::vector<CfkArrow> arrows;
  for (const auto& a : c.arrows()) arrows.push_back({a.target, a.source, a.u_power});
  return CfkComplex(std::move(gens), std::move(arrows));
}

std::string_view preset_text(std::string_view name) {
  if (name == "T52") return kPresetT52;
  if (name == "T5m2") return kPresetT5m2;
  if (name == "unknot") return kPresetUnknot;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

CfkComplex preset(std::string_view name) { return CfkComplex::parse(preset_text(name)); }

std::vector<std::string> preset_names() { return {"T52", "T5m2", "unknot"}; }

std::int64_t AkResult::reduced_dim() const {
  std::int64_t total = 0;
  for (const auto& s : reduced) total += s.dim;
  return total;
}

AkResult a_plus(const CfkComplex& c, std::int64_t k, std::int64_t depth) {
  if (depth > 0) return a_plus_at_depth(c, k, depth);
  std::int64_t d = default_depth(c, k);
  AkResult prev = a_plus_at_depth(c, k, d);
  for (int i = 0; i < kMaxDepthDoublings; ++i) {
    d *= 2;
    AkResult next = a_plus_at_depth(c, k, d);
    if (next == prev) return next;
    prev = std::move(next);
  }
  throw std::runtime_error("A_k homology did not stabilise under deeper truncation");
}

std::int64_t big_h(const CfkComplex& c, std::int64_t k) { return a_plus(c, -k).big_v; }

}  // namespace charslope
