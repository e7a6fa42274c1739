#include "lik/semantics.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "lik/errors.hpp"

namespace lik {

Model::Model(std::vector<std::string> worlds)
    : worlds_(std::move(worlds)), le_(worlds_.size() * worlds_.size(), 0), r_(worlds_.size() * worlds_.size(), 0) {}

std::size_t Model::index(std::string_view id) const {
  for (std::size_t i = 0; i < worlds_.size(); ++i)
    if (worlds_[i] == id) return i;
  throw UnknownWorld("unknown world '" + std::string(id) + "'");
}

bool Model::val(const std::string& atom, std::size_t w) const {
  auto it = val_.find(atom);
  return it != val_.end() && it->second.at(w) != 0;
}

void Model::set_val(const std::string& atom, std::size_t w, bool v) {
  auto& row = val_[atom];
  row.resize(size(), 0);
  row.at(w) = v;
}

std::string_view property_name(FrameProperty p) {
  switch (p) {
    case FrameProperty::preorder: return "preorder";
    case FrameProperty::heredity: return "heredity";
    case FrameProperty::fc: return "fc";
    case FrameProperty::dc: return "dc";
    case FrameProperty::serial: return "serial";
    case FrameProperty::reflexive: return "reflexive";
    case FrameProperty::transitive: return "transitive";
  }
  return "?";
}

bool FrameReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.ok; });
}

const PropertyResult* FrameReport::find(FrameProperty p) const {
  for (const auto& r : results)
    if (r.property == p) return &r;
  return nullptr;
}

std::vector<FrameProperty> frame_properties(Logic logic) {
  std::vector<FrameProperty> out{FrameProperty::preorder, FrameProperty::heredity, FrameProperty::fc, FrameProperty::dc};
  if (logic == Logic::LIKD) out.push_back(FrameProperty::serial);
  if (logic == Logic::LIKT) out.push_back(FrameProperty::reflexive);
  return out;
}

namespace {

PropertyResult check_one(const Model& m, FrameProperty p) {
  const std::size_t n = m.size();
  const auto& W = m.worlds();
  PropertyResult res{p, true, {}, {}};
  auto fail = [&](std::vector<std::size_t> ws) {
    res.ok = false;
    for (auto w : ws) res.witness.push_back(W[w]);
  };
  switch (p) {
    case FrameProperty::preorder:
      for (std::size_t x = 0; x < n; ++x)
        if (!m.le(x, x)) return fail({x}), res;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (m.le(x, y))
            for (std::size_t z = 0; z < n; ++z)
              if (m.le(y, z) && !m.le(x, z)) return fail({x, y, z}), res;
      return res;
    case FrameProperty::transitive:
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (m.r(x, y))
            for (std::size_t z = 0; z < n; ++z)
              if (m.r(y, z) && !m.r(x, z)) return fail({x, y, z}), res;
      return res;
    case FrameProperty::heredity:
      for (const auto& [atom, row] : m.valuation())
        for (std::size_t x = 0; x < n; ++x)
          if (row[x])
            for (std::size_t y = 0; y < n; ++y)
              if (m.le(x, y) && !row[y]) {
                res.atom = atom;
                return fail({x, y}), res;
              }
      return res;
    case FrameProperty::fc:
      // x ≤ x′, R x y  ⟹  ∃y′. R x′ y′ ∧ y ≤ y′
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
          if (!m.le(x, x2)) continue;
          for (std::size_t y = 0; y < n; ++y) {
            if (!m.r(x, y)) continue;
            bool found = false;
            for (std::size_t y2 = 0; y2 < n && !found; ++y2) found = m.r(x2, y2) && m.le(y, y2);
            if (!found) return fail({x, x2, y}), res;
          }
        }
      return res;
    case FrameProperty::dc:
      // x ≤ x′, R x′ y  ⟹  ∃y′. R x y′ ∧ y′ ≤ y
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
          if (!m.le(x, x2)) continue;
          for (std::size_t y = 0; y < n; ++y) {
            if (!m.r(x2, y)) continue;
            bool found = false;
            for (std::size_t y2 = 0; y2 < n && !found; ++y2) found = m.r(x, y2) && m.le(y2, y);
            if (!found) return fail({x, x2, y}), res;
          }
        }
      return res;
    case FrameProperty::serial:
      for (std::size_t x = 0; x < n; ++x) {
        bool any = false;
        for (std::size_t y = 0; y < n && !any; ++y) any = m.r(x, y);
        if (!any) return fail({x}), res;
      }
      return res;
    case FrameProperty::reflexive:
      for (std::size_t x = 0; x < n; ++x)
        if (!m.r(x, x)) return fail({x}), res;
      return res;
  }
  return res;
}

using Truth = std::vector<char>;

class Evaluator {
 public:
  explicit Evaluator(const Model& m) : m_(m) {}

  const Truth& eval(Formula f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    const std::size_t n = m_.size();
    Truth t(n, 0);
    switch (f.kind()) {
      case Connective::atom:
        for (std::size_t w = 0; w < n; ++w) t[w] = m_.val(f.name(), w);
        break;
      case Connective::top:
        std::fill(t.begin(), t.end(), 1);
        break;
      case Connective::bot:
        break;
      case Connective::conj: {
        Truth a = eval(f.left());
        const Truth& b = eval(f.right());
        for (std::size_t w = 0; w < n; ++w) t[w] = a[w] && b[w];
        break;
      }
      case Connective::disj: {
        Truth a = eval(f.left());
        const Truth& b = eval(f.right());
        for (std::size_t w = 0; w < n; ++w) t[w] = a[w] || b[w];
        break;
      }
      case Connective::imp: {
        Truth a = eval(f.left());
        const Truth& b = eval(f.right());
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = true;
          for (std::size_t v = 0; v < n && ok; ++v)
            if (m_.le(w, v) && a[v] && !b[v]) ok = false;
          t[w] = ok;
        }
        break;
      }
      case Connective::box: {
        const Truth& a = eval(f.body());
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = true;
          for (std::size_t v = 0; v < n && ok; ++v)
            if (m_.r(w, v) && !a[v]) ok = false;
          t[w] = ok;
        }
        break;
      }
      case Connective::dia: {
        const Truth& a = eval(f.body());
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = false;
          for (std::size_t v = 0; v < n && !ok; ++v)
            if (m_.r(w, v) && a[v]) ok = true;
          t[w] = ok;
        }
        break;
      }
    }
    return memo_.emplace(f, std::move(t)).first->second;
  }

  Truth eval_sequent(const Sequent& s) {
    const std::size_t n = m_.size();
    Truth t(n, 0);
    for (Formula a : s.ant()) {
      const Truth& x = eval(a);
      for (std::size_t w = 0; w < n; ++w)
        if (!x[w]) t[w] = 1;
    }
    for (Formula a : s.suc()) {
      const Truth& x = eval(a);
      for (std::size_t w = 0; w < n; ++w)
        if (x[w]) t[w] = 1;
    }
    auto block = [&](const Sequent& b, bool modal) {
      Truth x = eval_sequent(b);
      for (std::size_t w = 0; w < n; ++w) {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v)
          if ((modal ? m_.r(w, v) : m_.le(w, v)) && !x[v]) ok = false;
        if (ok) t[w] = 1;
      }
    };
    for (std::size_t i = 0; i < s.imp_count(); ++i) block(s.imp(i), false);
    for (std::size_t i = 0; i < s.mod_count(); ++i) block(s.mod(i), true);
    return t;
  }

 private:
  const Model& m_;
  std::unordered_map<Formula, Truth> memo_;
};

}  // namespace

FrameReport check_frame(const Model& m, const std::vector<FrameProperty>& props) {
  FrameReport rep;
  for (auto p : props) rep.results.push_back(check_one(m, p));
  return rep;
}

std::vector<char> truth_set(const Model& m, Formula f) { return Evaluator(m).eval(f); }

bool forces(const Model& m, std::size_t w, Formula f) {
  if (w >= m.size()) throw UnknownWorld("world index out of range");
  return truth_set(m, f)[w] != 0;
}

bool forces(const Model& m, std::string_view world, Formula f) { return forces(m, m.index(world), f); }

bool forces_sequent(const Model& m, std::size_t w, const Sequent& s) {
  if (w >= m.size()) throw UnknownWorld("world index out of range");
  return Evaluator(m).eval_sequent(s)[w] != 0;
}

bool forces_sequent(const Model& m, std::string_view world, const Sequent& s) {
  return forces_sequent(m, m.index(world), s);
}

Model extract_countermodel(const Sequent& leaf, Logic logic) {
  if (is_axiomatic(leaf)) throw NotSaturated("leaf is axiomatic");
  if (global_saturation_level(leaf, logic) != Level::r4) throw NotSaturated("leaf is not global-saturated");
  auto nodes = descendants(leaf, Relation::plus);
  std::vector<std::string> ids;
  for (const auto& [pos, t] : nodes) ids.push_back(pos.to_string());
  Model m(ids);
  const std::size_t n = nodes.size();
  for (std::size_t a = 0; a < n; ++a) {
    const Sequent& ta = nodes[a].second;
    for (std::size_t b = 0; b < n; ++b) {
      if (structurally_included(ta, nodes[b].second)) m.set_le(a, b);
      const Position& pb = nodes[b].first;
      if (!pb.is_root() && pb.steps().back().kind == BlockKind::mod && pb.parent() == nodes[a].first) m.set_r(a, b);
    }
    if (logic == Logic::LIKT || (logic == Logic::LIKD && ta.mod_count() == 0)) m.set_r(a, a);
    for (Formula f : ta.ant())
      if (f.is_atom()) m.set_val(f.name(), a);
  }
  // atoms of the leaf that are true nowhere still get a row
  for (const auto& [pos, t] : nodes) {
    for (Formula f : t.suc())
      for (const auto& p : atoms_of(f))
        if (!m.valuation().count(p)) m.set_val(p, 0, false);
    for (Formula f : t.ant())
      for (const auto& p : atoms_of(f))
        if (!m.valuation().count(p)) m.set_val(p, 0, false);
  }
  return m;
}

CountermodelReport verify_countermodel(const Model& m, const Sequent& leaf, std::optional<Formula> goal, Logic logic) {
  CountermodelReport rep;
  rep.frame = check_frame(m, frame_properties(logic));
  Evaluator ev(m);
  for (const auto& [pos, t] : descendants(leaf, Relation::plus)) {
    const std::string id = pos.to_string();
    std::size_t w;
    try {
      w = m.index(id);
    } catch (const UnknownWorld&) {
      rep.truth_failures.push_back(id + ": no such world");
      continue;
    }
    for (Formula f : t.ant())
      if (!ev.eval(f)[w]) rep.truth_failures.push_back(id + ": " + render(f) + " not forced");
    for (Formula f : t.suc())
      if (ev.eval(f)[w]) rep.truth_failures.push_back(id + ": " + render(f) + " forced");
  }
  if (m.size() > 0) {
    const std::size_t root = m.index(Position{}.to_string());
    rep.root_falsifies = goal ? !ev.eval(*goal)[root] : !ev.eval_sequent(leaf)[root];
  }
  return rep;
}

// ---- bounded oracle ----

namespace {

constexpr std::size_t kMaxOracleWorlds = 4;

struct Frame {
  std::array<std::uint8_t, kMaxOracleWorlds> up{};  // up[x]: worlds y with x ≤ y
  std::array<std::uint8_t, kMaxOracleWorlds> r{};
  std::vector<std::uint8_t> upsets;
};

bool frame_ok(const Frame& f, std::size_t n, Logic logic) {
  std::array<std::uint8_t, kMaxOracleWorlds> down{};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (f.up[x] >> y & 1) down[y] |= static_cast<std::uint8_t>(1u << x);
  for (std::size_t x = 0; x < n; ++x) {
    if (logic == Logic::LIKD && f.r[x] == 0) return false;
    if (logic == Logic::LIKT && !(f.r[x] >> x & 1)) return false;
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (!(f.up[x] >> x2 & 1)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if ((f.r[x] >> y & 1) && (f.r[x2] & f.up[y]) == 0) return false;    // FC
        if ((f.r[x2] >> y & 1) && (f.r[x] & down[y]) == 0) return false;    // DC
      }
    }
  }
  return true;
}

// encoding used to pick one representative per isomorphism class
std::uint64_t frame_code(const Frame& f, std::size_t n, const std::array<std::size_t, kMaxOracleWorlds>& perm) {
  std::uint64_t code = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      code = code << 2 | static_cast<std::uint64_t>((f.up[perm[x]] >> perm[y] & 1) << 1 | (f.r[perm[x]] >> perm[y] & 1));
    }
  return code;
}

std::vector<Frame> enumerate_frames(std::size_t n, Logic logic) {
  std::vector<Frame> out;
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y) off.emplace_back(x, y);
  std::vector<std::array<std::size_t, kMaxOracleWorlds>> perms;
  {
    std::array<std::size_t, kMaxOracleWorlds> p{};
    std::iota(p.begin(), p.begin() + static_cast<long>(n), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.begin() + static_cast<long>(n)));
  }
  for (std::uint32_t lm = 0; lm < (1u << off.size()); ++lm) {
    Frame f;
    for (std::size_t x = 0; x < n; ++x) f.up[x] = static_cast<std::uint8_t>(1u << x);
    for (std::size_t b = 0; b < off.size(); ++b)
      if (lm >> b & 1) f.up[off[b].first] |= static_cast<std::uint8_t>(1u << off[b].second);
    bool trans = true;
    for (std::size_t x = 0; x < n && trans; ++x)
      for (std::size_t y = 0; y < n && trans; ++y)
        if ((f.up[x] >> y & 1) && (f.up[y] & ~f.up[x])) trans = false;
    if (!trans) continue;
    for (std::uint32_t rm = 0; rm < (1u << (n * n)); ++rm) {
      for (std::size_t x = 0; x < n; ++x) f.r[x] = static_cast<std::uint8_t>(rm >> (x * n) & ((1u << n) - 1));
      if (!frame_ok(f, n, logic)) continue;
      const std::uint64_t mine = frame_code(f, n, perms.front());
      bool minimal = true;
      for (std::size_t k = 1; k < perms.size() && minimal; ++k) minimal = frame_code(f, n, perms[k]) >= mine;
      if (!minimal) continue;
      f.upsets.clear();
      for (std::uint32_t u = 0; u < (1u << n); ++u) {
        bool closed = true;
        for (std::size_t x = 0; x < n && closed; ++x)
          if ((u >> x & 1) && (f.up[x] & ~u)) closed = false;
        if (closed) f.upsets.push_back(static_cast<std::uint8_t>(u));
      }
      out.push_back(f);
    }
  }
  return out;
}

const std::vector<Frame>& frames_for(std::size_t n, Logic logic) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, std::vector<Frame>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(n, static_cast<int>(logic));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_frames(n, logic)).first;
  return it->second;
}

struct Op {
  Connective c;
  std::size_t a = 0, b = 0;  // operand slots or atom index
};

struct Program {
  std::vector<Op> ops;
  std::vector<std::string> atoms;
};

Program compile(Formula f) {
  Program p;
  p.atoms = atoms_of(f);
  std::unordered_map<Formula, std::size_t> slot;
  auto go = [&](auto&& self, Formula g) -> std::size_t {
    if (auto it = slot.find(g); it != slot.end()) return it->second;
    Op op{g.kind()};
    switch (g.kind()) {
      case Connective::atom:
        op.a = static_cast<std::size_t>(std::find(p.atoms.begin(), p.atoms.end(), g.name()) - p.atoms.begin());
        break;
      case Connective::conj:
      case Connective::disj:
      case Connective::imp:
        op.a = self(self, g.left());
        op.b = self(self, g.right());
        break;
      case Connective::box:
      case Connective::dia:
        op.a = self(self, g.body());
        break;
      default:
        break;
    }
    p.ops.push_back(op);
    return slot[g] = p.ops.size() - 1;
  };
  go(go, f);
  return p;
}

std::uint8_t run(const Program& p, const Frame& f, std::size_t n, const std::uint8_t* val, std::uint8_t* v) {
  const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1);
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    const Op& op = p.ops[i];
    std::uint8_t m = 0;
    switch (op.c) {
      case Connective::atom: m = val[op.a]; break;
      case Connective::top: m = full; break;
      case Connective::bot: m = 0; break;
      case Connective::conj: m = v[op.a] & v[op.b]; break;
      case Connective::disj: m = v[op.a] | v[op.b]; break;
      case Connective::imp: {
        const std::uint8_t bad = v[op.a] & static_cast<std::uint8_t>(~v[op.b]);
        for (std::size_t x = 0; x < n; ++x)
          if ((f.up[x] & bad) == 0) m |= static_cast<std::uint8_t>(1u << x);
        break;
      }
      case Connective::box:
        for (std::size_t x = 0; x < n; ++x)
          if ((f.r[x] & ~v[op.a]) == 0) m |= static_cast<std::uint8_t>(1u << x);
        break;
      case Connective::dia:
        for (std::size_t x = 0; x < n; ++x)
          if (f.r[x] & v[op.a]) m |= static_cast<std::uint8_t>(1u << x);
        break;
    }
    v[i] = m;
  }
  return v[p.ops.size() - 1];
}

}  // namespace

OracleResult brute_force_status(Formula f, Logic logic, std::size_t max_worlds) {
  if (max_worlds > kMaxOracleWorlds) throw PreconditionViolation("oracle bound is capped at 4 worlds");
  const Program prog = compile(f);
  const std::size_t k = prog.atoms.size();
  std::vector<std::uint8_t> slots(prog.ops.size());
  std::vector<std::uint8_t> val(k);
  std::vector<std::size_t> choice(k);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const std::uint8_t full = static_cast<std::uint8_t>((1u << n) - 1);
    for (const Frame& fr : frames_for(n, logic)) {
      const std::size_t u = fr.upsets.size();
      std::fill(choice.begin(), choice.end(), 0);
      while (true) {
        for (std::size_t i = 0; i < k; ++i) val[i] = fr.upsets[choice[i]];
        const std::uint8_t m = run(prog, fr, n, val.data(), slots.data());
        if ((m & full) != full) {
          std::vector<std::string> ids;
          for (std::size_t x = 0; x < n; ++x) ids.push_back("w" + std::to_string(x));
          Model model(ids);
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
              model.set_le(x, y, fr.up[x] >> y & 1);
              model.set_r(x, y, fr.r[x] >> y & 1);
            }
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t x = 0; x < n; ++x) model.set_val(prog.atoms[i], x, val[i] >> x & 1);
          std::size_t w = 0;
          while (m >> w & 1) ++w;
          return {true, std::move(model), ids[w]};
        }
        std::size_t i = 0;
        while (i < k && ++choice[i] == u) choice[i++] = 0;
        if (i == k) break;
      }
    }
  }
  return {};
}

}  // namespace lik
