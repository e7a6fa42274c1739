#include "lik/search.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lik/errors.hpp"

namespace lik {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::provable: return "PROVABLE";
    case Verdict::unprovable: return "UNPROVABLE";
    case Verdict::budget_exhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

// ---- derivation ----

Derivation::Derivation(Sequent root) {
  DerivationNode n;
  n.axiomatic = is_axiomatic(root);
  n.sequent = std::move(root);
  nodes_.push_back(std::move(n));
}

std::vector<std::size_t> Derivation::leaves(std::size_t under) const {
  std::vector<std::size_t> out, stack{under};
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    const auto& ch = nodes_.at(n).children;
    if (ch.empty()) out.push_back(n);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<std::size_t> Derivation::open_leaves(std::size_t under) const {
  std::vector<std::size_t> out;
  for (auto l : leaves(under))
    if (!nodes_[l].axiomatic) out.push_back(l);
  return out;
}

std::vector<std::size_t> Derivation::extend(std::size_t leaf, AppliedRule rule, std::vector<Sequent> premises) {
  if (!is_leaf(leaf)) throw PreconditionViolation("derivation node is not a leaf");
  std::vector<std::size_t> ids;
  for (auto& p : premises) {
    DerivationNode n;
    n.axiomatic = is_axiomatic(p);
    n.sequent = std::move(p);
    n.parent = leaf;
    ids.push_back(nodes_.size());
    nodes_.push_back(std::move(n));
  }
  nodes_[leaf].rule = std::move(rule);
  nodes_[leaf].children = ids;
  return ids;
}

Level Derivation::level(std::size_t i, Logic logic) const {
  auto key = std::make_pair(i, logic);
  if (auto it = levels_.find(key); it != levels_.end()) return it->second;
  Level l = global_saturation_level(nodes_.at(i).sequent, logic);
  levels_.emplace(key, l);
  return l;
}

// ---- tracking record and realization ----

namespace {

void sort_unique(std::vector<Formula>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<Formula>& v, Formula f) { return std::find(v.begin(), v.end(), f) != v.end(); }

constexpr RuleId kLeftRules[] = {RuleId::AndL, RuleId::OrL, RuleId::ImpL, RuleId::BoxL, RuleId::DiaL, RuleId::TBox};

void record_children(const Sequent& t, const Position& pos, const std::vector<Formula>& g, Logic logic,
                     TrackingRecord& rec) {
  for (std::size_t k = 0; k < t.mod_count(); ++k) {
    const Sequent& c = t.mod(k);
    std::vector<Formula> out, work;
    auto push = [&](Formula f) {
      if (!contains(out, f)) {
        out.push_back(f);
        work.push_back(f);
      }
    };
    for (Formula f : g) {
      if (f.is(Connective::box)) push(f.body());
      if (f.is(Connective::dia) && c.has_ant(f.body())) push(f.body());
    }
    while (!work.empty()) {
      Formula f = work.back();
      work.pop_back();
      switch (f.kind()) {
        case Connective::conj:
          push(f.left());
          push(f.right());
          break;
        case Connective::disj:
          if (c.has_ant(f.left())) push(f.left());
          if (c.has_ant(f.right())) push(f.right());
          break;
        case Connective::imp:
          if (c.has_ant(f.right())) push(f.right());
          break;
        case Connective::box:
          // reflexive frames: the (T□) saturation of the block has to survive realization
          if (logic == Logic::LIKT && c.has_ant(f.body())) push(f.body());
          break;
        default:
          break;
      }
    }
    for (Formula f : out)
      if (!c.has_ant(f))
        throw PreconditionViolation("tracking record leaves the antecedent at " +
                                    pos.child(BlockKind::mod, k).to_string());
    sort_unique(out);
    const Position cp = pos.child(BlockKind::mod, k);
    rec[cp] = out;
    record_children(c, cp, out, logic, rec);
  }
}

}  // namespace

bool left_saturated(const Sequent& s, Logic logic) {
  for (RuleId r : kLeftRules) {
    if (r == RuleId::TBox && logic != Logic::LIKT) continue;
    if (!saturation_holds(s, r, logic)) return false;
  }
  for (std::size_t k = 0; k < s.mod_count(); ++k)
    if (!left_saturated(s.mod(k), logic)) return false;
  return true;
}

TrackingRecord tracking_record(const Sequent& s, const std::vector<Formula>& gamma, Logic logic) {
  if (!left_saturated(s, logic)) throw PreconditionViolation("tracking record needs a left-saturated sequent");
  TrackingRecord rec;
  std::vector<Formula> root;
  for (Formula f : gamma)
    if (s.has_ant(f)) root.push_back(f);
  sort_unique(root);
  rec[Position{}] = root;
  record_children(s, Position{}, root, logic, rec);
  return rec;
}

Sequent realize(const Sequent& s, const Position& source_pos, const Position& sharp_pos, Logic logic) {
  if (!valid_position(s, source_pos) || !valid_position(s, sharp_pos) || sharp_pos.is_root())
    throw PreconditionViolation("realization positions do not address blocks");
  const Sequent& src = subsequent_at(s, source_pos);
  const Sequent& enclosing = subsequent_at(s, sharp_pos.parent());
  for (Formula f : enclosing.ant())
    if (!src.has_ant(f)) throw PreconditionViolation("antecedent " + render(f) + " is missing from the source");
  const Sequent& blk = subsequent_at(s, sharp_pos);
  if (!blk.origin() || !source_pos.is_prefix_of(*blk.origin()) || *blk.origin() == source_pos)
    throw PreconditionViolation("block at " + sharp_pos.to_string() + " carries no usable annotation");
  const TrackingRecord rec = tracking_record(src, enclosing.ant(), logic);
  std::function<Sequent(const Sequent&)> f = [&](const Sequent& t) {
    if (!t.origin()) throw PreconditionViolation("unannotated block inside an annotated one");
    auto it = rec.find(source_pos.relative(*t.origin()));
    if (it == rec.end()) throw PreconditionViolation("annotation " + t.origin()->to_string() + " is not a modal descendant");
    Sequent out(SequentMode::set);
    for (Formula a : it->second) out.add_ant(a);
    for (Formula a : t.suc()) out.add_suc(a);
    for (std::size_t k = 0; k < t.mod_count(); ++k) out.append_block(BlockKind::mod, f(t.mod(k)));
    for (std::size_t k = 0; k < t.imp_count(); ++k) out.append_block(BlockKind::imp, t.imp(k));
    out.set_origin(t.origin());
    return out;
  };
  return replace_at(s, sharp_pos, f(blk));
}

// ---- engine ----

Engine::Engine(Sequent root, Logic logic, SearchOptions options) : d_(std::move(root)), logic_(logic), opt_(options) {}

void Engine::tick() {
  if (++steps_ > opt_.max_steps) throw BudgetExceeded("step budget of " + std::to_string(opt_.max_steps) + " exceeded");
}

std::size_t Engine::add(std::size_t leaf, RuleId r, const Position& pos, const Principal& p,
                        std::vector<Sequent> premises) {
  tick();
  ++stats_.rule_applications;
  if (opt_.check_invariants) {
    const std::size_t md = md_sequent(d_.node(leaf).sequent);
    for (const auto& s : premises)
      if (md_sequent(s) != md) {
        ++stats_.md_violations;
        stats_.messages.push_back(std::string(rule_name(r)) + " at " + pos.to_string() + " changed the modal degree");
      }
  }
  return d_.extend(leaf, AppliedRule{r, pos, p}, std::move(premises)).front();
}

namespace {

std::vector<Sequent> premises_at(const Sequent& root, RuleId r, const Principal& p, const Position& pos) {
  std::vector<Sequent> out;
  for (auto& prem : local_premises(subsequent_at(root, pos), r, p, pos)) out.push_back(replace_at(root, pos, std::move(prem)));
  return out;
}

bool linked_to(const Sequent& blk, const Position& target) { return blk.origin() && *blk.origin() == target; }

// Structural inclusion without condition (iii), at every depth.
bool simulated(const Sequent& x, const Sequent& y) {
  for (Formula f : x.ant())
    if (!y.has_ant(f)) return false;
  for (std::size_t i = 0; i < x.mod_count(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < y.mod_count() && !found; ++j) found = simulated(x.mod(i), y.mod(j));
    if (!found) return false;
  }
  return true;
}

// Marks the block an (inter→) step appended inside the implication block at
// ipos with the position of its source.
void tag_copy(Sequent& prem, const Position& ipos, std::size_t before, const Position& src) {
  const Sequent& ib = subsequent_at(prem, ipos);
  if (ib.mod_count() <= before) return;
  Sequent copy = ib.mod(before);
  copy.set_origin(src);
  prem = replace_at(prem, ipos.child(BlockKind::mod, before), std::move(copy));
}

template <class Pred>
std::optional<std::pair<RuleId, Principal>> first_instance(const Sequent& t, Logic logic, Pred pred) {
  for (auto& [r, p] : local_instances(t, logic, Variant::cumulative))
    if (pred(r)) return std::make_pair(r, p);
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> Engine::exp1(std::size_t leaf, const Position& target) {
  std::vector<std::size_t> out, stack{leaf};
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    const DerivationNode& node = d_.node(n);
    std::optional<std::pair<RuleId, Principal>> inst;
    if (!node.axiomatic)
      inst = first_instance(subsequent_at(node.sequent, target), logic_, [&](RuleId r) { return in_r1(r, logic_); });
    if (!inst) {
      out.push_back(n);
      continue;
    }
    auto prem = premises_at(node.sequent, inst->first, inst->second, target);
    const std::size_t first = add(n, inst->first, target, inst->second, std::move(prem));
    const auto& kids = d_.node(n).children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    (void)first;
  }
  return out;
}

std::vector<std::size_t> Engine::exp2(std::size_t leaf, const Position& target) {
  std::size_t cur = leaf;
  auto step = [&](auto pred) {
    while (!d_.node(cur).axiomatic) {
      const Sequent& s = d_.node(cur).sequent;
      auto inst = first_instance(subsequent_at(s, target), logic_, pred);
      if (!inst) return;
      cur = add(cur, inst->first, target, inst->second, premises_at(s, inst->first, inst->second, target));
    }
  };
  while (opt_.repair_links && !d_.node(cur).axiomatic) {
    const Sequent& s = d_.node(cur).sequent;
    const Sequent& t = subsequent_at(s, target);
    auto inst = first_instance(t, logic_, [](RuleId r) { return r == RuleId::Trans || r == RuleId::InterRight; });
    if (!inst) break;
    const auto& [r, p] = *inst;
    if (r == RuleId::Trans) {
      cur = add(cur, r, target, p, premises_at(s, r, p, target));
      continue;
    }
    const Position src = target.child(BlockKind::mod, *p.mod);
    const Position ipos = target.child(BlockKind::imp, *p.imp);
    const Sequent& ib = t.imp(*p.imp);
    std::optional<std::size_t> k;
    for (std::size_t j = 0; j < ib.mod_count() && !k; ++j)
      if (linked_to(ib.mod(j), src)) k = j;
    if (k) {
      const std::size_t next = link_repair(cur, src, ipos.child(BlockKind::mod, *k));
      if (next != cur) {
        cur = next;
        continue;
      }
    }
    // later rounds repair the tagged copy in place
    const std::size_t before = ib.mod_count();
    auto prem = premises_at(s, r, p, target);
    tag_copy(prem.front(), ipos, before, src);
    cur = add(cur, r, target, p, std::move(prem));
  }
  step([](RuleId r) { return r == RuleId::Trans || r == RuleId::InterRight; });
  if (logic_ == Logic::LIKD) step([](RuleId r) { return r == RuleId::D; });
  return {cur};
}

std::vector<std::size_t> Engine::exp3(std::size_t leaf, const Position& target) {
  std::size_t cur = leaf;
  while (!d_.node(cur).axiomatic) {
    const Sequent& s = d_.node(cur).sequent;
    auto inst = first_instance(subsequent_at(s, target), logic_,
                               [](RuleId r) { return r == RuleId::ImpR1 || r == RuleId::ImpR2; });
    if (!inst) break;
    cur = add(cur, inst->first, target, inst->second, premises_at(s, inst->first, inst->second, target));
  }
  return {cur};
}

void Engine::procedure0(std::size_t node) {
  while (true) {
    const auto open = d_.open_leaves(node);
    if (open.empty()) return;
    for (auto l : open)
      if (d_.level(l, logic_) >= Level::r3) return;
    const std::size_t leaf = open.front();
    const Level lvl = d_.level(leaf, logic_);
    const Sequent s = d_.node(leaf).sequent;
    std::vector<Position> targets;
    for (const auto& [pos, t] : descendants(s, Relation::plus))
      if (saturation_level(t, logic_) <= lvl) targets.push_back(pos);
    std::vector<std::size_t> current{leaf};
    const std::size_t before = d_.size();
    for (const auto& target : targets) {
      std::vector<std::size_t> next;
      for (auto l : current) {
        if (d_.node(l).axiomatic) {
          next.push_back(l);
          continue;
        }
        std::vector<std::size_t> got;
        switch (lvl) {
          case Level::none: got = exp1(l, target); break;
          case Level::r1: got = exp2(l, target); break;
          default: got = exp3(l, target); break;
        }
        next.insert(next.end(), got.begin(), got.end());
      }
      current = std::move(next);
    }
    if (d_.size() == before)
      throw Error("procedure0: no rule applies at level " + std::to_string(static_cast<int>(lvl)) + " in " + render(s));
  }
}

void Engine::check_realization(const Sequent& s, const Position& block, const Position& source) {
  ++stats_.realizations;
  if (!opt_.check_invariants) return;
  const Sequent& b = subsequent_at(s, block);
  const Sequent& parent = subsequent_at(s, block.parent());
  bool ok = structurally_included(b, subsequent_at(s, source));
  if (!ok) stats_.messages.push_back("realized block " + block.to_string() + " is not included in " + source.to_string());
  bool left = left_saturated(b, logic_);
  for (Formula f : parent.ant())
    if (f.is(Connective::box) && !b.has_ant(f.body())) left = false;
  if (!left) stats_.messages.push_back("realized block " + block.to_string() + " is not left-saturated");
  if (!ok || !left) ++stats_.realization_violations;
}

void Engine::check_saturated_leaf(const Sequent& s) {
  ++stats_.saturated_leaf_checks;
  if (!opt_.check_invariants) return;
  for (const auto& [pos, t] : descendants(s, Relation::plus))
    for (std::size_t i = 0; i < t.imp_count(); ++i)
      if (!structurally_included(t, t.imp(i))) {
        ++stats_.saturated_leaf_violations;
        stats_.messages.push_back("saturated leaf: " + pos.to_string() + " not included in its implication block " +
                                  std::to_string(i));
      }
}

namespace {

bool valid_mod_child(const Sequent& s, const Position& parent, const Position& p) {
  return !p.is_root() && p.parent() == parent && p.steps().back().kind == BlockKind::mod && valid_position(s, p);
}

// One repair step making the block at x structurally included in the one at
// y; nullopt when nothing is left to do.
std::optional<Sequent> repair_step(const Sequent& s, const Position& x, const Position& y, Logic logic) {
  const Sequent& X = subsequent_at(s, x);
  const Sequent& Y = subsequent_at(s, y);
  {
    Sequent y2 = Y;
    bool changed = false;
    for (Formula f : X.ant()) changed = y2.add_ant(f) || changed;
    if (changed) return replace_at(s, y, std::move(y2));
  }
  for (std::size_t i = 0; i < X.mod_count(); ++i) {
    const Sequent& xi = X.mod(i);
    bool covered = false;
    for (std::size_t j = 0; j < Y.mod_count() && !covered; ++j) covered = structurally_included(xi, Y.mod(j));
    if (covered) continue;
    const Position xp = x.child(BlockKind::mod, i);
    if (xi.origin() && valid_mod_child(s, y, *xi.origin())) {
      if (auto r = repair_step(s, xp, *xi.origin(), logic)) return r;
      continue;
    }
    Sequent y2 = Y;
    const std::size_t n = y2.append_block(BlockKind::mod, flat_keep_ant(xi));
    Sequent out = replace_at(s, y, std::move(y2));
    Sequent xi2 = xi;
    xi2.set_origin(y.child(BlockKind::mod, n));
    return replace_at(out, xp, std::move(xi2));
  }
  for (std::size_t j = 0; j < Y.mod_count(); ++j) {
    const Position yp = y.child(BlockKind::mod, j);
    bool covered = false;
    std::optional<std::size_t> linked;
    for (std::size_t i = 0; i < X.mod_count() && !covered; ++i) {
      covered = structurally_included(X.mod(i), Y.mod(j));
      if (!linked && linked_to(X.mod(i), yp)) linked = i;
    }
    if (covered) continue;
    if (linked) {
      if (auto r = repair_step(s, x.child(BlockKind::mod, *linked), yp, logic)) return r;
      continue;
    }
    Sequent x2 = X;
    const std::size_t k = x2.append_block(BlockKind::mod, sharp(Y.mod(j), yp));
    Sequent out = replace_at(s, x, std::move(x2));
    return realize(out, y, x.child(BlockKind::mod, k), logic);
  }
  return std::nullopt;
}

}  // namespace

std::size_t Engine::link_repair(std::size_t leaf, const Position& x, const Position& y) {
  const Sequent& s = d_.node(leaf).sequent;
  auto next = repair_step(s, x, y, logic_);
  if (!next) return leaf;
  ++stats_.link_repairs;
  Principal p;
  p.mod = x.steps().back().index;
  return add(leaf, RuleId::LinkRepair, x, p, {std::move(*next)});
}

std::size_t Engine::exp4(std::size_t leaf) {
  if (d_.node(leaf).axiomatic || d_.level(leaf, logic_) < Level::r3)
    throw PreconditionViolation("exp4 needs a global-R3-saturated leaf");
  std::vector<std::pair<Position, Principal>> todo;
  for (const auto& [pos, t] : descendants(d_.node(leaf).sequent, Relation::plus))
    for (auto& [r, p] : local_instances(t, logic_, Variant::cumulative))
      if (r == RuleId::InterDown) todo.emplace_back(pos, p);
  std::size_t cur = leaf;
  for (const auto& [pos, p] : todo) {
    if (d_.node(cur).axiomatic) break;
    const Sequent s = d_.node(cur).sequent;
    const Sequent& t = subsequent_at(s, pos);
    if (instance_saturated(t, RuleId::InterDown, p, logic_)) continue;
    const Position ipos = pos.child(BlockKind::imp, *p.imp);
    const Position mpos = ipos.child(BlockKind::mod, *p.inner);
    if (opt_.repair_links) {
      std::optional<std::size_t> k;
      for (std::size_t j = 0; j < t.mod_count() && !k; ++j)
        if (linked_to(t.mod(j), mpos)) k = j;
      if (k) {
        cur = link_repair(cur, pos.child(BlockKind::mod, *k), mpos);
        continue;
      }
    }
    const std::size_t k = t.mod_count();
    cur = add(cur, RuleId::InterDown, pos, p, premises_at(s, RuleId::InterDown, p, pos));
    const Position bpos = pos.child(BlockKind::mod, k);
    Sequent realized = realize(d_.node(cur).sequent, ipos, bpos, logic_);
    check_realization(realized, bpos, mpos);
    Principal rp;
    rp.imp = p.imp;
    rp.inner = p.inner;
    rp.mod = k;
    cur = add(cur, RuleId::Realize, pos, rp, {std::move(realized)});
  }
  return cur;
}

SearchOutcome Engine::run() {
  procedure0(0);
  while (true) {
    const auto open = d_.open_leaves(0);
    if (open.empty()) {
      SearchOutcome out{Verdict::provable, std::move(d_), std::nullopt, std::nullopt, steps_, stats_};
      return out;
    }
    std::optional<std::size_t> done, r3;
    for (auto l : open) {
      const Level lvl = d_.level(l, logic_);
      if (lvl == Level::r4) {
        done = l;
        break;
      }
      if (lvl == Level::r3 && !r3) r3 = l;
    }
    if (done) {
      const Sequent& leaf = d_.node(*done).sequent;
      check_saturated_leaf(leaf);
      Model m = extract_countermodel(leaf, logic_);
      CountermodelReport rep = verify_countermodel(m, leaf, std::nullopt, logic_);
      rep.root_falsifies = !forces_sequent(m, Position{}.to_string(), d_.node(0).sequent);
      if (!rep.ok()) {
        std::string why;
        for (const auto& r : rep.frame.results)
          if (!r.ok) why += " " + std::string(property_name(r.property));
        for (const auto& f : rep.truth_failures) why += "; " + f;
        if (!rep.root_falsifies) why += "; root forces the conclusion";
        throw Error("extracted countermodel failed verification:" + why);
      }
      SearchOutcome out{Verdict::unprovable, std::move(d_), done, std::move(m), steps_, stats_};
      return out;
    }
    if (!r3) {
      procedure0(0);
      continue;
    }
    const std::size_t next = exp4(*r3);
    if (next == *r3) throw Error("exp4 made no progress on a global-R3-saturated leaf");
    procedure0(next);
  }
}

Derivation procedure0(const Sequent& s0, Logic logic, const SearchOptions& options) {
  if (s0.mode() != SequentMode::set) throw PreconditionViolation("procedure0 needs a set-mode sequent");
  Engine e(s0, logic, options);
  e.procedure0(0);
  return e.take_derivation();
}

SearchOutcome prove(Formula f, Logic logic, const SearchOptions& options) {
  Sequent root;
  if (options.strip_implication && f.is(Connective::imp)) {
    root.add_ant(f.left());
    root.add_suc(f.right());
  } else {
    root.add_suc(f);
  }
  Engine e(std::move(root), logic, options);
  return e.run();
}

Verdict prove_minus(Formula f, Logic logic, std::size_t budget) {
  if (budget == 0) throw PreconditionViolation("budget must be positive");
  Sequent root;
  root.add_suc(f);
  std::vector<Sequent> stack{root};
  std::size_t steps = 0;
  while (!stack.empty()) {
    Sequent s = std::move(stack.back());
    stack.pop_back();
    if (is_axiomatic(s)) continue;
    // lowest rule group first, then preorder position; no macro-steps
    std::optional<std::vector<Sequent>> prem;
    const auto positions = plus_positions(s);
    for (int group = 1; group <= 3 && !prem; ++group) {
      auto in_group = [&](RuleId r) {
        if (group == 1) return in_r1(r, logic);
        if (group == 2) return in_r2(r, logic);
        return r == RuleId::ImpR1 || r == RuleId::ImpR2;
      };
      for (const auto& pos : positions) {
        const Sequent& t = subsequent_at(s, pos);
        for (auto& [r, p] : local_instances(t, logic, Variant::cumulative)) {
          if (!in_group(r)) continue;
          if (r != RuleId::InterRight) {
            prem = premises_at(s, r, p, pos);
            break;
          }
          const Position src = pos.child(BlockKind::mod, *p.mod);
          const Position ipos = pos.child(BlockKind::imp, *p.imp);
          const Sequent& ib = t.imp(*p.imp);
          bool covered = false;
          for (std::size_t j = 0; j < ib.mod_count() && !covered; ++j)
            covered = linked_to(ib.mod(j), src) && simulated(t.mod(*p.mod), ib.mod(j));
          if (covered) continue;
          prem = premises_at(s, r, p, pos);
          tag_copy(prem->front(), ipos, ib.mod_count(), src);
          break;
        }
        if (prem) break;
      }
    }
    if (!prem) return Verdict::unprovable;
    if (++steps > budget) return Verdict::budget_exhausted;
    for (auto it = prem->rbegin(); it != prem->rend(); ++it) stack.push_back(std::move(*it));
  }
  return Verdict::provable;
}

namespace {

std::string instance_key(RuleId r, const Position& pos, const Principal& p) {
  std::string k = std::string(rule_name(r)) + "@" + pos.to_string();
  if (p.formula) k += ":" + p.formula->key();
  if (p.imp) k += ":i" + std::to_string(*p.imp);
  if (p.mod) k += ":m" + std::to_string(*p.mod);
  if (p.inner) k += ":j" + std::to_string(*p.inner);
  return k;
}

}  // namespace

Verdict prove_multiset(Formula f, Logic logic, Variant variant, std::size_t budget) {
  if (variant == Variant::cumulative) throw PreconditionViolation("prove_multiset runs the plain calculi");
  Sequent root(SequentMode::multiset);
  root.add_suc(f);
  struct Seen {
    std::size_t used = 0;
    std::size_t since = 0;
  };
  struct Item {
    Sequent s;
    std::map<std::string, Seen> seen;
    std::size_t clock = 0;
  };
  std::size_t steps = 0;
  // iterative deepening: in round k every instance fires at most k times per branch
  for (std::size_t k = 1;; ++k) {
    std::vector<Item> stack{{root, {}, 0}};
    bool closed = true;
    while (!stack.empty() && closed) {
      Item it = std::move(stack.back());
      stack.pop_back();
      if (is_axiomatic(it.s)) continue;
      // least used instance on this branch, then the one that appeared first
      ++it.clock;
      std::optional<std::tuple<std::pair<std::size_t, std::size_t>, RuleId, Position, Principal, std::string>> best;
      bool capped = false;
      for (const auto& pos : plus_positions(it.s)) {
        for (auto& [r, p] : local_instances(subsequent_at(it.s, pos), logic, variant)) {
          std::string key = instance_key(r, pos, p);
          auto [u, fresh] = it.seen.try_emplace(key, Seen{0, it.clock});
          const std::pair<std::size_t, std::size_t> rank{u->second.used, u->second.since};
          if (rank.first >= k) capped = true;
          else if (!best || rank < std::get<0>(*best)) best.emplace(rank, r, pos, p, std::move(key));
        }
      }
      if (!best) {
        // nothing left to try at any depth
        if (!capped) return Verdict::budget_exhausted;
        closed = false;
        break;
      }
      if (++steps > budget) return Verdict::budget_exhausted;
      auto& [rank, r, pos, p, key] = *best;
      auto prem = premises_at(it.s, r, p, pos);
      ++it.seen[key].used;
      for (auto pi = prem.rbegin(); pi != prem.rend(); ++pi) stack.push_back({std::move(*pi), it.seen, it.clock});
    }
    if (closed) return Verdict::provable;
  }
}

}  // namespace lik
