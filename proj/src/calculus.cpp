#include "lik/calculus.hpp"

#include <algorithm>

#include "lik/errors.hpp"

namespace lik {

std::string_view rule_name(RuleId r) {
  switch (r) {
    case RuleId::BotL: return "bot_L";
    case RuleId::TopR: return "top_R";
    case RuleId::Id: return "id";
    case RuleId::AndL: return "and_L";
    case RuleId::AndR: return "and_R";
    case RuleId::OrL: return "or_L";
    case RuleId::OrR: return "or_R";
    case RuleId::ImpL: return "imp_L";
    case RuleId::ImpR: return "imp_R";
    case RuleId::ImpR1: return "imp_R1";
    case RuleId::ImpR2: return "imp_R2";
    case RuleId::BoxL: return "box_L";
    case RuleId::BoxR: return "box_R";
    case RuleId::DiaL: return "dia_L";
    case RuleId::DiaR: return "dia_R";
    case RuleId::Trans: return "trans";
    case RuleId::InterRight: return "inter_right";
    case RuleId::InterDown: return "inter_down";
    case RuleId::D: return "D";
    case RuleId::TBox: return "T_box";
    case RuleId::TDia: return "T_dia";
    case RuleId::Realize: return "realize";
    case RuleId::LinkRepair: return "link_repair";
  }
  return "?";
}

std::string_view logic_name(Logic l) {
  switch (l) {
    case Logic::LIK: return "lik";
    case Logic::LIKD: return "likd";
    case Logic::LIKT: return "likt";
  }
  return "?";
}

Logic parse_logic(std::string_view name) {
  std::string n(name);
  for (auto& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (n == "lik") return Logic::LIK;
  if (n == "likd") return Logic::LIKD;
  if (n == "likt") return Logic::LIKT;
  throw Error("unknown logic '" + std::string(name) + "' (expected lik, likd or likt)");
}

std::optional<RuleId> is_axiom(const Sequent& s) {
  for (Formula f : s.ant())
    if (f.is(Connective::bot)) return RuleId::BotL;
  for (Formula f : s.suc())
    if (f.is(Connective::top)) return RuleId::TopR;
  for (Formula f : s.ant())
    if (f.is_atom() && s.has_suc(f)) return RuleId::Id;
  return std::nullopt;
}

bool is_axiomatic(const Sequent& s) {
  if (is_axiom(s)) return true;
  for (std::size_t i = 0; i < s.imp_count(); ++i)
    if (is_axiomatic(s.imp(i))) return true;
  for (std::size_t i = 0; i < s.mod_count(); ++i)
    if (is_axiomatic(s.mod(i))) return true;
  return false;
}

bool rule_enabled(RuleId r, Logic logic, Variant variant) {
  switch (r) {
    case RuleId::ImpR:
      return variant != Variant::cumulative;
    case RuleId::ImpR1:
    case RuleId::ImpR2:
      return variant == Variant::cumulative;
    case RuleId::InterDown:
      return variant != Variant::minus;
    case RuleId::D:
      return logic == Logic::LIKD;
    case RuleId::TBox:
    case RuleId::TDia:
      return logic == Logic::LIKT;
    case RuleId::Realize:
    case RuleId::LinkRepair:
      return false;
    default:
      return true;
  }
}

bool in_r1(RuleId r, Logic logic) {
  switch (r) {
    case RuleId::AndL:
    case RuleId::AndR:
    case RuleId::OrL:
    case RuleId::OrR:
    case RuleId::ImpL:
    case RuleId::BoxL:
    case RuleId::BoxR:
    case RuleId::DiaL:
    case RuleId::DiaR:
      return true;
    case RuleId::TBox:
    case RuleId::TDia:
      return logic == Logic::LIKT;
    default:
      return false;
  }
}

bool in_r2(RuleId r, Logic logic) {
  return r == RuleId::Trans || r == RuleId::InterRight || (r == RuleId::D && logic == Logic::LIKD);
}

namespace {

bool is_r3(RuleId r) { return r == RuleId::ImpR || r == RuleId::ImpR1 || r == RuleId::ImpR2; }

bool ant_subset(const Sequent& a, const Sequent& b) {
  for (Formula f : a.ant())
    if (!b.has_ant(f)) return false;
  return true;
}

bool has_modal_constraint(const Sequent& s) {
  for (Formula f : s.ant())
    if (f.is(Connective::box)) return true;
  for (Formula f : s.suc())
    if (f.is(Connective::dia)) return true;
  return false;
}

// Saturation condition of one instance, evaluated on s.
bool condition(const Sequent& s, RuleId r, const Principal& p) {
  auto A = [&] { return p.formula->left(); };
  auto B = [&] { return p.formula->right(); };
  switch (r) {
    case RuleId::AndL:
      return s.has_ant(A()) && s.has_ant(B());
    case RuleId::AndR:
      return s.has_suc(A()) || s.has_suc(B());
    case RuleId::OrL:
      return s.has_ant(A()) || s.has_ant(B());
    case RuleId::OrR:
      return s.has_suc(A()) && s.has_suc(B());
    case RuleId::ImpL:
      return s.has_suc(A()) || s.has_ant(B());
    case RuleId::ImpR:
    case RuleId::ImpR1:
    case RuleId::ImpR2: {
      if (s.has_ant(A()) && s.has_suc(B())) return true;
      for (std::size_t i = 0; i < s.imp_count(); ++i)
        if (s.imp(i).has_ant(A()) && s.imp(i).has_suc(B())) return true;
      return false;
    }
    case RuleId::BoxL:
      return s.mod(*p.mod).has_ant(p.formula->body());
    case RuleId::BoxR:
      for (std::size_t i = 0; i < s.mod_count(); ++i)
        if (s.mod(i).has_suc(p.formula->body())) return true;
      return false;
    case RuleId::DiaL:
      for (std::size_t i = 0; i < s.mod_count(); ++i)
        if (s.mod(i).has_ant(p.formula->body())) return true;
      return false;
    case RuleId::DiaR:
      return s.mod(*p.mod).has_suc(p.formula->body());
    case RuleId::Trans:
      return ant_subset(s, s.imp(*p.imp));
    case RuleId::InterRight: {
      const Sequent& blk = s.mod(*p.mod);
      const Sequent& ib = s.imp(*p.imp);
      for (std::size_t j = 0; j < ib.mod_count(); ++j)
        if (structurally_included(blk, ib.mod(j))) return true;
      return false;
    }
    case RuleId::InterDown: {
      const Sequent& target = s.imp(*p.imp).mod(*p.inner);
      for (std::size_t j = 0; j < s.mod_count(); ++j)
        if (structurally_included(s.mod(j), target)) return true;
      return false;
    }
    case RuleId::D:
      return !has_modal_constraint(s) || s.mod_count() > 0;
    case RuleId::TBox:
      return s.has_ant(p.formula->body());
    case RuleId::TDia:
      return s.has_suc(p.formula->body());
    default:
      return true;
  }
}

// Every instance of rule r at the top level of s, saturated or not.
void enumerate(const Sequent& s, RuleId r, std::vector<Principal>& out) {
  auto each_ant = [&](Connective c) {
    for (Formula f : s.ant())
      if (f.is(c)) out.push_back({f, {}, {}, {}});
  };
  auto each_suc = [&](Connective c) {
    for (Formula f : s.suc())
      if (f.is(c)) out.push_back({f, {}, {}, {}});
  };
  switch (r) {
    case RuleId::AndL: each_ant(Connective::conj); break;
    case RuleId::AndR: each_suc(Connective::conj); break;
    case RuleId::OrL: each_ant(Connective::disj); break;
    case RuleId::OrR: each_suc(Connective::disj); break;
    case RuleId::ImpL: each_ant(Connective::imp); break;
    case RuleId::ImpR:
    case RuleId::ImpR1:
    case RuleId::ImpR2:
      each_suc(Connective::imp);
      break;
    case RuleId::BoxL:
      for (Formula f : s.ant())
        if (f.is(Connective::box))
          for (std::size_t k = 0; k < s.mod_count(); ++k) out.push_back({f, {}, k, {}});
      break;
    case RuleId::BoxR: each_suc(Connective::box); break;
    case RuleId::DiaL: each_ant(Connective::dia); break;
    case RuleId::DiaR:
      for (Formula f : s.suc())
        if (f.is(Connective::dia))
          for (std::size_t k = 0; k < s.mod_count(); ++k) out.push_back({f, {}, k, {}});
      break;
    case RuleId::Trans:
      for (std::size_t i = 0; i < s.imp_count(); ++i) out.push_back({{}, i, {}, {}});
      break;
    case RuleId::InterRight:
      for (std::size_t i = 0; i < s.imp_count(); ++i)
        for (std::size_t k = 0; k < s.mod_count(); ++k) out.push_back({{}, i, k, {}});
      break;
    case RuleId::InterDown:
      for (std::size_t i = 0; i < s.imp_count(); ++i)
        for (std::size_t j = 0; j < s.imp(i).mod_count(); ++j) out.push_back({{}, i, {}, j});
      break;
    case RuleId::D:
      out.push_back({});
      break;
    case RuleId::TBox: each_ant(Connective::box); break;
    case RuleId::TDia: each_suc(Connective::dia); break;
    default:
      break;
  }
}

constexpr RuleId kOrder[] = {RuleId::AndL, RuleId::AndR, RuleId::OrL,        RuleId::OrR,       RuleId::ImpL,
                             RuleId::ImpR, RuleId::BoxL, RuleId::BoxR,       RuleId::DiaL,      RuleId::DiaR,
                             RuleId::Trans, RuleId::InterRight, RuleId::InterDown, RuleId::D, RuleId::TBox,
                             RuleId::TDia};

bool principal_valid(const Sequent& s, RuleId r, const Principal& p) {
  if (p.formula) {
    const bool left = r == RuleId::AndL || r == RuleId::OrL || r == RuleId::ImpL || r == RuleId::BoxL ||
                      r == RuleId::DiaL || r == RuleId::TBox;
    if (left ? !s.has_ant(*p.formula) : !s.has_suc(*p.formula)) return false;
  }
  if (p.imp && *p.imp >= s.imp_count()) return false;
  if (p.mod && *p.mod >= s.mod_count()) return false;
  if (p.inner && (!p.imp || *p.inner >= s.imp(*p.imp).mod_count())) return false;
  return true;
}

}  // namespace

bool instance_saturated(const Sequent& s, RuleId r, const Principal& p, Logic) {
  if (!principal_valid(s, r, p)) throw NotApplicable("principal does not occur in sequent");
  return condition(s, r, p);
}

bool saturation_holds(const Sequent& s, RuleId r, Logic) {
  std::vector<Principal> ps;
  enumerate(s, r, ps);
  for (const auto& p : ps)
    if (!condition(s, r, p)) return false;
  return true;
}

Level saturation_level(const Sequent& s, Logic logic) {
  auto group_ok = [&](auto pred) {
    for (RuleId r : kOrder)
      if (pred(r) && !saturation_holds(s, r, logic)) return false;
    return true;
  };
  if (!group_ok([&](RuleId r) { return in_r1(r, logic); })) return Level::none;
  if (!group_ok([&](RuleId r) { return in_r2(r, logic); })) return Level::r1;
  if (!saturation_holds(s, RuleId::ImpR, logic)) return Level::r2;
  if (!saturation_holds(s, RuleId::InterDown, logic)) return Level::r3;
  return Level::r4;
}

Level global_saturation_level(const Sequent& s, Logic logic) {
  if (is_axiomatic(s)) throw AxiomaticInput("sequent is axiomatic");
  Level lo = Level::r4;
  for (const auto& [pos, t] : descendants(s, Relation::plus)) {
    Level l = saturation_level(t, logic);
    if (l < lo) lo = l;
    if (lo == Level::none) break;
  }
  return lo;
}

std::vector<std::pair<RuleId, Principal>> local_instances(const Sequent& target, Logic logic, Variant variant) {
  std::vector<std::pair<RuleId, Principal>> out;
  const bool cumulative = variant == Variant::cumulative;
  for (RuleId r : kOrder) {
    if (!rule_enabled(r, logic, variant) && !(is_r3(r) && cumulative)) continue;
    std::vector<Principal> ps;
    enumerate(target, r, ps);
    for (auto& p : ps) {
      if (cumulative) {
        if (condition(target, r, p)) continue;
        RuleId actual = r;
        if (is_r3(r)) actual = target.has_ant(p.formula->left()) ? RuleId::ImpR1 : RuleId::ImpR2;
        out.emplace_back(actual, p);
      } else {
        out.emplace_back(r, p);
      }
    }
  }
  if (!cumulative) {
    // drop instances that would not change the sequent
    std::vector<std::pair<RuleId, Principal>> kept;
    for (auto& [r, p] : out) {
      auto prem = local_premises(target, r, p, Position{});
      bool changes = std::any_of(prem.begin(), prem.end(), [&](const Sequent& x) { return !(x == target); });
      if (changes) kept.emplace_back(r, p);
    }
    return kept;
  }
  return out;
}

std::vector<Sequent> local_premises(const Sequent& s, RuleId r, const Principal& p, const Position& target_pos) {
  if (!principal_valid(s, r, p)) throw NotApplicable(std::string("stale instance of ") + std::string(rule_name(r)));
  const bool cum = s.mode() == SequentMode::set;
  auto A = [&] { return p.formula->left(); };
  auto B = [&] { return p.formula->right(); };
  auto body = [&] { return p.formula->body(); };
  Sequent one = s;
  switch (r) {
    case RuleId::AndL:
      if (!cum) one.remove_ant(*p.formula);
      one.add_ant(A());
      one.add_ant(B());
      return {one};
    case RuleId::AndR: {
      if (!cum) one.remove_suc(*p.formula);
      Sequent two = one;
      one.add_suc(A());
      two.add_suc(B());
      return {one, two};
    }
    case RuleId::OrL: {
      if (!cum) one.remove_ant(*p.formula);
      Sequent two = one;
      one.add_ant(A());
      two.add_ant(B());
      return {one, two};
    }
    case RuleId::OrR:
      if (!cum) one.remove_suc(*p.formula);
      one.add_suc(A());
      one.add_suc(B());
      return {one};
    case RuleId::ImpL: {
      Sequent two = s;
      one.add_suc(A());
      if (!cum) two.remove_ant(*p.formula);
      two.add_ant(B());
      return {one, two};
    }
    case RuleId::ImpR1:
      if (!s.has_ant(A())) throw NotApplicable("imp_R1 needs the antecedent in Γ");
      one.add_suc(B());
      return {one};
    case RuleId::ImpR:
    case RuleId::ImpR2: {
      if (r == RuleId::ImpR2 && s.has_ant(A())) throw NotApplicable("imp_R2 needs the antecedent outside Γ");
      if (!cum) one.remove_suc(*p.formula);
      Sequent blk(s.mode());
      blk.add_ant(A());
      blk.add_suc(B());
      one.add_imp(std::move(blk));
      return {one};
    }
    case RuleId::BoxL: {
      Sequent blk = s.mod(*p.mod);
      blk.add_ant(body());
      one.set_block(BlockKind::mod, *p.mod, std::move(blk));
      return {one};
    }
    case RuleId::BoxR: {
      if (!cum) one.remove_suc(*p.formula);
      Sequent blk(s.mode());
      blk.add_suc(body());
      one.add_mod(std::move(blk));
      return {one};
    }
    case RuleId::DiaL: {
      if (!cum) one.remove_ant(*p.formula);
      Sequent blk(s.mode());
      blk.add_ant(body());
      one.add_mod(std::move(blk));
      return {one};
    }
    case RuleId::DiaR: {
      Sequent blk = s.mod(*p.mod);
      blk.add_suc(body());
      one.set_block(BlockKind::mod, *p.mod, std::move(blk));
      return {one};
    }
    case RuleId::Trans: {
      Sequent blk = s.imp(*p.imp);
      if (cum) {
        for (Formula f : s.ant()) blk.add_ant(f);
      } else {
        // Γ' = Γ minus what Σ already holds (multiset difference)
        std::vector<Formula> have = blk.ant();
        for (Formula f : s.ant()) {
          auto it = std::find(have.begin(), have.end(), f);
          if (it != have.end()) {
            have.erase(it);
          } else {
            blk.add_ant(f);
          }
        }
      }
      one.set_block(BlockKind::imp, *p.imp, std::move(blk));
      return {one};
    }
    case RuleId::InterRight: {
      Sequent blk = s.imp(*p.imp);
      blk.add_mod(flat_keep_ant(s.mod(*p.mod)));
      one.set_block(BlockKind::imp, *p.imp, std::move(blk));
      return {one};
    }
    case RuleId::InterDown: {
      const Sequent& src = s.imp(*p.imp).mod(*p.inner);
      if (cum) {
        one.append_block(BlockKind::mod,
                         sharp(src, target_pos.child(BlockKind::imp, *p.imp).child(BlockKind::mod, *p.inner)));
      } else {
        one.append_block(BlockKind::mod, sharp_plain(src));
      }
      return {one};
    }
    case RuleId::D:
      one.add_mod(Sequent(s.mode()));
      return {one};
    case RuleId::TBox:
      one.add_ant(body());
      return {one};
    case RuleId::TDia:
      one.add_suc(body());
      return {one};
    default:
      throw NotApplicable(std::string("no premises for ") + std::string(rule_name(r)));
  }
}

std::vector<RuleInstance> applicable(const Sequent& root, Logic logic, Variant variant) {
  std::vector<RuleInstance> out;
  for (const Position& pos : plus_positions(root)) {
    const Sequent& t = subsequent_at(root, pos);
    for (auto& [r, p] : local_instances(t, logic, variant)) {
      RuleInstance inst{r, pos, p, {}};
      for (auto& prem : local_premises(t, r, p, pos)) inst.premises.push_back(replace_at(root, pos, std::move(prem)));
      out.push_back(std::move(inst));
    }
  }
  return out;
}

std::vector<Sequent> apply(const Sequent& root, const RuleInstance& inst) {
  if (!valid_position(root, inst.pos)) throw NotApplicable("stale instance: position " + inst.pos.to_string());
  const Sequent& t = subsequent_at(root, inst.pos);
  std::vector<Sequent> out;
  for (auto& prem : local_premises(t, inst.rule, inst.principal, inst.pos))
    out.push_back(replace_at(root, inst.pos, std::move(prem)));
  if (!inst.premises.empty()) {
    bool same = inst.premises.size() == out.size();
    for (std::size_t i = 0; same && i < out.size(); ++i) same = out[i] == inst.premises[i];
    if (!same) throw NotApplicable("stale instance: premises differ");
  }
  return out;
}

}  // namespace lik
