#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lik/formula.hpp"
#include "lik/sequent.hpp"

namespace lik {

enum class Logic : std::uint8_t { LIK, LIKD, LIKT };
enum class Variant : std::uint8_t { full, minus, cumulative };

enum class RuleId : std::uint8_t {
  BotL, TopR, Id, AndL, AndR, OrL, OrR, ImpL, ImpR, ImpR1, ImpR2,
  BoxL, BoxR, DiaL, DiaR, Trans, InterRight, InterDown, D, TBox, TDia,
  // macro steps recorded by the search engine
  Realize, LinkRepair
};

std::string_view rule_name(RuleId r);
std::string_view logic_name(Logic l);
Logic parse_logic(std::string_view name);

// Principal part of an instance; which fields are set depends on the rule.
struct Principal {
  std::optional<Formula> formula;
  std::optional<std::size_t> imp;    // implication block of the acted-on sequent
  std::optional<std::size_t> mod;    // modal block of the acted-on sequent
  std::optional<std::size_t> inner;  // modal block inside the implication block
  bool operator==(const Principal&) const = default;
};

struct RuleInstance {
  RuleId rule;
  Position pos;
  Principal principal;
  std::vector<Sequent> premises;
};

enum class Level : std::uint8_t { none = 0, r1 = 1, r2 = 2, r3 = 3, r4 = 4 };

// Axiom at the top level of s only.
std::optional<RuleId> is_axiom(const Sequent& s);
// Axiom at some T ∈⁺ s.
bool is_axiomatic(const Sequent& s);

bool rule_enabled(RuleId r, Logic logic, Variant variant);

// Saturation condition of rule r at the top level of s, over all its instances.
bool saturation_holds(const Sequent& s, RuleId r, Logic logic);
// Condition for one instance (principal as produced by the instance generator).
bool instance_saturated(const Sequent& s, RuleId r, const Principal& p, Logic logic);

// Level reached by s at its top level (R1 is read on Γ⇒Δ̄).
Level saturation_level(const Sequent& s, Logic logic);
// Minimum over every T ∈⁺ s; throws AxiomaticInput if some T is an axiom.
Level global_saturation_level(const Sequent& s, Logic logic);

// Rule groups as used by the search procedure.
bool in_r1(RuleId r, Logic logic);
bool in_r2(RuleId r, Logic logic);

// Premises of rule r applied with principal p at the top level of target.
// Set-mode targets use the cumulative rules, multiset targets the plain ones.
std::vector<Sequent> local_premises(const Sequent& target, RuleId r, const Principal& p,
                                    const Position& target_pos);

// All instances of enabled rules at the top level of target, in RuleId order
// then principal order, without premises. In cumulative mode, instances
// that are already saturated are skipped.
std::vector<std::pair<RuleId, Principal>> local_instances(const Sequent& target, Logic logic, Variant variant);

std::vector<RuleInstance> applicable(const Sequent& root, Logic logic, Variant variant);
// Throws NotApplicable when the instance no longer matches root.
std::vector<Sequent> apply(const Sequent& root, const RuleInstance& inst);

}  // namespace lik
