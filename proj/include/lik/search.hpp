#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lik/calculus.hpp"
#include "lik/formula.hpp"
#include "lik/semantics.hpp"
#include "lik/sequent.hpp"

namespace lik {

struct AppliedRule {
  RuleId rule;
  Position pos;
  Principal principal;
};

struct DerivationNode {
  Sequent sequent;
  std::optional<AppliedRule> rule;  // set on internal nodes
  std::vector<std::size_t> children;
  std::optional<std::size_t> parent;
  bool axiomatic = false;
};

// Derivation tree stored as an arena; node 0 is the root (the conclusion).
class Derivation {
 public:
  explicit Derivation(Sequent root);

  std::size_t size() const noexcept { return nodes_.size(); }
  const DerivationNode& node(std::size_t i) const { return nodes_.at(i); }
  bool is_leaf(std::size_t i) const { return nodes_.at(i).children.empty(); }

  // left to right
  std::vector<std::size_t> leaves(std::size_t under = 0) const;
  std::vector<std::size_t> open_leaves(std::size_t under = 0) const;
  bool closed(std::size_t under = 0) const { return open_leaves(under).empty(); }

  // Adds one child per premise below leaf and returns their indices.
  std::vector<std::size_t> extend(std::size_t leaf, AppliedRule rule, std::vector<Sequent> premises);

  // global saturation level of an open leaf (cached)
  Level level(std::size_t i, Logic logic) const;

 private:
  std::vector<DerivationNode> nodes_;
  mutable std::map<std::pair<std::size_t, Logic>, Level> levels_;
};

struct SearchOptions {
  std::size_t max_steps = 1'000'000;
  // Keeps an (inter↓)-produced block structurally included in its source once
  // later rules have grown it, instead of producing a fresh copy each round.
  bool repair_links = true;
  bool check_invariants = true;
  // Start a goal A⊃B from A⇒B rather than ⇒A⊃B (the two are interderivable).
  bool strip_implication = true;
};

struct InvariantStats {
  std::size_t rule_applications = 0;
  std::size_t md_violations = 0;
  std::size_t realizations = 0;
  std::size_t realization_violations = 0;
  std::size_t link_repairs = 0;
  std::size_t saturated_leaf_checks = 0;
  std::size_t saturated_leaf_violations = 0;
  std::vector<std::string> messages;

  std::size_t violations() const { return md_violations + realization_violations + saturated_leaf_violations; }
};

enum class Verdict : std::uint8_t { provable, unprovable, budget_exhausted };

std::string_view verdict_name(Verdict v);

struct SearchOutcome {
  Verdict verdict;
  Derivation derivation;
  std::optional<std::size_t> leaf;  // global-saturated leaf for unprovable outcomes
  std::optional<Model> countermodel;
  std::size_t steps = 0;
  InvariantStats stats;
};

// Tracking record of gamma in s, keyed by positions relative to s (s and its
// modal descendants). Throws PreconditionViolation unless s is left-saturated.
using TrackingRecord = std::map<Position, std::vector<Formula>>;
TrackingRecord tracking_record(const Sequent& s, const std::vector<Formula>& gamma, Logic logic = Logic::LIK);

// Replaces the annotated block at sharp_pos by its realization, using the
// tracking record of the antecedent enclosing sharp_pos in the sequent at
// source_pos (which must be left-saturated).
Sequent realize(const Sequent& s, const Position& source_pos, const Position& sharp_pos, Logic logic = Logic::LIK);

// Left-rule saturation of s at and within its modal blocks.
bool left_saturated(const Sequent& s, Logic logic);

// One proof-search run. The exp* calls act on the derivation held by the
// engine and return the node indices of the leaves they produced.
class Engine {
 public:
  Engine(Sequent root, Logic logic, SearchOptions options = {});

  const Derivation& derivation() const noexcept { return d_; }
  Derivation take_derivation() { return std::move(d_); }
  std::size_t steps() const noexcept { return steps_; }
  const InvariantStats& stats() const noexcept { return stats_; }
  Logic logic() const noexcept { return logic_; }

  std::vector<std::size_t> exp1(std::size_t leaf, const Position& target);
  std::vector<std::size_t> exp2(std::size_t leaf, const Position& target);
  std::vector<std::size_t> exp3(std::size_t leaf, const Position& target);
  std::size_t exp4(std::size_t leaf);

  // Inner loop on the subtree below node; stops when that subtree is closed
  // or has a non-axiomatic global-R3-saturated leaf.
  void procedure0(std::size_t node = 0);
  // Outer loop: inner loop, then exp4 on the open leaf, until closed or R4.
  SearchOutcome run();

 private:
  std::size_t add(std::size_t leaf, RuleId r, const Position& pos, const Principal& p, std::vector<Sequent> premises);
  void tick();
  std::size_t link_repair(std::size_t leaf, const Position& x, const Position& y);
  void check_realization(const Sequent& s, const Position& block, const Position& source);
  void check_saturated_leaf(const Sequent& s);

  Derivation d_;
  Logic logic_;
  SearchOptions opt_;
  std::size_t steps_ = 0;
  InvariantStats stats_;
};

// Derivation for the inner loop alone, run on s0.
Derivation procedure0(const Sequent& s0, Logic logic, const SearchOptions& options = {});

// Full search on ⇒f. Throws BudgetExceeded when options.max_steps is hit.
SearchOutcome prove(Formula f, Logic logic, const SearchOptions& options = {});

// Search in the cumulative calculus without (inter↓) that does not use the
// macro-steps: one rule at a time on the leftmost open leaf, lowest rule
// group first, then preorder position. Unprovable once an open leaf has no
// unsaturated instance left.
Verdict prove_minus(Formula f, Logic logic, std::size_t budget = 1'000'000);

// Fair search in the plain multiset calculus (full or minus), deepening the
// number of times each instance may fire on a branch. It can only
// find proofs, so the answer is provable or budget_exhausted.
Verdict prove_multiset(Formula f, Logic logic, Variant variant, std::size_t budget);

}  // namespace lik
