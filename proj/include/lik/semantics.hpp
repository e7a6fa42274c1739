#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lik/calculus.hpp"
#include "lik/formula.hpp"
#include "lik/sequent.hpp"

namespace lik {

// Finite bi-relational model. Worlds are addressed by index; ids are the
// printable names (positions for extracted models).
class Model {
 public:
  Model() = default;
  explicit Model(std::vector<std::string> worlds);

  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  // throws UnknownWorld
  std::size_t index(std::string_view id) const;

  bool le(std::size_t a, std::size_t b) const { return le_.at(a * size() + b) != 0; }
  bool r(std::size_t a, std::size_t b) const { return r_.at(a * size() + b) != 0; }
  void set_le(std::size_t a, std::size_t b, bool v = true) { le_.at(a * size() + b) = v; }
  void set_r(std::size_t a, std::size_t b, bool v = true) { r_.at(a * size() + b) = v; }

  bool val(const std::string& atom, std::size_t w) const;
  void set_val(const std::string& atom, std::size_t w, bool v = true);
  const std::map<std::string, std::vector<char>>& valuation() const noexcept { return val_; }

 private:
  std::vector<std::string> worlds_;
  std::vector<char> le_;
  std::vector<char> r_;
  std::map<std::string, std::vector<char>> val_;
};

enum class FrameProperty : std::uint8_t { preorder, heredity, fc, dc, serial, reflexive, transitive };

std::string_view property_name(FrameProperty p);

struct PropertyResult {
  FrameProperty property;
  bool ok = true;
  std::vector<std::string> witness;  // worlds, in the order of the defining condition
  std::string atom;                  // heredity only
};

struct FrameReport {
  std::vector<PropertyResult> results;
  bool ok() const;
  const PropertyResult* find(FrameProperty p) const;
};

FrameReport check_frame(const Model& m, const std::vector<FrameProperty>& props);
// preorder, heredity, fc, dc plus serial (LIKD) or reflexive (LIKT)
std::vector<FrameProperty> frame_properties(Logic logic);

// truth set of f: one entry per world
std::vector<char> truth_set(const Model& m, Formula f);
bool forces(const Model& m, std::size_t w, Formula f);
bool forces(const Model& m, std::string_view world, Formula f);
bool forces_sequent(const Model& m, std::size_t w, const Sequent& s);
bool forces_sequent(const Model& m, std::string_view world, const Sequent& s);

// Worlds are the positions of T ∈⁺ leaf; throws NotSaturated unless leaf is
// global-saturated for logic.
Model extract_countermodel(const Sequent& leaf, Logic logic);

struct CountermodelReport {
  FrameReport frame;
  std::vector<std::string> truth_failures;  // "<world>: <formula> on the wrong side"
  bool root_falsifies = false;
  bool ok() const { return frame.ok() && truth_failures.empty() && root_falsifies; }
};

// Frame checks for the logic, the truth lemma at every subsequent of leaf
// and falsification of goal at the root world.
CountermodelReport verify_countermodel(const Model& m, const Sequent& leaf, std::optional<Formula> goal, Logic logic);

struct OracleResult {
  bool falsified = false;
  std::optional<Model> model;
  std::string world;
};

// Exhaustive search over models with at most max_worlds (≤ 4) worlds over
// the atoms of f, in the frame class of logic. One-sided: a negative result
// only means no countermodel up to the bound.
OracleResult brute_force_status(Formula f, Logic logic, std::size_t max_worlds);

}  // namespace lik
