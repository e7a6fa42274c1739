#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lik/formula.hpp"

namespace lik {

enum class BlockKind : std::uint8_t { imp, mod };
enum class SequentMode : std::uint8_t { set, multiset };

struct Step {
  BlockKind kind;
  std::size_t index;
  auto operator<=>(const Step&) const = default;
};

class Position {
 public:
  Position() = default;
  explicit Position(std::vector<Step> steps) : steps_(std::move(steps)) {}

  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::size_t depth() const noexcept { return steps_.size(); }
  bool is_root() const noexcept { return steps_.empty(); }
  Position child(BlockKind k, std::size_t i) const;
  Position parent() const;
  Position concat(const Position& tail) const;
  bool is_prefix_of(const Position& other) const;
  // remainder of other after this prefix
  Position relative(const Position& other) const;

  // "root", otherwise dot-separated steps such as "m0.i1"
  std::string to_string() const;
  static Position parse(std::string_view text);

  auto operator<=>(const Position&) const = default;

 private:
  std::vector<Step> steps_;
};

// Bi-nested sequent Γ ⇒ Δ. The succedent is split into formulas,
// implication blocks and modal blocks; blocks are addressed by index
// within their kind. Blocks are shared immutable nodes, so copies are
// cheap and updates rebuild only the path to the changed block.
//
// Set mode keeps formulas duplicate-free in canonical order and never
// adds a block equal to an existing one; blocks keep insertion order so
// that positions stay valid while a sequent grows.
class Sequent {
 public:
  explicit Sequent(SequentMode mode = SequentMode::set) : mode_(mode) {}

  SequentMode mode() const noexcept { return mode_; }
  const std::vector<Formula>& ant() const noexcept { return ant_; }
  const std::vector<Formula>& suc() const noexcept { return suc_; }
  std::size_t imp_count() const noexcept { return imps_.size(); }
  std::size_t mod_count() const noexcept { return mods_.size(); }
  std::size_t block_count(BlockKind k) const noexcept { return k == BlockKind::imp ? imps_.size() : mods_.size(); }
  const Sequent& imp(std::size_t i) const { return *imps_.at(i); }
  const Sequent& mod(std::size_t i) const { return *mods_.at(i); }
  const Sequent& block(BlockKind k, std::size_t i) const { return k == BlockKind::imp ? imp(i) : mod(i); }
  const std::optional<Position>& origin() const noexcept { return origin_; }
  void set_origin(std::optional<Position> p) { origin_ = std::move(p); }

  bool has_ant(Formula f) const noexcept;
  bool has_suc(Formula f) const noexcept;
  bool is_empty() const noexcept { return ant_.empty() && suc_.empty() && imps_.empty() && mods_.empty(); }

  // return true if the sequent changed
  bool add_ant(Formula f);
  bool add_suc(Formula f);
  // return the index of the block (existing index if an equal one is present in set mode)
  std::size_t add_imp(Sequent s) { return add_block(BlockKind::imp, std::move(s)); }
  std::size_t add_mod(Sequent s) { return add_block(BlockKind::mod, std::move(s)); }
  std::size_t add_block(BlockKind k, Sequent s);
  // no duplicate check
  std::size_t append_block(BlockKind k, Sequent s);
  // multiset mode: removes one occurrence; set mode: removes the formula
  bool remove_ant(Formula f);
  bool remove_suc(Formula f);
  void set_block(BlockKind k, std::size_t i, Sequent s);

 private:
  SequentMode mode_;
  std::vector<Formula> ant_;
  std::vector<Formula> suc_;
  std::vector<std::shared_ptr<const Sequent>> imps_;
  std::vector<std::shared_ptr<const Sequent>> mods_;
  std::optional<Position> origin_;
};

// Canonical comparison: formulas as multisets/sets, blocks compared as
// sorted collections; origins are ignored.
std::strong_ordering compare(const Sequent& a, const Sequent& b);
inline bool operator==(const Sequent& a, const Sequent& b) { return compare(a, b) == 0; }

const Sequent& subsequent_at(const Sequent& root, const Position& pos);
Sequent replace_at(const Sequent& root, const Position& pos, Sequent replacement);
bool valid_position(const Sequent& root, const Position& pos);

enum class Relation : std::uint8_t { imp, mod, plus };
// imp: T ∈⟨⟩ root, mod: T ∈[] root (direct children), plus: every T ∈⁺ root
// in preorder (node, implication blocks, modal blocks)
std::vector<std::pair<Position, Sequent>> descendants(const Sequent& root, Relation rel);
// positions only, preorder
std::vector<Position> plus_positions(const Sequent& root);

std::size_t md_sequent(const Sequent& s);

// ⇒Θ♭ for Θ = suc(s)
Sequent flat(const Sequent& s);
// Λ ⇒ Θ♭
Sequent flat_keep_ant(const Sequent& s);
// ⇒_{Λ⇒Θ} Θ#, annotated with positions starting at pos
Sequent sharp(const Sequent& s, const Position& pos);
// ⇒ Θ# without annotations
Sequent sharp_plain(const Sequent& s);

bool structurally_included(const Sequent& s1, const Sequent& s2);

// Text form: "a, b => c, <ant => suc>, [ant => suc]"
std::string render(const Sequent& s, Style style = Style::ascii);
Sequent parse_sequent(std::string_view text, SequentMode mode = SequentMode::set);

// canonical copy: blocks sorted recursively (set mode also dedups blocks)
Sequent canonical(const Sequent& s);
std::size_t sequent_size(const Sequent& s);

}  // namespace lik
