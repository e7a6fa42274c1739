#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lik {

enum class Connective : std::uint8_t { atom, top, bot, conj, disj, imp, box, dia };

enum class Style : std::uint8_t { ascii, unicode, latex };

namespace detail {
struct FormulaNode;
}

// Handle to a hash-consed, immutable formula node. Structurally equal
// formulas share one node, so equality is pointer equality.
class Formula {
 public:
  static Formula atom(std::string_view name);
  static Formula top();
  static Formula bot();
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula neg(Formula a) { return imp(a, bot()); }
  static Formula box(Formula a);
  static Formula dia(Formula a);

  Connective kind() const noexcept;
  bool is(Connective c) const noexcept { return kind() == c; }
  bool is_atom() const noexcept { return kind() == Connective::atom; }
  const std::string& name() const noexcept;  // atoms only
  Formula left() const;                      // binary connectives
  Formula right() const;
  Formula body() const;                      // box / dia

  std::size_t size() const noexcept;         // number of nodes
  std::size_t height() const noexcept;
  std::size_t degree() const noexcept;       // modal degree
  // ascii rendering, used as the canonical key
  const std::string& key() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(Formula a, Formula b) noexcept { return a.node_ == b.node_; }
  friend bool operator!=(Formula a, Formula b) noexcept { return a.node_ != b.node_; }
  // canonical order: size, then ascii rendering
  friend bool operator<(Formula a, Formula b) noexcept;
  friend std::string render(Formula f, Style style);

 private:
  explicit Formula(const detail::FormulaNode* n) : node_(n) {}
  static Formula make(Connective c, const detail::FormulaNode* l,
                      const detail::FormulaNode* r, std::string_view name);
  const detail::FormulaNode* node_;
};

Formula parse_formula(std::string_view text);
std::string render(Formula f, Style style = Style::ascii);

std::size_t modal_degree(Formula f);
// all subtrees, canonically ordered, no duplicates
std::vector<Formula> subformulas(Formula f);
std::vector<std::string> atoms_of(Formula f);
std::size_t connective_count(Formula f);

}  // namespace lik

template <>
struct std::hash<lik::Formula> {
  std::size_t operator()(lik::Formula f) const noexcept { return f.hash(); }
};
