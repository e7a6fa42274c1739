#pragma once

// Shared tokenizer for formulas and sequents. Accepts the ascii surface
// syntax plus the unicode and latex spellings produced by render().

#include <cstddef>
#include <string>
#include <string_view>

#include "lik/formula.hpp"

namespace lik::detail {

enum class Tok {
  ident, top, bot, conj, disj, imp, neg, box, dia, lpar, rpar,
  comma, arrow, lbrack, rbrack, langle, rangle, end
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }
  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }
  bool at(Tok k) const { return cur_.kind == k; }

 private:
  void advance();
  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_{Tok::end, "", 0};
};

// Recursive-descent parser over a lexer; stops at the first token that
// cannot continue a formula, so sequent parsing can reuse it.
Formula parse_formula_from(Lexer& lx);

const char* token_name(Tok k);

}  // namespace lik::detail
