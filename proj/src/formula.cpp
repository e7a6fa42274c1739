#include "lik/formula.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

#include "lexer.hpp"
#include "lik/errors.hpp"

namespace lik {

namespace detail {

struct FormulaNode {
  Connective kind;
  const FormulaNode* left;
  const FormulaNode* right;
  std::string name;
  std::size_t size;
  std::size_t height;
  std::size_t degree;
  std::string key;
  std::size_t hash;
};

namespace {

struct NodeKey {
  Connective kind;
  const FormulaNode* left;
  const FormulaNode* right;
  std::string name;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::size_t h = std::hash<std::string>{}(k.name);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::size_t>(k.kind));
    mix(std::hash<const void*>{}(k.left));
    mix(std::hash<const void*>{}(k.right));
    return h;
  }
};

// Nodes live for the whole process; handles never dangle.
struct Table {
  std::mutex mu;
  std::unordered_map<NodeKey, std::unique_ptr<FormulaNode>, NodeKeyHash> nodes;
};

Table& table() {
  static Table* t = new Table;
  return *t;
}

int prec(const FormulaNode* n) {
  switch (n->kind) {
    case Connective::atom:
    case Connective::top:
    case Connective::bot:
      return 5;
    case Connective::box:
    case Connective::dia:
      return 4;
    case Connective::conj:
      return 3;
    case Connective::disj:
      return 2;
    case Connective::imp:
      return n->right->kind == Connective::bot ? 4 : 1;
  }
  return 0;
}

struct Glyphs {
  const char* top;
  const char* bot;
  const char* conj;
  const char* disj;
  const char* imp;
  const char* neg;
  const char* box;
  const char* dia;
};

constexpr Glyphs kAscii{"T", "F", " & ", " | ", " -> ", "~", "[]", "<>"};
constexpr Glyphs kUnicode{"⊤", "⊥", " ∧ ", " ∨ ", " ⊃ ", "¬", "□", "◇"};
constexpr Glyphs kLatex{"\\top", "\\bot", " \\land ", " \\lor ", " \\supset ", "\\neg", "\\Box", "\\Diamond"};

void render_into(const FormulaNode* n, Style st, std::string& out);

void render_sub(const FormulaNode* n, int min, Style st, std::string& out) {
  if (prec(n) < min) {
    out += '(';
    render_into(n, st, out);
    out += ')';
  } else {
    render_into(n, st, out);
  }
}

void prefix(const char* op, const FormulaNode* body, Style st, std::string& out) {
  out += op;
  std::string inner;
  render_sub(body, 4, st, inner);
  // a latex command glued to a letter would change the command name
  if (st == Style::latex && !inner.empty() && std::isalnum(static_cast<unsigned char>(inner[0])))
    out += ' ';
  out += inner;
}

void render_into(const FormulaNode* n, Style st, std::string& out) {
  const Glyphs& g = st == Style::ascii ? kAscii : st == Style::unicode ? kUnicode : kLatex;
  switch (n->kind) {
    case Connective::atom:
      out += n->name;
      return;
    case Connective::top:
      out += g.top;
      return;
    case Connective::bot:
      out += g.bot;
      return;
    case Connective::box:
      prefix(g.box, n->left, st, out);
      return;
    case Connective::dia:
      prefix(g.dia, n->left, st, out);
      return;
    case Connective::conj:
      render_sub(n->left, 3, st, out);
      out += g.conj;
      render_sub(n->right, 4, st, out);
      return;
    case Connective::disj:
      render_sub(n->left, 2, st, out);
      out += g.disj;
      render_sub(n->right, 3, st, out);
      return;
    case Connective::imp:
      if (n->right->kind == Connective::bot) {
        prefix(g.neg, n->left, st, out);
        return;
      }
      render_sub(n->left, 2, st, out);
      out += g.imp;
      render_sub(n->right, 1, st, out);
      return;
  }
}

}  // namespace
}  // namespace detail

using detail::FormulaNode;

Formula Formula::make(Connective c, const FormulaNode* l, const FormulaNode* r, std::string_view name) {
  auto& t = detail::table();
  detail::NodeKey k{c, l, r, std::string(name)};
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.nodes.find(k);
  if (it != t.nodes.end()) return Formula(it->second.get());
  auto n = std::make_unique<FormulaNode>();
  n->kind = c;
  n->left = l;
  n->right = r;
  n->name = k.name;
  n->size = 1 + (l ? l->size : 0) + (r ? r->size : 0);
  n->height = 1 + std::max(l ? l->height : 0, r ? r->height : 0);
  n->degree = std::max(l ? l->degree : 0, r ? r->degree : 0);
  if (c == Connective::box || c == Connective::dia) n->degree = l->degree + 1;
  detail::render_into(n.get(), Style::ascii, n->key);
  n->hash = std::hash<std::string>{}(n->key);
  const FormulaNode* raw = n.get();
  t.nodes.emplace(std::move(k), std::move(n));
  return Formula(raw);
}

Formula Formula::atom(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
    throw Error("atom names start with a lowercase letter: '" + std::string(name) + "'");
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)))
      throw Error("atom names are alphanumeric: '" + std::string(name) + "'");
  return make(Connective::atom, nullptr, nullptr, name);
}
Formula Formula::top() { return make(Connective::top, nullptr, nullptr, ""); }
Formula Formula::bot() { return make(Connective::bot, nullptr, nullptr, ""); }
Formula Formula::conj(Formula a, Formula b) { return make(Connective::conj, a.node_, b.node_, ""); }
Formula Formula::disj(Formula a, Formula b) { return make(Connective::disj, a.node_, b.node_, ""); }
Formula Formula::imp(Formula a, Formula b) { return make(Connective::imp, a.node_, b.node_, ""); }
Formula Formula::box(Formula a) { return make(Connective::box, a.node_, nullptr, ""); }
Formula Formula::dia(Formula a) { return make(Connective::dia, a.node_, nullptr, ""); }

Connective Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept { return node_->name; }
Formula Formula::left() const {
  if (!node_->right) throw Error("left() on non-binary formula");
  return Formula(node_->left);
}
Formula Formula::right() const {
  if (!node_->right) throw Error("right() on non-binary formula");
  return Formula(node_->right);
}
Formula Formula::body() const {
  if (node_->kind != Connective::box && node_->kind != Connective::dia)
    throw Error("body() on non-modal formula");
  return Formula(node_->left);
}
std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::height() const noexcept { return node_->height; }
std::size_t Formula::degree() const noexcept { return node_->degree; }
const std::string& Formula::key() const noexcept { return node_->key; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

bool operator<(Formula a, Formula b) noexcept {
  if (a.node_ == b.node_) return false;
  if (a.node_->size != b.node_->size) return a.node_->size < b.node_->size;
  return a.node_->key < b.node_->key;
}

std::string render(Formula f, Style style) {
  if (style == Style::ascii) return f.key();
  std::string out;
  detail::render_into(f.node_, style, out);
  return out;
}

std::size_t modal_degree(Formula f) { return f.degree(); }

namespace {
void collect(Formula f, std::set<Formula>& acc) {
  if (!acc.insert(f).second) return;
  switch (f.kind()) {
    case Connective::conj:
    case Connective::disj:
    case Connective::imp:
      collect(f.left(), acc);
      collect(f.right(), acc);
      break;
    case Connective::box:
    case Connective::dia:
      collect(f.body(), acc);
      break;
    default:
      break;
  }
}
}  // namespace

std::vector<Formula> subformulas(Formula f) {
  std::set<Formula> acc;
  collect(f, acc);
  return {acc.begin(), acc.end()};
}

std::vector<std::string> atoms_of(Formula f) {
  std::set<std::string> names;
  for (Formula g : subformulas(f))
    if (g.is_atom()) names.insert(g.name());
  return {names.begin(), names.end()};
}

std::size_t connective_count(Formula f) {
  switch (f.kind()) {
    case Connective::atom:
    case Connective::top:
    case Connective::bot:
      return 0;
    case Connective::box:
    case Connective::dia:
      return 1 + connective_count(f.body());
    default:
      return 1 + connective_count(f.left()) + connective_count(f.right());
  }
}

// ---- lexer and parser ----

namespace detail {

const char* token_name(Tok k) {
  switch (k) {
    case Tok::ident: return "identifier";
    case Tok::top: return "'T'";
    case Tok::bot: return "'F'";
    case Tok::conj: return "'&'";
    case Tok::disj: return "'|'";
    case Tok::imp: return "'->'";
    case Tok::neg: return "'~'";
    case Tok::box: return "'[]'";
    case Tok::dia: return "'<>'";
    case Tok::lpar: return "'('";
    case Tok::rpar: return "')'";
    case Tok::comma: return "','";
    case Tok::arrow: return "'=>'";
    case Tok::lbrack: return "'['";
    case Tok::rbrack: return "']'";
    case Tok::langle: return "'<'";
    case Tok::rangle: return "'>'";
    case Tok::end: return "end of input";
  }
  return "?";
}

namespace {
struct Spelling {
  std::string_view text;
  Tok kind;
};
// longest spellings first where prefixes collide
constexpr Spelling kSpellings[] = {
    {"[]", Tok::box},       {"<>", Tok::dia},      {"->", Tok::imp},     {"=>", Tok::arrow},
    {"&", Tok::conj},       {"|", Tok::disj},      {"~", Tok::neg},      {"(", Tok::lpar},
    {")", Tok::rpar},       {",", Tok::comma},     {"[", Tok::lbrack},   {"]", Tok::rbrack},
    {"<", Tok::langle},     {">", Tok::rangle},    {"⊤", Tok::top},      {"⊥", Tok::bot},
    {"∧", Tok::conj},       {"∨", Tok::disj},      {"⊃", Tok::imp},      {"→", Tok::imp},
    {"¬", Tok::neg},        {"□", Tok::box},       {"◇", Tok::dia},      {"⇒", Tok::arrow},
    {"⟨", Tok::langle},     {"⟩", Tok::rangle},
};

Tok latex_command(std::string_view name, bool& ok) {
  ok = true;
  if (name == "top") return Tok::top;
  if (name == "bot") return Tok::bot;
  if (name == "land" || name == "wedge") return Tok::conj;
  if (name == "lor" || name == "vee") return Tok::disj;
  if (name == "supset" || name == "to" || name == "rightarrow") return Tok::imp;
  if (name == "neg" || name == "lnot") return Tok::neg;
  if (name == "Box") return Tok::box;
  if (name == "Diamond") return Tok::dia;
  if (name == "Rightarrow") return Tok::arrow;
  if (name == "langle") return Tok::langle;
  if (name == "rangle") return Tok::rangle;
  ok = false;
  return Tok::end;
}
}  // namespace

void Lexer::advance() {
  while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  if (pos_ >= src_.size()) {
    cur_ = {Tok::end, "", pos_};
    return;
  }
  const std::size_t start = pos_;
  const char c = src_[pos_];
  if (std::isalpha(static_cast<unsigned char>(c))) {
    std::size_t e = pos_;
    while (e < src_.size() && std::isalnum(static_cast<unsigned char>(src_[e]))) ++e;
    std::string word(src_.substr(pos_, e - pos_));
    pos_ = e;
    if (word == "T") {
      cur_ = {Tok::top, word, start};
    } else if (word == "F") {
      cur_ = {Tok::bot, word, start};
    } else if (std::islower(static_cast<unsigned char>(word[0]))) {
      cur_ = {Tok::ident, word, start};
    } else {
      throw ParseError("identifier must start with a lowercase letter: '" + word + "'", start);
    }
    return;
  }
  if (c == '\\') {
    std::size_t e = pos_ + 1;
    while (e < src_.size() && std::isalpha(static_cast<unsigned char>(src_[e]))) ++e;
    std::string_view name = src_.substr(pos_ + 1, e - pos_ - 1);
    bool ok = false;
    Tok k = latex_command(name, ok);
    if (!ok) throw ParseError("unknown command '\\" + std::string(name) + "'", start);
    pos_ = e;
    cur_ = {k, std::string(name), start};
    return;
  }
  for (const auto& sp : kSpellings) {
    if (src_.substr(pos_, sp.text.size()) == sp.text) {
      pos_ += sp.text.size();
      cur_ = {sp.kind, std::string(sp.text), start};
      return;
    }
  }
  throw ParseError(std::string("unexpected character '") + c + "'", start);
}

namespace {

Formula parse_imp(Lexer& lx);

[[noreturn]] void unexpected(const Token& t, const char* wanted) {
  throw ParseError(std::string("expected ") + wanted + ", found " + token_name(t.kind), t.offset);
}

Formula parse_unary(Lexer& lx) {
  Token t = lx.next();
  switch (t.kind) {
    case Tok::neg:
      return Formula::neg(parse_unary(lx));
    case Tok::box:
      return Formula::box(parse_unary(lx));
    case Tok::dia:
      return Formula::dia(parse_unary(lx));
    case Tok::ident:
      return Formula::atom(t.text);
    case Tok::top:
      return Formula::top();
    case Tok::bot:
      return Formula::bot();
    case Tok::lpar: {
      Formula f = parse_imp(lx);
      if (!lx.at(Tok::rpar)) unexpected(lx.peek(), "')'");
      lx.next();
      return f;
    }
    default:
      unexpected(t, "a formula");
  }
}

Formula parse_and(Lexer& lx) {
  Formula f = parse_unary(lx);
  while (lx.at(Tok::conj)) {
    lx.next();
    f = Formula::conj(f, parse_unary(lx));
  }
  return f;
}

Formula parse_or(Lexer& lx) {
  Formula f = parse_and(lx);
  while (lx.at(Tok::disj)) {
    lx.next();
    f = Formula::disj(f, parse_and(lx));
  }
  return f;
}

Formula parse_imp(Lexer& lx) {
  Formula f = parse_or(lx);
  if (lx.at(Tok::imp)) {
    lx.next();
    return Formula::imp(f, parse_imp(lx));
  }
  return f;
}

}  // namespace

Formula parse_formula_from(Lexer& lx) { return parse_imp(lx); }

}  // namespace detail

Formula parse_formula(std::string_view text) {
  detail::Lexer lx(text);
  if (lx.at(detail::Tok::end)) throw ParseError("empty formula", 0);
  Formula f = detail::parse_formula_from(lx);
  if (!lx.at(detail::Tok::end))
    throw ParseError(std::string("unexpected ") + detail::token_name(lx.peek().kind), lx.peek().offset);
  return f;
}

}  // namespace lik
