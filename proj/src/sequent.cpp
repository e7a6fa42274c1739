#include "lik/sequent.hpp"

#include <algorithm>
#include <map>

#include "lexer.hpp"
#include "lik/errors.hpp"

namespace lik {

// ---- Position ----

Position Position::child(BlockKind k, std::size_t i) const {
  Position p = *this;
  p.steps_.push_back({k, i});
  return p;
}

Position Position::parent() const {
  if (steps_.empty()) throw InvalidPosition("root has no parent");
  Position p = *this;
  p.steps_.pop_back();
  return p;
}

Position Position::concat(const Position& tail) const {
  Position p = *this;
  p.steps_.insert(p.steps_.end(), tail.steps_.begin(), tail.steps_.end());
  return p;
}

bool Position::is_prefix_of(const Position& other) const {
  return steps_.size() <= other.steps_.size() &&
         std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

Position Position::relative(const Position& other) const {
  if (!is_prefix_of(other)) throw InvalidPosition(to_string() + " is not a prefix of " + other.to_string());
  return Position(std::vector<Step>(other.steps_.begin() + static_cast<std::ptrdiff_t>(steps_.size()), other.steps_.end()));
}

std::string Position::to_string() const {
  if (steps_.empty()) return "root";
  std::string out;
  for (const Step& s : steps_) {
    if (!out.empty()) out += '.';
    out += s.kind == BlockKind::imp ? 'i' : 'm';
    out += std::to_string(s.index);
  }
  return out;
}

Position Position::parse(std::string_view text) {
  if (text == "root" || text.empty()) return {};
  std::vector<Step> steps;
  std::size_t i = 0;
  while (i < text.size()) {
    const char k = text[i];
    if (k != 'i' && k != 'm') throw InvalidPosition("bad position '" + std::string(text) + "'");
    std::size_t j = i + 1;
    std::size_t idx = 0;
    if (j >= text.size() || !std::isdigit(static_cast<unsigned char>(text[j])))
      throw InvalidPosition("bad position '" + std::string(text) + "'");
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) idx = idx * 10 + static_cast<std::size_t>(text[j++] - '0');
    steps.push_back({k == 'i' ? BlockKind::imp : BlockKind::mod, idx});
    if (j < text.size()) {
      if (text[j] != '.') throw InvalidPosition("bad position '" + std::string(text) + "'");
      ++j;
    }
    i = j;
  }
  return Position(std::move(steps));
}

// ---- Sequent ----

bool Sequent::has_ant(Formula f) const noexcept { return std::find(ant_.begin(), ant_.end(), f) != ant_.end(); }
bool Sequent::has_suc(Formula f) const noexcept { return std::find(suc_.begin(), suc_.end(), f) != suc_.end(); }

namespace {
bool insert_formula(std::vector<Formula>& v, Formula f, SequentMode mode) {
  if (mode == SequentMode::multiset) {
    v.push_back(f);
    return true;
  }
  auto it = std::lower_bound(v.begin(), v.end(), f);
  if (it != v.end() && *it == f) return false;
  v.insert(it, f);
  return true;
}

bool erase_formula(std::vector<Formula>& v, Formula f) {
  auto it = std::find(v.begin(), v.end(), f);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}
}  // namespace

bool Sequent::add_ant(Formula f) { return insert_formula(ant_, f, mode_); }
bool Sequent::add_suc(Formula f) { return insert_formula(suc_, f, mode_); }
bool Sequent::remove_ant(Formula f) { return erase_formula(ant_, f); }
bool Sequent::remove_suc(Formula f) { return erase_formula(suc_, f); }

std::size_t Sequent::add_block(BlockKind k, Sequent s) {
  auto& v = k == BlockKind::imp ? imps_ : mods_;
  if (mode_ == SequentMode::set) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (*v[i] == s) return i;
  }
  v.push_back(std::make_shared<const Sequent>(std::move(s)));
  return v.size() - 1;
}

std::size_t Sequent::append_block(BlockKind k, Sequent s) {
  auto& v = k == BlockKind::imp ? imps_ : mods_;
  v.push_back(std::make_shared<const Sequent>(std::move(s)));
  return v.size() - 1;
}

void Sequent::set_block(BlockKind k, std::size_t i, Sequent s) {
  auto& v = k == BlockKind::imp ? imps_ : mods_;
  if (i >= v.size()) throw InvalidPosition("block index out of range");
  v[i] = std::make_shared<const Sequent>(std::move(s));
}

namespace {

std::strong_ordering compare_formulas(std::vector<Formula> a, std::vector<Formula> b, bool sorted) {
  if (!sorted) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
  }
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<const Sequent*> sorted_blocks(const Sequent& s, BlockKind k) {
  std::vector<const Sequent*> v;
  for (std::size_t i = 0; i < s.block_count(k); ++i) v.push_back(&s.block(k, i));
  std::sort(v.begin(), v.end(), [](const Sequent* x, const Sequent* y) { return compare(*x, *y) < 0; });
  return v;
}

std::strong_ordering compare_blocks(const Sequent& a, const Sequent& b, BlockKind k) {
  if (a.block_count(k) != b.block_count(k)) return a.block_count(k) <=> b.block_count(k);
  auto va = sorted_blocks(a, k);
  auto vb = sorted_blocks(b, k);
  for (std::size_t i = 0; i < va.size(); ++i) {
    auto c = compare(*va[i], *vb[i]);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering compare(const Sequent& a, const Sequent& b) {
  if (&a == &b) return std::strong_ordering::equal;
  const bool sorted = a.mode() == SequentMode::set && b.mode() == SequentMode::set;
  if (auto c = compare_formulas(a.ant(), b.ant(), sorted); c != 0) return c;
  if (auto c = compare_formulas(a.suc(), b.suc(), sorted); c != 0) return c;
  if (auto c = compare_blocks(a, b, BlockKind::imp); c != 0) return c;
  return compare_blocks(a, b, BlockKind::mod);
}

// ---- positions ----

const Sequent& subsequent_at(const Sequent& root, const Position& pos) {
  const Sequent* cur = &root;
  for (const Step& st : pos.steps()) {
    if (st.index >= cur->block_count(st.kind))
      throw InvalidPosition("invalid position " + pos.to_string());
    cur = &cur->block(st.kind, st.index);
  }
  return *cur;
}

bool valid_position(const Sequent& root, const Position& pos) {
  const Sequent* cur = &root;
  for (const Step& st : pos.steps()) {
    if (st.index >= cur->block_count(st.kind)) return false;
    cur = &cur->block(st.kind, st.index);
  }
  return true;
}

namespace {
Sequent replace_rec(const Sequent& cur, const std::vector<Step>& steps, std::size_t at, Sequent&& repl) {
  if (at == steps.size()) return std::move(repl);
  const Step& st = steps[at];
  if (st.index >= cur.block_count(st.kind)) throw InvalidPosition("invalid position");
  Sequent out = cur;
  out.set_block(st.kind, st.index, replace_rec(cur.block(st.kind, st.index), steps, at + 1, std::move(repl)));
  return out;
}
}  // namespace

Sequent replace_at(const Sequent& root, const Position& pos, Sequent replacement) {
  if (!valid_position(root, pos)) throw InvalidPosition("invalid position " + pos.to_string());
  return replace_rec(root, pos.steps(), 0, std::move(replacement));
}

namespace {
void preorder(const Sequent& s, const Position& p, std::vector<std::pair<Position, Sequent>>* out,
              std::vector<Position>* pos_out) {
  if (out) out->emplace_back(p, s);
  if (pos_out) pos_out->push_back(p);
  for (std::size_t i = 0; i < s.imp_count(); ++i) preorder(s.imp(i), p.child(BlockKind::imp, i), out, pos_out);
  for (std::size_t i = 0; i < s.mod_count(); ++i) preorder(s.mod(i), p.child(BlockKind::mod, i), out, pos_out);
}
}  // namespace

std::vector<std::pair<Position, Sequent>> descendants(const Sequent& root, Relation rel) {
  std::vector<std::pair<Position, Sequent>> out;
  if (rel == Relation::plus) {
    preorder(root, Position{}, &out, nullptr);
    return out;
  }
  const BlockKind k = rel == Relation::imp ? BlockKind::imp : BlockKind::mod;
  for (std::size_t i = 0; i < root.block_count(k); ++i)
    out.emplace_back(Position{}.child(k, i), root.block(k, i));
  return out;
}

std::vector<Position> plus_positions(const Sequent& root) {
  std::vector<Position> out;
  preorder(root, Position{}, nullptr, &out);
  return out;
}

std::size_t md_sequent(const Sequent& s) {
  std::size_t m = 0;
  for (Formula f : s.ant()) m = std::max(m, f.degree());
  for (Formula f : s.suc()) m = std::max(m, f.degree());
  for (std::size_t i = 0; i < s.imp_count(); ++i) m = std::max(m, md_sequent(s.imp(i)));
  for (std::size_t i = 0; i < s.mod_count(); ++i) m = std::max(m, md_sequent(s.mod(i)) + 1);
  return m;
}

// ---- ♭ and # ----

Sequent flat_keep_ant(const Sequent& s) {
  Sequent out(s.mode());
  for (Formula f : s.ant()) out.add_ant(f);
  for (std::size_t i = 0; i < s.mod_count(); ++i) out.add_mod(flat_keep_ant(s.mod(i)));
  return out;
}

Sequent flat(const Sequent& s) {
  Sequent out(s.mode());
  for (std::size_t i = 0; i < s.mod_count(); ++i) out.add_mod(flat_keep_ant(s.mod(i)));
  return out;
}

Sequent sharp(const Sequent& s, const Position& pos) {
  Sequent out(SequentMode::set);
  for (Formula f : s.suc()) out.add_suc(f);
  // annotated children are never merged, even when their bodies coincide
  for (std::size_t i = 0; i < s.mod_count(); ++i)
    out.append_block(BlockKind::mod, sharp(s.mod(i), pos.child(BlockKind::mod, i)));
  out.set_origin(pos);
  return out;
}

Sequent sharp_plain(const Sequent& s) {
  Sequent out(s.mode());
  for (Formula f : s.suc()) out.add_suc(f);
  for (std::size_t i = 0; i < s.mod_count(); ++i) out.add_mod(sharp_plain(s.mod(i)));
  return out;
}

// ---- structural inclusion ----

namespace {
bool ant_subset(const Sequent& a, const Sequent& b) {
  for (Formula f : a.ant())
    if (!b.has_ant(f)) return false;
  return true;
}

struct InclusionMemo {
  std::map<std::pair<const Sequent*, const Sequent*>, bool> seen;

  bool incl(const Sequent& s1, const Sequent& s2) {
    auto key = std::make_pair(&s1, &s2);
    if (auto it = seen.find(key); it != seen.end()) return it->second;
    bool r = compute(s1, s2);
    seen[key] = r;
    return r;
  }

  bool compute(const Sequent& s1, const Sequent& s2) {
    if (!ant_subset(s1, s2)) return false;
    for (std::size_t i = 0; i < s1.mod_count(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < s2.mod_count() && !found; ++j) found = incl(s1.mod(i), s2.mod(j));
      if (!found) return false;
    }
    for (std::size_t j = 0; j < s2.mod_count(); ++j) {
      bool found = false;
      for (std::size_t i = 0; i < s1.mod_count() && !found; ++i) found = incl(s1.mod(i), s2.mod(j));
      if (!found) return false;
    }
    return true;
  }
};
}  // namespace

bool structurally_included(const Sequent& s1, const Sequent& s2) {
  InclusionMemo memo;
  return memo.incl(s1, s2);
}

// ---- text ----

namespace {
struct SeqGlyphs {
  const char* arrow;
  const char* lang;
  const char* rang;
};

void render_seq(const Sequent& s, Style st, std::string& out) {
  const SeqGlyphs g = st == Style::ascii     ? SeqGlyphs{"=>", "<", ">"}
                      : st == Style::unicode ? SeqGlyphs{"⇒", "⟨", "⟩"}
                                             : SeqGlyphs{"\\Rightarrow", "\\langle ", " \\rangle"};
  bool first = true;
  for (Formula f : s.ant()) {
    if (!first) out += ", ";
    first = false;
    out += render(f, st);
  }
  if (!s.ant().empty()) out += ' ';
  out += g.arrow;
  first = true;
  auto sep = [&] {
    out += first ? " " : ", ";
    first = false;
  };
  for (Formula f : s.suc()) {
    sep();
    out += render(f, st);
  }
  for (std::size_t i = 0; i < s.imp_count(); ++i) {
    sep();
    out += g.lang;
    render_seq(s.imp(i), st, out);
    out += g.rang;
  }
  for (std::size_t i = 0; i < s.mod_count(); ++i) {
    sep();
    out += '[';
    render_seq(s.mod(i), st, out);
    out += ']';
  }
}

using detail::Lexer;
using detail::Tok;

Sequent parse_seq(Lexer& lx, SequentMode mode, Tok closer) {
  Sequent s(mode);
  if (!lx.at(Tok::arrow)) {
    for (;;) {
      s.add_ant(detail::parse_formula_from(lx));
      if (!lx.at(Tok::comma)) break;
      lx.next();
    }
  }
  if (!lx.at(Tok::arrow))
    throw ParseError(std::string("expected '=>', found ") + detail::token_name(lx.peek().kind), lx.peek().offset);
  lx.next();
  if (lx.at(closer)) return s;
  for (;;) {
    if (lx.at(Tok::langle)) {
      lx.next();
      s.add_imp(parse_seq(lx, mode, Tok::rangle));
      if (!lx.at(Tok::rangle)) throw ParseError("expected '>'", lx.peek().offset);
      lx.next();
    } else if (lx.at(Tok::lbrack)) {
      lx.next();
      s.add_mod(parse_seq(lx, mode, Tok::rbrack));
      if (!lx.at(Tok::rbrack)) throw ParseError("expected ']'", lx.peek().offset);
      lx.next();
    } else {
      s.add_suc(detail::parse_formula_from(lx));
    }
    if (!lx.at(Tok::comma)) break;
    lx.next();
  }
  return s;
}
}  // namespace

std::string render(const Sequent& s, Style style) {
  std::string out;
  render_seq(s, style, out);
  return out;
}

Sequent parse_sequent(std::string_view text, SequentMode mode) {
  Lexer lx(text);
  Sequent s = parse_seq(lx, mode, Tok::end);
  if (!lx.at(Tok::end))
    throw ParseError(std::string("unexpected ") + detail::token_name(lx.peek().kind), lx.peek().offset);
  return s;
}

Sequent canonical(const Sequent& s) {
  Sequent out(s.mode());
  std::vector<Formula> ant = s.ant(), suc = s.suc();
  std::sort(ant.begin(), ant.end());
  std::sort(suc.begin(), suc.end());
  for (Formula f : ant) out.add_ant(f);
  for (Formula f : suc) out.add_suc(f);
  for (BlockKind k : {BlockKind::imp, BlockKind::mod}) {
    std::vector<Sequent> blocks;
    for (std::size_t i = 0; i < s.block_count(k); ++i) blocks.push_back(canonical(s.block(k, i)));
    std::sort(blocks.begin(), blocks.end(), [](const Sequent& a, const Sequent& b) { return compare(a, b) < 0; });
    for (auto& b : blocks) out.add_block(k, std::move(b));
  }
  out.set_origin(s.origin());
  return out;
}

std::size_t sequent_size(const Sequent& s) {
  std::size_t n = s.ant().size() + s.suc().size();
  for (std::size_t i = 0; i < s.imp_count(); ++i) n += 1 + sequent_size(s.imp(i));
  for (std::size_t i = 0; i < s.mod_count(); ++i) n += 1 + sequent_size(s.mod(i));
  return n;
}

}  // namespace lik
