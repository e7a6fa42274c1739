#include <gtest/gtest.h>

#include <set>

#include "lik/errors.hpp"
#include "lik/formula.hpp"
#include "lik/random.hpp"
#include "reference.hpp"

using namespace lik;

namespace {

Formula p() { return Formula::atom("p"); }
Formula q() { return Formula::atom("q"); }

std::set<std::string> keys(const std::vector<Formula>& v) {
  std::set<std::string> out;
  for (auto f : v) out.insert(f.key());
  return out;
}

}  // namespace

TEST(Parse, RegularityAxiom) {
  Formula f = parse_formula("[](p|q) -> <>p | []q");
  EXPECT_EQ(f, Formula::imp(Formula::box(Formula::disj(p(), q())), Formula::disj(Formula::dia(p()), Formula::box(q()))));
}

TEST(Parse, Atom) { EXPECT_EQ(parse_formula("p"), p()); }

TEST(Parse, NegationIsImplicationToBottom) {
  EXPECT_EQ(parse_formula("~<>F"), Formula::imp(Formula::dia(Formula::bot()), Formula::bot()));
}

TEST(Parse, ImplicationIsRightAssociative) {
  EXPECT_EQ(parse_formula("p -> q -> p"), Formula::imp(p(), Formula::imp(q(), p())));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_formula("p & q | p"), Formula::disj(Formula::conj(p(), q()), p()));
  EXPECT_EQ(parse_formula("[]p & q"), Formula::conj(Formula::box(p()), q()));
  EXPECT_EQ(parse_formula("~p | q"), Formula::disj(Formula::neg(p()), q()));
}

TEST(Parse, ErrorsCarryOffsets) {
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_formula("p &"), ParseError);
  EXPECT_THROW(parse_formula("(p"), ParseError);
  EXPECT_THROW(parse_formula("P"), ParseError);
  try {
    parse_formula("p ) q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Render, Styles) {
  EXPECT_EQ(render(Formula::box(p())), "[]p");
  EXPECT_EQ(render(Formula::imp(Formula::dia(p()), Formula::box(q())), Style::unicode), "◇p ⊃ □q");
  EXPECT_EQ(render(Formula::disj(Formula::box(Formula::bot()), Formula::dia(Formula::top())), Style::latex),
            "\\Box\\bot \\lor \\Diamond\\top");
}

TEST(Render, RoundTripOnRandomFormulas) {
  Rng rng(7);
  FormulaParams params;
  params.max_connectives = 20;
  params.max_degree = 3;
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, params);
    EXPECT_EQ(parse_formula(render(f)), f) << render(f);
  }
}

TEST(ModalDegree, Examples) {
  EXPECT_EQ(modal_degree(parse_formula("p -> q")), 0u);
  EXPECT_EQ(modal_degree(parse_formula("[](p|q) -> <>p | []q")), 1u);
  EXPECT_EQ(modal_degree(parse_formula("[][]p")), 2u);
}

TEST(ModalDegree, AgreesWithReferenceAndBounds) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng);
    EXPECT_EQ(modal_degree(f), ref::degree(f));
    EXPECT_LE(modal_degree(f), f.height());
    EXPECT_EQ(modal_degree(Formula::box(f)), modal_degree(f) + 1);
    EXPECT_EQ(modal_degree(Formula::dia(f)), modal_degree(f) + 1);
  }
}

TEST(Subformulas, Examples) {
  EXPECT_EQ(keys(subformulas(parse_formula("p & q"))), (std::set<std::string>{"p", "q", "p & q"}));
  EXPECT_EQ(keys(subformulas(parse_formula("[]p -> p"))), (std::set<std::string>{"p", "[]p", "[]p -> p"}));
  EXPECT_EQ(keys(subformulas(parse_formula("<>(p | q)"))), (std::set<std::string>{"p", "q", "p | q", "<>(p | q)"}));
}

TEST(Subformulas, NegationIsNotFlattened) {
  EXPECT_EQ(keys(subformulas(parse_formula("~p"))), (std::set<std::string>{"p", "F", "~p"}));
}

TEST(Subformulas, MatchReferenceAndBound) {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng);
    auto subs = subformulas(f);
    EXPECT_EQ(keys(subs), ref::subformula_keys(f));
    EXPECT_LE(subs.size(), f.size());
  }
}

TEST(Formula, HashConsing) {
  EXPECT_EQ(parse_formula("[](p & q)"), Formula::box(Formula::conj(p(), q())));
  EXPECT_NE(parse_formula("p & q"), parse_formula("q & p"));
}
