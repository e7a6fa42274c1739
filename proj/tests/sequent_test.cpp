#include <gtest/gtest.h>

#include "gen.hpp"
#include "lik/errors.hpp"
#include "lik/sequent.hpp"
#include "reference.hpp"

using namespace lik;

namespace {

Sequent S(std::string_view text) { return parse_sequent(text); }
Position P(std::string_view text) { return Position::parse(text); }

// the sequent used as the running example for contexts, ♭ and #
const char* kExample = "p & q, []r => <>p, <[]p => [=> q]>, [p => q | r, [r => s]]";

}  // namespace

TEST(Position, ParseAndPrint) {
  EXPECT_EQ(P("root"), Position{});
  EXPECT_EQ(P("m0.i1").to_string(), "m0.i1");
  EXPECT_EQ(P("m0.i1").parent(), P("m0"));
  EXPECT_TRUE(P("m0").is_prefix_of(P("m0.i1")));
  EXPECT_EQ(P("m0").relative(P("m0.i1")), P("i1"));
}

TEST(Sequent, ParseRenderRoundTrip) {
  Sequent s = S(kExample);
  EXPECT_EQ(S(render(s)), s);
  EXPECT_EQ(render(S("=>")), "=>");
}

TEST(SubsequentAt, Examples) {
  EXPECT_EQ(subsequent_at(S("p => <q => r>"), P("i0")), S("q => r"));
  EXPECT_EQ(subsequent_at(S(kExample), P("m0.m0")), S("r => s"));
  EXPECT_THROW(subsequent_at(S("p => q"), P("i3")), InvalidPosition);
  EXPECT_EQ(subsequent_at(S(kExample), Position{}), S(kExample));
}

TEST(ReplaceAt, Examples) {
  EXPECT_EQ(replace_at(S("p => <q => r>"), P("i0"), S("q, s => r")), S("p => <q, s => r>"));
  EXPECT_EQ(replace_at(S("p => q"), Position{}, S("r =>")), S("r =>"));
  EXPECT_THROW(replace_at(S("p => q"), P("m0"), S("=>")), InvalidPosition);
}

TEST(ReplaceAt, RoundTripOnRandomSequents) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Sequent s = gen::sequent(rng, 3);
    for (const auto& pos : plus_positions(s)) EXPECT_EQ(replace_at(s, pos, subsequent_at(s, pos)), s);
  }
}

TEST(Descendants, Relations) {
  auto one = descendants(S("p => q"), Relation::plus);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].first.is_root());

  auto imps = descendants(S("=> <p => [q => r]>"), Relation::imp);
  ASSERT_EQ(imps.size(), 1u);
  EXPECT_EQ(imps[0].second, S("p => [q => r]"));

  auto all = descendants(S("=> <p => [q => r]>"), Relation::plus);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].second, S("=> <p => [q => r]>"));
  EXPECT_EQ(all[1].second, S("p => [q => r]"));
  EXPECT_EQ(all[2].second, S("q => r"));
  EXPECT_EQ(all[2].first, P("i0.m0"));

  EXPECT_TRUE(descendants(S("=> <p => [q => r]>"), Relation::mod).empty());
}

TEST(ModalDegree, Sequents) {
  EXPECT_EQ(md_sequent(S("=> []p")), 1u);
  EXPECT_EQ(md_sequent(S("=> [=> p]")), 1u);
  EXPECT_EQ(md_sequent(S("=> <=> [=> p]>")), 1u);
  EXPECT_EQ(md_sequent(S("=>")), 0u);
}

TEST(Flat, Examples) {
  EXPECT_EQ(flat(S(kExample)), S("=> [p => [r =>]]"));
  EXPECT_EQ(flat(S("=> p, q")), S("=>"));
  EXPECT_EQ(flat(S("=> [=>]")), S("=> [=>]"));
}

TEST(Flat, Idempotent) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Sequent s = gen::sequent(rng, 3);
    EXPECT_EQ(flat(flat(s)), flat(s));
  }
}

TEST(Sharp, Examples) {
  Sequent s = S(kExample);
  Sequent out = sharp(s, Position{});
  EXPECT_EQ(out, S("=> <>p, [=> q | r, [=> s]]"));
  ASSERT_TRUE(out.origin());
  EXPECT_TRUE(out.origin()->is_root());
  ASSERT_TRUE(out.mod(0).origin());
  EXPECT_EQ(*out.mod(0).origin(), P("m0"));
  EXPECT_EQ(*out.mod(0).mod(0).origin(), P("m0.m0"));
  EXPECT_EQ(sharp(S("r => q"), P("m0")), S("=> q"));
  EXPECT_EQ(sharp(S("=>"), P("m0")), S("=>"));
}

TEST(Sharp, BlockFreeKeepsFormulasAndDropsDegree) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Sequent s = gen::sequent(rng, 3);
    Sequent sh = sharp(s, Position{});
    EXPECT_EQ(sh.suc(), s.suc());
    EXPECT_TRUE(sh.ant().empty());
    EXPECT_EQ(sh.imp_count(), 0u);
    EXPECT_LE(md_sequent(sh), md_sequent(s));
  }
}

TEST(StructurallyIncluded, Examples) {
  EXPECT_TRUE(structurally_included(S("p | q, p => s"), S("p | q, p, r => s")));
  EXPECT_TRUE(structurally_included(S(kExample), S(kExample)));
  EXPECT_FALSE(structurally_included(S("p => [q =>]"), S("p =>")));
  EXPECT_FALSE(structurally_included(S("p =>"), S("p => [q =>]")));
  // implication blocks and succedent formulas are ignored
  EXPECT_TRUE(structurally_included(S("p => q, <r => s>"), S("p => ")));
}

TEST(StructurallyIncluded, AgreesWithReference) {
  Rng rng(17);
  for (int i = 0; i < 400; ++i) {
    Sequent a = gen::sequent(rng, 2, false);
    Sequent b = coin(rng, 0.5) ? gen::grow(rng, a) : gen::sequent(rng, 2, false);
    EXPECT_EQ(structurally_included(a, b), ref::included(a, b)) << render(a) << " vs " << render(b);
  }
}

TEST(StructurallyIncluded, ReflexiveAndTransitive) {
  Rng rng(19);
  std::size_t chains = 0;
  for (int i = 0; i < 400; ++i) {
    Sequent a = gen::sequent(rng, 2);
    EXPECT_TRUE(structurally_included(a, a));
    Sequent b = gen::grow(rng, a);
    Sequent c = gen::grow(rng, b);
    if (structurally_included(a, b) && structurally_included(b, c)) {
      ++chains;
      EXPECT_TRUE(structurally_included(a, c)) << render(a) << " / " << render(b) << " / " << render(c);
    }
  }
  EXPECT_GT(chains, 100u);
}

TEST(Sequent, SetModeDeduplicates) {
  Sequent s;
  EXPECT_TRUE(s.add_ant(parse_formula("p")));
  EXPECT_FALSE(s.add_ant(parse_formula("p")));
  EXPECT_EQ(s.add_mod(S("q =>")), s.add_mod(S("q =>")));
  Sequent m(SequentMode::multiset);
  m.add_ant(parse_formula("p"));
  m.add_ant(parse_formula("p"));
  EXPECT_EQ(m.ant().size(), 2u);
}

TEST(Sequent, CanonicalEqualityIgnoresBlockOrder) {
  EXPECT_EQ(S("=> [p =>], [q =>]"), S("=> [q =>], [p =>]"));
  EXPECT_EQ(canonical(S("=> [q =>], [p =>]")), canonical(S("=> [p =>], [q =>]")));
}
