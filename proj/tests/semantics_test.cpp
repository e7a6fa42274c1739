#include <gtest/gtest.h>

#include "gen.hpp"
#include "lik/errors.hpp"
#include "lik/io.hpp"
#include "lik/random.hpp"
#include "lik/search.hpp"
#include "lik/semantics.hpp"
#include "reference.hpp"

using namespace lik;

namespace {

Formula F(std::string_view text) { return parse_formula(text); }
Sequent S(std::string_view text) { return parse_sequent(text); }

Model reflexive(std::vector<std::string> worlds) {
  Model m(std::move(worlds));
  for (std::size_t i = 0; i < m.size(); ++i) m.set_le(i, i);
  return m;
}

// the three-world countermodel of (<>p -> []q) -> [](p -> q)
Model worked_model() {
  Model m = reflexive({"x0", "x1", "x2"});
  m.set_le(1, 2);
  m.set_r(0, 1);
  m.set_val("p", 2);
  m.set_val("q", 0, false);
  return m;
}

const PropertyResult& result(const FrameReport& rep, FrameProperty p) {
  const PropertyResult* r = rep.find(p);
  EXPECT_NE(r, nullptr);
  return *r;
}

const std::vector<FrameProperty> kAll{FrameProperty::preorder, FrameProperty::heredity, FrameProperty::fc,
                                      FrameProperty::dc,       FrameProperty::serial,   FrameProperty::reflexive,
                                      FrameProperty::transitive};

}  // namespace

TEST(CheckFrame, SingleWorld) {
  auto rep = check_frame(reflexive({"w"}), kAll);
  EXPECT_TRUE(result(rep, FrameProperty::fc).ok);
  EXPECT_TRUE(result(rep, FrameProperty::dc).ok);
  EXPECT_FALSE(result(rep, FrameProperty::serial).ok);
  EXPECT_FALSE(result(rep, FrameProperty::reflexive).ok);
  EXPECT_TRUE(result(rep, FrameProperty::transitive).ok);
}

TEST(CheckFrame, WorkedModel) {
  auto rep = check_frame(worked_model(), frame_properties(Logic::LIK));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.results.size(), 4u);
}

TEST(CheckFrame, ForwardConfluenceWitness) {
  Model m = reflexive({"w", "w'", "v"});
  m.set_le(0, 1);
  m.set_r(0, 2);
  auto rep = check_frame(m, kAll);
  const auto& fc = result(rep, FrameProperty::fc);
  EXPECT_FALSE(fc.ok);
  EXPECT_EQ(fc.witness, (std::vector<std::string>{"w", "w'", "v"}));
  EXPECT_TRUE(result(rep, FrameProperty::dc).ok);
}

TEST(CheckFrame, DownwardConfluenceWitness) {
  Model m = reflexive({"w", "w'", "v"});
  m.set_le(0, 1);
  m.set_r(1, 2);
  const auto& dc = result(check_frame(m, kAll), FrameProperty::dc);
  EXPECT_FALSE(dc.ok);
  EXPECT_EQ(dc.witness, (std::vector<std::string>{"w", "w'", "v"}));
}

TEST(CheckFrame, HeredityAndPreorderWitnesses) {
  Model m = reflexive({"a", "b"});
  m.set_le(0, 1);
  m.set_val("p", 0);
  const auto& h = result(check_frame(m, kAll), FrameProperty::heredity);
  EXPECT_FALSE(h.ok);
  EXPECT_EQ(h.witness, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(h.atom, "p");

  Model t = reflexive({"a", "b", "c"});
  t.set_le(0, 1);
  t.set_le(1, 2);
  EXPECT_FALSE(result(check_frame(t, kAll), FrameProperty::preorder).ok);
}

TEST(Forces, WorkedModel) {
  Model m = worked_model();
  EXPECT_TRUE(forces(m, "x2", F("p")));
  EXPECT_FALSE(forces(m, "x1", F("p -> q")));
  EXPECT_TRUE(forces(m, "x0", F("T")));
  EXPECT_TRUE(forces(m, "x0", F("<>p -> []q")));
  EXPECT_FALSE(forces(m, "x0", F("(<>p -> []q) -> [](p -> q)")));
  EXPECT_THROW(forces(m, "nowhere", F("p")), UnknownWorld);
}

TEST(ForcesSequent, Examples) {
  Model m = worked_model();
  EXPECT_FALSE(forces_sequent(m, "x0", S("=>")));
  EXPECT_TRUE(forces_sequent(m, "x0", S("p => p")));
  EXPECT_FALSE(forces_sequent(m, "x0", S("<>p -> []q => [](p -> q), <>p, [=> p -> q, p, <p => q>]")));
}

TEST(Forces, AgreesWithReferenceAndHeredity) {
  Rng rng(31);
  const std::vector<std::string> atoms{"p", "q", "r"};
  for (Logic logic : {Logic::LIK, Logic::LIKD, Logic::LIKT}) {
    for (int i = 0; i < 60; ++i) {
      Model m = random_model(rng, 5, atoms, logic);
      ASSERT_TRUE(check_frame(m, frame_properties(logic)).ok());
      Formula f = random_formula(rng);
      for (Formula g : subformulas(f)) {
        const auto ts = truth_set(m, g);
        for (std::size_t w = 0; w < m.size(); ++w) {
          EXPECT_EQ(ts[w] != 0, ref::forces(m, w, g)) << render(g);
          for (std::size_t v = 0; v < m.size(); ++v)
            if (m.le(w, v) && ts[w]) EXPECT_TRUE(ts[v]) << render(g);
        }
      }
    }
  }
}

TEST(ForcesSequent, AgreesWithReference) {
  Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(rng, 4, {"p", "q", "r"}, Logic::LIK);
    Sequent s = gen::sequent(rng, 2);
    for (std::size_t w = 0; w < m.size(); ++w) EXPECT_EQ(forces_sequent(m, w, s), ref::forces_sequent(m, w, s));
  }
}

TEST(SharpLemma, SharpImageIsStronger) {
  Rng rng(41);
  std::size_t used = 0;
  for (int i = 0; i < 300; ++i) {
    Model m = random_model(rng, 4, {"p", "q", "r"}, Logic::LIK);
    Sequent s = gen::sequent(rng, 2);
    Sequent theta = s;
    for (Formula a : s.ant()) theta.remove_ant(a);
    const Sequent sh = sharp_plain(s);
    for (std::size_t w = 0; w < m.size(); ++w)
      if (forces_sequent(m, w, sh)) {
        ++used;
        EXPECT_TRUE(forces_sequent(m, w, theta)) << render(s);
      }
  }
  EXPECT_GT(used, 50u);
}

TEST(Extract, WorkedLeaf) {
  Sequent s0 = S("<>p -> []q => [](p -> q), <>p, [=> p -> q, p, <p => q>]");
  Model m = extract_countermodel(s0, Logic::LIK);
  ASSERT_EQ(m.size(), 3u);
  const auto x0 = m.index("root"), x1 = m.index("m0"), x2 = m.index("m0.i0");
  EXPECT_TRUE(m.le(x1, x2));
  EXPECT_FALSE(m.le(x2, x1));
  EXPECT_FALSE(m.le(x0, x1));
  EXPECT_TRUE(m.r(x0, x1));
  EXPECT_FALSE(m.r(x0, x2));
  EXPECT_FALSE(m.r(x1, x2));
  EXPECT_TRUE(m.val("p", x2));
  EXPECT_FALSE(m.val("p", x0));
  EXPECT_FALSE(m.val("p", x1));
  for (std::size_t w = 0; w < 3; ++w) EXPECT_FALSE(m.val("q", w));
  auto rep = verify_countermodel(m, s0, F("(<>p -> []q) -> [](p -> q)"), Logic::LIK);
  EXPECT_TRUE(rep.ok());
}

TEST(Extract, SingleWorld) {
  Model m = extract_countermodel(S("=> p"), Logic::LIK);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_FALSE(m.r(0, 0));
  EXPECT_FALSE(forces(m, 0, F("p")));
}

TEST(Extract, SerialAndReflexiveLoops) {
  Model d = extract_countermodel(S("=> p"), Logic::LIKD);
  EXPECT_TRUE(d.r(0, 0));
  Model t = extract_countermodel(S("=> p"), Logic::LIKT);
  EXPECT_TRUE(t.r(0, 0));
}

TEST(Extract, DiamondToBox) {
  auto out = prove(F("<>p -> []p"), Logic::LIK);
  ASSERT_EQ(out.verdict, Verdict::unprovable);
  EXPECT_TRUE(forces(*out.countermodel, "root", F("<>p")));
  EXPECT_FALSE(forces(*out.countermodel, "root", F("[]p")));
}

TEST(Extract, RejectsUnsaturatedLeaves) {
  EXPECT_THROW(extract_countermodel(S("=> p & q"), Logic::LIK), NotSaturated);
  EXPECT_THROW(extract_countermodel(S("p => p"), Logic::LIK), NotSaturated);
}

TEST(Oracle, Examples) {
  EXPECT_FALSE(brute_force_status(F("p -> p"), Logic::LIK, 3).falsified);
  auto dt = brute_force_status(F("<>T"), Logic::LIK, 3);
  ASSERT_TRUE(dt.falsified);
  EXPECT_EQ(dt.model->size(), 1u);
  EXPECT_FALSE(forces(*dt.model, dt.world, F("<>T")));
  EXPECT_FALSE(brute_force_status(F("[](p | q) -> <>p | []q"), Logic::LIK, 3).falsified);
  EXPECT_FALSE(brute_force_status(F("<>T"), Logic::LIKD, 3).falsified);
  EXPECT_THROW(brute_force_status(F("p"), Logic::LIK, 5), PreconditionViolation);
}

TEST(Oracle, FalsifiersAreGenuine) {
  auto corpus = random_corpus(55, 60);
  for (Logic logic : {Logic::LIK, Logic::LIKD, Logic::LIKT})
    for (Formula f : corpus) {
      auto o = brute_force_status(f, logic, 3);
      if (!o.falsified) continue;
      EXPECT_TRUE(check_frame(*o.model, frame_properties(logic)).ok());
      EXPECT_FALSE(ref::forces(*o.model, o.model->index(o.world), f)) << render(f);
    }
}

TEST(ModelJson, RoundTrip) {
  Model m = worked_model();
  Model back = model_from_json(model_to_json(m));
  EXPECT_EQ(back.worlds(), m.worlds());
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      EXPECT_EQ(back.le(a, b), m.le(a, b));
      EXPECT_EQ(back.r(a, b), m.r(a, b));
    }
  EXPECT_TRUE(back.val("p", 2));
}

TEST(ModelJson, Malformed) {
  using nlohmann::json;
  EXPECT_THROW(model_from_json(json::parse(R"({"worlds":["a","a"],"le":[],"r":[],"val":{}})")), Error);
  EXPECT_THROW(model_from_json(json::parse(R"({"worlds":["a"],"le":[["a","b"]],"r":[],"val":{}})")), Error);
  EXPECT_THROW(model_from_json(json::parse(R"({"le":[]})")), Error);
}
