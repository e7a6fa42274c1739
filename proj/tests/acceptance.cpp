// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "lik/errors.hpp"
#include "lik/random.hpp"
#include "lik/search.hpp"
#include "lik/semantics.hpp"
#include "reference.hpp"

using namespace lik;

namespace {

constexpr std::uint64_t kCorpusSeed = 1;
constexpr std::size_t kCorpusSize = 200;
constexpr std::size_t kBudget = 1'000'000;
const Logic kLogics[] = {Logic::LIK, Logic::LIKD, Logic::LIKT};

struct Totals {
  std::size_t queries = 0;
  std::size_t over_budget = 0;
  std::size_t max_steps = 0;
  InvariantStats stats;
  std::vector<std::string> budget_cases;
} totals;

void absorb(const InvariantStats& s) {
  auto& t = totals.stats;
  t.rule_applications += s.rule_applications;
  t.md_violations += s.md_violations;
  t.realizations += s.realizations;
  t.realization_violations += s.realization_violations;
  t.link_repairs += s.link_repairs;
  t.saturated_leaf_checks += s.saturated_leaf_checks;
  t.saturated_leaf_violations += s.saturated_leaf_violations;
  for (const auto& m : s.messages) t.messages.push_back(m);
}

// prove with the global budget; nullopt when the budget is exceeded
std::optional<SearchOutcome> run(Formula f, Logic logic) {
  ++totals.queries;
  SearchOptions opt;
  opt.max_steps = kBudget;
  try {
    SearchOutcome out = prove(f, logic, opt);
    totals.max_steps = std::max(totals.max_steps, out.steps);
    absorb(out.stats);
    return out;
  } catch (const BudgetExceeded&) {
    ++totals.over_budget;
    totals.budget_cases.push_back(std::string(logic_name(logic)) + " " + render(f));
    return std::nullopt;
  }
}

Verdict verdict(Formula f, Logic logic) {
  auto out = run(f, logic);
  return out ? out->verdict : Verdict::budget_exhausted;
}

Verdict minus(Formula f, Logic logic) {
  ++totals.queries;
  Verdict v = prove_minus(f, logic, kBudget);
  if (v == Verdict::budget_exhausted) {
    ++totals.over_budget;
    totals.budget_cases.push_back(std::string(logic_name(logic)) + " minus " + render(f));
  }
  return v;
}

const std::vector<Formula>& corpus() {
  static const std::vector<Formula> c = random_corpus(kCorpusSeed, kCorpusSize);
  return c;
}

// Independent re-check of an extracted countermodel: frame class of the
// logic and falsification at the root by the reference evaluator.
std::string countermodel_problem(const SearchOutcome& out, Formula f, Logic logic) {
  if (!out.countermodel) return "no countermodel";
  const Model& m = *out.countermodel;
  auto rep = check_frame(m, frame_properties(logic));
  for (const auto& r : rep.results)
    if (!r.ok) return std::string(property_name(r.property)) + " fails";
  if (ref::forces(m, m.index("root"), f)) return "root forces the formula";
  return {};
}

struct Criterion {
  int id;
  std::string title;
  std::function<std::string()> check;  // empty string means pass
};

std::string axioms() {
  struct Case {
    Logic logic;
    const char* text;
  };
  const Case cases[] = {
      {Logic::LIK, "[](p -> q) -> ([]p -> []q)"},
      {Logic::LIK, "[](p -> q) -> (<>p -> <>q)"},
      {Logic::LIK, "~<>F"},
      {Logic::LIK, "<>(p | q) -> <>p | <>q"},
      {Logic::LIK, "[](p | q) -> <>p | []q"},
      {Logic::LIKD, "<>T"},
      {Logic::LIKD, "[]p -> <>p"},
      {Logic::LIKD, "~[]F"},
      {Logic::LIKT, "[]p -> p"},
      {Logic::LIKT, "p -> <>p"},
      {Logic::LIKT, "([]p -> p) & (p -> <>p)"},
  };
  std::string bad;
  for (const auto& c : cases) {
    // each axiom of a logic also holds in its extensions
    for (Logic l : kLogics) {
      if (c.logic == Logic::LIKD && l != Logic::LIKD) continue;
      if (c.logic == Logic::LIKT && l != Logic::LIKT) continue;
      if (verdict(parse_formula(c.text), l) != Verdict::provable)
        bad += std::string(" ") + std::string(logic_name(l)) + ":" + c.text;
    }
  }
  return bad.empty() ? "" : "not provable:" + bad;
}

std::string non_theorems() {
  const char* texts[] = {"[]F", "<>T", "<>p -> []p", "p"};
  std::string bad;
  std::size_t models = 0;
  for (Logic logic : kLogics) {
    for (const char* t : texts) {
      Formula f = parse_formula(t);
      auto out = run(f, logic);
      if (!out) {
        bad += " budget:" + std::string(t);
        continue;
      }
      if (out->verdict != Verdict::unprovable) {
        if (logic == Logic::LIK) bad += " provable:" + std::string(t);
        continue;
      }
      ++models;
      auto problem = countermodel_problem(*out, f, logic);
      if (!problem.empty()) bad += " " + std::string(logic_name(logic)) + ":" + t + ":" + problem;
    }
  }
  if (!bad.empty()) return bad;
  return models >= 10 ? "" : "too few countermodels checked";
}

std::string worked_example() {
  Formula f = parse_formula("(<>p -> []q) -> [](p -> q)");
  auto out = run(f, Logic::LIK);
  if (!out || out->verdict != Verdict::unprovable) return "not unprovable";
  const Model& m = *out->countermodel;
  if (m.size() != 3) return "model has " + std::to_string(m.size()) + " worlds";
  auto problem = countermodel_problem(*out, f, Logic::LIK);
  if (!problem.empty()) return problem;
  // shape: x0 R x1, x1 ≤ x2, V(p) = {x2}, V(q) empty, nothing else
  const std::size_t x0 = m.index("root");
  std::optional<std::size_t> x1, x2;
  for (std::size_t w = 0; w < 3; ++w)
    if (m.r(x0, w)) x1 = w;
  if (!x1) return "root has no successor";
  for (std::size_t w = 0; w < 3; ++w)
    if (w != x0 && w != *x1) x2 = w;
  std::size_t le_pairs = 0, r_pairs = 0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      le_pairs += m.le(a, b) && a != b;
      r_pairs += m.r(a, b);
    }
  if (le_pairs != 1 || !m.le(*x1, *x2)) return "unexpected preorder";
  if (r_pairs != 1) return "unexpected accessibility";
  for (std::size_t w = 0; w < 3; ++w) {
    if (m.val("p", w) != (w == *x2)) return "unexpected V(p)";
    if (m.val("q", w)) return "unexpected V(q)";
  }
  return "";
}

std::string equivalence() {
  std::string bad;
  std::size_t disagreements = 0;
  for (Logic logic : kLogics)
    for (Formula f : corpus()) {
      Verdict a = verdict(f, logic), b = minus(f, logic);
      if (a != b || a == Verdict::budget_exhausted) {
        if (++disagreements <= 3)
          bad += " " + std::string(logic_name(logic)) + ":" + render(f) + " " + std::string(verdict_name(a)) + "/" +
                 std::string(verdict_name(b));
      }
    }
  return disagreements == 0 ? "" : std::to_string(disagreements) + " disagreements:" + bad;
}

std::string soundness() {
  std::size_t violations = 0, checked = 0;
  std::string first;
  for (Logic logic : kLogics) {
    Rng rng(1000 + static_cast<int>(logic));
    std::vector<Model> models;
    for (int i = 0; i < 100; ++i) models.push_back(random_model(rng, 5, {"p", "q", "r"}, logic));
    for (const auto& m : models)
      if (!check_frame(m, frame_properties(logic)).ok()) return "random model outside the frame class";
    for (Formula f : corpus()) {
      if (verdict(f, logic) != Verdict::provable) continue;
      ++checked;
      for (const auto& m : models)
        for (std::size_t w = 0; w < m.size(); ++w)
          if (!ref::forces(m, w, f)) {
            if (violations++ == 0) first = std::string(logic_name(logic)) + ":" + render(f);
          }
    }
  }
  if (violations) return std::to_string(violations) + " violations, first " + first;
  return checked > 0 ? "" : "no provable formulas in the corpus";
}

std::string oracle() {
  std::size_t conflicts = 0, falsified = 0;
  std::string first;
  for (Logic logic : kLogics)
    for (Formula f : corpus()) {
      auto o = brute_force_status(f, logic, 3);
      if (!o.falsified) continue;
      ++falsified;
      if (verdict(f, logic) != Verdict::unprovable && conflicts++ == 0)
        first = std::string(logic_name(logic)) + ":" + render(f);
    }
  if (conflicts) return std::to_string(conflicts) + " conflicts, first " + first;
  return falsified > 0 ? "" : "oracle never fired";
}

std::string disjunction() {
  // corpus disjunctions plus disjunctions of corpus pairs
  std::vector<Formula> ds;
  for (Formula f : corpus())
    if (f.is(Connective::disj)) ds.push_back(f);
  for (std::size_t i = 0; i + 1 < corpus().size(); i += 2) ds.push_back(Formula::disj(corpus()[i], corpus()[i + 1]));
  for (const char* t : {"[]F | <>T", "<>T | q", "([]p -> p) | r", "(p -> <>p) | []F"}) ds.push_back(parse_formula(t));
  std::string bad;
  std::size_t provable = 0;
  for (Logic logic : {Logic::LIKD, Logic::LIKT})
    for (Formula d : ds) {
      if (verdict(d, logic) != Verdict::provable) continue;
      ++provable;
      if (verdict(d.left(), logic) != Verdict::provable && verdict(d.right(), logic) != Verdict::provable)
        bad += " " + std::string(logic_name(logic)) + ":" + render(d);
    }
  Formula w = parse_formula("[]F | <>T");
  if (verdict(w, Logic::LIK) != Verdict::provable) bad += " LIK witness not provable";
  if (verdict(w.left(), Logic::LIK) != Verdict::unprovable || verdict(w.right(), Logic::LIK) != Verdict::unprovable)
    bad += " LIK witness disjunct provable";
  if (!bad.empty()) return bad;
  return provable > 0 ? "" : "no provable disjunctions";
}

std::string termination() {
  if (totals.over_budget == 0) return "";
  std::string s = std::to_string(totals.over_budget) + " queries over budget:";
  for (std::size_t i = 0; i < totals.budget_cases.size() && i < 3; ++i) s += " " + totals.budget_cases[i];
  return s;
}

std::string invariants() {
  std::string bad;
  const auto& st = totals.stats;
  if (st.md_violations) bad += " md:" + std::to_string(st.md_violations);
  if (st.realization_violations) bad += " realization:" + std::to_string(st.realization_violations);
  if (st.saturated_leaf_violations) bad += " saturated-leaf:" + std::to_string(st.saturated_leaf_violations);
  if (st.realizations == 0) bad += " no realization was checked";
  if (st.saturated_leaf_checks == 0) bad += " no saturated leaf was checked";

  Rng rng(77);
  std::size_t chains = 0;
  for (int i = 0; i < 500; ++i) {
    Sequent a = gen::sequent(rng, 2);
    if (!structurally_included(a, a)) bad += " reflexivity";
    Sequent b = gen::grow(rng, a), c = gen::grow(rng, b);
    if (structurally_included(a, b) && structurally_included(b, c)) {
      ++chains;
      if (!structurally_included(a, c)) bad += " transitivity";
    }
  }
  if (chains == 0) bad += " no inclusion chains";

  std::size_t heredity = 0, sharp = 0;
  for (Logic logic : kLogics)
    for (int i = 0; i < 100; ++i) {
      Model m = random_model(rng, 5, {"p", "q", "r"}, logic);
      Formula f = random_formula(rng);
      for (Formula g : subformulas(f))
        for (std::size_t x = 0; x < m.size(); ++x)
          for (std::size_t y = 0; y < m.size(); ++y)
            if (m.le(x, y) && ref::forces(m, x, g) && !ref::forces(m, y, g)) ++heredity;
      Sequent s = gen::sequent(rng, 2);
      Sequent theta = s;
      for (Formula a : s.ant()) theta.remove_ant(a);
      const Sequent sh = sharp_plain(s);
      for (std::size_t x = 0; x < m.size(); ++x)
        if (ref::forces_sequent(m, x, sh) && !ref::forces_sequent(m, x, theta)) ++sharp;
    }
  if (heredity) bad += " heredity:" + std::to_string(heredity);
  if (sharp) bad += " sharp:" + std::to_string(sharp);
  return bad;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "axiom suite", axioms},
      {2, "non-theorems with verified countermodels", non_theorems},
      {3, "worked countermodel reproduced", worked_example},
      {4, "prove and prove_minus agree on the random corpus", equivalence},
      {5, "soundness on random models", soundness},
      {6, "oracle agreement", oracle},
      {7, "disjunction property", disjunction},
      {8, "termination within the step budget", termination},
      {9, "invariant suites", invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = c.check();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (problem.empty()) {
      std::printf("PASS criterion %d: %s (%.2fs)\n", c.id, c.title.c_str(), secs);
    } else {
      ++failed;
      std::printf("FAIL criterion %d: %s (%.2fs): %s\n", c.id, c.title.c_str(), secs, problem.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%zu prover queries, max %zu steps, %zu rule applications, %zu link repairs\n", totals.queries,
              totals.max_steps, totals.stats.rule_applications, totals.stats.link_repairs);
  return failed == 0 ? 0 : 1;
}
