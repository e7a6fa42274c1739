#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lik/errors.hpp"
#include "lik/io.hpp"
#include "lik/random.hpp"
#include "lik/search.hpp"
#include "lik/semantics.hpp"

using namespace lik;
using nlohmann::json;

namespace {

constexpr int kProvable = 0;
constexpr int kUnprovable = 1;
constexpr int kError = 2;
constexpr int kBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// first line that is neither blank nor a # comment
std::string first_formula_line(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    return line.substr(b);
  }
  throw Error("no formula in file");
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::provable: return kProvable;
    case Verdict::unprovable: return kUnprovable;
    case Verdict::budget_exhausted: return kBudget;
  }
  return kError;
}

void print_frame_report(std::ostream& out, const FrameReport& rep) {
  for (const auto& r : rep.results) {
    out << property_name(r.property) << ": " << (r.ok ? "ok" : "FAIL");
    if (!r.ok && !r.witness.empty()) {
      out << " (";
      for (std::size_t i = 0; i < r.witness.size(); ++i) out << (i ? ", " : "") << r.witness[i];
      out << ")";
      if (!r.atom.empty()) out << " atom " << r.atom;
    }
    out << "\n";
  }
}

struct ProveArgs {
  std::string formula;
  std::string file;
  std::string logic = "lik";
  std::string format = "text";
  std::string variant = "full";
  bool derivation = false;
  bool countermodel = false;
  std::size_t max_steps = 1'000'000;
};

int cmd_prove(const ProveArgs& a) {
  const std::string text = a.file.empty() ? a.formula : first_formula_line(read_file(a.file));
  if (text.empty()) throw Error("no formula given");
  const Formula f = parse_formula(text);
  const Logic logic = parse_logic(a.logic);

  if (a.variant == "minus") {
    const Verdict v = prove_minus(f, logic, a.max_steps);
    if (a.format == "json")
      std::cout << json{{"formula", render(f)}, {"logic", logic_name(logic)}, {"verdict", verdict_name(v)}}.dump(2)
                << "\n";
    else
      std::cout << verdict_name(v) << "\n";
    return verdict_exit(v);
  }

  SearchOptions opt;
  opt.max_steps = a.max_steps;
  SearchOutcome out = [&] {
    try {
      return prove(f, logic, opt);
    } catch (const BudgetExceeded& e) {
      std::cout << verdict_name(Verdict::budget_exhausted) << "\n";
      throw;
    }
  }();

  std::optional<CountermodelReport> check;
  if (out.countermodel) check = verify_countermodel(*out.countermodel, out.derivation.node(*out.leaf).sequent, f, logic);
  const bool verified = check && check->ok();

  if (a.format == "json") {
    json j{{"formula", render(f)}, {"logic", logic_name(logic)}, {"verdict", verdict_name(out.verdict)},
           {"steps", out.steps}};
    if (a.derivation) j["derivation"] = derivation_json(out.derivation);
    if (a.countermodel && out.countermodel) {
      j["countermodel"] = model_to_json(*out.countermodel);
      j["frame"] = frame_report_to_json(check->frame);
      j["verified"] = verified;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << verdict_name(out.verdict) << "\n";
    if (a.derivation) std::cout << (a.format == "latex" ? derivation_latex(out.derivation) : derivation_text(out.derivation));
    if (a.countermodel && out.countermodel) {
      std::cout << model_to_json(*out.countermodel).dump() << "\n";
      print_frame_report(std::cout, check->frame);
      for (const auto& t : check->truth_failures) std::cout << "truth lemma: " << t << "\n";
      std::cout << (check->root_falsifies ? "root falsifies the formula" : "root forces the formula") << "\n";
      std::cout << (verified ? "countermodel verified" : "countermodel FAILED verification") << "\n";
    }
  }
  if (out.countermodel && !verified) return kError;
  return verdict_exit(out.verdict);
}

struct CheckArgs {
  std::string model;
  std::string formula;
  std::string world;
  std::string logic = "lik";
};

int cmd_check_model(const CheckArgs& a) {
  const Model m = model_from_json(json::parse(read_file(a.model)));
  const Logic logic = parse_logic(a.logic);
  auto props = frame_properties(logic);
  props.push_back(FrameProperty::transitive);
  const FrameReport rep = check_frame(m, props);
  print_frame_report(std::cout, rep);
  bool frame_ok = true;
  for (const auto& r : rep.results)
    if (r.property != FrameProperty::transitive && !r.ok) frame_ok = false;
  if (!a.formula.empty()) {
    const Formula f = parse_formula(a.formula);
    std::vector<std::string> worlds;
    if (a.world.empty())
      worlds = m.worlds();
    else
      worlds.push_back(a.world);
    for (const auto& w : worlds) std::cout << w << ": " << (forces(m, w, f) ? "forced" : "not forced") << "\n";
  }
  return frame_ok ? 0 : 1;
}

struct CorpusArgs {
  std::string corpus;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::string logic = "lik";
  bool check_equivalence = false;
  std::size_t check_oracle = 0;
  std::size_t max_steps = 1'000'000;
};

struct Entry {
  Logic logic;
  std::string expected;
  std::string text;
  std::size_t line;
};

std::vector<Entry> read_corpus(const std::string& path) {
  std::vector<Entry> out;
  std::istringstream in(read_file(path));
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw Error(path + ":" + std::to_string(n) + ": expected logic TAB expected TAB formula");
    std::string expected = line.substr(t1 + 1, t2 - t1 - 1);
    if (expected != "provable" && expected != "unprovable" && expected != "unknown")
      throw Error(path + ":" + std::to_string(n) + ": bad expectation '" + expected + "'");
    out.push_back({parse_logic(line.substr(0, t1)), expected, line.substr(t2 + 1), n});
  }
  return out;
}

int cmd_corpus(const CorpusArgs& a) {
  std::vector<Entry> entries;
  if (!a.corpus.empty()) entries = read_corpus(a.corpus);
  if (a.random > 0) {
    const Logic logic = parse_logic(a.logic);
    for (Formula f : random_corpus(a.seed, a.random)) entries.push_back({logic, "unknown", render(f), 0});
  }
  if (entries.empty()) throw Error("empty corpus");

  std::size_t mismatches = 0, disagreements = 0, oracle_conflicts = 0, budget = 0;
  for (const auto& e : entries) {
    const Formula f = parse_formula(e.text);
    SearchOptions opt;
    opt.max_steps = a.max_steps;
    std::string verdict, note;
    std::optional<Verdict> v;
    try {
      v = prove(f, e.logic, opt).verdict;
      verdict = std::string(verdict_name(*v));
    } catch (const BudgetExceeded&) {
      verdict = std::string(verdict_name(Verdict::budget_exhausted));
      ++budget;
    }
    bool ok = true;
    if (e.expected == "provable") ok = v == Verdict::provable;
    if (e.expected == "unprovable") ok = v == Verdict::unprovable;
    if (!ok) ++mismatches;
    if (a.check_equivalence) {
      const Verdict m = prove_minus(f, e.logic, a.max_steps);
      if (!v || m != *v) {
        ++disagreements;
        ok = false;
        note += " minus=" + std::string(verdict_name(m));
      }
    }
    if (a.check_oracle > 0) {
      const OracleResult o = brute_force_status(f, e.logic, a.check_oracle);
      if (o.falsified && v != Verdict::unprovable) {
        ++oracle_conflicts;
        ok = false;
        note += " oracle=falsified";
      }
    }
    std::cout << (ok ? "ok" : "MISMATCH") << "\t" << logic_name(e.logic) << "\t" << verdict << "\t" << e.text << note
              << "\n";
  }
  std::cout << entries.size() << " entries, " << mismatches << " mismatches, " << budget << " over budget\n";
  if (a.check_equivalence)
    std::cout << (disagreements == 0 ? "all verdicts agree" : std::to_string(disagreements) + " disagreements") << "\n";
  if (a.check_oracle > 0) std::cout << oracle_conflicts << " oracle conflicts\n";
  return mismatches + disagreements + oracle_conflicts + budget == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof search and countermodels for intuitionistic modal logics LIK, LIKD, LIKT"};
  app.require_subcommand(1);

  const std::vector<std::string> logics{"lik", "likd", "likt"};

  ProveArgs pa;
  auto* prove_cmd = app.add_subcommand("prove", "decide a formula");
  prove_cmd->add_option("formula", pa.formula, "formula, e.g. \"[](p|q) -> <>p | []q\"");
  prove_cmd->add_option("--file", pa.file, "read the formula from a file");
  prove_cmd->add_option("--logic", pa.logic)->check(CLI::IsMember(logics));
  prove_cmd->add_option("--format", pa.format)->check(CLI::IsMember({"text", "json", "latex"}));
  prove_cmd->add_option("--variant", pa.variant)->check(CLI::IsMember({"full", "minus"}));
  prove_cmd->add_flag("--derivation", pa.derivation, "print the derivation");
  prove_cmd->add_flag("--countermodel", pa.countermodel, "print and re-check the countermodel");
  prove_cmd->add_option("--max-steps", pa.max_steps)->check(CLI::PositiveNumber);

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check-model", "check frame conditions and forcing on a model");
  check_cmd->add_option("--model", ca.model, "model JSON file")->required();
  check_cmd->add_option("--formula", ca.formula);
  check_cmd->add_option("--world", ca.world);
  check_cmd->add_option("--logic", ca.logic)->check(CLI::IsMember(logics));

  CorpusArgs co;
  auto* corpus_cmd = app.add_subcommand("corpus", "run a regression corpus");
  corpus_cmd->add_option("--corpus", co.corpus, "lines: logic TAB expected TAB formula");
  corpus_cmd->add_option("--random", co.random, "append N random formulas with unknown expectation");
  corpus_cmd->add_option("--seed", co.seed);
  corpus_cmd->add_option("--logic", co.logic, "logic of the random entries")->check(CLI::IsMember(logics));
  corpus_cmd->add_flag("--check-equivalence", co.check_equivalence, "compare with the search without inter_down");
  corpus_cmd->add_option("--check-oracle", co.check_oracle, "compare with model enumeration up to N worlds")
      ->check(CLI::Range(0, 4));
  corpus_cmd->add_option("--oracle-bound", co.check_oracle, "alias of --check-oracle")->check(CLI::Range(0, 4));
  corpus_cmd->add_option("--max-steps", co.max_steps)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*prove_cmd) return cmd_prove(pa);
    if (*check_cmd) return cmd_check_model(ca);
    if (*corpus_cmd) return cmd_corpus(co);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
