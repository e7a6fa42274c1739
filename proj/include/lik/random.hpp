#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lik/calculus.hpp"
#include "lik/formula.hpp"
#include "lik/semantics.hpp"

namespace lik {

using Rng = std::mt19937_64;

// uniform in [0, n); does not depend on the standard library's distributions,
// so seeded runs agree across toolchains
std::size_t uniform_index(Rng& rng, std::size_t n);
bool coin(Rng& rng, double p);

struct FormulaParams {
  std::size_t atoms = 3;
  std::size_t max_degree = 2;
  std::size_t max_connectives = 12;
};

Formula random_formula(Rng& rng, const FormulaParams& params = {});
std::vector<Formula> random_corpus(std::uint64_t seed, std::size_t count, const FormulaParams& params = {});

// Model with 1..max_worlds worlds in the frame class of logic, valuation over atoms.
Model random_model(Rng& rng, std::size_t max_worlds, const std::vector<std::string>& atoms, Logic logic);

}  // namespace lik
