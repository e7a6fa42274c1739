#include "lik/random.hpp"

#include <algorithm>

namespace lik {

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n <= 1) return 0;
  // rejection keeps the result unbiased
  const std::uint64_t limit = Rng::max() - Rng::max() % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

bool coin(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

namespace {

Formula build(Rng& rng, std::size_t c, std::size_t depth, const FormulaParams& prm) {
  if (c == 0) {
    if (uniform_index(rng, 10) == 0) return uniform_index(rng, 2) ? Formula::top() : Formula::bot();
    return Formula::atom(std::string(1, static_cast<char>('p' + uniform_index(rng, prm.atoms))));
  }
  const std::size_t kinds = depth > 0 ? 6 : 4;
  switch (uniform_index(rng, kinds)) {
    case 0:
    case 1:
    case 2: {
      const std::size_t l = uniform_index(rng, c);
      Formula a = build(rng, l, depth, prm);
      Formula b = build(rng, c - 1 - l, depth, prm);
      switch (uniform_index(rng, 3)) {
        case 0: return Formula::conj(a, b);
        case 1: return Formula::disj(a, b);
        default: return Formula::imp(a, b);
      }
    }
    case 3:
      return Formula::neg(build(rng, c - 1, depth, prm));
    case 4:
      return Formula::box(build(rng, c - 1, depth - 1, prm));
    default:
      return Formula::dia(build(rng, c - 1, depth - 1, prm));
  }
}

}  // namespace

Formula random_formula(Rng& rng, const FormulaParams& params) {
  const std::size_t c = uniform_index(rng, params.max_connectives + 1);
  return build(rng, c, params.max_degree, params);
}

std::vector<Formula> random_corpus(std::uint64_t seed, std::size_t count, const FormulaParams& params) {
  Rng rng(seed);
  std::vector<Formula> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_formula(rng, params));
  return out;
}

namespace {

bool frame_class_ok(const Model& m, Logic logic) {
  return check_frame(m, frame_properties(logic)).ok();
}

}  // namespace

Model random_model(Rng& rng, std::size_t max_worlds, const std::vector<std::string>& atoms, Logic logic) {
  const std::size_t n = 1 + uniform_index(rng, std::max<std::size_t>(max_worlds, 1));
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("w" + std::to_string(i));
  for (int attempt = 0;; ++attempt) {
    const bool discrete = attempt >= 200;  // identity order: FC and DC hold for any R
    const double p_le = 0.15 + 0.15 * static_cast<double>(uniform_index(rng, 4));
    const double p_r = 0.2 + 0.15 * static_cast<double>(uniform_index(rng, 4));
    Model m(ids);
    for (std::size_t x = 0; x < n; ++x) m.set_le(x, x);
    if (!discrete)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
          if (coin(rng, p_le)) m.set_le(x, y);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (m.le(x, k) && m.le(k, y)) m.set_le(x, y);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (coin(rng, p_r)) m.set_r(x, y);
    if (logic == Logic::LIKT)
      for (std::size_t x = 0; x < n; ++x) m.set_r(x, x);
    if (logic == Logic::LIKD)
      for (std::size_t x = 0; x < n; ++x) {
        bool any = false;
        for (std::size_t y = 0; y < n; ++y) any = any || m.r(x, y);
        if (!any && discrete) m.set_r(x, uniform_index(rng, n));
      }
    for (const auto& a : atoms) {
      for (std::size_t x = 0; x < n; ++x) m.set_val(a, x, coin(rng, 0.4));
      for (std::size_t x = 0; x < n; ++x)
        if (m.val(a, x))
          for (std::size_t y = 0; y < n; ++y)
            if (m.le(x, y)) m.set_val(a, y);
    }
    if (frame_class_ok(m, logic)) return m;
  }
}

}  // namespace lik
