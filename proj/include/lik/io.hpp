#pragma once

#include <string>

#include "json.hpp"
#include "lik/search.hpp"
#include "lik/semantics.hpp"

namespace lik {

// {worlds:[ids], le:[[a,b]], r:[[a,b]], val:{p:[ids]}}
nlohmann::json model_to_json(const Model& m);
// throws Error on malformed input
Model model_from_json(const nlohmann::json& j);

nlohmann::json frame_report_to_json(const FrameReport& r);

// one node per line, indentation = depth
std::string derivation_text(const Derivation& d, Style style = Style::ascii);
nlohmann::json derivation_json(const Derivation& d);
// bussproofs inferences
std::string derivation_latex(const Derivation& d);

}  // namespace lik
