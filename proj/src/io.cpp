#include "lik/io.hpp"

#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "lik/errors.hpp"

namespace lik {

using nlohmann::json;

json model_to_json(const Model& m) {
  json j;
  j["worlds"] = m.worlds();
  j["le"] = json::array();
  j["r"] = json::array();
  const auto& W = m.worlds();
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (m.le(a, b)) j["le"].push_back({W[a], W[b]});
      if (m.r(a, b)) j["r"].push_back({W[a], W[b]});
    }
  j["val"] = json::object();
  for (const auto& [p, row] : m.valuation()) {
    json ws = json::array();
    for (std::size_t w = 0; w < row.size(); ++w)
      if (row[w]) ws.push_back(W[w]);
    j["val"][p] = ws;
  }
  return j;
}

Model model_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error("model must be a JSON object");
    std::vector<std::string> worlds = j.at("worlds").get<std::vector<std::string>>();
    std::set<std::string> seen;
    for (const auto& w : worlds)
      if (!seen.insert(w).second) throw Error("duplicate world '" + w + "'");
    Model m(worlds);
    auto pairs = [&](const char* key, auto set) {
      if (!j.contains(key)) return;
      for (const auto& e : j.at(key)) {
        if (!e.is_array() || e.size() != 2) throw Error(std::string("entries of '") + key + "' must be pairs");
        set(m.index(e[0].get<std::string>()), m.index(e[1].get<std::string>()));
      }
    };
    pairs("le", [&](std::size_t a, std::size_t b) { m.set_le(a, b); });
    pairs("r", [&](std::size_t a, std::size_t b) { m.set_r(a, b); });
    if (j.contains("val"))
      for (const auto& [p, ws] : j.at("val").items()) {
        if (!worlds.empty()) m.set_val(p, 0, false);
        for (const auto& w : ws) m.set_val(p, m.index(w.get<std::string>()));
      }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed model JSON: ") + e.what());
  }
}

json frame_report_to_json(const FrameReport& r) {
  json out = json::object();
  for (const auto& res : r.results) {
    json e{{"ok", res.ok}};
    if (!res.ok) e["witness"] = res.witness;
    if (!res.atom.empty()) e["atom"] = res.atom;
    out[std::string(property_name(res.property))] = e;
  }
  return out;
}

namespace {

// first axiom in preorder, e.g. "id at m0"
std::optional<std::pair<RuleId, Position>> axiom_site(const Sequent& s) {
  for (const auto& [pos, t] : descendants(s, Relation::plus))
    if (auto r = is_axiom(t)) return std::make_pair(*r, pos);
  return std::nullopt;
}

std::string axiom_label(const Sequent& s) {
  auto site = axiom_site(s);
  return site ? std::string(rule_name(site->first)) + " at " + site->second.to_string() : "axiom";
}

std::string latex_name(std::string_view name) {
  std::string out;
  for (char c : name) out += c == '_' ? std::string("\\_") : std::string(1, c);
  return out;
}

std::string node_label(const Derivation& d, std::size_t i) {
  const auto& n = d.node(i);
  if (n.rule) return std::string(rule_name(n.rule->rule)) + " at " + n.rule->pos.to_string();
  if (n.axiomatic) return axiom_label(n.sequent);
  return "open";
}

}  // namespace

std::string derivation_text(const Derivation& d, Style style) {
  std::ostringstream out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, depth] = stack.back();
    stack.pop_back();
    out << std::string(2 * depth, ' ') << render(d.node(i).sequent, style) << "   [" << node_label(d, i) << "]\n";
    const auto& ch = d.node(i).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, depth + 1);
  }
  return out.str();
}

json derivation_json(const Derivation& d) {
  std::function<json(std::size_t)> go = [&](std::size_t i) {
    const auto& n = d.node(i);
    json j{{"sequent", render(n.sequent)}};
    if (n.rule) {
      j["rule"] = std::string(rule_name(n.rule->rule));
      j["position"] = n.rule->pos.to_string();
      if (n.rule->principal.formula) j["principal"] = render(*n.rule->principal.formula);
      j["premises"] = json::array();
      for (auto c : n.children) j["premises"].push_back(go(c));
    } else {
      j["status"] = n.axiomatic ? "axiomatic" : "open";
      if (auto site = n.axiomatic ? axiom_site(n.sequent) : std::nullopt) {
        j["axiom"] = std::string(rule_name(site->first));
        j["position"] = site->second.to_string();
      }
    }
    return j;
  };
  return go(0);
}

std::string derivation_latex(const Derivation& d) {
  std::ostringstream out;
  out << "\\begin{prooftree}\n";
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    const auto& n = d.node(i);
    const std::string seq = "$" + render(n.sequent, Style::latex) + "$";
    if (!n.rule) {
      if (n.axiomatic) {
        auto site = axiom_site(n.sequent);
        out << "\\AxiomC{}\n\\RightLabel{\\scriptsize " << latex_name(site ? rule_name(site->first) : "axiom")
            << "}\n\\UnaryInfC{" << seq << "}\n";
      } else {
        out << "\\AxiomC{" << seq << "}\n";
      }
      return;
    }
    for (auto c : n.children) go(c);
    out << "\\RightLabel{\\scriptsize " << latex_name(rule_name(n.rule->rule)) << "}\n";
    switch (n.children.size()) {
      case 1: out << "\\UnaryInfC{" << seq << "}\n"; break;
      case 2: out << "\\BinaryInfC{" << seq << "}\n"; break;
      default: out << "\\TrinaryInfC{" << seq << "}\n"; break;
    }
  };
  go(0);
  out << "\\end{prooftree}\n";
  return out.str();
}

}  // namespace lik
