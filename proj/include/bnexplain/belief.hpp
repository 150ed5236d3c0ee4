#pragma once

// Explaining beliefs rather than facts: the moralized, undirected network
// over the agent's beliefs, and structural checks on oriented subnetworks
// rooted in external causes (observations, testimony).

#include <set>
#include <string>
#include <vector>

#include "bnexplain/network.hpp"

namespace bnexplain {

struct ExternalCause {
  std::string label;
  std::size_t variable;

  auto operator<=>(const ExternalCause&) const = default;
};

struct BeliefGraph {
  MarkovNetwork markov;
  std::set<ExternalCause> external_causes;
};

struct BeliefCheck {
  bool valid = false;
  std::vector<std::string> reasons;

  explicit operator bool() const { return valid; }
};

inline BeliefGraph to_belief_graph(const CausalNetwork& net, const std::set<ExternalCause>& externals) {
  for (const auto& x : externals)
    if (x.variable >= net.size())
      throw ValidationError("external cause '" + x.label + "' attached to an unknown variable");
  return {moralize(net), externals};
}

// The oriented edges must form an acyclic subgraph whose source nodes each
// carry one of `roots`.
inline BeliefCheck validate_belief_explanation(const BeliefGraph& bg, const std::set<Edge>& oriented,
                                               const std::set<ExternalCause>& roots) {
  const auto& vars = bg.markov.variables;
  for (const auto& e : oriented)
    if (e.parent >= vars.size() || e.child >= vars.size() || !bg.markov.has_edge(e.parent, e.child))
      throw ValidationError("oriented edge is not an edge of the belief graph");
  for (const auto& r : roots)
    if (!bg.external_causes.count(r))
      throw ValidationError("root '" + r.label + "' is not a declared external cause");

  BeliefCheck out;
  if (!is_acyclic(oriented)) out.reasons.push_back("orientation contains a directed cycle");

  std::set<std::size_t> nodes;
  std::set<std::size_t> has_parent;
  for (const auto& e : oriented) {
    nodes.insert({e.parent, e.child});
    has_parent.insert(e.child);
  }
  for (auto n : nodes) {
    if (has_parent.count(n)) continue;
    bool rooted = false;
    for (const auto& r : roots)
      if (r.variable == n) rooted = true;
    if (!rooted) out.reasons.push_back("source '" + vars[n].name + "' has no external cause");
  }
  out.valid = out.reasons.empty();
  return out;
}

}  // namespace bnexplain
