#pragma once

// Discrete causal Bayesian networks: representation, validation and the
// graph transforms used by explanation search (ancestors, path fragments,
// moralization).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnexplain/error.hpp"

namespace bnexplain {

inline constexpr double kCptTolerance = 1e-9;
inline constexpr std::size_t kMaxDomainSize = 64;

struct Variable {
  std::string name;
  std::vector<std::string> values;

  std::size_t size() const { return values.size(); }

  std::optional<std::size_t> value_index(std::string_view label) const {
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] == label) return i;
    return std::nullopt;
  }

  bool operator==(const Variable&) const = default;
};

// One row per parent configuration, one column per domain value.
using Cpt = std::vector<std::vector<double>>;

struct Edge {
  std::size_t parent;
  std::size_t child;

  auto operator<=>(const Edge&) const = default;
};

class CausalNetwork {
 public:
  CausalNetwork() = default;

  // parents[i] lists parent indices of variable i in declared order; the
  // construction does not validate, see validate().
  CausalNetwork(std::vector<Variable> variables, std::vector<std::vector<std::size_t>> parents,
                std::vector<Cpt> cpts)
      : variables_(std::move(variables)), parents_(std::move(parents)), cpts_(std::move(cpts)) {
    parents_.resize(variables_.size());
    cpts_.resize(variables_.size());
    for (std::size_t i = 0; i < variables_.size(); ++i) index_.emplace(variables_[i].name, i);
  }

  std::size_t size() const { return variables_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(std::size_t v) const { return variables_.at(v); }
  const std::vector<std::size_t>& parents(std::size_t v) const { return parents_.at(v); }
  const Cpt& cpt(std::size_t v) const { return cpts_.at(v); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(std::string_view name) const {
    if (auto i = index_of(name)) return *i;
    throw ValidationError("unknown variable '" + std::string(name) + "'");
  }

  void check_index(std::size_t v) const {
    if (v >= size()) throw ValidationError("variable index " + std::to_string(v) + " out of range");
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t c = 0; c < size(); ++c)
      for (auto p : parents_[c]) out.push_back({p, c});
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& ps : parents_) n += ps.size();
    return n;
  }

  bool has_edge(std::size_t parent, std::size_t child) const {
    const auto& ps = parents_.at(child);
    return std::find(ps.begin(), ps.end(), parent) != ps.end();
  }

  std::vector<std::size_t> children(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < size(); ++c)
      if (has_edge(v, c)) out.push_back(c);
    return out;
  }

  // Mixed-radix index of the parent configuration, first declared parent
  // most significant.
  std::size_t row_index(std::size_t v, std::span<const std::size_t> world) const {
    std::size_t row = 0;
    for (auto p : parents_[v]) row = row * variables_[p].size() + world[p];
    return row;
  }

  std::size_t row_count(std::size_t v) const {
    std::size_t n = 1;
    for (auto p : parents_[v]) n *= variables_[p].size();
    return n;
  }

  // Parent value indices for a row, inverse of row_index.
  std::vector<std::size_t> row_parent_values(std::size_t v, std::size_t row) const {
    const auto& ps = parents_[v];
    std::vector<std::size_t> vals(ps.size());
    for (std::size_t k = ps.size(); k-- > 0;) {
      auto card = variables_[ps[k]].size();
      vals[k] = row % card;
      row /= card;
    }
    return vals;
  }

  bool same_universe(const CausalNetwork& other) const { return variables_ == other.variables_; }

  bool operator==(const CausalNetwork& o) const {
    return variables_ == o.variables_ && parents_ == o.parents_ && cpts_ == o.cpts_;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<Cpt> cpts_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct MechanismFragment {
  std::set<Edge> edges;

  bool empty() const { return edges.empty(); }
  std::set<std::size_t> nodes() const {
    std::set<std::size_t> out;
    for (const auto& e : edges) out.insert({e.parent, e.child});
    return out;
  }

  auto operator<=>(const MechanismFragment&) const = default;
};

struct MarkovNetwork {
  std::vector<Variable> variables;
  // Stored as (smaller index, larger index).
  std::set<std::pair<std::size_t, std::size_t>> edges;

  bool has_edge(std::size_t a, std::size_t b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
  }
};

struct Violation {
  std::string where;
  std::string what;

  std::string str() const { return where + ": " + what; }
};

namespace detail {

// Kahn's algorithm; returns the nodes left over when no topological order
// exists (empty when acyclic).
inline std::vector<std::size_t> cyclic_nodes(std::size_t n,
                                             const std::vector<std::vector<std::size_t>>& parents) {
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t c = 0; c < n; ++c)
    for (auto p : parents[c]) {
      if (p >= n) continue;
      ++indegree[c];
      kids[p].push_back(c);
    }
  std::deque<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::vector<bool> done(n, false);
  while (!ready.empty()) {
    auto v = ready.front();
    ready.pop_front();
    done[v] = true;
    for (auto c : kids[v])
      if (--indegree[c] == 0) ready.push_back(c);
  }
  std::vector<std::size_t> left;
  for (std::size_t v = 0; v < n; ++v)
    if (!done[v]) left.push_back(v);
  return left;
}

}  // namespace detail

inline bool is_acyclic(const std::set<Edge>& edges) {
  std::size_t n = 0;
  for (const auto& e : edges) n = std::max({n, e.parent + 1, e.child + 1});
  std::vector<std::vector<std::size_t>> parents(n);
  for (const auto& e : edges) parents[e.child].push_back(e.parent);
  return detail::cyclic_nodes(n, parents).empty();
}

inline std::vector<std::size_t> topological_order(const CausalNetwork& net) {
  std::vector<std::size_t> order;
  std::vector<int> state(net.size(), 0);
  // Depth-first over parents keeps declaration order among independent nodes.
  auto visit = [&](auto&& self, std::size_t v) -> void {
    if (state[v] == 2) return;
    if (state[v] == 1) throw ValidationError("network has a directed cycle");
    state[v] = 1;
    for (auto p : net.parents(v)) self(self, p);
    state[v] = 2;
    order.push_back(v);
  };
  for (std::size_t v = 0; v < net.size(); ++v) visit(visit, v);
  return order;
}

inline std::vector<Violation> validate(const CausalNetwork& net) {
  std::vector<Violation> out;
  const auto n = net.size();
  std::map<std::string, std::size_t> seen;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& var = net.variable(v);
    const std::string where = "variable '" + var.name + "'";
    if (var.name.empty()) out.push_back({"variable #" + std::to_string(v), "empty name"});
    if (auto [it, fresh] = seen.emplace(var.name, v); !fresh)
      out.push_back({where, "duplicate variable name (also #" + std::to_string(it->second) + ")"});
    if (var.size() < 2) out.push_back({where, "domain needs at least 2 values"});
    if (var.size() > kMaxDomainSize)
      out.push_back({where, "domain larger than " + std::to_string(kMaxDomainSize) + " values"});
    std::set<std::string> labels;
    for (const auto& l : var.values)
      if (!labels.insert(l).second) out.push_back({where, "duplicate value label '" + l + "'"});
  }

  bool parents_ok = true;
  for (std::size_t c = 0; c < n; ++c) {
    const std::string where = "variable '" + net.variable(c).name + "'";
    std::set<std::size_t> ps;
    for (auto p : net.parents(c)) {
      if (p >= n) {
        out.push_back({where, "parent index " + std::to_string(p) + " out of range"});
        parents_ok = false;
        continue;
      }
      if (p == c) out.push_back({where, "self loop"});
      if (!ps.insert(p).second)
        out.push_back({where, "duplicate parent '" + net.variable(p).name + "'"});
    }
  }

  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t c = 0; c < n; ++c) parents[c] = net.parents(c);
  if (auto left = detail::cyclic_nodes(n, parents); !left.empty()) {
    std::string names;
    for (auto v : left) names += (names.empty() ? "" : ", ") + net.variable(v).name;
    out.push_back({"graph", "directed cycle through {" + names + "}"});
  }
  if (!parents_ok) return out;

  for (std::size_t v = 0; v < n; ++v) {
    const auto& var = net.variable(v);
    const std::string where = "cpt '" + var.name + "'";
    const auto& cpt = net.cpt(v);
    if (cpt.size() != net.row_count(v)) {
      out.push_back({where, "expected " + std::to_string(net.row_count(v)) + " rows, found " +
                                std::to_string(cpt.size())});
      continue;
    }
    for (std::size_t r = 0; r < cpt.size(); ++r) {
      const std::string row_where = where + " row " + std::to_string(r);
      const auto& row = cpt[r];
      if (row.size() != var.size()) {
        out.push_back({row_where, "expected " + std::to_string(var.size()) + " entries, found " +
                                      std::to_string(row.size())});
        continue;
      }
      bool in_range = true;
      for (double p : row)
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) in_range = false;
      if (!in_range) out.push_back({row_where, "entry outside [0, 1]"});
      double sum = std::accumulate(row.begin(), row.end(), 0.0);
      if (std::abs(sum - 1.0) > kCptTolerance)
        out.push_back({row_where, "row sum " + std::to_string(sum) + " != 1"});
    }
  }
  return out;
}

inline void require_valid(const CausalNetwork& net) {
  auto violations = validate(net);
  if (violations.empty()) return;
  std::vector<std::string> lines;
  for (const auto& v : violations) lines.push_back(v.str());
  throw ValidationError("invalid network", std::move(lines));
}

// Strict ancestors of v.
inline std::set<std::size_t> ancestors(const CausalNetwork& net, std::size_t v) {
  net.check_index(v);
  std::set<std::size_t> out;
  std::vector<std::size_t> stack(net.parents(v).begin(), net.parents(v).end());
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    if (!out.insert(u).second) continue;
    for (auto p : net.parents(u)) stack.push_back(p);
  }
  return out;
}

inline std::set<std::size_t> ancestors(const CausalNetwork& net, std::string_view name) {
  return ancestors(net, net.require(name));
}

inline std::set<std::size_t> ancestors_of_any(const CausalNetwork& net,
                                              const std::set<std::size_t>& targets) {
  std::set<std::size_t> out;
  for (auto t : targets) out.merge(ancestors(net, t));
  return out;
}

inline std::set<std::size_t> descendants(const CausalNetwork& net, std::size_t v) {
  net.check_index(v);
  std::set<std::size_t> out;
  std::vector<std::size_t> stack = net.children(v);
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    if (!out.insert(u).second) continue;
    for (auto c : net.children(u)) stack.push_back(c);
  }
  return out;
}

// Union of the edges on every directed path from some source to some sink.
// Each source must be an ancestor of at least one sink.
inline MechanismFragment paths_to(const CausalNetwork& net, const std::set<std::size_t>& sources,
                                  const std::set<std::size_t>& sinks) {
  std::set<std::size_t> reach_sink = sinks;
  for (auto s : sinks) reach_sink.merge(ancestors(net, s));
  std::set<std::size_t> from_source;
  for (auto s : sources) {
    net.check_index(s);
    bool precedes = false;
    for (auto t : sinks)
      if (ancestors(net, t).count(s)) precedes = true;
    if (!precedes)
      throw ValidationError("'" + net.variable(s).name +
                            "' does not causally precede the explanandum");
    from_source.insert(s);
    from_source.merge(descendants(net, s));
  }
  MechanismFragment frag;
  for (const auto& e : net.edges())
    if (from_source.count(e.parent) && reach_sink.count(e.child)) frag.edges.insert(e);
  return frag;
}

inline MechanismFragment paths_to(const CausalNetwork& net, const std::set<std::size_t>& sources,
                                  std::size_t sink) {
  return paths_to(net, sources, std::set<std::size_t>{sink});
}

inline MarkovNetwork moralize(const CausalNetwork& net) {
  MarkovNetwork out{net.variables(), {}};
  auto link = [&](std::size_t a, std::size_t b) {
    if (a != b) out.edges.insert({std::min(a, b), std::max(a, b)});
  };
  for (std::size_t c = 0; c < net.size(); ++c) {
    const auto& ps = net.parents(c);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      link(ps[i], c);
      for (std::size_t j = i + 1; j < ps.size(); ++j) link(ps[i], ps[j]);
    }
  }
  return out;
}

inline bool supports(const CausalNetwork& net, const MechanismFragment& frag) {
  for (const auto& e : frag.edges) {
    net.check_index(e.parent);
    net.check_index(e.child);
  }
  return std::all_of(frag.edges.begin(), frag.edges.end(),
                     [&](const Edge& e) { return net.has_edge(e.parent, e.child); });
}

// Same network with variables listed in `order` (names); parent lists and
// CPT rows keep their declared parent order.
inline CausalNetwork reordered(const CausalNetwork& net, const std::vector<std::string>& order) {
  if (order.size() != net.size()) throw ValidationError("variable sets differ");
  std::vector<std::size_t> old_of_new(order.size());
  std::vector<std::size_t> new_of_old(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    old_of_new[i] = net.require(order[i]);
    new_of_old[old_of_new[i]] = i;
  }
  std::vector<Variable> vars;
  std::vector<std::vector<std::size_t>> parents;
  std::vector<Cpt> cpts;
  for (auto old : old_of_new) {
    vars.push_back(net.variable(old));
    std::vector<std::size_t> ps;
    for (auto p : net.parents(old)) ps.push_back(new_of_old[p]);
    parents.push_back(std::move(ps));
    cpts.push_back(net.cpt(old));
  }
  return CausalNetwork(std::move(vars), std::move(parents), std::move(cpts));
}

inline std::string edge_label(const std::vector<Variable>& vars, const Edge& e) {
  return vars.at(e.parent).name + "->" + vars.at(e.child).name;
}

}  // namespace bnexplain
