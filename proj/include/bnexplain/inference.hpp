#pragma once

// Exact queries over one causal network: world enumeration (reference
// semantics), variable elimination, and most-probable-world search.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "bnexplain/event.hpp"
#include "bnexplain/network.hpp"

namespace bnexplain {

inline constexpr double kDefaultEpsilon = 1e-9;

inline void check_event(const CausalNetwork& net, const Event& e) {
  for (const auto& [v, s] : e.literals()) {
    net.check_index(v);
    if (!s.subset_of(ValueSet::full(net.variable(v).size())))
      throw ValidationError("value set outside the domain of '" + net.variable(v).name + "'");
  }
}

inline double joint(const CausalNetwork& net, const Assignment& w) {
  if (w.size() != net.size())
    throw ValidationError("assignment covers " + std::to_string(w.size()) + " of " +
                          std::to_string(net.size()) + " variables");
  double p = 1.0;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (w[v] >= net.variable(v).size())
      throw ValidationError("value index out of range for '" + net.variable(v).name + "'");
    p *= net.cpt(v)[net.row_index(v, w.values)][w[v]];
  }
  return p;
}

// Calls fn(world) for every full assignment, last variable fastest.
inline void for_each_world(const CausalNetwork& net,
                           const std::function<void(const Assignment&)>& fn) {
  Assignment w{std::vector<std::size_t>(net.size(), 0)};
  while (true) {
    fn(w);
    std::size_t k = net.size();
    while (k > 0) {
      --k;
      if (++w.values[k] < net.variable(k).size()) break;
      w.values[k] = 0;
      if (k == 0) return;
    }
    if (net.size() == 0) return;
  }
}

// Pr(target | given) by summing the joint over all worlds.
inline double prob(const CausalNetwork& net, const Event& target, const Event& given = {}) {
  check_event(net, target);
  check_event(net, given);
  double num = 0.0;
  double den = 0.0;
  for_each_world(net, [&](const Assignment& w) {
    if (!given.satisfied_by(w)) return;
    double p = joint(net, w);
    den += p;
    if (target.satisfied_by(w)) num += p;
  });
  if (den <= 0.0) throw InferenceError("conditioning on null event");
  return num / den;
}

namespace detail {

struct Factor {
  std::vector<std::size_t> scope;  // ascending variable indices
  std::vector<std::size_t> cards;
  std::vector<double> values;      // last scope variable fastest
};

enum class Combine { sum, max };

inline Factor cpt_factor(const CausalNetwork& net, std::size_t v, ValueSet allowed) {
  Factor f;
  std::set<std::size_t> scope(net.parents(v).begin(), net.parents(v).end());
  scope.insert(v);
  f.scope.assign(scope.begin(), scope.end());
  std::size_t total = 1;
  for (auto u : f.scope) {
    f.cards.push_back(net.variable(u).size());
    total *= f.cards.back();
  }
  f.values.resize(total);
  std::vector<std::size_t> world(net.size(), 0);
  std::vector<std::size_t> digits(f.scope.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    for (std::size_t k = 0; k < f.scope.size(); ++k) world[f.scope[k]] = digits[k];
    f.values[idx] =
        allowed.contains(world[v]) ? net.cpt(v)[net.row_index(v, world)][world[v]] : 0.0;
    for (std::size_t k = f.scope.size(); k-- > 0;) {
      if (++digits[k] < f.cards[k]) break;
      digits[k] = 0;
    }
  }
  return f;
}

// Multiplies `factors` and eliminates `var` from the product.
inline Factor combine_out(const std::vector<const Factor*>& factors, std::size_t var,
                          Combine mode, const std::vector<std::size_t>& card_of) {
  std::set<std::size_t> uni;
  for (const auto* f : factors) uni.insert(f->scope.begin(), f->scope.end());
  std::vector<std::size_t> scope(uni.begin(), uni.end());
  std::vector<std::size_t> cards;
  for (auto u : scope) cards.push_back(card_of[u]);

  auto strides_in = [&](const std::vector<std::size_t>& sub, const std::vector<std::size_t>& sub_cards) {
    std::vector<std::size_t> st(scope.size(), 0);
    std::size_t stride = 1;
    for (std::size_t j = sub.size(); j-- > 0;) {
      auto pos = static_cast<std::size_t>(std::lower_bound(scope.begin(), scope.end(), sub[j]) -
                                          scope.begin());
      st[pos] = stride;
      stride *= sub_cards[j];
    }
    return st;
  };

  Factor out;
  for (std::size_t k = 0; k < scope.size(); ++k)
    if (scope[k] != var) {
      out.scope.push_back(scope[k]);
      out.cards.push_back(cards[k]);
    }
  std::size_t out_total = 1;
  for (auto c : out.cards) out_total *= c;
  out.values.assign(out_total, 0.0);

  std::vector<std::vector<std::size_t>> strides;
  for (const auto* f : factors) strides.push_back(strides_in(f->scope, f->cards));
  auto out_strides = strides_in(out.scope, out.cards);

  std::size_t total = 1;
  for (auto c : cards) total *= c;
  std::vector<std::size_t> digits(scope.size(), 0);
  std::vector<std::size_t> fidx(factors.size(), 0);
  std::size_t oidx = 0;
  for (std::size_t n = 0; n < total; ++n) {
    double p = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) p *= factors[i]->values[fidx[i]];
    if (mode == Combine::sum)
      out.values[oidx] += p;
    else
      out.values[oidx] = std::max(out.values[oidx], p);
    for (std::size_t k = scope.size(); k-- > 0;) {
      if (++digits[k] < cards[k]) {
        for (std::size_t i = 0; i < factors.size(); ++i) fidx[i] += strides[i][k];
        oidx += out_strides[k];
        break;
      }
      for (std::size_t i = 0; i < factors.size(); ++i) fidx[i] -= strides[i][k] * (cards[k] - 1);
      oidx -= out_strides[k] * (cards[k] - 1);
      digits[k] = 0;
    }
  }
  return out;
}

// Greedy min-degree elimination order over the factor interaction graph;
// ties go to the lower variable index.
inline std::vector<std::size_t> min_degree_order(const std::vector<Factor>& factors, std::size_t n) {
  std::vector<std::set<std::size_t>> adj(n);
  for (const auto& f : factors)
    for (auto a : f.scope)
      for (auto b : f.scope)
        if (a != b) adj[a].insert(b);
  std::vector<bool> gone(n, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!gone[v] && (best == n || adj[v].size() < adj[best].size())) best = v;
    gone[best] = true;
    order.push_back(best);
    for (auto a : adj[best])
      for (auto b : adj[best])
        if (a != b) adj[a].insert(b);
    for (auto a : adj[best]) adj[a].erase(best);
    adj[best].clear();
  }
  return order;
}

// Sum (or max) over all worlds of the joint restricted to `evidence`.
inline double eliminate_all(const CausalNetwork& net, const Event& evidence, Combine mode) {
  std::vector<Factor> factors;
  for (std::size_t v = 0; v < net.size(); ++v) {
    auto allowed = evidence.find(v).value_or(ValueSet::full(net.variable(v).size()));
    factors.push_back(cpt_factor(net, v, allowed));
  }
  std::vector<std::size_t> card_of;
  for (const auto& var : net.variables()) card_of.push_back(var.size());

  for (auto var : min_degree_order(factors, net.size())) {
    std::vector<const Factor*> touching;
    std::vector<Factor> rest;
    for (const auto& f : factors)
      if (std::binary_search(f.scope.begin(), f.scope.end(), var)) touching.push_back(&f);
    if (touching.empty()) continue;
    Factor merged = combine_out(touching, var, mode, card_of);
    for (auto& f : factors)
      if (!std::binary_search(f.scope.begin(), f.scope.end(), var)) rest.push_back(std::move(f));
    rest.push_back(std::move(merged));
    factors = std::move(rest);
  }
  double result = 1.0;
  for (const auto& f : factors) result *= f.values.at(0);
  return result;
}

}  // namespace detail

// Pr(evidence), by variable elimination.
inline double evidence_prob(const CausalNetwork& net, const Event& evidence) {
  check_event(net, evidence);
  return detail::eliminate_all(net, evidence, detail::Combine::sum);
}

// Same contract as prob(); computed by variable elimination.
inline double prob_ve(const CausalNetwork& net, const Event& target, const Event& given = {}) {
  check_event(net, target);
  check_event(net, given);
  double den = detail::eliminate_all(net, given, detail::Combine::sum);
  if (den <= 0.0) throw InferenceError("conditioning on null event");
  double num = detail::eliminate_all(net, target.conjoin(given), detail::Combine::sum);
  return std::clamp(num / den, 0.0, 1.0);
}

struct MpeResult {
  Assignment world;
  double posterior = 0.0;
};

// Most probable world consistent with `evidence`. Among worlds within a
// relative 1e-9 of the maximum, the lexicographically smallest (declaration
// order, then domain order) is returned.
inline MpeResult mpe(const CausalNetwork& net, const Event& evidence) {
  check_event(net, evidence);
  const double total = detail::eliminate_all(net, evidence, detail::Combine::sum);
  if (total <= 0.0) throw InferenceError("conditioning on null event");
  const double best = detail::eliminate_all(net, evidence, detail::Combine::max);
  const double floor = best * (1.0 - 1e-9);

  Event fixed = evidence;
  Assignment world{std::vector<std::size_t>(net.size(), 0)};
  for (std::size_t v = 0; v < net.size(); ++v) {
    auto allowed = fixed.find(v).value_or(ValueSet::full(net.variable(v).size()));
    bool chosen = false;
    for (std::size_t val = 0; val < net.variable(v).size() && !chosen; ++val) {
      if (!allowed.contains(val)) continue;
      Event trial = fixed;
      trial.require(v, val);
      if (detail::eliminate_all(net, trial, detail::Combine::max) >= floor) {
        fixed = std::move(trial);
        world.values[v] = val;
        chosen = true;
      }
    }
    if (!chosen) throw InferenceError("max-product decoding lost the optimum");
  }
  return {world, joint(net, world) / total};
}

}  // namespace bnexplain
