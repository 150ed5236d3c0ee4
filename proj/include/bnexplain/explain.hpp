#pragma once

// Candidate explanations X = X1 & X2: an optional partial causal mechanism
// (edge set) and a conjunction of value-set literals over variables that
// causally precede the explanandum.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bnexplain/epistemic.hpp"
#include "bnexplain/event.hpp"
#include "bnexplain/network.hpp"

namespace bnexplain {

struct Explanation {
  std::optional<MechanismFragment> mechanism;
  Event conjuncts;

  bool operator==(const Explanation&) const = default;
};

struct CandidateSpec {
  std::size_t max_conjuncts = 2;
  bool allow_value_sets = false;
  bool require_raising = false;
  bool include_mechanism_conjunct = true;
};

struct Admissibility {
  bool admissible = false;
  std::string reason;

  explicit operator bool() const { return admissible; }
};

inline std::string describe(const std::vector<Variable>& vars, const MechanismFragment& m) {
  std::string out;
  for (const auto& e : m.edges) out += (out.empty() ? "" : ", ") + edge_label(vars, e);
  return "{" + out + "}";
}

inline std::string describe(const std::vector<Variable>& vars, const Explanation& x) {
  std::string out = describe(vars, x.conjuncts);
  if (x.mechanism) out = describe(vars, *x.mechanism) + " & " + out;
  return out;
}

inline void require_observed(const EpistemicState& k, const Event& e) {
  if (e.empty()) throw ValidationError("explanandum is empty");
  if (!k.observations().contains_literals_of(e))
    throw ValidationError("explanandum " + describe(k.variables(), e) +
                          " is not among the observations");
}

namespace detail {

// Does `from` reach any of `targets` along the fragment's edges?
inline bool reaches_through(const MechanismFragment& m, std::size_t from,
                            const std::set<std::size_t>& targets) {
  std::set<std::size_t> seen;
  std::vector<std::size_t> stack{from};
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (const auto& e : m.edges)
      if (e.parent == u && seen.insert(e.child).second) {
        if (targets.count(e.child)) return true;
        stack.push_back(e.child);
      }
  }
  return false;
}

}  // namespace detail

// Checks the explanation invariants; the reason names the first failure.
inline Admissibility is_admissible(const EpistemicState& k, const Event& explanandum,
                                   const Explanation& x, double eps = kDefaultEpsilon) {
  require_observed(k, explanandum);
  const auto& vars = k.variables();
  const auto e_vars = explanandum.variables();

  for (const auto& [v, s] : x.conjuncts.literals()) {
    k.reference().check_index(v);
    if (s.empty() || !s.subset_of(ValueSet::full(vars[v].size())))
      return {false, "invalid value set for '" + vars[v].name + "'"};
    if (s == ValueSet::full(vars[v].size()))
      return {false, "literal on '" + vars[v].name + "' allows its whole domain"};
  }
  for (auto v : x.conjuncts.variables())
    if (e_vars.count(v)) return {false, "conjunct mentions explanandum variable '" + vars[v].name + "'"};

  if (x.mechanism) {
    if (!is_acyclic(x.mechanism->edges)) return {false, "mechanism has a directed cycle"};
    bool supported = false;
    for (const auto& s : k.structures())
      if (s.weight > 0.0 && supports(s.network, *x.mechanism)) supported = true;
    if (!supported) return {false, "no structure with positive weight contains the mechanism"};
    for (auto v : x.conjuncts.variables())
      if (!detail::reaches_through(*x.mechanism, v, e_vars))
        return {false, "'" + vars[v].name + "' does not precede the explanandum within the mechanism"};
  } else {
    for (auto v : x.conjuncts.variables()) {
      bool precedes = false;
      for (const auto& s : k.structures()) {
        if (s.weight <= 0.0) continue;
        for (auto t : e_vars)
          if (ancestors(s.network, t).count(v)) precedes = true;
      }
      if (!precedes) return {false, "'" + vars[v].name + "' does not causally precede the explanandum"};
    }
  }

  if (x.conjuncts.empty() && (!x.mechanism || x.mechanism->empty()))
    return {false, "empty explanation"};
  if (accepted(k, x.conjuncts, x.mechanism, eps))
    return {false, "explanation is already accepted (Pr(X) = 1)"};
  const auto contracted = contract(k, explanandum);
  if (state_prob(contracted, x.conjuncts, {}, x.mechanism) <= 0.0)
    return {false, "explanation is impossible once the explanandum is retracted"};
  return {true, ""};
}

inline Explanation conjoin(const Explanation& x, const Explanation& y) {
  Explanation out = x;
  for (const auto& [v, s] : y.conjuncts.literals()) {
    if (auto mine = x.conjuncts.find(v); mine && *mine != s)
      throw ValidationError("conjuncts disagree on variable #" + std::to_string(v));
    out.conjuncts.require(v, s);
  }
  if (y.mechanism) {
    if (!out.mechanism) out.mechanism = MechanismFragment{};
    out.mechanism->edges.insert(y.mechanism->edges.begin(), y.mechanism->edges.end());
    if (!is_acyclic(out.mechanism->edges)) throw ValidationError("combined mechanism is cyclic");
  }
  return out;
}

namespace detail {

// Value-set choices for one variable, ordered lexicographically by the
// sequence of value indices.
inline std::vector<ValueSet> value_choices(std::size_t domain, bool allow_sets) {
  std::vector<ValueSet> out;
  if (!allow_sets) {
    for (std::size_t i = 0; i < domain; ++i) out.push_back(ValueSet::single(i));
    return out;
  }
  const auto full = ValueSet::full(domain).bits();
  for (std::uint64_t bits = 1; bits < full; ++bits) out.push_back(ValueSet::from_bits(bits));
  std::sort(out.begin(), out.end(),
            [](ValueSet a, ValueSet b) { return a.indices() < b.indices(); });
  return out;
}

// Odometer step over the choice lists, last position fastest.
inline bool advance(std::vector<std::size_t>& digit, const std::vector<std::vector<ValueSet>>& choices) {
  for (std::size_t i = digit.size(); i-- > 0;) {
    if (++digit[i] < choices[i].size()) return true;
    digit[i] = 0;
  }
  return false;
}

inline bool raises(const EpistemicState& contracted, const Event& e, const Explanation& x,
                   double eps) {
  double base = state_prob(contracted, e);
  double cond = state_prob(contracted, e, x.conjuncts, std::nullopt, x.mechanism);
  return cond > base + eps;
}

}  // namespace detail

// Variables that may appear in X2: ancestors of any explanandum variable in
// some positive-weight structure, ordered by name.
inline std::vector<std::size_t> explanation_vocabulary(const EpistemicState& k, const Event& e) {
  const auto e_vars = e.variables();
  std::set<std::size_t> vocab;
  for (const auto& s : k.structures())
    if (s.weight > 0.0) vocab.merge(ancestors_of_any(s.network, e_vars));
  for (auto v : e_vars) vocab.erase(v);
  std::vector<std::size_t> out(vocab.begin(), vocab.end());
  const auto& vars = k.variables();
  std::sort(out.begin(), out.end(),
            [&](std::size_t a, std::size_t b) { return vars[a].name < vars[b].name; });
  return out;
}

// All admissible candidates, ordered by conjunct count, then variable
// names, then value order, then mechanism.
inline std::vector<Explanation> enumerate(const EpistemicState& k, const Event& e,
                                          const CandidateSpec& spec, double eps = kDefaultEpsilon) {
  require_observed(k, e);
  if (spec.max_conjuncts < 1) throw ValidationError("max_conjuncts must be at least 1");
  const auto vocab = explanation_vocabulary(k, e);
  const auto e_vars = e.variables();
  const auto contracted = contract(k, e);
  const auto& vars = k.variables();

  std::vector<Explanation> out;
  auto emit = [&](const Event& x2) {
    std::vector<Explanation> found;
    if (spec.include_mechanism_conjunct) {
      std::set<MechanismFragment> frags;
      for (const auto& s : k.structures()) {
        if (s.weight <= 0.0) continue;
        bool all_precede = true;
        for (auto v : x2.variables()) {
          bool p = false;
          for (auto t : e_vars)
            if (ancestors(s.network, t).count(v)) p = true;
          all_precede = all_precede && p;
        }
        if (all_precede) frags.insert(paths_to(s.network, x2.variables(), e_vars));
      }
      for (const auto& f : frags) found.push_back({f, x2});
    } else {
      found.push_back({std::nullopt, x2});
    }
    for (auto& x : found) {
      if (!is_admissible(k, e, x, eps)) continue;
      if (spec.require_raising && !detail::raises(contracted, e, x, eps)) continue;
      out.push_back(std::move(x));
    }
  };

  const std::size_t max_k = std::min(spec.max_conjuncts, vocab.size());
  for (std::size_t size = 1; size <= max_k; ++size) {
    // k-combinations of vocab positions in lexicographic order.
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<std::vector<ValueSet>> choices;
      for (auto p : pick) choices.push_back(detail::value_choices(vars[vocab[p]].size(), spec.allow_value_sets));
      std::vector<std::size_t> digit(size, 0);
      do {
        Event x2;
        for (std::size_t i = 0; i < size; ++i) x2.require(vocab[pick[i]], choices[i][digit[i]]);
        emit(x2);
      } while (detail::advance(digit, choices));
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == vocab.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace bnexplain
