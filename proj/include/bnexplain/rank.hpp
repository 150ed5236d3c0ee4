#pragma once

// Scoring explanations: explanatory power (ratio and difference forms),
// contracted prior, posterior, and the componentwise (EP, prior) order
// whose maximal elements form the reported frontier.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bnexplain/epistemic.hpp"
#include "bnexplain/explain.hpp"

namespace bnexplain {

struct ScoredExplanation {
  Explanation explanation;
  Event explanandum;
  double prior = 0.0;              // Pr_E^-(X)
  double ep_ratio = 0.0;           // Pr_E^-(E|X) / Pr_E^-(E)
  double ep_diff = 0.0;            // Pr_E^-(E|X) - Pr_E^-(E)
  double posterior = 0.0;          // Pr_E^-(X|E)
  double explanandum_prob = 0.0;   // Pr_E^-(E)
  double state_prob = 0.0;         // Pr_K(X), uncontracted
  bool gardenfors = false;
  bool frontier = false;
  std::vector<std::size_t> dominated_by;
};

enum class Order { better, worse, equal, incomparable };

inline const char* to_string(Order o) {
  switch (o) {
    case Order::better: return "better";
    case Order::worse: return "worse";
    case Order::equal: return "equal";
    case Order::incomparable: return "incomparable";
  }
  return "?";
}

namespace detail {

inline double explanandum_prob_checked(const EpistemicState& contracted, const Event& e) {
  double pe = state_prob(contracted, e);
  if (pe <= 0.0) throw ImpossibleExplanandum("explanandum has probability zero after contraction");
  return pe;
}

inline double prior_checked(const EpistemicState& contracted, const Explanation& x) {
  double px = state_prob(contracted, x.conjuncts, {}, x.mechanism);
  if (px <= 0.0) throw ImpossibleExplanation("explanation has probability zero after contraction");
  return px;
}

// Pr_E^-(E | X1 & X2).
inline double explanandum_given(const EpistemicState& contracted, const Event& e,
                                const Explanation& x) {
  return state_prob(contracted, e, x.conjuncts, std::nullopt, x.mechanism);
}

}  // namespace detail

// The first argument is the contracted state K_E^-.
inline double ep_ratio(const EpistemicState& contracted, const Event& e, const Explanation& x) {
  double pe = detail::explanandum_prob_checked(contracted, e);
  detail::prior_checked(contracted, x);
  return detail::explanandum_given(contracted, e, x) / pe;
}

inline double ep_diff(const EpistemicState& contracted, const Event& e, const Explanation& x) {
  double pe = detail::explanandum_prob_checked(contracted, e);
  detail::prior_checked(contracted, x);
  return detail::explanandum_given(contracted, e, x) - pe;
}

// Pr_E^-(X | E).
inline double posterior(const EpistemicState& contracted, const Event& e, const Explanation& x) {
  detail::explanandum_prob_checked(contracted, e);
  return state_prob(contracted, x.conjuncts, e, x.mechanism);
}

// Raises the explanandum in the contracted state and is not already known.
inline bool is_gardenfors_explanation(const EpistemicState& k, const Event& e,
                                      const Explanation& x, double eps = kDefaultEpsilon) {
  require_observed(k, e);
  const auto contracted = contract(k, e);
  double pe = detail::explanandum_prob_checked(contracted, e);
  detail::prior_checked(contracted, x);
  return detail::explanandum_given(contracted, e, x) > pe + eps &&
         !accepted(k, x.conjuncts, x.mechanism, eps);
}

// Scores one explanation without checking admissibility.
inline ScoredExplanation score(const EpistemicState& k, const EpistemicState& contracted,
                               const Event& e, const Explanation& x,
                               double eps = kDefaultEpsilon) {
  ScoredExplanation s;
  s.explanation = x;
  s.explanandum = e;
  s.explanandum_prob = detail::explanandum_prob_checked(contracted, e);
  s.prior = detail::prior_checked(contracted, x);
  const double cond = detail::explanandum_given(contracted, e, x);
  s.ep_ratio = cond / s.explanandum_prob;
  s.ep_diff = cond - s.explanandum_prob;
  s.posterior = state_prob(contracted, x.conjuncts, e, x.mechanism);
  s.state_prob = state_prob(k, x.conjuncts, {}, x.mechanism);
  s.gardenfors = s.ep_diff > eps && s.state_prob < 1.0 - eps;
  return s;
}

inline ScoredExplanation score(const EpistemicState& k, const Event& e, const Explanation& x,
                               double eps = kDefaultEpsilon) {
  require_observed(k, e);
  return score(k, contract(k, e), e, x, eps);
}

// Componentwise comparison on (EP, prior). EP uses a tolerance scaled by
// its magnitude, the prior an absolute one.
inline Order pair_compare(const ScoredExplanation& a, const ScoredExplanation& b,
                          double eps = kDefaultEpsilon) {
  if (a.explanandum != b.explanandum)
    throw ValidationError("explanations were scored against different explananda");
  auto cmp = [](double x, double y, double tol) { return x > y + tol ? 1 : (y > x + tol ? -1 : 0); };
  const int ep = cmp(a.ep_ratio, b.ep_ratio,
                     eps * std::max({1.0, std::abs(a.ep_ratio), std::abs(b.ep_ratio)}));
  const int pr = cmp(a.prior, b.prior, eps);
  if (ep == 0 && pr == 0) return Order::equal;
  if (ep >= 0 && pr >= 0) return Order::better;
  if (ep <= 0 && pr <= 0) return Order::worse;
  return Order::incomparable;
}

// Fills frontier flags and dominated_by (indices into `cands`).
inline void mark_dominance(std::vector<ScoredExplanation>& cands, double eps = kDefaultEpsilon) {
  for (std::size_t i = 0; i < cands.size(); ++i) {
    cands[i].dominated_by.clear();
    for (std::size_t j = 0; j < cands.size(); ++j)
      if (i != j && pair_compare(cands[j], cands[i], eps) == Order::better)
        cands[i].dominated_by.push_back(j);
    cands[i].frontier = cands[i].dominated_by.empty();
  }
}

// Maximal elements under the pair order, input order preserved.
inline std::vector<ScoredExplanation> frontier(std::vector<ScoredExplanation>& cands,
                                               double eps = kDefaultEpsilon) {
  mark_dominance(cands, eps);
  std::vector<ScoredExplanation> out;
  for (const auto& c : cands)
    if (c.frontier) out.push_back(c);
  return out;
}

// enumerate -> score -> frontier. Frontier rows come first, each block by
// descending EP then descending prior.
inline std::vector<ScoredExplanation> rank_all(const EpistemicState& k, const Event& e,
                                               const CandidateSpec& spec,
                                               double eps = kDefaultEpsilon) {
  const auto candidates = enumerate(k, e, spec, eps);
  const auto contracted = contract(k, e);
  std::vector<ScoredExplanation> scored;
  scored.reserve(candidates.size());
  for (const auto& x : candidates) scored.push_back(score(k, contracted, e, x, eps));
  mark_dominance(scored, eps);
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredExplanation& a, const ScoredExplanation& b) {
                     if (a.frontier != b.frontier) return a.frontier;
                     if (a.ep_ratio != b.ep_ratio) return a.ep_ratio > b.ep_ratio;
                     return a.prior > b.prior;
                   });
  mark_dominance(scored, eps);
  return scored;
}

}  // namespace bnexplain
