#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnexplain/epistemic.hpp"
#include "bnexplain/rank.hpp"

namespace bnexplain {

struct ReportRow {
  std::vector<std::string> mechanism;  // "A->B" labels; empty when X1 is omitted
  bool has_mechanism = false;
  std::vector<std::string> conjuncts;  // "C=bt", "C in {C1,C2}"
  double prior = 0.0;
  double ep_ratio = 0.0;
  double ep_diff = 0.0;
  double posterior = 0.0;
  bool gardenfors = false;
  bool frontier = false;
  std::vector<std::size_t> dominated_by;
};

struct StructureSummary {
  double weight = 0.0;
  double likelihood = 0.0;  // Pr_C(O)
};

struct Report {
  std::string explanandum;
  std::string observations;
  double explanandum_prob = 0.0;  // Pr_E^-(E)
  std::vector<StructureSummary> structures;
  std::vector<ReportRow> rows;
};

inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8g", x);
  return buf;
}

inline Report make_report(const EpistemicState& k, const Event& e,
                          const std::vector<ScoredExplanation>& scored) {
  const auto& vars = k.variables();
  Report r;
  r.explanandum = describe(vars, e);
  r.observations = describe(vars, k.observations());
  r.explanandum_prob = state_prob(contract(k, e), e);
  auto lik = k.likelihoods();
  for (std::size_t i = 0; i < k.structures().size(); ++i)
    r.structures.push_back({k.structures()[i].weight, lik[i]});
  for (const auto& s : scored) {
    ReportRow row;
    if (s.explanation.mechanism) {
      row.has_mechanism = true;
      for (const auto& edge : s.explanation.mechanism->edges) row.mechanism.push_back(edge_label(vars, edge));
    }
    for (const auto& [v, set] : s.explanation.conjuncts.literals())
      row.conjuncts.push_back(describe(vars, Event::literal(v, set)));
    row.prior = s.prior;
    row.ep_ratio = s.ep_ratio;
    row.ep_diff = s.ep_diff;
    row.posterior = s.posterior;
    row.gardenfors = s.gardenfors;
    row.frontier = s.frontier;
    row.dominated_by = s.dominated_by;
    r.rows.push_back(std::move(row));
  }
  return r;
}

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string render_rows(const std::vector<std::string>& header,
                               const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string l;
    for (std::size_t c = 0; c < cells.size(); ++c) l += (c ? "  " : "") + pad(cells[c], width[c]);
    while (!l.empty() && l.back() == ' ') l.pop_back();
    out += l + "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

}  // namespace detail

inline std::string render_table(const Report& r) {
  std::string out;
  out += "explanandum:  " + r.explanandum + "\n";
  out += "observations: " + r.observations + "\n";
  out += "Pr-(E):       " + format_number(r.explanandum_prob) + "\n";
  for (std::size_t i = 0; i < r.structures.size(); ++i)
    out += "structure " + std::to_string(i) + ":  weight " + format_number(r.structures[i].weight) +
           "  Pr(O) " + format_number(r.structures[i].likelihood) + "\n";
  out += "\n";
  if (r.rows.empty()) return out + "no admissible explanations\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    std::vector<std::string> dom;
    for (auto d : row.dominated_by) dom.push_back(std::to_string(d));
    rows.push_back({std::to_string(i), row.has_mechanism ? "{" + detail::join(row.mechanism, ", ") + "}" : "-",
                    detail::join(row.conjuncts, " & "), format_number(row.prior), format_number(row.ep_ratio),
                    format_number(row.ep_diff), format_number(row.posterior), row.gardenfors ? "yes" : "no",
                    row.frontier ? "yes" : "no", dom.empty() ? "-" : detail::join(dom, ",")});
  }
  return out + detail::render_rows({"#", "mechanism", "conjuncts", "prior", "EP", "EP-diff", "posterior",
                                    "gardenfors", "frontier", "dominated-by"},
                                   rows);
}

inline nlohmann::json report_to_json(const Report& r) {
  using nlohmann::json;
  json doc;
  doc["format"] = "machine";
  json structures = json::array();
  for (const auto& s : r.structures) structures.push_back({{"weight", s.weight}, {"likelihood", s.likelihood}});
  doc["state"] = {{"explanandum", r.explanandum},
                  {"observations", r.observations},
                  {"explanandum_prob", r.explanandum_prob},
                  {"structures", structures}};
  doc["candidates"] = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"conjuncts", row.conjuncts},
               {"prior", row.prior},
               {"ep_ratio", row.ep_ratio},
               {"ep_diff", row.ep_diff},
               {"posterior", row.posterior},
               {"gardenfors", row.gardenfors},
               {"frontier", row.frontier},
               {"dominated_by", row.dominated_by}};
    jr["mechanism"] = row.has_mechanism ? json(row.mechanism) : json(nullptr);
    doc["candidates"].push_back(std::move(jr));
  }
  return doc;
}

inline std::string render_machine(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

// Pairwise pair-order matrix: entry [i][j] compares row i against row j.
inline std::vector<std::vector<Order>> compare_matrix(const std::vector<ScoredExplanation>& scored,
                                                      double eps = kDefaultEpsilon) {
  std::vector<std::vector<Order>> m(scored.size(), std::vector<Order>(scored.size(), Order::equal));
  for (std::size_t i = 0; i < scored.size(); ++i)
    for (std::size_t j = 0; j < scored.size(); ++j) m[i][j] = pair_compare(scored[i], scored[j], eps);
  return m;
}

inline std::string render_compare_table(const Report& r, const std::vector<std::vector<Order>>& m) {
  std::string out;
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    out += std::to_string(i) + ": " + detail::join(r.rows[i].conjuncts, " & ") +
           (r.rows[i].has_mechanism ? "  via {" + detail::join(r.rows[i].mechanism, ", ") + "}" : "") + "\n";
  out += "\n";
  std::vector<std::string> header{"vs"};
  for (std::size_t j = 0; j < m.size(); ++j) header.push_back(std::to_string(j));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (auto o : m[i]) row.push_back(to_string(o));
    rows.push_back(std::move(row));
  }
  return out + detail::render_rows(header, rows);
}

inline std::string render_compare_machine(const Report& r, const std::vector<std::vector<Order>>& m) {
  auto doc = report_to_json(r);
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json jr = nlohmann::json::array();
    for (auto o : row) jr.push_back(to_string(o));
    matrix.push_back(std::move(jr));
  }
  doc["compare"] = std::move(matrix);
  return doc.dump(2) + "\n";
}

}  // namespace bnexplain
