// bnexplain: rank explanations of observations in causal Bayesian networks.
//
// Exit codes: 0 ok, 1 failed scenario assertion, 2 bad input, 3 inference
// error, 4 unknown scenario.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnexplain/bnexplain.hpp"

namespace {

using namespace bnexplain;
using nlohmann::json;

struct Flags {
  std::optional<std::size_t> max_conjuncts;
  bool allow_value_sets = false;
  bool require_raising = false;
  bool no_mechanism = false;
  std::optional<double> epsilon;
  std::string format = "table";
};

Case load_with_flags(const std::string& path, const Flags& f) {
  Case c = load_case(path);
  if (f.max_conjuncts) c.options.max_conjuncts = *f.max_conjuncts;
  if (f.allow_value_sets) c.options.allow_value_sets = true;
  if (f.require_raising) c.options.require_raising = true;
  if (f.no_mechanism) c.options.include_mechanism_conjunct = false;
  if (f.epsilon) c.epsilon = *f.epsilon;
  return c;
}

int cmd_check(const std::string& path, const Flags& f) {
  const auto net = parse_network(read_file(path));
  if (f.format == "machine") {
    json doc = {{"format", "machine"},
                {"valid", true},
                {"variables", net.size()},
                {"edges", net.edge_count()}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "ok: " << net.size() << " variables, " << net.edge_count() << " edges\n";
  }
  return 0;
}

int cmd_rank(const std::string& path, const Flags& f, bool with_matrix) {
  const Case c = load_with_flags(path, f);
  const auto scored = rank_all(c.state, c.explanandum, c.options, c.epsilon);
  const auto report = make_report(c.state, c.explanandum, scored);
  if (!with_matrix) {
    std::cout << (f.format == "machine" ? render_machine(report) : render_table(report));
    return 0;
  }
  const auto m = compare_matrix(scored, c.epsilon);
  std::cout << (f.format == "machine" ? render_compare_machine(report, m) : render_compare_table(report, m));
  return 0;
}

std::string world_text(const std::vector<Variable>& vars, const Assignment& w) {
  std::string out;
  for (std::size_t v = 0; v < vars.size(); ++v)
    out += (v ? " " : "") + vars[v].name + "=" + vars[v].values[w[v]];
  return out;
}

json world_json(const std::vector<Variable>& vars, const Assignment& w) {
  json out = json::object();
  for (std::size_t v = 0; v < vars.size(); ++v) out[vars[v].name] = vars[v].values[w[v]];
  return out;
}

int cmd_mpe(const std::string& path, const Flags& f) {
  const Case c = load_with_flags(path, f);
  const auto& k = c.state;
  const auto& vars = k.variables();
  std::vector<MpeResult> per;
  for (const auto& s : k.structures()) per.push_back(mpe(s.network, k.observations()));
  const auto overall = most_probable_world(k);

  if (f.format == "machine") {
    json doc = {{"format", "machine"}, {"observations", describe(vars, k.observations())}};
    doc["structures"] = json::array();
    for (std::size_t i = 0; i < per.size(); ++i)
      doc["structures"].push_back({{"weight", k.structures()[i].weight},
                                   {"world", world_json(vars, per[i].world)},
                                   {"posterior", per[i].posterior}});
    doc["state"] = {{"world", world_json(vars, overall.world)}, {"posterior", overall.posterior}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "observations: " << describe(vars, k.observations()) << "\n";
  for (std::size_t i = 0; i < per.size(); ++i)
    std::cout << "structure " << i << " (weight " << format_number(k.structures()[i].weight)
              << "): " << world_text(vars, per[i].world) << "  Pr(w|O) " << format_number(per[i].posterior)
              << "\n";
  std::cout << "state: " << world_text(vars, overall.world) << "  Pr(w) " << format_number(overall.posterior)
            << "\n";
  return 0;
}

int cmd_scenario(const std::string& name, const Flags& f) {
  std::vector<scenarios::ScenarioResult> results;
  if (name == "all") {
    for (const auto& n : scenarios::names()) results.push_back(scenarios::run(n));
  } else {
    results.push_back(scenarios::run(name));
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed();

  if (f.format == "machine") {
    json doc = {{"format", "machine"}, {"passed", ok}, {"scenarios", json::array()}};
    for (const auto& r : results) {
      json js = {{"name", r.name}, {"passed", r.passed()}, {"checks", json::array()}, {"reports", json::array()}};
      for (const auto& c : r.checks)
        js["checks"].push_back({{"what", c.what}, {"passed", c.passed}, {"detail", c.detail}});
      for (const auto& rep : r.reports) js["reports"].push_back(report_to_json(rep));
      doc["scenarios"].push_back(std::move(js));
    }
    std::cout << doc.dump(2) << "\n";
    return ok ? 0 : 1;
  }
  for (const auto& r : results) {
    std::cout << "== " << r.name << "\n";
    for (const auto& rep : r.reports) std::cout << render_table(rep) << "\n";
    for (const auto& c : r.checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.what << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                << "\n";
    std::cout << "\n";
  }
  std::cout << (ok ? "all assertions passed" : "some assertions FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank explanations of observations in causal Bayesian networks"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--max-conjuncts", flags.max_conjuncts, "Largest number of X2 literals (default 2)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--allow-value-sets", flags.allow_value_sets, "Allow 'X in S' literals");
  app.add_flag("--require-raising", flags.require_raising, "Keep only candidates that raise Pr(E)");
  app.add_flag("--no-mechanism-conjunct", flags.no_mechanism, "Omit the causal-mechanism conjunct");
  app.add_option("--epsilon", flags.epsilon, "Comparison tolerance (default 1e-9)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"table", "machine"}));

  std::string target;
  int code = 0;
  auto* check = app.add_subcommand("check", "Validate a network file");
  check->add_option("network", target, "Network file")->required();
  check->callback([&] { code = cmd_check(target, flags); });

  auto* rank = app.add_subcommand("rank", "Rank candidate explanations for a case");
  rank->add_option("case", target, "Case file")->required();
  rank->callback([&] { code = cmd_rank(target, flags, false); });

  auto* cmp = app.add_subcommand("compare", "Pairwise pair-order matrix for a case");
  cmp->add_option("case", target, "Case file")->required();
  cmp->callback([&] { code = cmd_rank(target, flags, true); });

  auto* best = app.add_subcommand("mpe", "Most probable world given the observations");
  best->add_option("case", target, "Case file")->required();
  best->callback([&] { code = cmd_mpe(target, flags); });

  auto* scen = app.add_subcommand("scenario", "Run a built-in scenario, or all of them");
  scen->add_option("name", target, "Scenario name or 'all'")->required();
  scen->callback([&] { code = cmd_scenario(target, flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InferenceError& e) {
    std::cerr << "error: inference: " << e.what() << "\n";
    return 3;
  } catch (const UnknownScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "known scenarios:";
    for (const auto& n : scenarios::names()) std::cerr << " " << n;
    std::cerr << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
