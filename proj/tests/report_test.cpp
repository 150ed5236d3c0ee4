#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"

using namespace bnexplain;

namespace {

struct Ranked {
  EpistemicState k;
  Event e;
  std::vector<ScoredExplanation> rows;
};

Ranked rain_wind() {
  auto net = scenarios::rain_wind_lawn();
  auto wet = make_event(net, {{"Wet", "true"}});
  EpistemicState k(net, wet);
  CandidateSpec spec;
  spec.include_mechanism_conjunct = false;
  auto rows = rank_all(k, wet, spec);
  return {k, wet, rows};
}

// Data lines of the table: everything after the header line.
std::vector<std::vector<std::string>> table_rows(const std::string& table) {
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line) && line.rfind("#", 0) != 0) {
  }
  std::vector<std::vector<std::string>> out;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::vector<std::string> row;
    std::string cell;
    while (cells >> cell) row.push_back(cell);
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST(Report, RowsMirrorScores) {
  auto r = rain_wind();
  auto rep = make_report(r.k, r.e, r.rows);
  ASSERT_EQ(rep.rows.size(), r.rows.size());
  EXPECT_EQ(rep.explanandum, "Wet=true");
  EXPECT_NEAR(rep.explanandum_prob, 0.161, 1e-12);
  ASSERT_EQ(rep.structures.size(), 1u);
  EXPECT_NEAR(rep.structures[0].likelihood, 0.161, 1e-12);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    EXPECT_EQ(rep.rows[i].prior, r.rows[i].prior);
    EXPECT_EQ(rep.rows[i].frontier, r.rows[i].frontier);
    EXPECT_FALSE(rep.rows[i].has_mechanism);
  }
}

TEST(Report, FrontierRowsComeFirst) {
  auto r = rain_wind();
  auto rep = make_report(r.k, r.e, r.rows);
  bool dominated = false;
  for (const auto& row : rep.rows) {
    if (!row.frontier) dominated = true;
    if (dominated) {
      EXPECT_FALSE(row.frontier);
    }
  }
}

TEST(Report, TableAndMachineAgree) {
  auto r = rain_wind();
  auto rep = make_report(r.k, r.e, r.rows);
  auto doc = nlohmann::json::parse(render_machine(rep));
  auto table = table_rows(render_table(rep));
  ASSERT_EQ(doc["candidates"].size(), rep.rows.size());
  ASSERT_EQ(table.size(), rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& c = doc["candidates"][i];
    const auto& t = table[i];
    // Columns from the right: dominated-by, frontier, gardenfors, posterior, EP-diff, EP, prior.
    const auto n = t.size();
    EXPECT_NEAR(std::stod(t[n - 7]), c["prior"].get<double>(), 1e-7 * std::max(1.0, c["prior"].get<double>()));
    EXPECT_NEAR(std::stod(t[n - 6]), c["ep_ratio"].get<double>(), 1e-7 * std::max(1.0, c["ep_ratio"].get<double>()));
    EXPECT_NEAR(std::stod(t[n - 5]), c["ep_diff"].get<double>(), 1e-7);
    EXPECT_NEAR(std::stod(t[n - 4]), c["posterior"].get<double>(), 1e-7);
    EXPECT_EQ(t[n - 3] == "yes", c["gardenfors"].get<bool>());
    EXPECT_EQ(t[n - 2] == "yes", c["frontier"].get<bool>());
    EXPECT_TRUE(c["mechanism"].is_null());
  }
}

TEST(Report, EmptyAndMechanismRows) {
  auto coin = scenarios::coin_bag();
  auto bh = make_event(coin, {{"C", "bh"}});
  EpistemicState k(coin, bh);
  auto rep = make_report(k, bh, {});
  EXPECT_NE(render_table(rep).find("no admissible explanations"), std::string::npos);

  auto tails = make_event(coin, {{"R", "t"}});
  EpistemicState kt(coin, tails);
  auto rows = rank_all(kt, tails, CandidateSpec{});
  auto with = make_report(kt, tails, rows);
  bool saw = false;
  for (const auto& row : with.rows)
    if (row.has_mechanism) {
      saw = true;
      EXPECT_EQ(row.mechanism, std::vector<std::string>{"C->R"});
    }
  EXPECT_TRUE(saw);
  auto doc = nlohmann::json::parse(render_machine(with));
  EXPECT_EQ(doc["format"], "machine");
}

TEST(Report, CompareMatrix) {
  auto r = rain_wind();
  auto m = compare_matrix(r.rows);
  ASSERT_EQ(m.size(), r.rows.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(m[i][i], Order::equal);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[i][j] == Order::better) { EXPECT_EQ(m[j][i], Order::worse); }
      if (m[i][j] == Order::incomparable) { EXPECT_EQ(m[j][i], Order::incomparable); }
    }
  }
  auto doc = nlohmann::json::parse(render_compare_machine(make_report(r.k, r.e, r.rows), m));
  EXPECT_EQ(doc["compare"].size(), m.size());
}

TEST(FormatNumber, EightSignificantDigits) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(25.0 / 3.0), "8.3333333");
  EXPECT_EQ(format_number(1e-6), "1e-06");
}
