#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "oracles.hpp"
#include "vcsc/error.hpp"
#include "vcsc/perfstats.hpp"

using namespace vcsc;

namespace {

InvestmentEvent inv(const std::string& vc, const std::string& c, double amount, const std::string& round = "R1") {
  return {vc, c, round, {2010, 1, 1}, amount};
}

ExitEvent ex(const std::string& vc, const std::string& c, ExitType t, double amount, double br, double irr) {
  return {vc, c, t, amount, br, irr, {2014, 1, 1}};
}

const PerformanceRow& only_row(const PerformanceResult& r) {
  REQUIRE(r.rows.size() == 1);
  return r.rows[0];
}

}  // namespace

TEST_CASE("indicators for a partially exited portfolio") {
  const auto log = build_event_log({inv("V", "C1", 100), inv("V", "C2", 200)},
                                   {ex("V", "C1", ExitType::Ipo, 80, 2.0, 0.3)});
  const auto& row = only_row(performance_indicators(log, {"V"}));
  CHECK(row.investment_total == 300);
  CHECK(row.investment_exited == 100);
  CHECK(row.exit_ratio == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(row.ipo_proportion == 1.0);
  CHECK(row.weighted_book_return == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(row.weighted_irr == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("ipo proportion is amount weighted") {
  const auto log = build_event_log({inv("V", "C1", 10), inv("V", "C2", 10)},
                                   {ex("V", "C1", ExitType::Ipo, 80, 1, 0), ex("V", "C2", ExitType::MA, 20, 1, 0)});
  CHECK(only_row(performance_indicators(log, {"V"})).ipo_proportion == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("a single fully exited investment") {
  const auto log = build_event_log({inv("V", "C1", 50)}, {ex("V", "C1", ExitType::Ipo, 90, 1.8, 0.2)});
  const auto& row = only_row(performance_indicators(log, {"V"}));
  CHECK(row.exit_ratio == 1.0);
  CHECK(row.investment_exited == row.investment_total);
}

TEST_CASE("weighted returns use invested principal as weights") {
  const auto log = build_event_log({inv("V", "C1", 100), inv("V", "C2", 300)},
                                   {ex("V", "C1", ExitType::MA, 1, 1.0, 0.1), ex("V", "C2", ExitType::MA, 1, 3.0, 0.5)});
  const auto& row = only_row(performance_indicators(log, {"V"}));
  CHECK(row.weighted_book_return == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(row.weighted_irr == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(row.ipo_proportion == 0.0);
}

TEST_CASE("firms without exits are excluded; unknown firms are an error") {
  const auto log = build_event_log({inv("V", "C1", 100), inv("W", "C1", 100)},
                                   {ex("V", "C1", ExitType::Ipo, 1, 1, 0)});
  const auto r = performance_indicators(log, {"W", "V"});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].vc_id == "V");
  CHECK(r.no_exits == std::vector<std::string>{"W"});
  CHECK_THROWS_AS(performance_indicators(log, {"X"}), Error);
}

TEST_CASE("performance invariants on random portfolios") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_real_distribution<double> amt(1, 1000), ret(0, 5), irr(-0.5, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<InvestmentEvent> invs;
    std::vector<ExitEvent> exits;
    for (int k = 0; k < 30; ++k)
      invs.push_back(inv("V" + std::to_string(pick(rng) % 4), "C" + std::to_string(pick(rng)), amt(rng),
                         "R" + std::to_string(pick(rng) % 3)));
    for (int k = 0; k < 15; ++k) {
      const auto& base = invs[rng() % invs.size()];
      exits.push_back(ex(base.vc_id, base.company_id, static_cast<ExitType>(pick(rng) % 4), amt(rng), ret(rng), irr(rng)));
    }
    const auto log = build_event_log(invs, exits);
    const std::vector<std::string> firms(log.firms.begin(), log.firms.end());
    const auto result = performance_indicators(log, firms);

    // brute-force per-position values for the convex-combination bounds
    for (const auto& row : result.rows) {
      std::map<std::string, std::pair<double, int>> br, ir;
      for (const auto& e : exits) {
        if (e.vc_id != row.vc_id) continue;
        br[e.company_id].first += e.book_return;
        br[e.company_id].second += 1;
        ir[e.company_id].first += e.irr;
        ir[e.company_id].second += 1;
      }
      double br_lo = 1e300, br_hi = -1e300, ir_lo = 1e300, ir_hi = -1e300;
      for (const auto& [c, v] : br) {
        br_lo = std::min(br_lo, v.first / v.second);
        br_hi = std::max(br_hi, v.first / v.second);
      }
      for (const auto& [c, v] : ir) {
        ir_lo = std::min(ir_lo, v.first / v.second);
        ir_hi = std::max(ir_hi, v.first / v.second);
      }
      CHECK(row.ipo_proportion >= 0.0);
      CHECK(row.ipo_proportion <= 1.0);
      CHECK(row.exit_ratio >= 0.0);
      CHECK(row.exit_ratio <= 1.0 + 1e-15);
      CHECK(row.weighted_book_return >= br_lo - 1e-12);
      CHECK(row.weighted_book_return <= br_hi + 1e-12);
      CHECK(row.weighted_irr >= ir_lo - 1e-12);
      CHECK(row.weighted_irr <= ir_hi + 1e-12);
    }

    std::shuffle(invs.begin(), invs.end(), rng);
    std::shuffle(exits.begin(), exits.end(), rng);
    auto reversed = firms;
    std::reverse(reversed.begin(), reversed.end());
    const auto again = performance_indicators(build_event_log(invs, exits), reversed);
    REQUIRE(again.rows.size() == result.rows.size());
    for (std::size_t i = 0; i < again.rows.size(); ++i) {
      CHECK(again.rows[i].vc_id == result.rows[i].vc_id);
      CHECK(again.rows[i].investment_total == doctest::Approx(result.rows[i].investment_total).epsilon(1e-12));
      CHECK(again.rows[i].weighted_irr == doctest::Approx(result.rows[i].weighted_irr).epsilon(1e-12));
      CHECK(again.rows[i].ipo_proportion == doctest::Approx(result.rows[i].ipo_proportion).epsilon(1e-12));
    }
    CHECK(again.no_exits == result.no_exits);
  }
}

TEST_CASE("describe fixtures") {
  const std::vector<double> five{1, 2, 3, 4, 5};
  const auto s = describe_column("x", five);
  CHECK(s.mean == 3);
  CHECK(s.median == 3);
  CHECK(s.q1 == 2);
  CHECK(s.q3 == 4);
  CHECK(s.min == 1);
  CHECK(s.max == 5);
  CHECK(std::abs(s.std_dev - std::sqrt(2.5)) < 1e-12);

  const std::vector<double> four{4, 1, 3, 2};
  const auto f = describe_column("y", four);
  CHECK(f.median == 2.5);
  CHECK(f.q1 == 1.75);
  CHECK(f.q3 == 3.25);

  const std::vector<double> constant(7, 0.42);
  const auto c = describe_column("c", constant);
  CHECK(c.std_dev == 0);
  for (double v : {c.min, c.max, c.q1, c.q3, c.median, c.mean}) CHECK(v == doctest::Approx(0.42).epsilon(1e-15));

  const std::vector<double> one{9};
  CHECK(describe_column("o", one).std_dev == 0);
  CHECK_THROWS_AS(describe_column("e", std::vector<double>{}), Error);
}

TEST_CASE("describe equals a sort-based oracle on random columns") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::size_t> len(1, 200);
  std::lognormal_distribution<double> val(0, 2);
  std::uniform_int_distribution<int> ties(0, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(len(rng));
    for (auto& x : v) x = trial % 3 == 0 ? ties(rng) : val(rng);
    const auto got = describe_column("r", v);
    const auto want = oracle::describe_sorted(v);
    CHECK(got.mean == want.mean);
    CHECK(got.median == want.median);
    CHECK(got.std_dev == want.std_dev);
    CHECK(got.min == want.min);
    CHECK(got.max == want.max);
    CHECK(got.q1 == want.q1);
    CHECK(got.q3 == want.q3);
  }
}
