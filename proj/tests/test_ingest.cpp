#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "vcsc/error.hpp"
#include "vcsc/ingest.hpp"

using namespace vcsc;

namespace {

ParseResult<InvestmentEvent> parse_inv(const std::string& text) {
  std::istringstream in(text);
  return parse_investments(in);
}

ParseResult<ExitEvent> parse_ex(const std::string& text) {
  std::istringstream in(text);
  return parse_exits(in);
}

const std::string kInvHeader = "vc_id,company_id,round_id,date,amount\n";
const std::string kExitHeader = "vc_id,company_id,exit_type,exit_amount,book_return,irr,date\n";

}  // namespace

TEST_CASE("parse_investments maps fields directly") {
  const auto r = parse_inv(kInvHeader + "VC001,C001,R1,2010-05-01,1000000\n");
  REQUIRE(r.events.size() == 1);
  const auto& e = r.events[0];
  CHECK(e.vc_id == "VC001");
  CHECK(e.company_id == "C001");
  CHECK(e.round_id == "R1");
  CHECK(e.date == Date{2010, 5, 1});
  CHECK(e.amount == 1e6);
  CHECK(r.raw_rows == 1);
  CHECK(total(r.rejected) == 0);
}

TEST_CASE("negative amount is rejected with reason") {
  const auto r = parse_inv(kInvHeader + "VC001,C001,R1,2010-05-01,-5\n");
  CHECK(r.events.empty());
  CHECK(r.rejected.at(RejectReason::NegativeAmount) == 1);
  REQUIRE(r.rejections.size() == 1);
  CHECK(r.rejections[0].line == 2);
}

TEST_CASE("header-only file gives an empty list") {
  const auto r = parse_inv(kInvHeader);
  CHECK(r.events.empty());
  CHECK(r.raw_rows == 0);
  CHECK(total(r.rejected) == 0);
}

TEST_CASE("per-row validation never aborts the parse") {
  const auto r = parse_inv(kInvHeader +
                           ",C1,R1,2010-01-01,1\n"        // missing vc
                           "V,C1,R1,2010-02-30,1\n"       // bad day
                           "V,C1,R1,2010-01-01,1e\n"      // bad number
                           "V,C1,R1,2010-01-01\n"         // short row
                           "V,C1,R1,2012-02-29,7.5\n");   // valid leap day
  CHECK(r.events.size() == 1);
  CHECK(r.raw_rows == 5);
  CHECK(r.rejected.at(RejectReason::MissingField) == 1);
  CHECK(r.rejected.at(RejectReason::BadDate) == 1);
  CHECK(r.rejected.at(RejectReason::BadNumber) == 1);
  CHECK(r.rejected.at(RejectReason::MalformedRow) == 1);
  CHECK(r.raw_rows == r.events.size() + total(r.rejected));
}

TEST_CASE("columns are located by header name") {
  const auto r = parse_inv("amount,date,round_id,company_id,vc_id\n5,2011-03-04,R2,C9,V7\n");
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].vc_id == "V7");
  CHECK(r.events[0].amount == 5.0);

  std::istringstream in("vc,company,round,date,amount\nV,C,R,2011-03-04,5\n");
  InvestmentSchema schema;
  schema.vc_id = "vc";
  schema.company_id = "company";
  schema.round_id = "round";
  CHECK(parse_investments(in, schema).events.size() == 1);
}

TEST_CASE("missing header column is fatal") {
  CHECK_THROWS_AS(parse_inv("vc_id,company_id,date,amount\n"), Error);
  CHECK_THROWS_AS(parse_inv(""), Error);
  CHECK_THROWS_AS(load_investments("/nonexistent/investments.csv"), Error);
}

TEST_CASE("parse_exits normalizes exit types") {
  const auto r = parse_ex(kExitHeader +
                          "VC001,C001,IPO,2000000,2.0,0.25,2013-06-01\n"
                          "VC001,C002,ipo,1,1,0,2013-06-01\n"
                          "VC001,C003,trade sale,1,1,0,2013-06-01\n"
                          "VC001,C004,Ma,1,1,0,2013-06-01\n");
  REQUIRE(r.events.size() == 4);
  CHECK(r.events[0].exit_type == ExitType::Ipo);
  CHECK(r.events[0].exit_amount == 2e6);
  CHECK(r.events[0].book_return == 2.0);
  CHECK(r.events[0].irr == 0.25);
  CHECK(r.events[0].date == Date{2013, 6, 1});
  CHECK(r.events[1].exit_type == ExitType::Ipo);
  CHECK(r.events[2].exit_type == ExitType::Other);
  CHECK(r.events[3].exit_type == ExitType::MA);
}

TEST_CASE("exit with negative book return is rejected; negative irr is allowed") {
  const auto r = parse_ex(kExitHeader + "V,C,IPO,1,-0.5,0,2013-06-01\nV,C,IPO,1,0.5,-0.2,2013-06-01\n");
  CHECK(r.events.size() == 1);
  CHECK(r.rejected.at(RejectReason::NegativeReturn) == 1);
}

TEST_CASE("build_event_log merges duplicate triples by summing") {
  std::vector<InvestmentEvent> inv{{"VC1", "C1", "R1", {2010, 1, 1}, 100}, {"VC1", "C1", "R1", {2010, 2, 1}, 50}};
  const auto log = build_event_log(inv, {});
  REQUIRE(log.investments.size() == 1);
  CHECK(log.investments[0].amount == 150);
  CHECK(log.investments[0].date == Date{2010, 1, 1});
  CHECK(log.rejected_counts.at(RejectReason::DuplicateMerged) == 1);
}

TEST_CASE("orphan exits are dropped and tallied") {
  std::vector<InvestmentEvent> inv{{"VC1", "C1", "R1", {2010, 1, 1}, 100}};
  std::vector<ExitEvent> ex{{"VC9", "C9", ExitType::Ipo, 1, 1, 0, {2012, 1, 1}},
                            {"VC1", "C1", ExitType::Ipo, 1, 1, 0, {2012, 1, 1}}};
  const auto log = build_event_log(inv, ex);
  CHECK(log.exits.size() == 1);
  CHECK(log.rejected_counts.at(RejectReason::OrphanExit) == 1);
  CHECK(log.firms == std::set<std::string>{"VC1"});
  CHECK(log.companies == std::set<std::string>{"C1"});
}

TEST_CASE("rejections account for every dropped row across files") {
  std::istringstream inv(kInvHeader + "A,C1,R1,2010-01-01,1\nA,C1,R1,2010-01-01,2\nB,C1,R1,bad,1\n");
  std::istringstream ex(kExitHeader + "A,C1,IPO,1,1,0,2012-01-01\nZ,C1,IPO,1,1,0,2012-01-01\nA,C1,IPO,x,1,0,2012-01-01\n");
  const auto log = build_event_log(parse_investments(inv), parse_exits(ex));
  CHECK(log.raw_investment_rows + log.raw_exit_rows == log.retained_rows() + total(log.rejected_counts));
  CHECK(log.retained_rows() == 2);
}

TEST_CASE("build_event_log is idempotent through serialization") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> id(0, 5);
  std::uniform_real_distribution<double> amt(0.0, 1e6);
  std::vector<InvestmentEvent> inv;
  std::vector<ExitEvent> ex;
  for (int k = 0; k < 200; ++k) {
    inv.push_back({"V" + std::to_string(id(rng)), "C" + std::to_string(id(rng)), "R" + std::to_string(id(rng)),
                   {2000 + id(rng), 1 + id(rng), 1 + id(rng)}, amt(rng)});
    ex.push_back({"V" + std::to_string(id(rng)), "C" + std::to_string(id(rng)), static_cast<ExitType>(id(rng) % 4),
                  amt(rng), amt(rng) / 1e5, amt(rng) / 1e6 - 0.5, {2010, 1 + id(rng), 1}});
  }
  const auto log = build_event_log(inv, ex);
  std::ostringstream inv_out, ex_out;
  write_investments(inv_out, log.investments);
  write_exits(ex_out, log.exits);
  std::istringstream inv_in(inv_out.str()), ex_in(ex_out.str());
  const auto rebuilt = build_event_log(parse_investments(inv_in), parse_exits(ex_in));
  CHECK(same_contents(log, rebuilt));
  CHECK(total(rebuilt.rejected_counts) == 0);

  // order of input rows does not matter
  std::shuffle(inv.begin(), inv.end(), rng);
  std::shuffle(ex.begin(), ex.end(), rng);
  CHECK(same_contents(log, build_event_log(inv, ex)));

  for (const auto& e : log.exits)
    CHECK(std::any_of(log.investments.begin(), log.investments.end(), [&](const InvestmentEvent& i) {
      return i.vc_id == e.vc_id && i.company_id == e.company_id;
    }));
}

TEST_CASE("firm and company registries count distinct ids at scale") {
  // 4,985 firms, 21,421 companies, 40,882 events: each firm and company used at least once.
  const std::size_t firms = 4985, companies = 21421, events = 40882;
  std::vector<InvestmentEvent> inv;
  inv.reserve(events);
  for (std::size_t k = 0; k < events; ++k) {
    inv.push_back({"VC" + std::to_string(k % firms), "C" + std::to_string(k % companies), "R" + std::to_string(k),
                   {2005, 1, 1}, 1.0});
  }
  const auto log = build_event_log(inv, {});
  CHECK(log.firms.size() == firms);
  CHECK(log.companies.size() == companies);
  CHECK(log.investments.size() == events);
}

TEST_CASE("dates validate calendar ranges") {
  CHECK(Date::parse("2000-02-29").has_value());
  CHECK_FALSE(Date::parse("1900-02-29").has_value());
  CHECK_FALSE(Date::parse("2001-13-01").has_value());
  CHECK_FALSE(Date::parse("2001-1-01").has_value());
  CHECK(Date::parse("2015-12-31")->to_string() == "2015-12-31");
}
