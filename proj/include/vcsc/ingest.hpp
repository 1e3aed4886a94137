#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vcsc {

/// Calendar date, ISO 8601 (YYYY-MM-DD), no timezone.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<Date> parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const Date&) const = default;
};

struct InvestmentEvent {
  std::string vc_id;
  std::string company_id;
  std::string round_id;
  Date date;
  double amount = 0.0;

  bool operator==(const InvestmentEvent&) const = default;
};

enum class ExitType { Ipo, MA, Buyback, Other };

std::string_view to_string(ExitType type);
/// Case-insensitive; unknown labels map to Other.
ExitType parse_exit_type(std::string_view label);

struct ExitEvent {
  std::string vc_id;
  std::string company_id;
  ExitType exit_type = ExitType::Other;
  double exit_amount = 0.0;
  double book_return = 0.0;
  double irr = 0.0;
  Date date;

  bool operator==(const ExitEvent&) const = default;
};

enum class RejectReason {
  MalformedRow,    // wrong field count
  MissingField,    // empty identifier
  BadDate,
  BadNumber,
  NegativeAmount,
  NegativeReturn,  // book_return < 0
  DuplicateMerged, // folded into an earlier row with the same key
  OrphanExit,      // no investment with matching (vc_id, company_id)
};

std::string_view to_string(RejectReason reason);

using RejectionCounts = std::map<RejectReason, std::size_t>;

std::size_t total(const RejectionCounts& counts);

/// Header names for each logical column.
struct InvestmentSchema {
  std::string vc_id = "vc_id";
  std::string company_id = "company_id";
  std::string round_id = "round_id";
  std::string date = "date";
  std::string amount = "amount";
};

struct ExitSchema {
  std::string vc_id = "vc_id";
  std::string company_id = "company_id";
  std::string exit_type = "exit_type";
  std::string exit_amount = "exit_amount";
  std::string book_return = "book_return";
  std::string irr = "irr";
  std::string date = "date";
};

struct RowRejection {
  std::size_t line = 0;  // 1-based, header is line 1
  RejectReason reason = RejectReason::MalformedRow;
};

template <typename Event>
struct ParseResult {
  std::vector<Event> events;
  std::size_t raw_rows = 0;
  RejectionCounts rejected;
  std::vector<RowRejection> rejections;
};

/// Malformed rows are rejected with a reason; a missing header or a header
/// lacking a required column throws Error(Io).
ParseResult<InvestmentEvent> parse_investments(std::istream& in, const InvestmentSchema& schema = {});
ParseResult<ExitEvent> parse_exits(std::istream& in, const ExitSchema& schema = {});

/// File variants; an unreadable path throws Error(Io) naming the path.
ParseResult<InvestmentEvent> load_investments(const std::filesystem::path& path,
                                              const InvestmentSchema& schema = {});
ParseResult<ExitEvent> load_exits(const std::filesystem::path& path, const ExitSchema& schema = {});

/// Validated, deduplicated and cross-linked event registry. Immutable once built.
struct EventLog {
  std::vector<InvestmentEvent> investments;  // sorted by (vc_id, company_id, round_id)
  std::vector<ExitEvent> exits;              // sorted by all fields
  std::set<std::string> firms;
  std::set<std::string> companies;
  RejectionCounts rejected_counts;
  std::size_t raw_investment_rows = 0;
  std::size_t raw_exit_rows = 0;

  std::size_t retained_rows() const { return investments.size() + exits.size(); }
};

/// Duplicate (vc, company, round) triples are merged by summing amounts (the
/// earliest date is kept); exits without a matching (vc, company) investment
/// are dropped and tallied as OrphanExit.
EventLog build_event_log(const ParseResult<InvestmentEvent>& investments,
                         const ParseResult<ExitEvent>& exits);
EventLog build_event_log(std::vector<InvestmentEvent> investments, std::vector<ExitEvent> exits);

/// Same events and registries; rejection bookkeeping is not compared.
bool same_contents(const EventLog& a, const EventLog& b);

void write_investments(std::ostream& out, const std::vector<InvestmentEvent>& events);
void write_exits(std::ostream& out, const std::vector<ExitEvent>& events);

}  // namespace vcsc
