#include "vcsc/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <tuple>
#include <unordered_map>

#include "vcsc/csv.hpp"
#include "vcsc/error.hpp"

namespace vcsc {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> days{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : days[static_cast<std::size_t>(m - 1)];
}

std::optional<int> parse_digits(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

using HeaderIndex = std::unordered_map<std::string, std::size_t>;

HeaderIndex read_header(std::istream& in) {
  std::string line;
  if (!csv::next_line(in, line)) throw Error(ErrorCode::Io, "missing header row");
  HeaderIndex index;
  const auto fields = csv::split_record(line);
  for (std::size_t i = 0; i < fields.size(); ++i) index.emplace(csv::trim(fields[i]), i);
  return index;
}

std::size_t column(const HeaderIndex& header, const std::string& name) {
  const auto it = header.find(name);
  if (it == header.end()) throw Error(ErrorCode::Io, "header lacks required column '" + name + "'");
  return it->second;
}

/// Iterates data rows, handing each trimmed field list to `row` which returns
/// either an event or a rejection reason.
template <typename Event, typename RowFn>
ParseResult<Event> parse_rows(std::istream& in, std::size_t width, RowFn&& row) {
  if (!in) throw Error(ErrorCode::Io, "unreadable stream");
  ParseResult<Event> result;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    ++result.raw_rows;
    auto fields = csv::split_record(line);
    std::optional<RejectReason> reason;
    if (fields.size() != width) {
      reason = RejectReason::MalformedRow;
    } else {
      for (auto& f : fields) f = csv::trim(f);
      Event ev;
      reason = row(fields, ev);
      if (!reason) result.events.push_back(std::move(ev));
    }
    if (reason) {
      ++result.rejected[*reason];
      result.rejections.push_back({line_no, *reason});
    }
  }
  if (in.bad()) throw Error(ErrorCode::Io, "read error");
  return result;
}

auto investment_key(const InvestmentEvent& e) { return std::tie(e.vc_id, e.company_id, e.round_id); }

auto exit_key(const ExitEvent& e) {
  return std::tie(e.vc_id, e.company_id, e.date, e.exit_type, e.exit_amount, e.book_return, e.irr);
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = parse_digits(text.substr(0, 4));
  const auto m = parse_digits(text.substr(5, 2));
  const auto d = parse_digits(text.substr(8, 2));
  if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > days_in_month(*y, *m)) return std::nullopt;
  return Date{*y, *m, *d};
}

std::string Date::to_string() const {
  std::array<char, 16> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02d-%02d", year, month, day);
  return buf.data();
}

std::string_view to_string(ExitType type) {
  switch (type) {
    case ExitType::Ipo: return "IPO";
    case ExitType::MA: return "MA";
    case ExitType::Buyback: return "BUYBACK";
    case ExitType::Other: return "OTHER";
  }
  return "OTHER";
}

ExitType parse_exit_type(std::string_view label) {
  std::string upper;
  for (char c : label) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "IPO") return ExitType::Ipo;
  if (upper == "MA") return ExitType::MA;
  if (upper == "BUYBACK") return ExitType::Buyback;
  return ExitType::Other;
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::MalformedRow: return "MALFORMED_ROW";
    case RejectReason::MissingField: return "MISSING_FIELD";
    case RejectReason::BadDate: return "BAD_DATE";
    case RejectReason::BadNumber: return "BAD_NUMBER";
    case RejectReason::NegativeAmount: return "NEGATIVE_AMOUNT";
    case RejectReason::NegativeReturn: return "NEGATIVE_RETURN";
    case RejectReason::DuplicateMerged: return "DUPLICATE_MERGED";
    case RejectReason::OrphanExit: return "ORPHAN_EXIT";
  }
  return "UNKNOWN";
}

std::size_t total(const RejectionCounts& counts) {
  std::size_t n = 0;
  for (const auto& [reason, count] : counts) n += count;
  return n;
}

ParseResult<InvestmentEvent> parse_investments(std::istream& in, const InvestmentSchema& schema) {
  if (!in) throw Error(ErrorCode::Io, "unreadable stream");
  const auto header = read_header(in);
  const std::size_t c_vc = column(header, schema.vc_id);
  const std::size_t c_co = column(header, schema.company_id);
  const std::size_t c_rd = column(header, schema.round_id);
  const std::size_t c_dt = column(header, schema.date);
  const std::size_t c_am = column(header, schema.amount);

  return parse_rows<InvestmentEvent>(
      in, header.size(),
      [&](const std::vector<std::string>& f, InvestmentEvent& ev) -> std::optional<RejectReason> {
        if (f[c_vc].empty() || f[c_co].empty() || f[c_rd].empty()) return RejectReason::MissingField;
        const auto date = Date::parse(f[c_dt]);
        if (!date) return RejectReason::BadDate;
        const auto amount = csv::parse_double(f[c_am]);
        if (!amount) return RejectReason::BadNumber;
        if (*amount < 0.0) return RejectReason::NegativeAmount;
        ev = {f[c_vc], f[c_co], f[c_rd], *date, *amount};
        return std::nullopt;
      });
}

ParseResult<ExitEvent> parse_exits(std::istream& in, const ExitSchema& schema) {
  if (!in) throw Error(ErrorCode::Io, "unreadable stream");
  const auto header = read_header(in);
  const std::size_t c_vc = column(header, schema.vc_id);
  const std::size_t c_co = column(header, schema.company_id);
  const std::size_t c_ty = column(header, schema.exit_type);
  const std::size_t c_am = column(header, schema.exit_amount);
  const std::size_t c_br = column(header, schema.book_return);
  const std::size_t c_irr = column(header, schema.irr);
  const std::size_t c_dt = column(header, schema.date);

  return parse_rows<ExitEvent>(
      in, header.size(),
      [&](const std::vector<std::string>& f, ExitEvent& ev) -> std::optional<RejectReason> {
        if (f[c_vc].empty() || f[c_co].empty()) return RejectReason::MissingField;
        const auto date = Date::parse(f[c_dt]);
        if (!date) return RejectReason::BadDate;
        const auto amount = csv::parse_double(f[c_am]);
        const auto book = csv::parse_double(f[c_br]);
        const auto irr = csv::parse_double(f[c_irr]);
        if (!amount || !book || !irr) return RejectReason::BadNumber;
        if (*amount < 0.0) return RejectReason::NegativeAmount;
        if (*book < 0.0) return RejectReason::NegativeReturn;
        ev = {f[c_vc], f[c_co], parse_exit_type(f[c_ty]), *amount, *book, *irr, *date};
        return std::nullopt;
      });
}

ParseResult<InvestmentEvent> load_investments(const std::filesystem::path& path,
                                              const InvestmentSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open investments file '" + path.string() + "'");
  try {
    return parse_investments(in, schema);
  } catch (const Error& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

ParseResult<ExitEvent> load_exits(const std::filesystem::path& path, const ExitSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open exits file '" + path.string() + "'");
  try {
    return parse_exits(in, schema);
  } catch (const Error& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

EventLog build_event_log(const ParseResult<InvestmentEvent>& investments,
                         const ParseResult<ExitEvent>& exits) {
  EventLog log = build_event_log(investments.events, exits.events);
  log.raw_investment_rows = investments.raw_rows;
  log.raw_exit_rows = exits.raw_rows;
  for (const auto* counts : {&investments.rejected, &exits.rejected})
    for (const auto& [reason, n] : *counts) log.rejected_counts[reason] += n;
  return log;
}

EventLog build_event_log(std::vector<InvestmentEvent> investments, std::vector<ExitEvent> exits) {
  EventLog log;
  log.raw_investment_rows = investments.size();
  log.raw_exit_rows = exits.size();

  // Stable order keeps the merge result independent of input order except
  // for the kept date, which is the minimum.
  std::sort(investments.begin(), investments.end(), [](const auto& a, const auto& b) {
    return std::tie(a.vc_id, a.company_id, a.round_id, a.date, a.amount) <
           std::tie(b.vc_id, b.company_id, b.round_id, b.date, b.amount);
  });
  for (auto& ev : investments) {
    if (!log.investments.empty() && investment_key(log.investments.back()) == investment_key(ev)) {
      log.investments.back().amount += ev.amount;
      ++log.rejected_counts[RejectReason::DuplicateMerged];
      continue;
    }
    log.investments.push_back(std::move(ev));
  }

  std::set<std::pair<std::string, std::string>> positions;
  for (const auto& ev : log.investments) {
    log.firms.insert(ev.vc_id);
    log.companies.insert(ev.company_id);
    positions.emplace(ev.vc_id, ev.company_id);
  }

  std::sort(exits.begin(), exits.end(), [](const auto& a, const auto& b) { return exit_key(a) < exit_key(b); });
  for (auto& ev : exits) {
    if (!positions.contains({ev.vc_id, ev.company_id})) {
      ++log.rejected_counts[RejectReason::OrphanExit];
      continue;
    }
    log.exits.push_back(std::move(ev));
  }
  return log;
}

bool same_contents(const EventLog& a, const EventLog& b) {
  return a.investments == b.investments && a.exits == b.exits && a.firms == b.firms &&
         a.companies == b.companies;
}

void write_investments(std::ostream& out, const std::vector<InvestmentEvent>& events) {
  out << "vc_id,company_id,round_id,date,amount\n";
  for (const auto& e : events) {
    out << csv::escape(e.vc_id) << ',' << csv::escape(e.company_id) << ',' << csv::escape(e.round_id) << ','
        << e.date.to_string() << ',' << csv::format_double(e.amount) << '\n';
  }
}

void write_exits(std::ostream& out, const std::vector<ExitEvent>& events) {
  out << "vc_id,company_id,exit_type,exit_amount,book_return,irr,date\n";
  for (const auto& e : events) {
    out << csv::escape(e.vc_id) << ',' << csv::escape(e.company_id) << ',' << to_string(e.exit_type) << ','
        << csv::format_double(e.exit_amount) << ',' << csv::format_double(e.book_return) << ','
        << csv::format_double(e.irr) << ',' << e.date.to_string() << '\n';
  }
}

}  // namespace vcsc
