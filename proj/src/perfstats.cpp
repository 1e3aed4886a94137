#include "vcsc/perfstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vcsc/error.hpp"

namespace vcsc {

namespace {

struct PositionExits {
  double exit_amount = 0.0;
  double ipo_amount = 0.0;
  double book_return_sum = 0.0;
  double irr_sum = 0.0;
  std::size_t count = 0;
  std::size_t ipo_count = 0;
};

template <typename Events>
auto firm_range(const Events& events, const std::string& vc) {
  return std::equal_range(events.begin(), events.end(), vc, [](const auto& a, const auto& b) {
    if constexpr (std::is_same_v<std::decay_t<decltype(a)>, std::string>)
      return a < b.vc_id;
    else
      return a.vc_id < b;
  });
}

/// Value at zero-based position p*(n-1) of `sorted_lo`, interpolating toward
/// the next order statistic.
double interpolate(double lo, double hi, double frac) { return lo + frac * (hi - lo); }

}  // namespace

PerformanceResult performance_indicators(const EventLog& log, const std::vector<std::string>& firms) {
  std::vector<std::string> ordered = firms;
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  PerformanceResult result;
  for (const auto& vc : ordered) {
    if (!log.firms.contains(vc)) throw Error(ErrorCode::InvalidArgument, "firm '" + vc + "' is not in the event log");

    const auto [ex_begin, ex_end] = firm_range(log.exits, vc);
    if (ex_begin == ex_end) {
      result.no_exits.push_back(vc);
      continue;
    }

    std::map<std::string, double> principal;
    PerformanceRow row;
    row.vc_id = vc;
    const auto [inv_begin, inv_end] = firm_range(log.investments, vc);
    for (auto it = inv_begin; it != inv_end; ++it) {
      principal[it->company_id] += it->amount;
      row.investment_total += it->amount;
    }

    std::map<std::string, PositionExits> positions;
    for (auto it = ex_begin; it != ex_end; ++it) {
      auto& p = positions[it->company_id];
      p.exit_amount += it->exit_amount;
      p.book_return_sum += it->book_return;
      p.irr_sum += it->irr;
      ++p.count;
      if (it->exit_type == ExitType::Ipo) {
        p.ipo_amount += it->exit_amount;
        ++p.ipo_count;
      }
    }

    double exit_total = 0.0, ipo_total = 0.0, weighted_br = 0.0, weighted_irr = 0.0;
    double plain_br = 0.0, plain_irr = 0.0;
    std::size_t exit_count = 0, ipo_count = 0;
    for (const auto& [company, p] : positions) {
      const double principal_c = principal.at(company);
      const double br = p.book_return_sum / static_cast<double>(p.count);
      const double irr = p.irr_sum / static_cast<double>(p.count);
      row.investment_exited += principal_c;
      exit_total += p.exit_amount;
      ipo_total += p.ipo_amount;
      exit_count += p.count;
      ipo_count += p.ipo_count;
      weighted_br += br * principal_c;
      weighted_irr += irr * principal_c;
      plain_br += br;
      plain_irr += irr;
    }

    row.exit_ratio = row.investment_total > 0.0 ? row.investment_exited / row.investment_total : 0.0;
    row.ipo_proportion = exit_total > 0.0 ? ipo_total / exit_total
                                          : static_cast<double>(ipo_count) / static_cast<double>(exit_count);
    if (row.investment_exited > 0.0) {
      row.weighted_book_return = weighted_br / row.investment_exited;
      row.weighted_irr = weighted_irr / row.investment_exited;
    } else {
      // zero principal everywhere: fall back to the unweighted mean
      const auto k = static_cast<double>(positions.size());
      row.weighted_book_return = plain_br / k;
      row.weighted_irr = plain_irr / k;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

DescriptiveStats describe_column(const std::string& label, std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyColumn, "column '" + label + "' is empty");
  const std::size_t n = values.size();
  DescriptiveStats s;
  s.label = label;

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_dev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

  std::vector<double> work(values.begin(), values.end());
  auto order_stat = [&](double p) {
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(lo), work.end());
    const double lo_v = work[lo];
    const double hi_v = lo + 1 < n ? *std::min_element(work.begin() + static_cast<std::ptrdiff_t>(lo) + 1, work.end())
                                   : lo_v;
    return interpolate(lo_v, hi_v, frac);
  };
  const auto [mn, mx] = std::minmax_element(work.begin(), work.end());
  s.min = *mn;
  s.max = *mx;
  s.q1 = order_stat(0.25);
  s.median = order_stat(0.5);
  s.q3 = order_stat(0.75);
  return s;
}

DescriptiveTable describe(const std::vector<NodeVector>& columns) {
  DescriptiveTable table;
  table.reserve(columns.size());
  for (const auto& c : columns) table.push_back(describe_column(c.label, c.values));
  return table;
}

}  // namespace vcsc
