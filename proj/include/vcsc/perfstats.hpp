#pragma once

#include <span>
#include <string>
#include <vector>

#include "vcsc/ingest.hpp"
#include "vcsc/metrics.hpp"

namespace vcsc {

/// Financial-performance indicators of one firm over its investments and exits.
struct PerformanceRow {
  std::string vc_id;
  double investment_total = 0.0;
  double ipo_proportion = 0.0;
  double weighted_book_return = 0.0;
  double weighted_irr = 0.0;
  double investment_exited = 0.0;
  double exit_ratio = 0.0;
};

struct PerformanceResult {
  std::vector<PerformanceRow> rows;    // ordered by vc_id
  std::vector<std::string> no_exits;   // firms excluded for lack of exits
};

/// Exits link to invested principal through (vc_id, company_id). Several exits
/// of one position sum their exit amounts and average book_return / irr.
/// Firms without exits are excluded and listed in `no_exits`.
/// Throws Error(InvalidArgument) for a firm absent from the log.
PerformanceResult performance_indicators(const EventLog& log, const std::vector<std::string>& firms);

struct DescriptiveStats {
  std::string label;
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;  // sample, divisor n-1; 0 when n == 1
  double min = 0.0;
  double max = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

using DescriptiveTable = std::vector<DescriptiveStats>;

/// Quartiles interpolate linearly between order statistics at zero-based
/// position p*(n-1). Throws EMPTY_COLUMN for an empty column.
DescriptiveStats describe_column(const std::string& label, std::span<const double> values);
DescriptiveTable describe(const std::vector<NodeVector>& columns);

}  // namespace vcsc
