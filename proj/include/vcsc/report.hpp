#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vcsc/ingest.hpp"
#include "vcsc/metrics.hpp"
#include "vcsc/network.hpp"
#include "vcsc/perfstats.hpp"
#include "vcsc/sem.hpp"

namespace vcsc {

struct SampleAccounting {
  int first_year = 0;
  int last_year = 0;
  std::size_t firms = 0;
  std::size_t companies = 0;
  std::size_t investment_events = 0;
  std::vector<std::pair<ProjectionMode, std::size_t>> network_firms;
  std::size_t exit_events = 0;
};

SampleAccounting sample_accounting(const EventLog& log,
                                   std::vector<std::pair<ProjectionMode, std::size_t>> network_firms);

/// Outcome of one model: a fit, or the reason it could not be estimated.
struct ModelResult {
  ModelSpec spec;
  std::optional<SemFit> fit;
  std::string failure;
};

/// "12,345"
std::string group_thousands(std::size_t n);

/// "0.567*** (25.089)"; fixed parameters render as the bare estimate.
std::string format_estimate(const ParameterEstimate& p);

std::string render_sample_table(const SampleAccounting& s);
std::string render_rejections(const EventLog& log);
/// Columns in the order Mean, Median, Std. dev., Min, Max, Q1, Q3.
std::string render_descriptive_table(const DescriptiveTable& table, const std::vector<Indicator>& rows);
/// Loadings, one column per model; a blank cell marks an indicator the model omits.
std::string render_loading_table(const std::vector<ModelResult>& models, ProjectionMode mode);
/// Latent covariance, error variances and latent variances, one column per model.
std::string render_variance_table(const std::vector<ModelResult>& models, ProjectionMode mode);

/// vc_id, four raw columns, four "_scaled" columns.
void write_metrics(std::ostream& out, const SyndicationGraph& g, const SocialCapitalMetrics& raw);
void write_performance(std::ostream& out, const std::vector<PerformanceRow>& rows);
void write_indicator_matrix(std::ostream& out, const IndicatorMatrix& m);
/// Header "vc_id,<column names>"; throws Error(Io) on malformed content.
IndicatorMatrix read_indicator_matrix(std::istream& in);
IndicatorMatrix load_indicator_matrix(const std::filesystem::path& path);

}  // namespace vcsc
