#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vcsc/ingest.hpp"
#include "vcsc/metrics.hpp"
#include "vcsc/network.hpp"
#include "vcsc/perfstats.hpp"
#include "vcsc/report.hpp"
#include "vcsc/sem.hpp"

namespace vcsc {

enum class Scaling { MinMax, None };

Scaling parse_scaling(std::string_view text);                   // "minmax" | "none"
StructuralHoleForm parse_structural_hole_form(std::string_view);  // "constraint" | "complement"
std::vector<int> parse_model_list(std::string_view text);         // "1,2,4"

struct RunConfig {
  std::filesystem::path investments_path;
  std::filesystem::path exits_path;
  std::vector<ProjectionMode> modes{ProjectionMode::SameRound};
  std::vector<int> models{1, 2, 3, 4};
  std::filesystem::path output_dir;
  std::uint64_t seed = 1;
  Scaling scaling = Scaling::MinMax;
  StructuralHoleForm structural_hole_form = StructuralHoleForm::Constraint;
};

/// A stage failure, tagged with the stage name.
class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& cause)
      : std::runtime_error("stage '" + stage + "' failed: " + cause), stage_(stage) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Network, indicators and sample for one projection mode.
struct ModeAnalysis {
  ProjectionMode mode = ProjectionMode::SameRound;
  std::size_t projected_nodes = 0;  // before isolate removal
  SyndicationGraph network;         // isolates removed
  SocialCapitalMetrics metrics;     // aligned to network.nodes()
  PerformanceResult performance;    // network firms with >= 1 exit
  IndicatorMatrix raw_indicators;   // SEM sample, all ten columns, unscaled
  IndicatorMatrix indicators;       // SEM input after scaling
};

EventLog load_event_log(const std::filesystem::path& investments, const std::filesystem::path& exits);

SyndicationGraph build_network(const EventLog& log, ProjectionMode mode, std::size_t* projected_nodes = nullptr);

/// Social-capital metrics for pipeline use: graphs too small for closeness or
/// betweenness get zeros there instead of an error.
SocialCapitalMetrics pipeline_metrics(const SyndicationGraph& g, StructuralHoleForm form);

ModeAnalysis analyze_mode(const EventLog& log, ProjectionMode mode, StructuralHoleForm form, Scaling scaling);

/// Fits every requested model on `indicators`; a model that cannot be
/// estimated (too few rows, constant column, singular S) is reported, not thrown.
std::vector<ModelResult> fit_models(const IndicatorMatrix& indicators, const std::vector<int>& models);

/// Descriptive table over the columns of an indicator matrix.
DescriptiveTable describe_indicators(const IndicatorMatrix& m);

using FileMap = std::map<std::string, std::string>;

/// Rendered files, keyed by file name relative to the output directory.
struct ReportBundle {
  std::string sample_table;
  std::map<ProjectionMode, std::string> descriptive_tables;
  std::map<ProjectionMode, std::string> loading_tables;
  std::map<ProjectionMode, std::string> variance_tables;
  FileMap files;
};

std::string mode_suffix(ProjectionMode mode);  // "_same-round"

FileMap ingest_files(const EventLog& log);
FileMap network_files(const ModeAnalysis& a);
FileMap metric_files(const ModeAnalysis& a);
FileMap performance_files(const ModeAnalysis& a);
FileMap describe_files(const IndicatorMatrix& indicators, ProjectionMode mode);
FileMap sem_files(const IndicatorMatrix& indicators, const std::vector<int>& models, ProjectionMode mode);

/// Writes all files or none: on failure any file already written is removed.
void write_files(const std::filesystem::path& dir, const FileMap& files);

/// ingest -> network -> metrics -> performance -> describe -> SEM, for each
/// mode; writes everything into cfg.output_dir. Deterministic in its inputs.
ReportBundle run_pipeline(const RunConfig& cfg);

}  // namespace vcsc
