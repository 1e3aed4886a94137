#include "vcsc/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vcsc/csv.hpp"
#include "vcsc/error.hpp"

namespace vcsc {

namespace {

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

template <typename Writer, typename... Args>
std::string to_text(Writer&& w, const Args&... args) {
  std::ostringstream out;
  w(out, args...);
  return out.str();
}

}  // namespace

Scaling parse_scaling(std::string_view text) {
  if (text == "minmax") return Scaling::MinMax;
  if (text == "none") return Scaling::None;
  throw Error(ErrorCode::InvalidArgument, "unknown scaling '" + std::string(text) + "'");
}

StructuralHoleForm parse_structural_hole_form(std::string_view text) {
  if (text == "constraint") return StructuralHoleForm::Constraint;
  if (text == "complement") return StructuralHoleForm::OneMinusConstraint;
  throw Error(ErrorCode::InvalidArgument, "unknown structural-hole form '" + std::string(text) + "'");
}

std::vector<int> parse_model_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& field : csv::split_record(text)) {
    const auto t = csv::trim(field);
    if (t.size() != 1 || t[0] < '1' || t[0] > '4')
      throw Error(ErrorCode::InvalidModel, "model ids must be 1-4, got '" + t + "'");
    const int id = t[0] - '0';
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidModel, "no models requested");
  std::sort(out.begin(), out.end());
  return out;
}

std::string mode_suffix(ProjectionMode mode) { return "_" + std::string(to_string(mode)); }

EventLog load_event_log(const std::filesystem::path& investments, const std::filesystem::path& exits) {
  return stage("ingest", [&] { return build_event_log(load_investments(investments), load_exits(exits)); });
}

SyndicationGraph build_network(const EventLog& log, ProjectionMode mode, std::size_t* projected_nodes) {
  const SyndicationGraph projected = project(build_bipartite(log, mode));
  if (projected_nodes != nullptr) *projected_nodes = projected.node_count();
  return remove_isolates(projected);
}

SocialCapitalMetrics pipeline_metrics(const SyndicationGraph& g, StructuralHoleForm form) {
  const std::size_t n = g.node_count();
  const NodeVector zeros{std::vector<double>(n, 0.0), "", false};
  SocialCapitalMetrics m;
  m.weighted_degree = weighted_degree(g);
  if (n >= 2) {
    m.closeness = closeness(g);
  } else {
    m.closeness = zeros;
    m.closeness.label = "closeness";
  }
  if (n >= 3) {
    m.betweenness = betweenness(g);
  } else {
    m.betweenness = zeros;
    m.betweenness.label = "betweenness";
  }
  m.structural_hole = constraint(g);
  if (form == StructuralHoleForm::OneMinusConstraint) m.structural_hole = one_minus(m.structural_hole);
  return m;
}

ModeAnalysis analyze_mode(const EventLog& log, ProjectionMode mode, StructuralHoleForm form, Scaling scaling) {
  ModeAnalysis a;
  a.mode = mode;
  a.network = stage("network", [&] { return build_network(log, mode, &a.projected_nodes); });
  a.metrics = stage("metrics", [&] { return pipeline_metrics(a.network, form); });
  a.performance = stage("perf", [&] { return performance_indicators(log, a.network.nodes()); });

  stage("describe", [&] {
    // Rows: network firms with exits, in vc_id order (both lists are sorted).
    const auto& nodes = a.network.nodes();
    const auto& rows = a.performance.rows;
    IndicatorMatrix& m = a.raw_indicators;
    m.columns.assign(std::begin(kSocialCapitalIndicators), std::end(kSocialCapitalIndicators));
    m.columns.insert(m.columns.end(), std::begin(kPerformanceIndicators), std::end(kPerformanceIndicators));
    m.data.resize(static_cast<Eigen::Index>(rows.size()), 10);
    std::size_t node = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      while (nodes[node] != rows[r].vc_id) ++node;
      const auto ri = static_cast<Eigen::Index>(r);
      m.row_ids.push_back(rows[r].vc_id);
      m.data.row(ri) << a.metrics.weighted_degree.values[node], a.metrics.closeness.values[node],
          a.metrics.betweenness.values[node], a.metrics.structural_hole.values[node], rows[r].investment_total,
          rows[r].ipo_proportion, rows[r].weighted_book_return, rows[r].weighted_irr, rows[r].investment_exited,
          rows[r].exit_ratio;
    }
    a.indicators = m;
    if (scaling == Scaling::MinMax && m.data.rows() > 0) {
      for (Eigen::Index c = 0; c < m.data.cols(); ++c) {
        const NodeVector col{std::vector<double>(m.data.col(c).begin(), m.data.col(c).end()), "", false};
        const NodeVector scaled = scale_minmax(col);
        for (Eigen::Index r = 0; r < m.data.rows(); ++r)
          a.indicators.data(r, c) = scaled.values[static_cast<std::size_t>(r)];
      }
    }
    return 0;
  });
  return a;
}

std::vector<ModelResult> fit_models(const IndicatorMatrix& indicators, const std::vector<int>& models) {
  std::vector<ModelResult> out;
  for (int id : models) {
    ModelResult r{build_model(id), std::nullopt, {}};
    try {
      const IndicatorMatrix sub = indicators.select(r.spec.observed());
      const Eigen::MatrixXd s = sample_covariance(sub);
      r.fit = fit(s, r.spec, static_cast<std::size_t>(sub.data.rows()));
    } catch (const Error& e) {
      r.failure = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

DescriptiveTable describe_indicators(const IndicatorMatrix& m) {
  DescriptiveTable table;
  if (m.data.rows() == 0) return table;
  for (std::size_t c = 0; c < m.columns.size(); ++c) {
    const auto col = m.data.col(static_cast<Eigen::Index>(c));
    const std::vector<double> values(col.begin(), col.end());
    table.push_back(describe_column(std::string(column_name(m.columns[c])), values));
  }
  return table;
}

FileMap ingest_files(const EventLog& log) {
  return {{"eventlog_investments.csv", to_text(write_investments, log.investments)},
          {"eventlog_exits.csv", to_text(write_exits, log.exits)},
          {"rejections.csv", render_rejections(log)}};
}

FileMap network_files(const ModeAnalysis& a) {
  return {{"edges" + mode_suffix(a.mode) + ".csv", to_text(write_edge_list, a.network)}};
}

FileMap metric_files(const ModeAnalysis& a) {
  return {{"metrics" + mode_suffix(a.mode) + ".csv", to_text(write_metrics, a.network, a.metrics)}};
}

FileMap performance_files(const ModeAnalysis& a) {
  return {{"performance" + mode_suffix(a.mode) + ".csv", to_text(write_performance, a.performance.rows)}};
}

FileMap describe_files(const IndicatorMatrix& indicators, ProjectionMode mode) {
  return {{"indicators" + mode_suffix(mode) + ".csv", to_text(write_indicator_matrix, indicators)},
          {"descriptive" + mode_suffix(mode) + ".txt",
           render_descriptive_table(describe_indicators(indicators), indicators.columns)}};
}

FileMap sem_files(const IndicatorMatrix& indicators, const std::vector<int>& models, ProjectionMode mode) {
  const auto results = stage("sem", [&] { return fit_models(indicators, models); });
  FileMap files;
  const std::string sfx = mode_suffix(mode);
  files["loadings" + sfx + ".txt"] = render_loading_table(results, mode);
  files["variances" + sfx + ".txt"] = render_variance_table(results, mode);
  for (const auto& r : results) {
    const std::string name = "sem_model" + std::to_string(r.spec.id) + sfx + ".json";
    if (r.fit) {
      files[name] = serialize_fit(*r.fit, mode);
    } else {
      nlohmann::ordered_json doc;
      doc["model"] = r.spec.id;
      doc["mode"] = std::string(to_string(mode));
      doc["estimated"] = false;
      doc["reason"] = r.failure;
      files[name] = doc.dump(2) + "\n";
    }
  }
  return files;
}

void write_files(const std::filesystem::path& dir, const FileMap& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  try {
    for (const auto& [name, content] : files) {
      const auto path = dir / name;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
      written.push_back(path);
      out << content;
      if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
    }
  } catch (...) {
    for (const auto& p : written) std::filesystem::remove(p, ec);
    throw;
  }
}

ReportBundle run_pipeline(const RunConfig& cfg) {
  if (cfg.models.empty()) throw StageError("config", "no models requested");
  if (cfg.modes.empty()) throw StageError("config", "no projection modes requested");

  const EventLog log = load_event_log(cfg.investments_path, cfg.exits_path);
  ReportBundle bundle;
  FileMap& files = bundle.files;
  files.merge(ingest_files(log));

  std::vector<std::pair<ProjectionMode, std::size_t>> network_counts;
  for (auto mode : cfg.modes) {
    const ModeAnalysis a = analyze_mode(log, mode, cfg.structural_hole_form, cfg.scaling);
    network_counts.emplace_back(mode, a.network.node_count());
    files.merge(network_files(a));
    files.merge(metric_files(a));
    files.merge(performance_files(a));
    files.merge(describe_files(a.indicators, mode));
    files.merge(sem_files(a.indicators, cfg.models, mode));
    const std::string sfx = mode_suffix(mode);
    bundle.descriptive_tables[mode] = files.at("descriptive" + sfx + ".txt");
    bundle.loading_tables[mode] = files.at("loadings" + sfx + ".txt");
    bundle.variance_tables[mode] = files.at("variances" + sfx + ".txt");
  }
  bundle.sample_table = render_sample_table(sample_accounting(log, network_counts));
  files["sample_accounting.txt"] = bundle.sample_table;

  nlohmann::ordered_json manifest;
  manifest["investments"] = cfg.investments_path.string();
  manifest["exits"] = cfg.exits_path.string();
  auto& modes = manifest["modes"] = nlohmann::ordered_json::array();
  for (auto m : cfg.modes) modes.push_back(std::string(to_string(m)));
  manifest["models"] = cfg.models;
  manifest["seed"] = cfg.seed;
  manifest["scaling"] = cfg.scaling == Scaling::MinMax ? "minmax" : "none";
  manifest["sh_form"] = cfg.structural_hole_form == StructuralHoleForm::Constraint ? "constraint" : "complement";
  files["run.json"] = manifest.dump(2) + "\n";

  stage("write", [&] {
    write_files(cfg.output_dir, files);
    return 0;
  });
  return bundle;
}

}  // namespace vcsc
