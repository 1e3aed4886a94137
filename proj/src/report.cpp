#include "vcsc/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vcsc/csv.hpp"
#include "vcsc/error.hpp"

namespace vcsc {

namespace {

constexpr const char* kStarsNote = "*, ** and *** mark |z| > 1.645, 1.96 and 2.576 (10%, 5% and 1% levels).";

std::string model_header(const std::vector<ModelResult>& models) {
  std::string line;
  for (const auto& m : models) line += "\tModel " + std::to_string(m.spec.id);
  return line + "\n";
}

/// Model notes for anything other than a clean converged fit.
std::string model_notes(const std::vector<ModelResult>& models) {
  std::string notes;
  for (const auto& m : models) {
    const std::string tag = "Model " + std::to_string(m.spec.id) + ": ";
    if (!m.fit) {
      notes += tag + "not estimated (" + m.failure + ")\n";
      continue;
    }
    if (!m.fit->converged) notes += tag + "did not converge (" + m.fit->message + ")\n";
    if (!m.fit->se_reliable) notes += tag + "standard errors UNRELIABLE (Hessian not positive definite)\n";
  }
  return notes;
}

std::string cell(const ModelResult& m, const std::string& name, bool present) {
  if (!present) return "";
  if (!m.fit) return "NA";
  const auto* p = m.fit->find(name);
  return p != nullptr ? format_estimate(*p) : "";
}

}  // namespace

SampleAccounting sample_accounting(const EventLog& log,
                                   std::vector<std::pair<ProjectionMode, std::size_t>> network_firms) {
  SampleAccounting s;
  s.firms = log.firms.size();
  s.companies = log.companies.size();
  s.investment_events = log.investments.size();
  s.exit_events = log.exits.size();
  s.network_firms = std::move(network_firms);
  bool any = false;
  auto widen = [&](const Date& d) {
    s.first_year = any ? std::min(s.first_year, d.year) : d.year;
    s.last_year = any ? std::max(s.last_year, d.year) : d.year;
    any = true;
  };
  for (const auto& e : log.investments) widen(e.date);
  for (const auto& e : log.exits) widen(e.date);
  return s;
}

std::string group_thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string format_estimate(const ParameterEstimate& p) {
  std::string s = csv::format_fixed(p.estimate, 3);
  if (p.fixed) return s;
  if (!std::isfinite(p.z)) return s + " (NA)";
  return s + p.stars + " (" + csv::format_fixed(p.z, 3) + ")";
}

std::string render_sample_table(const SampleAccounting& s) {
  std::ostringstream out;
  out << "Sample period\t";
  if (s.investment_events > 0)
    out << s.first_year << " to " << s.last_year;
  out << "\n";
  out << "VC firms\t" << group_thousands(s.firms) << "\n";
  out << "Enterprises with VC investment\t" << group_thousands(s.companies) << "\n";
  out << "Investment events\t" << group_thousands(s.investment_events) << "\n";
  for (const auto& [mode, count] : s.network_firms) {
    out << "VC firms in joint investment networks";
    if (s.network_firms.size() > 1) out << " (" << to_string(mode) << ")";
    out << "\t" << group_thousands(count) << "\n";
  }
  out << "Disclosed exit events\t" << group_thousands(s.exit_events) << "\n";
  return out.str();
}

std::string render_rejections(const EventLog& log) {
  std::ostringstream out;
  out << "reason,count\n";
  for (const auto& [reason, count] : log.rejected_counts) out << to_string(reason) << ',' << count << '\n';
  return out.str();
}

std::string render_descriptive_table(const DescriptiveTable& table, const std::vector<Indicator>& rows) {
  std::ostringstream out;
  out << "\tMean\tMedian\tStd. dev.\tMin\tMax\tQ1\tQ3\n";
  for (auto ind : rows) {
    out << label(ind);
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const DescriptiveStats& d) { return d.label == column_name(ind); });
    if (it != table.end()) {
      for (double v : {it->mean, it->median, it->std_dev, it->min, it->max, it->q1, it->q3})
        out << '\t' << csv::format_fixed(v, 3);
    } else {
      out << std::string(7, '\t');
    }
    out << '\n';
  }
  return out.str();
}

std::string render_loading_table(const std::vector<ModelResult>& models, ProjectionMode mode) {
  std::ostringstream out;
  out << "Loadings (" << to_string(mode) << ")\n";
  out << model_header(models);
  auto block = [&](const char* title, const auto& indicators) {
    out << title << "\n";
    for (auto ind : indicators) {
      out << label(ind);
      for (const auto& m : models) out << '\t' << cell(m, "loading:" + std::string(column_name(ind)), m.spec.uses(ind));
      out << '\n';
    }
  };
  block("Social capital", kSocialCapitalIndicators);
  block("Performance", kPerformanceIndicators);
  out << kStarsNote << "\n" << model_notes(models);
  return out.str();
}

std::string render_variance_table(const std::vector<ModelResult>& models, ProjectionMode mode) {
  std::ostringstream out;
  out << "Covariances and variances (" << to_string(mode) << ")\n";
  out << model_header(models);
  out << "Social capital performance";
  for (const auto& m : models) out << '\t' << (m.fit ? csv::format_fixed(m.fit->latent_covariance, 3) : "NA");
  out << "\nVariance\n";
  auto row = [&](std::string_view row_label, const std::string& name, auto present) {
    out << row_label;
    for (const auto& m : models) out << '\t' << cell(m, name, present(m));
    out << '\n';
  };
  for (auto ind : kSocialCapitalIndicators)
    row(label(ind), "variance:" + std::string(column_name(ind)), [&](const ModelResult& m) { return m.spec.uses(ind); });
  for (auto ind : kPerformanceIndicators)
    row(label(ind), "variance:" + std::string(column_name(ind)), [&](const ModelResult& m) { return m.spec.uses(ind); });
  row("Social capital", "variance:social_capital", [](const ModelResult&) { return true; });
  row("Performance", "variance:performance", [](const ModelResult&) { return true; });
  out << kStarsNote << "\n" << model_notes(models);
  return out.str();
}

void write_metrics(std::ostream& out, const SyndicationGraph& g, const SocialCapitalMetrics& raw) {
  const NodeVector* cols[] = {&raw.weighted_degree, &raw.closeness, &raw.betweenness, &raw.structural_hole};
  std::vector<NodeVector> scaled;
  for (const auto* c : cols) scaled.push_back(c->values.empty() ? *c : scale_minmax(*c));
  out << "vc_id";
  for (const auto* c : cols) out << ',' << c->label;
  for (const auto* c : cols) out << ',' << c->label << "_scaled";
  out << '\n';
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    out << csv::escape(g.nodes()[i]);
    for (const auto* c : cols) out << ',' << csv::format_double(c->values[i]);
    for (const auto& c : scaled) out << ',' << csv::format_double(c.values[i]);
    out << '\n';
  }
}

void write_performance(std::ostream& out, const std::vector<PerformanceRow>& rows) {
  out << "vc_id";
  for (auto ind : kPerformanceIndicators) out << ',' << column_name(ind);
  out << '\n';
  for (const auto& r : rows) {
    out << csv::escape(r.vc_id) << ',' << csv::format_double(r.investment_total) << ','
        << csv::format_double(r.ipo_proportion) << ',' << csv::format_double(r.weighted_book_return) << ','
        << csv::format_double(r.weighted_irr) << ',' << csv::format_double(r.investment_exited) << ','
        << csv::format_double(r.exit_ratio) << '\n';
  }
}

void write_indicator_matrix(std::ostream& out, const IndicatorMatrix& m) {
  out << "vc_id";
  for (auto ind : m.columns) out << ',' << column_name(ind);
  out << '\n';
  for (Eigen::Index r = 0; r < m.data.rows(); ++r) {
    out << csv::escape(m.row_ids[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < m.data.cols(); ++c) out << ',' << csv::format_double(m.data(r, c));
    out << '\n';
  }
}

IndicatorMatrix read_indicator_matrix(std::istream& in) {
  std::string line;
  if (!csv::next_line(in, line)) throw Error(ErrorCode::Io, "indicator file has no header");
  const auto header = csv::split_record(line);
  if (header.empty() || csv::trim(header[0]) != "vc_id") throw Error(ErrorCode::Io, "indicator header must start with vc_id");
  IndicatorMatrix m;
  for (std::size_t k = 1; k < header.size(); ++k) {
    const auto ind = indicator_from_column(csv::trim(header[k]));
    if (!ind) throw Error(ErrorCode::Io, "unknown indicator column '" + header[k] + "'");
    m.columns.push_back(*ind);
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (csv::next_line(in, line)) {
    ++line_no;
    const auto fields = csv::split_record(line);
    if (fields.size() != header.size())
      throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " fields");
    m.row_ids.push_back(csv::trim(fields[0]));
    std::vector<double> row;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto v = csv::parse_double(csv::trim(fields[k]));
      if (!v) throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": bad number '" + fields[k] + "'");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  m.data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.columns.size(); ++c)
      m.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

IndicatorMatrix load_indicator_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open indicator file '" + path.string() + "'");
  return read_indicator_matrix(in);
}

}  // namespace vcsc
