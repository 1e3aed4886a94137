#include "vcsc/sem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "vcsc/error.hpp"
#include "vcsc/optimizer.hpp"

namespace vcsc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Loading matrix (p x 2) with the fixed unit loadings in place.
Eigen::MatrixXd loading_matrix(const ModelSpec& spec, const SemParams& par) {
  const auto px = static_cast<Eigen::Index>(spec.px());
  const auto py = static_cast<Eigen::Index>(spec.py());
  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(px + py, 2);
  lambda(0, 0) = 1.0;
  lambda.block(1, 0, px - 1, 1) = par.lambda_x;
  lambda(px, 1) = 1.0;
  lambda.block(px + 1, 1, py - 1, 1) = par.lambda_y;
  return lambda;
}

Eigen::Matrix2d latent_covariance_matrix(const SemParams& par) {
  Eigen::Matrix2d phi;
  phi << par.phi, par.gamma * par.phi, par.gamma * par.phi, par.gamma * par.gamma * par.phi + par.psi;
  return phi;
}

void check_sizes(const ModelSpec& spec, const SemParams& par) {
  if (spec.px() < 1 || spec.py() < 1) throw Error(ErrorCode::InvalidModel, "each latent needs an indicator");
  if (par.lambda_x.size() != static_cast<Eigen::Index>(spec.px() - 1) ||
      par.lambda_y.size() != static_cast<Eigen::Index>(spec.py() - 1) ||
      par.theta_x.size() != static_cast<Eigen::Index>(spec.px()) ||
      par.theta_y.size() != static_cast<Eigen::Index>(spec.py()))
    throw Error(ErrorCode::InvalidParam, "parameter sizes do not match model " + std::to_string(spec.id));
}

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

std::string_view label(Indicator ind) {
  switch (ind) {
    case Indicator::WeightedDegree: return "Weighted degree";
    case Indicator::Closeness: return "Closeness";
    case Indicator::Betweenness: return "Betweenness";
    case Indicator::StructuralHole: return "Structural hole";
    case Indicator::InvestmentTotal: return "Investment (total)";
    case Indicator::IpoProportion: return "IPO proportion";
    case Indicator::WeightedBookReturn: return "Weighted book return";
    case Indicator::WeightedIrr: return "Weighted IRR";
    case Indicator::InvestmentExited: return "Investment exited";
    case Indicator::ExitRatio: return "Exit ratio";
  }
  return "";
}

std::string_view column_name(Indicator ind) {
  switch (ind) {
    case Indicator::WeightedDegree: return "weighted_degree";
    case Indicator::Closeness: return "closeness";
    case Indicator::Betweenness: return "betweenness";
    case Indicator::StructuralHole: return "structural_hole";
    case Indicator::InvestmentTotal: return "investment_total";
    case Indicator::IpoProportion: return "ipo_proportion";
    case Indicator::WeightedBookReturn: return "weighted_book_return";
    case Indicator::WeightedIrr: return "weighted_irr";
    case Indicator::InvestmentExited: return "investment_exited";
    case Indicator::ExitRatio: return "exit_ratio";
  }
  return "";
}

std::optional<Indicator> indicator_from_column(std::string_view name) {
  for (auto ind : kSocialCapitalIndicators)
    if (column_name(ind) == name) return ind;
  for (auto ind : kPerformanceIndicators)
    if (column_name(ind) == name) return ind;
  return std::nullopt;
}

bool is_social_capital(Indicator ind) {
  return std::find(std::begin(kSocialCapitalIndicators), std::end(kSocialCapitalIndicators), ind) !=
         std::end(kSocialCapitalIndicators);
}

std::vector<Indicator> ModelSpec::observed() const {
  std::vector<Indicator> out = sc_indicators;
  out.insert(out.end(), perf_indicators.begin(), perf_indicators.end());
  return out;
}

bool ModelSpec::uses(Indicator ind) const {
  const auto obs = observed();
  return std::find(obs.begin(), obs.end(), ind) != obs.end();
}

ModelSpec make_model(int id, std::vector<Indicator> sc, std::vector<Indicator> perf) {
  if (sc.size() < 2 || perf.size() < 2)
    throw Error(ErrorCode::InvalidModel, "each latent needs at least two indicators");
  for (auto ind : sc)
    if (!is_social_capital(ind))
      throw Error(ErrorCode::InvalidModel, std::string(label(ind)) + " is not a social-capital indicator");
  for (auto ind : perf)
    if (is_social_capital(ind))
      throw Error(ErrorCode::InvalidModel, std::string(label(ind)) + " is not a performance indicator");
  ModelSpec spec{id, std::move(sc), std::move(perf)};
  auto obs = spec.observed();
  std::sort(obs.begin(), obs.end());
  if (std::adjacent_find(obs.begin(), obs.end()) != obs.end())
    throw Error(ErrorCode::InvalidModel, "duplicate indicator");
  return spec;
}

ModelSpec build_model(int id) {
  std::vector<Indicator> sc(std::begin(kSocialCapitalIndicators), std::end(kSocialCapitalIndicators));
  std::vector<Indicator> perf(std::begin(kPerformanceIndicators), std::end(kPerformanceIndicators));
  auto drop = [](std::vector<Indicator>& v, Indicator ind) { v.erase(std::remove(v.begin(), v.end(), ind), v.end()); };
  switch (id) {
    case 1: break;
    case 2: drop(sc, Indicator::StructuralHole); break;
    case 3:
      drop(perf, Indicator::InvestmentTotal);
      drop(perf, Indicator::InvestmentExited);
      break;
    case 4:
      drop(sc, Indicator::StructuralHole);
      drop(perf, Indicator::InvestmentTotal);
      drop(perf, Indicator::InvestmentExited);
      break;
    default: throw Error(ErrorCode::InvalidModel, "model id must be 1-4, got " + std::to_string(id));
  }
  return make_model(id, std::move(sc), std::move(perf));
}

SemParams uniform_params(const ModelSpec& spec, double loading, double gamma, double phi, double psi,
                         double error_var) {
  SemParams p;
  p.lambda_x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(spec.px() - 1), loading);
  p.lambda_y = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(spec.py() - 1), loading);
  p.gamma = gamma;
  p.phi = phi;
  p.psi = psi;
  p.theta_x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(spec.px()), error_var);
  p.theta_y = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(spec.py()), error_var);
  return p;
}

IndicatorMatrix IndicatorMatrix::select(const std::vector<Indicator>& wanted) const {
  IndicatorMatrix out;
  out.row_ids = row_ids;
  out.columns = wanted;
  out.data.resize(data.rows(), static_cast<Eigen::Index>(wanted.size()));
  for (std::size_t k = 0; k < wanted.size(); ++k) {
    const auto it = std::find(columns.begin(), columns.end(), wanted[k]);
    if (it == columns.end())
      throw Error(ErrorCode::InvalidArgument, "indicator matrix lacks column " + std::string(column_name(wanted[k])));
    out.data.col(static_cast<Eigen::Index>(k)) = data.col(it - columns.begin());
  }
  return out;
}

Eigen::MatrixXd sample_covariance(const IndicatorMatrix& m) {
  const Eigen::Index n = m.data.rows();
  const Eigen::Index p = m.data.cols();
  if (n <= p)
    throw Error(ErrorCode::RankDeficient,
                std::to_string(n) + " rows for " + std::to_string(p) + " indicators (need more rows than indicators)");
  const Eigen::RowVectorXd mean = m.data.colwise().mean();
  const Eigen::MatrixXd centered = m.data.rowwise() - mean;
  Eigen::MatrixXd s = (centered.transpose() * centered) / static_cast<double>(n - 1);
  s = 0.5 * (s + s.transpose());
  for (Eigen::Index j = 0; j < p; ++j) {
    if (centered.col(j).cwiseAbs().maxCoeff() == 0.0) {
      const std::string name = static_cast<std::size_t>(j) < m.columns.size()
                                   ? std::string(column_name(m.columns[static_cast<std::size_t>(j)]))
                                   : std::to_string(j);
      throw Error(ErrorCode::ZeroVariance, "column " + name + " is constant");
    }
  }
  return s;
}

Eigen::MatrixXd implied_covariance(const ModelSpec& spec, const SemParams& par) {
  check_sizes(spec, par);
  const bool finite = std::isfinite(par.gamma) && std::isfinite(par.phi) && std::isfinite(par.psi) &&
                      all_finite(par.lambda_x) && all_finite(par.lambda_y) && all_finite(par.theta_x) &&
                      all_finite(par.theta_y);
  if (!finite) throw Error(ErrorCode::InvalidParam, "non-finite parameter");
  if (par.phi < 0.0 || par.psi < 0.0 || (par.theta_x.array() < 0.0).any() || (par.theta_y.array() < 0.0).any())
    throw Error(ErrorCode::InvalidParam, "negative variance");

  const Eigen::MatrixXd lambda = loading_matrix(spec, par);
  Eigen::MatrixXd sigma = lambda * latent_covariance_matrix(par) * lambda.transpose();
  const auto px = static_cast<Eigen::Index>(spec.px());
  for (Eigen::Index a = 0; a < px; ++a) sigma(a, a) += par.theta_x(a);
  for (Eigen::Index a = 0; a < par.theta_y.size(); ++a) sigma(px + a, px + a) += par.theta_y(a);
  return 0.5 * (sigma + sigma.transpose());
}

double fml(const Eigen::MatrixXd& s, const Eigen::MatrixXd& sigma) {
  if (s.rows() != sigma.rows() || s.cols() != sigma.cols() || s.rows() != s.cols())
    throw Error(ErrorCode::InvalidArgument, "S and Sigma must be square and of equal size");
  const Eigen::LLT<Eigen::MatrixXd> ls(s);
  const Eigen::LLT<Eigen::MatrixXd> lsig(sigma);
  if (ls.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "S is not positive definite");
  if (lsig.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "Sigma is not positive definite");
  const double logdet_sigma = 2.0 * lsig.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double logdet_s = 2.0 * ls.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double trace = lsig.solve(s).trace();
  return logdet_sigma + trace - logdet_s - static_cast<double>(s.rows());
}

Eigen::VectorXd pack(const ModelSpec& spec, const SemParams& par) {
  check_sizes(spec, par);
  const Eigen::Index fx = par.lambda_x.size(), fy = par.lambda_y.size();
  const Eigen::Index px = par.theta_x.size(), py = par.theta_y.size();
  Eigen::VectorXd t(fx + fy + 3 + px + py);
  t << par.lambda_x, par.lambda_y, par.gamma, std::log(par.phi), std::log(par.psi), par.theta_x.array().log().matrix(),
      par.theta_y.array().log().matrix();
  return t;
}

SemParams unpack(const ModelSpec& spec, const Eigen::VectorXd& t) {
  const auto fx = static_cast<Eigen::Index>(spec.px() - 1), fy = static_cast<Eigen::Index>(spec.py() - 1);
  const auto px = static_cast<Eigen::Index>(spec.px()), py = static_cast<Eigen::Index>(spec.py());
  if (t.size() != fx + fy + 3 + px + py) throw Error(ErrorCode::InvalidParam, "parameter vector has wrong length");
  SemParams par;
  Eigen::Index k = 0;
  par.lambda_x = t.segment(k, fx);
  k += fx;
  par.lambda_y = t.segment(k, fy);
  k += fy;
  par.gamma = t(k++);
  par.phi = std::exp(t(k++));
  par.psi = std::exp(t(k++));
  par.theta_x = t.segment(k, px).array().exp().matrix();
  k += px;
  par.theta_y = t.segment(k, py).array().exp().matrix();
  return par;
}

std::vector<std::string> free_parameter_names(const ModelSpec& spec) {
  std::vector<std::string> names;
  for (std::size_t a = 1; a < spec.px(); ++a) names.push_back("loading:" + std::string(column_name(spec.sc_indicators[a])));
  for (std::size_t a = 1; a < spec.py(); ++a)
    names.push_back("loading:" + std::string(column_name(spec.perf_indicators[a])));
  names.emplace_back("gamma");
  names.emplace_back("variance:social_capital");
  names.emplace_back("variance:performance");
  for (auto ind : spec.observed()) names.push_back("variance:" + std::string(column_name(ind)));
  return names;
}

double discrepancy(const ModelSpec& spec, const Eigen::MatrixXd& s, const Eigen::VectorXd& theta,
                   Eigen::VectorXd* grad) {
  const SemParams par = unpack(spec, theta);
  const Eigen::MatrixXd lambda = loading_matrix(spec, par);
  const Eigen::Matrix2d phi = latent_covariance_matrix(par);
  Eigen::MatrixXd sigma = lambda * phi * lambda.transpose();
  const auto px = static_cast<Eigen::Index>(spec.px());
  const auto py = static_cast<Eigen::Index>(spec.py());
  sigma.diagonal().head(px) += par.theta_x;
  sigma.diagonal().tail(py) += par.theta_y;

  const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const Eigen::Index p = sigma.rows();
  const Eigen::MatrixXd sigma_inv = llt.solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd l = llt.matrixL();
  const double logdet_sigma = 2.0 * l.diagonal().array().log().sum();
  const Eigen::LLT<Eigen::MatrixXd> ls(s);
  const double logdet_s = 2.0 * Eigen::MatrixXd(ls.matrixL()).diagonal().array().log().sum();
  const Eigen::MatrixXd sinv_s = sigma_inv * s;
  const double f = logdet_sigma + sinv_s.trace() - logdet_s - static_cast<double>(p);
  if (!std::isfinite(f)) return std::numeric_limits<double>::infinity();

  if (grad != nullptr) {
    // dF = tr(G dSigma) with G = Sigma^-1 - Sigma^-1 S Sigma^-1.
    Eigen::MatrixXd g = sigma_inv - sinv_s * sigma_inv;
    g = 0.5 * (g + g.transpose());
    const Eigen::MatrixXd gl_phi = g * lambda * phi;  // dF/dLambda = 2 G Lambda Phi
    const Eigen::Matrix2d m = lambda.transpose() * g * lambda;
    const double m01 = 0.5 * (m(0, 1) + m(1, 0));

    grad->resize(theta.size());
    Eigen::Index k = 0;
    for (Eigen::Index a = 1; a < px; ++a) (*grad)(k++) = 2.0 * gl_phi(a, 0);
    for (Eigen::Index a = 1; a < py; ++a) (*grad)(k++) = 2.0 * gl_phi(px + a, 1);
    (*grad)(k++) = 2.0 * par.phi * m01 + 2.0 * par.gamma * par.phi * m(1, 1);
    const double d_phi = m(0, 0) + 2.0 * par.gamma * m01 + par.gamma * par.gamma * m(1, 1);
    (*grad)(k++) = d_phi * par.phi;
    (*grad)(k++) = m(1, 1) * par.psi;
    for (Eigen::Index a = 0; a < px; ++a) (*grad)(k++) = g(a, a) * par.theta_x(a);
    for (Eigen::Index a = 0; a < py; ++a) (*grad)(k++) = g(px + a, px + a) * par.theta_y(a);
  }
  return f;
}

std::string significance_stars(double z) {
  const double a = std::abs(z);
  if (!std::isfinite(a)) return "";
  if (a > 2.576) return "***";
  if (a > 1.96) return "**";
  if (a > 1.645) return "*";
  return "";
}

const ParameterEstimate* SemFit::find(std::string_view name) const {
  for (const auto& p : parameters)
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

/// Central differences of the analytic gradient, symmetrized.
Eigen::MatrixXd numeric_hessian(const ModelSpec& spec, const Eigen::MatrixXd& s, const Eigen::VectorXd& theta) {
  const Eigen::Index q = theta.size();
  Eigen::MatrixXd h(q, q);
  Eigen::VectorXd gp(q), gm(q);
  for (Eigen::Index k = 0; k < q; ++k) {
    const double step = 1e-5 * std::max(1.0, std::abs(theta(k)));
    Eigen::VectorXd tp = theta, tm = theta;
    tp(k) += step;
    tm(k) -= step;
    discrepancy(spec, s, tp, &gp);
    discrepancy(spec, s, tm, &gm);
    h.col(k) = (gp - gm) / (2.0 * step);
  }
  return 0.5 * (h + h.transpose());
}

}  // namespace

SemFit fit(const Eigen::MatrixXd& s, const ModelSpec& spec, std::size_t n, const FitOptions& options) {
  if (spec.px() < 2 || spec.py() < 2)
    throw Error(ErrorCode::InvalidModel, "each latent needs at least two indicators");
  const auto p = static_cast<Eigen::Index>(spec.p());
  if (s.rows() != p || s.cols() != p)
    throw Error(ErrorCode::InvalidArgument, "S must be " + std::to_string(p) + "x" + std::to_string(p));
  if (n <= spec.p()) throw Error(ErrorCode::RankDeficient, "sample size must exceed indicator count");
  if (Eigen::LLT<Eigen::MatrixXd>(s).info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "sample covariance is not positive definite");

  Eigen::VectorXd start;
  if (options.start) {
    start = *options.start;
  } else {
    SemParams init;
    const auto px = static_cast<Eigen::Index>(spec.px());
    const auto py = static_cast<Eigen::Index>(spec.py());
    init.lambda_x = Eigen::VectorXd::Ones(px - 1);
    init.lambda_y = Eigen::VectorXd::Ones(py - 1);
    init.gamma = 0.1;
    init.phi = 0.5 * s(0, 0);
    init.psi = 0.5 * s(px, px);
    init.theta_x = 0.5 * s.diagonal().head(px);
    init.theta_y = 0.5 * s.diagonal().tail(py);
    start = pack(spec, init);
  }

  optim::BfgsOptions bopt;
  bopt.max_iterations = options.max_iterations;
  const auto objective = [&](const Eigen::VectorXd& t, Eigen::VectorXd* g) { return discrepancy(spec, s, t, g); };
  const optim::BfgsResult opt = optim::minimize_bfgs(objective, start, bopt);

  SemFit out;
  out.spec = spec;
  out.n = n;
  out.estimates = unpack(spec, opt.x);
  out.fml_value = opt.value;
  out.converged = opt.converged;
  out.iterations = opt.iterations;
  out.gradient_norm = opt.gradient.lpNorm<Eigen::Infinity>();
  out.message = opt.message;
  out.latent_covariance = out.estimates.gamma * out.estimates.phi;

  // Covariance of the unconstrained estimates, then the delta method for the
  // log-parameterized variances: se(exp(u)) = exp(u) se(u).
  const Eigen::MatrixXd hessian = numeric_hessian(spec, s, opt.x);
  const Eigen::Index q = opt.x.size();
  Eigen::VectorXd se_u = Eigen::VectorXd::Constant(q, kNaN);
  const Eigen::LLT<Eigen::MatrixXd> hl(hessian);
  if (hl.info() == Eigen::Success && hessian.allFinite()) {
    const Eigen::MatrixXd cov = (2.0 / static_cast<double>(n - 1)) * hl.solve(Eigen::MatrixXd::Identity(q, q));
    se_u = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  } else {
    out.se_reliable = false;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(hessian);
    if (lu.isInvertible()) {
      const Eigen::MatrixXd cov = (2.0 / static_cast<double>(n - 1)) * lu.inverse();
      for (Eigen::Index k = 0; k < q; ++k) se_u(k) = cov(k, k) > 0.0 ? std::sqrt(cov(k, k)) : kNaN;
    }
  }

  const auto names = free_parameter_names(spec);
  const Eigen::Index first_log = static_cast<Eigen::Index>(spec.px() + spec.py() - 2) + 1;
  auto fixed_record = [](Indicator ind) {
    return ParameterEstimate{"loading:" + std::string(column_name(ind)), 1.0, kNaN, kNaN, "", true};
  };
  out.parameters.push_back(fixed_record(spec.sc_indicators.front()));
  for (Eigen::Index k = 0; k < q; ++k) {
    if (k == static_cast<Eigen::Index>(spec.px() - 1)) out.parameters.push_back(fixed_record(spec.perf_indicators.front()));
    const bool log_scale = k >= first_log;
    const double est = log_scale ? std::exp(opt.x(k)) : opt.x(k);
    const double se = log_scale ? est * se_u(k) : se_u(k);
    const double z = est / se;
    out.parameters.push_back({names[static_cast<std::size_t>(k)], est, se, z, significance_stars(z), false});
  }
  return out;
}

IndicatorMatrix simulate(const ModelSpec& spec, const SemParams& params, std::size_t n, std::uint64_t seed) {
  if (params.phi <= 0.0 || params.psi <= 0.0 || (params.theta_x.array() <= 0.0).any() ||
      (params.theta_y.array() <= 0.0).any())
    throw Error(ErrorCode::InvalidParam, "variances must be strictly positive");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  const Eigen::MatrixXd sigma = implied_covariance(spec, params);
  const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::InvalidParam, "implied covariance is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();

  const auto p = sigma.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  IndicatorMatrix m;
  m.columns = spec.observed();
  m.data.resize(static_cast<Eigen::Index>(n), p);
  m.row_ids.reserve(n);
  Eigen::VectorXd z(p);
  for (std::size_t r = 0; r < n; ++r) {
    for (Eigen::Index k = 0; k < p; ++k) z(k) = normal(rng);
    m.data.row(static_cast<Eigen::Index>(r)) = (l * z).transpose();
    m.row_ids.push_back("sim" + std::to_string(r));
  }
  return m;
}

std::string serialize_fit(const SemFit& f, ProjectionMode mode) {
  using nlohmann::ordered_json;
  auto number = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
  ordered_json doc;
  doc["model"] = f.spec.id;
  doc["mode"] = std::string(to_string(mode));
  doc["n"] = f.n;
  doc["p"] = f.spec.p();
  doc["fml_value"] = number(f.fml_value);
  doc["converged"] = f.converged;
  doc["iterations"] = f.iterations;
  doc["gradient_norm"] = number(f.gradient_norm);
  doc["se_reliable"] = f.se_reliable;
  doc["latent_covariance"] = number(f.latent_covariance);
  doc["message"] = f.message;
  auto& params = doc["parameters"] = ordered_json::array();
  for (const auto& p : f.parameters) {
    params.push_back({{"name", p.name},
                      {"estimate", number(p.estimate)},
                      {"se", number(p.se)},
                      {"z", number(p.z)},
                      {"stars", p.stars},
                      {"fixed", p.fixed}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace vcsc
