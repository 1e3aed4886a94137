#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vcsc/network.hpp"

namespace vcsc {

enum class Indicator {
  WeightedDegree,
  Closeness,
  Betweenness,
  StructuralHole,
  InvestmentTotal,
  IpoProportion,
  WeightedBookReturn,
  WeightedIrr,
  InvestmentExited,
  ExitRatio,
};

inline constexpr Indicator kSocialCapitalIndicators[] = {Indicator::WeightedDegree, Indicator::Closeness,
                                                         Indicator::Betweenness, Indicator::StructuralHole};
inline constexpr Indicator kPerformanceIndicators[] = {
    Indicator::InvestmentTotal, Indicator::IpoProportion,    Indicator::WeightedBookReturn,
    Indicator::WeightedIrr,     Indicator::InvestmentExited, Indicator::ExitRatio};

/// Row label used in rendered tables, e.g. "Investment (total)".
std::string_view label(Indicator ind);
/// Column name used in delimited exports, e.g. "investment_total".
std::string_view column_name(Indicator ind);
std::optional<Indicator> indicator_from_column(std::string_view name);
bool is_social_capital(Indicator ind);

/// Two latents: Social Capital measured by `sc_indicators`, Performance by
/// `perf_indicators`, and Performance = gamma * SocialCapital + zeta. The first
/// indicator of each latent carries a loading fixed at 1.
struct ModelSpec {
  int id = 0;
  std::vector<Indicator> sc_indicators;
  std::vector<Indicator> perf_indicators;

  std::size_t px() const { return sc_indicators.size(); }
  std::size_t py() const { return perf_indicators.size(); }
  std::size_t p() const { return px() + py(); }
  /// sc indicators followed by perf indicators; the row/column order of S and Sigma.
  std::vector<Indicator> observed() const;
  bool uses(Indicator ind) const;
};

/// Model 1: all ten indicators. Model 2 drops the structural hole; Model 3
/// drops investment total and investment exited; Model 4 drops all three.
/// Throws INVALID_MODEL for any other id.
ModelSpec build_model(int id);

/// Validates indicator membership, duplicates and the two-indicator minimum.
ModelSpec make_model(int id, std::vector<Indicator> sc, std::vector<Indicator> perf);

struct SemParams {
  Eigen::VectorXd lambda_x;  // free social-capital loadings, size px-1
  Eigen::VectorXd lambda_y;  // free performance loadings, size py-1
  double gamma = 0.0;
  double phi = 1.0;          // Var(SocialCapital)
  double psi = 1.0;          // Var(zeta)
  Eigen::VectorXd theta_x;   // error variances, size px
  Eigen::VectorXd theta_y;   // error variances, size py
};

/// Every free loading set to `loading` and every error variance to `error_var`.
SemParams uniform_params(const ModelSpec& spec, double loading, double gamma, double phi, double psi,
                         double error_var);

/// Observations in rows, one column per indicator.
struct IndicatorMatrix {
  std::vector<std::string> row_ids;
  std::vector<Indicator> columns;
  Eigen::MatrixXd data;

  /// Columns reordered to `wanted`; throws INVALID_ARGUMENT if one is missing.
  IndicatorMatrix select(const std::vector<Indicator>& wanted) const;
};

/// Unbiased covariance (divisor n-1). Throws ZERO_VARIANCE for a constant
/// column and RANK_DEFICIENT when rows <= columns.
Eigen::MatrixXd sample_covariance(const IndicatorMatrix& m);

/// Sigma = Lambda Phi Lambda^T + Theta with
///   Phi = [[phi, gamma phi], [gamma phi, gamma^2 phi + psi]].
/// Throws INVALID_PARAM on negative or non-finite variances or size mismatch.
Eigen::MatrixXd implied_covariance(const ModelSpec& spec, const SemParams& params);

/// F = ln|Sigma| + tr(S Sigma^-1) - ln|S| - p. Throws NOT_PD when either
/// matrix is not symmetric positive definite.
double fml(const Eigen::MatrixXd& s, const Eigen::MatrixXd& sigma);

/// Unconstrained parameter vector: free loadings (x then y), gamma, then the
/// logs of phi, psi, theta_x, theta_y.
Eigen::VectorXd pack(const ModelSpec& spec, const SemParams& params);
SemParams unpack(const ModelSpec& spec, const Eigen::VectorXd& theta);
std::vector<std::string> free_parameter_names(const ModelSpec& spec);

/// F(theta) and its analytic gradient over the unconstrained vector. Returns
/// +infinity if Sigma(theta) is not positive definite.
double discrepancy(const ModelSpec& spec, const Eigen::MatrixXd& s, const Eigen::VectorXd& theta,
                   Eigen::VectorXd* grad);

struct ParameterEstimate {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;  // NaN for fixed parameters
  double z = 0.0;   // NaN for fixed parameters
  std::string stars;
  bool fixed = false;
};

struct SemFit {
  ModelSpec spec;
  SemParams estimates;
  /// Fixed loadings first per latent, then free loadings, gamma, phi, psi and
  /// error variances in observed order.
  std::vector<ParameterEstimate> parameters;
  double latent_covariance = 0.0;  // gamma * phi
  double fml_value = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool se_reliable = true;
  std::size_t n = 0;
  std::string message;

  const ParameterEstimate* find(std::string_view name) const;
};

struct FitOptions {
  std::optional<Eigen::VectorXd> start;  // unconstrained; default start rule otherwise
  int max_iterations = 10000;
};

/// "*" for |z| > 1.645, "**" for > 1.96, "***" for > 2.576, else "".
std::string significance_stars(double z);

/// ML fit by BFGS on the unconstrained vector. Standard errors are
/// sqrt(diag((2/(n-1)) H^-1)) with H the finite-difference Hessian of F,
/// mapped to variances by the delta method. Non-convergence is reported in
/// the result, not thrown. Throws NOT_PD if S is not positive definite and
/// RANK_DEFICIENT if n <= p.
SemFit fit(const Eigen::MatrixXd& s, const ModelSpec& spec, std::size_t n, const FitOptions& options = {});

/// n rows from N(0, Sigma(params)) via the Cholesky factor of Sigma applied to
/// standard normal draws of a generator seeded with `seed`.
IndicatorMatrix simulate(const ModelSpec& spec, const SemParams& params, std::size_t n, std::uint64_t seed);

/// JSON document: model metadata plus one record per parameter.
std::string serialize_fit(const SemFit& fit, ProjectionMode mode);

}  // namespace vcsc
