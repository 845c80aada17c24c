#include "detem/beta_gauss.hpp"

#include <cmath>

#include "detem/errors.hpp"
#include "detem/rng.hpp"

namespace detem {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double log_sum_exp_mean(const Eigen::VectorXd& logv) {
  const double m = logv.maxCoeff();
  if (!std::isfinite(m)) return m;  // all -inf
  double s = 0.0;
  for (int i = 0; i < logv.size(); ++i) s += std::exp(logv[i] - m);
  return m + std::log(s / logv.size());
}
}  // namespace

void BetaGaussParams1D::validate() const {
  if (!(alpha > 0.0)) throw InvalidConfig("alpha must be positive");
  if (!(sigma2 > 0.0)) throw InvalidConfig("sigma^2 must be positive");
  if (!std::isfinite(lambda)) throw InvalidConfig("lambda must be finite");
}

Eigen::VectorXd BetaGaussParams1D::pack() const {
  Eigen::VectorXd theta(3);
  theta << alpha, lambda, sigma2;
  return theta;
}

BetaGaussParams1D BetaGaussParams1D::unpack(const Eigen::VectorXd& theta) {
  if (theta.size() != 3) throw DimensionMismatch("expected packed length 3");
  return {theta[0], theta[1], theta[2]};
}

void BetaGaussParams2D::validate() const {
  if (!(alpha1 > 0.0 && alpha2 > 0.0)) throw InvalidConfig("alphas must be positive");
  if (!(sigma2_1 > 0.0 && sigma2_2 > 0.0)) throw InvalidConfig("sigma^2 must be positive");
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2))
    throw InvalidConfig("lambdas must be finite");
}

Eigen::VectorXd BetaGaussParams2D::pack() const {
  Eigen::VectorXd theta(6);
  theta << alpha1, alpha2, lambda1, lambda2, sigma2_1, sigma2_2;
  return theta;
}

BetaGaussParams2D BetaGaussParams2D::unpack(const Eigen::VectorXd& theta) {
  if (theta.size() != 6) throw DimensionMismatch("expected packed length 6");
  return {theta[0], theta[1], theta[2], theta[3], theta[4], theta[5]};
}

double bg1d_log_complete_likelihood(const BetaGaussParams1D& params, double z, double x) {
  const double prior = params.alpha == 1.0 ? 0.0 : (params.alpha - 1.0) * std::log(z);
  const double r = x - params.lambda * z;
  return std::log(params.alpha) + prior - 0.5 * (kLog2Pi + std::log(params.sigma2)) -
         r * r / (2.0 * params.sigma2);
}

double bg2d_log_complete_likelihood(const BetaGaussParams2D& params, double z1, double z2,
                                    double x1, double x2) {
  const double prior1 = params.alpha1 == 1.0 ? 0.0 : (params.alpha1 - 1.0) * std::log(z1);
  const double prior2 = params.alpha2 == 1.0 ? 0.0 : (params.alpha2 - 1.0) * std::log(z2);
  const double r1 = x1 - params.lambda1 * z1 - z2;
  const double r2 = x2 - z1 - params.lambda2 * z2;
  return std::log(params.alpha1) + std::log(params.alpha2) + prior1 + prior2 -
         0.5 * (2.0 * kLog2Pi + std::log(params.sigma2_1) + std::log(params.sigma2_2)) -
         r1 * r1 / (2.0 * params.sigma2_1) - r2 * r2 / (2.0 * params.sigma2_2);
}

double bg_grid_node(int k, int n) {
  return k == 0 ? kBgZeroOffset / n : static_cast<double>(k) / n;
}

Dataset bg1d_simulate(const BetaGaussParams1D& params, int n_obs, std::uint64_t seed) {
  if (n_obs < 1) throw InvalidConfig("need at least one observation");
  params.validate();
  CounterRng rng(seed);
  Dataset data;
  data.x.resize(n_obs, 1);
  const double sigma = std::sqrt(params.sigma2);
  for (int i = 0; i < n_obs; ++i) {
    const double z = rng.beta_alpha_one(params.alpha);
    data.x(i, 0) = params.lambda * z + sigma * rng.normal();
  }
  return data;
}

Dataset bg2d_simulate(const BetaGaussParams2D& params, int n_obs, std::uint64_t seed) {
  if (n_obs < 1) throw InvalidConfig("need at least one observation");
  params.validate();
  CounterRng rng(seed);
  Dataset data;
  data.x.resize(n_obs, 2);
  const double s1 = std::sqrt(params.sigma2_1);
  const double s2 = std::sqrt(params.sigma2_2);
  for (int i = 0; i < n_obs; ++i) {
    const double z1 = rng.beta_alpha_one(params.alpha1);
    const double z2 = rng.beta_alpha_one(params.alpha2);
    data.x(i, 0) = params.lambda1 * z1 + z2 + s1 * rng.normal();
    data.x(i, 1) = z1 + params.lambda2 * z2 + s2 * rng.normal();
  }
  return data;
}

Eigen::VectorXd BetaGauss1DModel::m_step(const Eigen::VectorXd& s) const {
  if (s.size() != 4) throw DimensionMismatch("expected 4 sufficient statistics");
  if (!(s[0] < 0.0)) throw DegenerateStatistics("E[ln z] must be negative");
  if (s[1] == 0.0) throw DegenerateStatistics("E[z^2] vanished");
  BetaGaussParams1D params;
  params.alpha = -1.0 / s[0];
  params.lambda = s[2] / s[1];
  params.sigma2 = s[3] - 2.0 * params.lambda * s[2] + params.lambda * params.lambda * s[1];
  if (!(params.sigma2 > 0.0)) throw DegenerateStatistics("sigma^2 estimate not positive");
  return params.pack();
}

bool BetaGauss1DModel::in_param_space(const Eigen::VectorXd& theta) const {
  return theta.size() == 3 && theta.allFinite() && theta[0] > 0.0 && theta[2] > 0.0;
}

double BetaGauss1DModel::neg_log_likelihood(const Eigen::VectorXd& theta,
                                            const Dataset& data) const {
  const BetaGaussParams1D params = BetaGaussParams1D::unpack(theta);
  const int n = nll_grid_;
  Eigen::VectorXd logh(n);
  double nll = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    const double x = data.x(i, 0);
    for (int k = 0; k < n; ++k) logh[k] = bg1d_log_complete_likelihood(params, bg_grid_node(k, n), x);
    nll -= log_sum_exp_mean(logh);  // ln( (1/n) sum h ) ~ ln g
  }
  return nll;
}

Eigen::VectorXd BetaGauss2DModel::m_step(const Eigen::VectorXd& s) const {
  if (s.size() != 11) throw DimensionMismatch("expected 11 sufficient statistics");
  if (!(s[0] < 0.0) || !(s[1] < 0.0)) throw DegenerateStatistics("E[ln z] must be negative");
  if (s[2] == 0.0 || s[3] == 0.0) throw DegenerateStatistics("E[z^2] vanished");
  BetaGaussParams2D params;
  params.alpha1 = -1.0 / s[0];
  params.alpha2 = -1.0 / s[1];
  params.lambda1 = (s[5] - s[4]) / s[2];
  params.lambda2 = (s[6] - s[4]) / s[3];
  const double l1 = params.lambda1;
  const double l2 = params.lambda2;
  params.sigma2_1 = s[9] + l1 * l1 * s[2] + s[3] - 2.0 * l1 * s[5] - 2.0 * s[7] + 2.0 * l1 * s[4];
  params.sigma2_2 = s[10] + l2 * l2 * s[3] + s[2] - 2.0 * l2 * s[6] - 2.0 * s[8] + 2.0 * l2 * s[4];
  if (!(params.sigma2_1 > 0.0) || !(params.sigma2_2 > 0.0))
    throw DegenerateStatistics("sigma^2 estimate not positive");
  return params.pack();
}

bool BetaGauss2DModel::in_param_space(const Eigen::VectorXd& theta) const {
  return theta.size() == 6 && theta.allFinite() && theta[0] > 0.0 && theta[1] > 0.0 &&
         theta[4] > 0.0 && theta[5] > 0.0;
}

double BetaGauss2DModel::neg_log_likelihood(const Eigen::VectorXd& theta,
                                            const Dataset& data) const {
  const BetaGaussParams2D params = BetaGaussParams2D::unpack(theta);
  const int n = nll_grid_;
  Eigen::VectorXd logh(n * n);
  double nll = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    const double x1 = data.x(i, 0);
    const double x2 = data.x(i, 1);
    int at = 0;
    for (int k1 = 0; k1 < n; ++k1) {
      const double z1 = bg_grid_node(k1, n);
      for (int k2 = 0; k2 < n; ++k2)
        logh[at++] = bg2d_log_complete_likelihood(params, z1, bg_grid_node(k2, n), x1, x2);
    }
    nll -= log_sum_exp_mean(logh);
  }
  return nll;
}

}  // namespace detem
