#include "detem/gmm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "detem/errors.hpp"
#include "detem/rng.hpp"

namespace detem {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

struct ComponentCache {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double log_norm;  // ln pi_k - (p/2) ln 2pi - (1/2) ln det Sigma_k
};

std::vector<ComponentCache> make_cache(const GmmParams& params) {
  const int K = params.components();
  const int p = params.dim();
  std::vector<ComponentCache> cache(K);
  for (int k = 0; k < K; ++k) {
    cache[k].llt.compute(params.covs[k]);
    if (cache[k].llt.info() != Eigen::Success)
      throw SingularCovariance("covariance of component " + std::to_string(k) + " is not SPD");
    double half_log_det = 0.0;
    for (int j = 0; j < p; ++j) {
      const double l = cache[k].llt.matrixL()(j, j);
      if (!(l > 0.0) || !std::isfinite(l))
        throw SingularCovariance("numerically singular covariance in component " +
                                 std::to_string(k));
      half_log_det += std::log(l);
    }
    cache[k].log_norm = std::log(params.weights[k]) - 0.5 * p * kLog2Pi - half_log_det;
  }
  return cache;
}

double log_joint(const ComponentCache& c, const Eigen::VectorXd& centered) {
  const Eigen::VectorXd y = c.llt.matrixL().solve(centered);
  return c.log_norm - 0.5 * y.squaredNorm();
}

}  // namespace

void GmmParams::validate() const {
  const int K = components();
  if (K < 1) throw InvalidConfig("GMM needs at least one component");
  if (std::abs(weights.sum() - 1.0) > 1e-12) throw InvalidConfig("mixture weights must sum to 1");
  for (int k = 0; k < K; ++k) {
    if (!(weights[k] > 0.0 && weights[k] < 1.0) && K > 1)
      throw InvalidConfig("mixture weights must lie in (0,1)");
    if (!params_cov_ok(k)) throw InvalidConfig("covariance " + std::to_string(k) + " is not SPD");
  }
}

bool GmmParams::params_cov_ok(int k) const {
  const Eigen::MatrixXd& s = covs[k];
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + s.cwiseAbs().maxCoeff()))
    return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > 0.0;
}

Eigen::VectorXd GmmParams::pack() const {
  const int K = components();
  const int p = dim();
  Eigen::VectorXd theta(K * (1 + p + p * p));
  int at = 0;
  for (int k = 0; k < K; ++k) theta[at++] = weights[k];
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < p; ++j) theta[at++] = means[k][j];
  for (int k = 0; k < K; ++k)
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) theta[at++] = covs[k](r, c);
  return theta;
}

GmmParams GmmParams::unpack(const Eigen::VectorXd& theta, int K, int p) {
  if (theta.size() != K * (1 + p + p * p))
    throw DimensionMismatch("packed GMM parameter has wrong length");
  GmmParams params;
  params.weights.resize(K);
  params.means.assign(K, Eigen::VectorXd(p));
  params.covs.assign(K, Eigen::MatrixXd(p, p));
  int at = 0;
  for (int k = 0; k < K; ++k) params.weights[k] = theta[at++];
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < p; ++j) params.means[k][j] = theta[at++];
  for (int k = 0; k < K; ++k)
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) params.covs[k](r, c) = theta[at++];
  return params;
}

Eigen::MatrixXd gmm_responsibilities(const GmmParams& params, const Dataset& data) {
  const int N = data.size();
  const int K = params.components();
  if (data.dim() != params.dim()) throw DimensionMismatch("data/parameter dimension mismatch");
  const auto cache = make_cache(params);
  Eigen::MatrixXd resp(N, K);
  Eigen::VectorXd logw(K);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < K; ++k)
      logw[k] = log_joint(cache[k], data.x.row(i).transpose() - params.means[k]);
    const double m = logw.maxCoeff();
    double denom = 0.0;
    for (int k = 0; k < K; ++k) denom += std::exp(logw[k] - m);
    for (int k = 0; k < K; ++k) resp(i, k) = std::exp(logw[k] - m) / denom;
  }
  return resp;
}

GmmParams gmm_m_step(const Eigen::MatrixXd& resp, const Dataset& data, double eig_floor) {
  const int N = data.size();
  const int K = static_cast<int>(resp.cols());
  const int p = data.dim();
  const Eigen::VectorXd mass = resp.colwise().sum();
  const double mass_floor = 10.0 * std::numeric_limits<double>::epsilon() * N;

  GmmParams params;
  params.weights.resize(K);
  params.means.assign(K, Eigen::VectorXd::Zero(p));
  params.covs.assign(K, Eigen::MatrixXd::Zero(p, p));
  for (int k = 0; k < K; ++k) {
    if (!(mass[k] >= mass_floor))
      throw DegenerateStatistics("vanishing responsibility mass in component " +
                                 std::to_string(k));
    params.weights[k] = mass[k] / N;
    params.means[k] = (resp.col(k).transpose() * data.x).transpose() / mass[k];
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < N; ++i) {
      const Eigen::VectorXd d = data.x.row(i).transpose() - params.means[k];
      scatter.noalias() += resp(i, k) * d * d.transpose();
    }
    params.covs[k] = scatter / mass[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(params.covs[k], Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_floor)
      throw DegenerateStatistics("covariance eigenvalue below floor in component " +
                                 std::to_string(k));
  }
  return params;
}

double gmm_neg_log_likelihood(const GmmParams& params, const Dataset& data) {
  const int K = params.components();
  const auto cache = make_cache(params);
  double nll = 0.0;
  Eigen::VectorXd logw(K);
  for (int i = 0; i < data.size(); ++i) {
    for (int k = 0; k < K; ++k)
      logw[k] = log_joint(cache[k], data.x.row(i).transpose() - params.means[k]);
    const double m = logw.maxCoeff();
    double s = 0.0;
    for (int k = 0; k < K; ++k) s += std::exp(logw[k] - m);
    nll -= m + std::log(s);
  }
  return nll;
}

Dataset gmm_simulate(const GmmParams& params, int n_obs, std::uint64_t seed,
                     std::vector<int>* labels) {
  if (n_obs < 1) throw InvalidConfig("need at least one observation");
  const int K = params.components();
  const int p = params.dim();
  std::vector<Eigen::MatrixXd> chol(K);
  for (int k = 0; k < K; ++k) {
    Eigen::LLT<Eigen::MatrixXd> llt(params.covs[k]);
    if (llt.info() != Eigen::Success) throw SingularCovariance("cannot factor covariance");
    chol[k] = llt.matrixL();
  }
  CounterRng rng(seed);
  Dataset data;
  data.x.resize(n_obs, p);
  if (labels) labels->resize(n_obs);
  Eigen::VectorXd eps(p);
  for (int i = 0; i < n_obs; ++i) {
    const int k = rng.categorical(params.weights);
    for (int j = 0; j < p; ++j) eps[j] = rng.normal();
    data.x.row(i) = (params.means[k] + chol[k] * eps).transpose();
    if (labels) (*labels)[i] = k;
  }
  return data;
}

Eigen::VectorXd GmmModel::suffstats_from_responsibilities(const Eigen::MatrixXd& resp,
                                                          const Dataset& data) const {
  const int N = data.size();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(suffstat_dim());
  for (int k = 0; k < K_; ++k) {
    s[k] = resp.col(k).sum() / N;
    const Eigen::VectorXd first = (resp.col(k).transpose() * data.x).transpose() / N;
    s.segment(K_ + k * p_, p_) = first;
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(p_, p_);
    for (int i = 0; i < N; ++i) {
      const Eigen::VectorXd xi = data.x.row(i).transpose();
      second.noalias() += resp(i, k) * xi * xi.transpose();
    }
    second /= N;
    int at = K_ + K_ * p_ + k * p_ * p_;
    for (int r = 0; r < p_; ++r)
      for (int c = 0; c < p_; ++c) s[at++] = second(r, c);
  }
  return s;
}

Eigen::VectorXd GmmModel::m_step(const Eigen::VectorXd& suffstats) const {
  GmmParams params;
  params.weights.resize(K_);
  params.means.assign(K_, Eigen::VectorXd(p_));
  params.covs.assign(K_, Eigen::MatrixXd(p_, p_));
  const double mass_floor = 10.0 * std::numeric_limits<double>::epsilon();
  for (int k = 0; k < K_; ++k) {
    const double mass = suffstats[k];
    if (!(mass >= mass_floor))
      throw DegenerateStatistics("vanishing class mass in component " + std::to_string(k));
    params.weights[k] = mass;
    params.means[k] = suffstats.segment(K_ + k * p_, p_) / mass;
    Eigen::MatrixXd second(p_, p_);
    int at = K_ + K_ * p_ + k * p_ * p_;
    for (int r = 0; r < p_; ++r)
      for (int c = 0; c < p_; ++c) second(r, c) = suffstats[at++];
    params.covs[k] = second / mass - params.means[k] * params.means[k].transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(params.covs[k], Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_floor_)
      throw DegenerateStatistics("covariance eigenvalue below floor in component " +
                                 std::to_string(k));
  }
  return params.pack();
}

bool GmmModel::in_param_space(const Eigen::VectorXd& theta) const {
  if (theta.size() != param_dim() || !theta.allFinite()) return false;
  GmmParams params = GmmParams::unpack(theta, K_, p_);
  if (std::abs(params.weights.sum() - 1.0) > 1e-8) return false;
  for (int k = 0; k < K_; ++k) {
    if (!(params.weights[k] > 0.0)) return false;
    Eigen::LLT<Eigen::MatrixXd> llt(params.covs[k]);
    if (llt.info() != Eigen::Success) return false;
  }
  return true;
}

double GmmModel::neg_log_likelihood(const Eigen::VectorXd& theta, const Dataset& data) const {
  return gmm_neg_log_likelihood(GmmParams::unpack(theta, K_, p_), data);
}

Eigen::VectorXd GmmModel::exact_expected_suffstats(const Eigen::VectorXd& theta,
                                                   const Dataset& data) const {
  const GmmParams params = GmmParams::unpack(theta, K_, p_);
  return suffstats_from_responsibilities(gmm_responsibilities(params, data), data);
}

double GmmModel::log_complete_likelihood(const GmmParams& params, int label,
                                         const Eigen::VectorXd& x) const {
  const auto cache = make_cache(params);
  return log_joint(cache[label], x - params.means[label]);
}

double GmmModel::psi(const GmmParams&) const { return 0.0; }

Eigen::VectorXd GmmModel::phi(const GmmParams& params) const {
  Eigen::VectorXd out(param_dim());
  int at = 0;
  std::vector<Eigen::MatrixXd> precisions(K_);
  for (int k = 0; k < K_; ++k) precisions[k] = params.covs[k].inverse();
  for (int k = 0; k < K_; ++k) {
    const double log_det_prec = -std::log(params.covs[k].determinant());
    out[at++] = std::log(params.weights[k]) + 0.5 * log_det_prec -
                0.5 * params.means[k].dot(precisions[k] * params.means[k]) - 0.5 * p_ * kLog2Pi;
  }
  for (int k = 0; k < K_; ++k) out.segment(at + k * p_, p_) = precisions[k] * params.means[k];
  at += K_ * p_;
  for (int k = 0; k < K_; ++k)
    for (int r = 0; r < p_; ++r)
      for (int c = 0; c < p_; ++c) out[at++] = -0.5 * precisions[k](r, c);
  return out;
}

Eigen::VectorXd GmmModel::suffstat(int label, const Eigen::VectorXd& x) const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(suffstat_dim());
  s[label] = 1.0;
  s.segment(K_ + label * p_, p_) = x;
  int at = K_ + K_ * p_ + label * p_ * p_;
  for (int r = 0; r < p_; ++r)
    for (int c = 0; c < p_; ++c) s[at++] = x[r] * x[c];
  return s;
}

std::vector<int> GmmModel::scale_indices() const {
  std::vector<int> idx;
  for (int k = 0; k < K_; ++k)
    for (int j = 0; j < p_; ++j) idx.push_back(K_ + K_ * p_ + k * p_ * p_ + j * p_ + j);
  return idx;
}

std::vector<int> GmmModel::weight_indices() const {
  std::vector<int> idx(K_);
  for (int k = 0; k < K_; ++k) idx[k] = k;
  return idx;
}

}  // namespace detem
