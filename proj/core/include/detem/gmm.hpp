#ifndef DETEM_GMM_HPP
#define DETEM_GMM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "detem/dataset.hpp"
#include "detem/model.hpp"

namespace detem {

/// Multivariate Gaussian mixture parameters.
struct GmmParams {
  Eigen::VectorXd weights;              // K, each in (0,1), sums to 1
  std::vector<Eigen::VectorXd> means;   // K vectors of dim p
  std::vector<Eigen::MatrixXd> covs;    // K SPD p x p matrices

  int components() const { return static_cast<int>(weights.size()); }
  int dim() const { return means.empty() ? 0 : static_cast<int>(means[0].size()); }

  void validate() const;
  bool params_cov_ok(int k) const;

  /// Packing order: pi_1..pi_K, mu_1..mu_K (each p), Sigma_1..Sigma_K
  /// (each p x p row-major).
  Eigen::VectorXd pack() const;
  static GmmParams unpack(const Eigen::VectorXd& theta, int K, int p);
};

/// Posterior class probabilities, one row per observation, log-domain with
/// max subtraction. Throws SingularCovariance.
Eigen::MatrixXd gmm_responsibilities(const GmmParams& params, const Dataset& data);

/// Weighted-moment M step. Covariances are biased (mass-weighted); any
/// covariance eigenvalue below `eig_floor` and any column mass below
/// 10*eps*N raise DegenerateStatistics.
GmmParams gmm_m_step(const Eigen::MatrixXd& resp, const Dataset& data, double eig_floor = 1e-10);

/// -ln g(theta) via per-observation log-sum-exp.
double gmm_neg_log_likelihood(const GmmParams& params, const Dataset& data);

/// Categorical draw then Gaussian draw; deterministic given the seed.
/// Labels (when requested) record the latent class of each observation.
Dataset gmm_simulate(const GmmParams& params, int n_obs, std::uint64_t seed,
                     std::vector<int>* labels = nullptr);

/// Model interface adapter. Sufficient statistics are the per-observation
/// averages of (r_k, r_k x, r_k x x^T) stacked per component.
class GmmModel final : public Model {
 public:
  GmmModel(int K, int p, double eig_floor = 1e-10) : K_(K), p_(p), eig_floor_(eig_floor) {}

  int param_dim() const override { return K_ * (1 + p_ + p_ * p_); }
  int suffstat_dim() const override { return K_ * (1 + p_ + p_ * p_); }

  Eigen::VectorXd m_step(const Eigen::VectorXd& suffstats) const override;
  bool in_param_space(const Eigen::VectorXd& theta) const override;
  double neg_log_likelihood(const Eigen::VectorXd& theta, const Dataset& data) const override;

  bool has_exact_estep() const override { return true; }
  Eigen::VectorXd exact_expected_suffstats(const Eigen::VectorXd& theta,
                                           const Dataset& data) const override;

  /// Suffstat vector induced by an arbitrary responsibility matrix.
  Eigen::VectorXd suffstats_from_responsibilities(const Eigen::MatrixXd& resp,
                                                  const Dataset& data) const;

  /// Log complete likelihood of one labelled observation, both directly
  /// and through the psi/phi/S decomposition (test hook for the
  /// exponential-family structure).
  double log_complete_likelihood(const GmmParams& params, int label, const Eigen::VectorXd& x) const;
  double psi(const GmmParams& params) const;
  Eigen::VectorXd phi(const GmmParams& params) const;
  Eigen::VectorXd suffstat(int label, const Eigen::VectorXd& x) const;

  std::vector<int> scale_indices() const override;
  std::vector<int> weight_indices() const override;

  int components() const { return K_; }
  int obs_dim() const { return p_; }

 private:
  int K_, p_;
  double eig_floor_;
};

}  // namespace detem

#endif
