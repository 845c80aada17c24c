#ifndef DETEM_BETA_GAUSS_HPP
#define DETEM_BETA_GAUSS_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "detem/dataset.hpp"
#include "detem/model.hpp"

namespace detem {

/// z ~ Beta(alpha, 1), x = lambda z + sigma eps.
struct BetaGaussParams1D {
  double alpha;
  double lambda;
  double sigma2;

  void validate() const;
  Eigen::VectorXd pack() const;
  static BetaGaussParams1D unpack(const Eigen::VectorXd& theta);
};

/// Two independent Beta latents; x1 = l1 z1 + z2 + s1 e1, x2 = z1 + l2 z2 + s2 e2.
struct BetaGaussParams2D {
  double alpha1, alpha2;
  double lambda1, lambda2;
  double sigma2_1, sigma2_2;

  void validate() const;
  Eigen::VectorXd pack() const;
  static BetaGaussParams2D unpack(const Eigen::VectorXd& theta);
};

/// ln h(z; theta) for one observation; exponentiation is left to callers.
/// The (alpha-1) ln z term is dropped exactly when alpha == 1, so a flat
/// prior never produces 0 * inf at the z=0 endpoint.
double bg1d_log_complete_likelihood(const BetaGaussParams1D& params, double z, double x);
double bg2d_log_complete_likelihood(const BetaGaussParams2D& params, double z1, double z2,
                                    double x1, double x2);

/// Left-endpoint grid node k/n, except that k=0 is evaluated at
/// zeta/n (zeta = 1e-3) to keep z^(alpha-1) finite when alpha < 1.
double bg_grid_node(int k, int n);
inline constexpr double kBgZeroOffset = 1e-3;

Dataset bg1d_simulate(const BetaGaussParams1D& params, int n_obs, std::uint64_t seed);
Dataset bg2d_simulate(const BetaGaussParams2D& params, int n_obs, std::uint64_t seed);

/// Model adapter. Sufficient statistics (averaged over observations):
/// [E ln z, E z^2, E xz, mean x^2]; the last entry does not depend on the
/// posterior but closes the M-step formula for sigma^2.
class BetaGauss1DModel final : public Model {
 public:
  explicit BetaGauss1DModel(int nll_grid = 4096) : nll_grid_(nll_grid) {}

  int param_dim() const override { return 3; }
  int suffstat_dim() const override { return 4; }
  Eigen::VectorXd m_step(const Eigen::VectorXd& suffstats) const override;
  bool in_param_space(const Eigen::VectorXd& theta) const override;

  /// -ln g(theta) approximated by a left-Riemann sum on a fixed grid of
  /// `nll_grid` cells (the normalizer has no closed form).
  double neg_log_likelihood(const Eigen::VectorXd& theta, const Dataset& data) const override;

  std::vector<int> scale_indices() const override { return {0, 2}; }

  int nll_grid() const { return nll_grid_; }

 private:
  int nll_grid_;
};

/// 2D counterpart; suffstats:
/// [E ln z1, E ln z2, E z1^2, E z2^2, E z1 z2,
///  mean x1 E z1, mean x2 E z2, mean x1 E z2, mean x2 E z1,
///  mean x1^2, mean x2^2].
class BetaGauss2DModel final : public Model {
 public:
  explicit BetaGauss2DModel(int nll_grid_per_axis = 256) : nll_grid_(nll_grid_per_axis) {}

  int param_dim() const override { return 6; }
  int suffstat_dim() const override { return 11; }
  Eigen::VectorXd m_step(const Eigen::VectorXd& suffstats) const override;
  bool in_param_space(const Eigen::VectorXd& theta) const override;
  double neg_log_likelihood(const Eigen::VectorXd& theta, const Dataset& data) const override;

  std::vector<int> scale_indices() const override { return {0, 1, 4, 5}; }

  int nll_grid_per_axis() const { return nll_grid_; }

 private:
  int nll_grid_;
};

}  // namespace detem

#endif
