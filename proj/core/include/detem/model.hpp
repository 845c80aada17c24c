#ifndef DETEM_MODEL_HPP
#define DETEM_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

#include "detem/dataset.hpp"

namespace detem {

/// Curved exponential family model behind the generic EM engine.
///
/// Parameters travel through the engine as packed vectors (the packing
/// order of each concrete model is documented in the README). The E step
/// hands the engine a sufficient-statistic vector averaged over the
/// observations; m_step maps it back to a parameter.
class Model {
 public:
  virtual ~Model() = default;

  virtual int param_dim() const = 0;
  virtual int suffstat_dim() const = 0;

  /// theta_hat(s). Throws DegenerateStatistics when s leaves its domain.
  virtual Eigen::VectorXd m_step(const Eigen::VectorXd& suffstats) const = 0;

  virtual bool in_param_space(const Eigen::VectorXd& theta) const = 0;

  /// -ln g(theta). May be a documented approximation for models whose
  /// normalizer is intractable.
  virtual double neg_log_likelihood(const Eigen::VectorXd& theta, const Dataset& data) const = 0;

  /// Closed-form posterior expectation of S, when the model has one.
  virtual bool has_exact_estep() const { return false; }
  virtual Eigen::VectorXd exact_expected_suffstats(const Eigen::VectorXd& /*theta*/,
                                                   const Dataset& /*data*/) const;

  /// Packed indices of positivity-constrained components (variances,
  /// shape parameters) and of mixture weights; the compact family uses
  /// them for its margin constraints.
  virtual std::vector<int> scale_indices() const { return {}; }
  virtual std::vector<int> weight_indices() const { return {}; }
};

}  // namespace detem

#endif
