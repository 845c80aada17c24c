#include "detem/model.hpp"

#include "detem/errors.hpp"

namespace detem {

Eigen::VectorXd Model::exact_expected_suffstats(const Eigen::VectorXd&, const Dataset&) const {
  throw NoClosedFormEStep("model has no closed-form posterior expectation");
}

}  // namespace detem
