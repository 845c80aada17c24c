#ifndef DETEM_DATASET_HPP
#define DETEM_DATASET_HPP

#include <Eigen/Dense>
#include <string>

namespace detem {

/// Fixed sample of N observations in R^p, stored row-wise.
struct Dataset {
  Eigen::MatrixXd x;  // N x p

  int size() const { return static_cast<int>(x.rows()); }
  int dim() const { return static_cast<int>(x.cols()); }

  void validate() const;
};

/// CSV layout: first line "# dim=p", then one comma-separated observation
/// per row, 17 significant digits.
void write_dataset_csv(const Dataset& data, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

}  // namespace detem

#endif
