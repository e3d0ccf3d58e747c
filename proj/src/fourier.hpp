#pragma once

#include <Eigen/Dense>

namespace diraclab::detail {

/// Unnormalised in-place multidimensional DFT of every column of `data`,
/// laid out row-major over a d-dimensional cube of side n.
/// sign = -1 is the forward (e^{-i k x}) transform.
void dft_columns(Eigen::MatrixXcd& data, int dim, int n, int sign);

}  // namespace diraclab::detail
