#pragma once

#include <Eigen/Core>

namespace minimax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

} // namespace minimax
