#pragma once

#include <Eigen/Core>
#include <limits>

namespace lvd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Extended-real +infinity. Residual/width values live on [0, +inf];
/// -inf and NaN are rejected wherever extended values are constructed.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace lvd
