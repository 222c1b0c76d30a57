#pragma once

#include <Eigen/Dense>

namespace skewcheck {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

template <class T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace skewcheck
