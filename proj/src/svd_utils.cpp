#include "skewcheck/svd_utils.hpp"

#include <Eigen/SVD>

namespace skewcheck {

SigmaInfo sigma_info(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  SigmaInfo out;
  out.singular_values = svd.singularValues();
  out.sigma_max = out.singular_values.size() > 0 ? out.singular_values[0] : 0.0;
  const Eigen::Index cols = a.cols();
  out.min_right_singular = svd.matrixV().col(cols - 1);
  if (cols > a.rows()) {
    out.sigma_min = (a * out.min_right_singular).norm();
  } else {
    out.sigma_min = out.singular_values[out.singular_values.size() - 1];
  }
  return out;
}

double sigma_min_only(const Mat& a) {
  if (a.cols() > a.rows()) {
    return sigma_info(a).sigma_min;
  }
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  return s[s.size() - 1];
}

int numerical_rank(const Mat& a, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cutoff = rel_tol * s[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cutoff) ++rank;
  }
  return rank;
}

}  // namespace skewcheck
