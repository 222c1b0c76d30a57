#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "skewcheck/multiindex.hpp"
#include "skewcheck/types.hpp"

namespace skewcheck {

namespace detail {

// Contract a symmetric k-linear coefficient block (codomain x S_k, graded-lex
// columns) with one vector, producing the (k-1)-linear block: the result's
// column at tuple b is sum_i v[i] * C[b + e_i].
template <class T, class CoeffT>
MatT<T> contract_coeffs(int n, int k, const MatT<CoeffT>& coeffs, const VecT<T>& v) {
  const MultiIndexSet upper(n, k);
  MatT<T> out;
  if (k == 1) {
    // Degree-1 block is just a matrix; contraction is a product.
    out.resize(coeffs.rows(), 1);
    out.setZero();
    for (int i = 0; i < n; ++i) out.col(0) += coeffs.col(i).template cast<T>() * v[i];
    return out;
  }
  const MultiIndexSet lower(n, k - 1);
  out.resize(coeffs.rows(), lower.size());
  out.setZero();
  for (int r = 0; r < lower.size(); ++r) {
    const auto& b = lower.tuple(r);
    for (int i = 0; i < n; ++i) {
      const auto ins = MultiIndexSet::inserted(b, k - 1, i);
      out.col(r) += coeffs.col(upper.rank(ins)).template cast<T>() * v[i];
    }
  }
  return out;
}

// Full diagonal/multilinear evaluation of a coefficient block on k vectors.
template <class T, class CoeffT>
VecT<T> apply_coeffs(int n, int k, const MatT<CoeffT>& coeffs,
                     std::span<const VecT<T>> args) {
  MatT<T> cur = coeffs.template cast<T>();
  for (int j = k; j >= 2; --j) {
    cur = contract_coeffs<T, T>(n, j, cur, args[static_cast<std::size_t>(j - 1)]);
  }
  VecT<T> out = VecT<T>::Zero(coeffs.rows());
  for (int i = 0; i < n; ++i) out += cur.col(i) * args[0][i];
  return out;
}

}  // namespace detail

// A symmetric k-linear map R^n -> R^N, k in 1..4, stored as one codomain
// vector per degree-k multi-index in graded-lex order. Symmetry is
// structural; immutable after construction.
class SymMultiMap {
 public:
  SymMultiMap(int n, int N, int k, Mat coeffs)
      : n_(n), N_(N), k_(k), coeffs_(std::move(coeffs)) {
    if (n < 1 || N < 1) throw std::invalid_argument("SymMultiMap: bad dimensions");
    if (k < 1 || k > MultiIndexSet::kMaxDegree)
      throw std::invalid_argument("SymMultiMap: degree out of range");
    const MultiIndexSet set(n, k);
    if (coeffs_.rows() != N || coeffs_.cols() != set.size())
      throw std::invalid_argument("SymMultiMap: coefficient block shape mismatch");
  }

  static SymMultiMap zero(int n, int N, int k) {
    return SymMultiMap(n, N, k, Mat::Zero(N, static_cast<int>(MultiIndexSet::count(n, k))));
  }

  int domain_dim() const { return n_; }
  int codomain_dim() const { return N_; }
  int degree() const { return k_; }
  const Mat& coeffs() const { return coeffs_; }
  MultiIndexSet index_set() const { return MultiIndexSet(n_, k_); }

  // Multilinear evaluation on k vectors. Arguments are put into a canonical
  // order first so that every permutation runs the identical float ops and
  // symmetry holds bit-exactly.
  Vec apply(std::span<const Vec> args) const {
    if (args.size() != static_cast<std::size_t>(k_))
      throw std::invalid_argument("SymMultiMap::apply: wrong argument count");
    for (const auto& v : args)
      if (v.size() != n_) throw std::invalid_argument("SymMultiMap::apply: dimension mismatch");
    std::vector<Vec> sorted(args.begin(), args.end());
    std::sort(sorted.begin(), sorted.end(), [](const Vec& a, const Vec& b) {
      return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                          b.data() + b.size());
    });
    return detail::apply_coeffs<double, double>(
        n_, k_, coeffs_, std::span<const Vec>(sorted.data(), sorted.size()));
  }

  Vec apply(const Vec& v1) const { return apply(std::vector<Vec>{v1}); }
  Vec apply(const Vec& v1, const Vec& v2) const { return apply(std::vector<Vec>{v1, v2}); }
  Vec apply(const Vec& v1, const Vec& v2, const Vec& v3) const {
    return apply(std::vector<Vec>{v1, v2, v3});
  }
  Vec apply(const Vec& v1, const Vec& v2, const Vec& v3, const Vec& v4) const {
    return apply(std::vector<Vec>{v1, v2, v3, v4});
  }

  // Diagonal evaluation m(x, ..., x).
  Vec apply_diag(const Vec& x) const { return apply(std::vector<Vec>(k_, x)); }

 private:
  Vec apply(const std::vector<Vec>& args) const {
    return apply(std::span<const Vec>(args.data(), args.size()));
  }

 public:
  // Partial evaluation by one vector: a symmetric (k-1)-linear map (k >= 2).
  SymMultiMap contract(const Vec& v) const {
    if (k_ < 2) throw std::invalid_argument("SymMultiMap::contract: degree must be >= 2");
    if (v.size() != n_) throw std::invalid_argument("SymMultiMap::contract: dimension mismatch");
    return SymMultiMap(n_, N_, k_ - 1, detail::contract_coeffs<double, double>(n_, k_, coeffs_, v));
  }

  // Degree-1 map viewed as its N x n matrix.
  Mat as_matrix() const {
    if (k_ != 1) throw std::invalid_argument("SymMultiMap::as_matrix: degree must be 1");
    return coeffs_;
  }

 private:
  int n_;
  int N_;
  int k_;
  Mat coeffs_;
};

}  // namespace skewcheck
