#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewcheck/sym_multimap.hpp"
#include "skewcheck/types.hpp"

namespace skewcheck {

// Value and first three derivatives of a map at a fixed base point.
struct Jet3 {
  Vec value;        // f(a)
  Mat d1;           // N x n
  SymMultiMap d2;   // symmetric bilinear
  SymMultiMap d3;   // symmetric trilinear
};

struct TaylorRemainder {
  Vec remainder;
  double bound = 0.0;
  bool within_bound = true;
};

// Polynomial map R^n -> R^N of degree <= 4, stored as a constant term plus
// homogeneous parts: eval(x) = c + sum_k (1/k!) part_k(x, ..., x). The part
// of degree k therefore *is* the k-th derivative at 0.
class PolyMap {
 public:
  static constexpr int kMaxDegree = 4;

  PolyMap(int n, int N, Vec constant, std::vector<SymMultiMap> parts);

  static PolyMap zero(int n, int N, int degree);

  int domain_dim() const { return n_; }
  int codomain_dim() const { return N_; }
  int degree() const { return degree_; }
  const Vec& constant() const { return constant_; }
  // Homogeneous part of degree k (1-based); zero map if k exceeds degree.
  const SymMultiMap& part(int k) const;
  bool has_part(int k) const { return k >= 1 && k <= degree_; }

  Vec eval(const Vec& x) const;

  // f(a + .) as a PolyMap: exact coefficient transformation.
  PolyMap shift(const Vec& a) const;

  // Exact k-th symmetric derivative at a; zero map for k > degree.
  SymMultiMap derivative(const Vec& a, int k) const;

  // Jacobian at a as an N x n matrix.
  Mat jacobian(const Vec& a) const;

  Jet3 jet3(const Vec& a) const;

  // sum_{j>k} (1/j!) D^j f_a(x^{(j)}): equals f(a+x) minus the order-k Taylor
  // polynomial identically, evaluated without cancellation.
  Vec taylor_tail(const Vec& a, const Vec& x, int k) const;

  // Remainder of the order-k expansion at a together with the
  // ||x||^{k+1}/(k+1)! * sup-norm bound (sampled norm estimate).
  TaylorRemainder taylor_remainder(const Vec& a, const Vec& x, int k) const;

  // Shifted homogeneous coefficient blocks in scalar T: block j (1-based) is
  // the coefficient matrix of D^j f_a. Used by the extended-precision
  // matrix assembly paths.
  template <class T>
  std::vector<MatT<T>> shifted_part_coeffs(const VecT<T>& a) const {
    std::vector<MatT<T>> out;
    out.reserve(static_cast<std::size_t>(degree_));
    for (int i = 1; i <= degree_; ++i) {
      MatT<T> acc = MatT<T>::Zero(N_, MultiIndexSet::count(n_, i));
      for (int j = i; j <= degree_; ++j) {
        MatT<T> c = parts_[static_cast<std::size_t>(j - 1)].coeffs().cast<T>();
        for (int step = 0; step < j - i; ++step) {
          c = detail::contract_coeffs<T, T>(n_, j - step, c, a);
        }
        acc += c / static_cast<T>(factorial(j - i));
      }
      out.push_back(std::move(acc));
    }
    return out;
  }

  // f(a + d) - f(a) evaluated via the shifted parts (no cancellation).
  template <class T>
  VecT<T> difference(const VecT<T>& a, const VecT<T>& d) const {
    const auto parts = shifted_part_coeffs<T>(a);
    VecT<T> out = VecT<T>::Zero(N_);
    for (int j = 1; j <= degree_; ++j) {
      std::vector<VecT<T>> args(static_cast<std::size_t>(j), d);
      out += detail::apply_coeffs<T, T>(n_, j, parts[static_cast<std::size_t>(j - 1)],
                                        std::span<const VecT<T>>(args.data(), args.size())) /
             static_cast<T>(factorial(j));
    }
    return out;
  }

  // Jacobian at a in scalar T.
  template <class T>
  MatT<T> jacobian_t(const VecT<T>& a) const {
    return shifted_part_coeffs<T>(a)[0];
  }

 private:
  int n_;
  int N_;
  int degree_;
  Vec constant_;
  std::vector<SymMultiMap> parts_;  // degrees 1..degree_
};

// JSON (de)serialization per the PolyMap schema; omitted multi-indices are
// zero. Throws std::runtime_error with a diagnostic on malformed input.
PolyMap polymap_from_json_text(const std::string& text);
PolyMap polymap_from_json_file(const std::string& path);
std::string polymap_to_json_text(const PolyMap& f);

}  // namespace skewcheck
