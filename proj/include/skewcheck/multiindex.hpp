#pragma once

#include <array>
#include <vector>

namespace skewcheck {

// Sorted variable-index tuples of length k over variables 0..n-1
// (combinations with repetition), enumerated in lexicographic order.
// This is the graded-lex basis used for symmetric multilinear
// coefficients; serialization relies on this order being stable.
class MultiIndexSet {
 public:
  static constexpr int kMaxDegree = 4;

  MultiIndexSet(int n, int k);

  int vars() const { return n_; }
  int degree() const { return k_; }
  int size() const { return static_cast<int>(tuples_.size()); }

  // First degree() entries are valid, ascending.
  const std::array<int, kMaxDegree>& tuple(int rank) const { return tuples_[rank]; }

  // Lexicographic rank of a sorted tuple (first k entries used).
  int rank(const std::array<int, kMaxDegree>& t) const;

  // Rank in the (n, k+1) set of this set's tuple with one extra index inserted.
  static std::array<int, kMaxDegree> inserted(const std::array<int, kMaxDegree>& t,
                                              int k, int var);

  // Number of sorted k-tuples over an alphabet of m symbols: C(m+k-1, k).
  static long long count(int m, int k);

 private:
  int n_;
  int k_;
  std::vector<std::array<int, kMaxDegree>> tuples_;
};

long long factorial(int k);
long long binomial(int m, int j);

}  // namespace skewcheck
