#include "skewcheck/multiindex.hpp"

#include <stdexcept>

namespace skewcheck {

long long factorial(int k) {
  long long r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

long long binomial(int m, int j) {
  if (j < 0 || j > m) return 0;
  long long r = 1;
  for (int i = 1; i <= j; ++i) r = r * (m - j + i) / i;
  return r;
}

long long MultiIndexSet::count(int m, int k) {
  if (k == 0) return 1;
  if (m <= 0) return 0;
  return binomial(m + k - 1, k);
}

MultiIndexSet::MultiIndexSet(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw std::invalid_argument("MultiIndexSet: need n >= 1");
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("MultiIndexSet: degree out of range");
  std::array<int, kMaxDegree> t{};
  // Lexicographic enumeration of ascending tuples.
  for (int i = 0; i < k; ++i) t[i] = 0;
  while (true) {
    tuples_.push_back(t);
    int pos = k - 1;
    while (pos >= 0 && t[pos] == n - 1) --pos;
    if (pos < 0) break;
    const int v = t[pos] + 1;
    for (int i = pos; i < k; ++i) t[i] = v;
  }
}

int MultiIndexSet::rank(const std::array<int, kMaxDegree>& t) const {
  long long r = 0;
  int prev = 0;
  for (int pos = 0; pos < k_; ++pos) {
    for (int v = prev; v < t[pos]; ++v) {
      r += count(n_ - v, k_ - 1 - pos);
    }
    prev = t[pos];
  }
  return static_cast<int>(r);
}

std::array<int, MultiIndexSet::kMaxDegree> MultiIndexSet::inserted(
    const std::array<int, kMaxDegree>& t, int k, int var) {
  std::array<int, kMaxDegree> out{};
  int i = 0;
  while (i < k && t[i] < var) {
    out[i] = t[i];
    ++i;
  }
  out[i] = var;
  for (; i < k; ++i) out[i + 1] = t[i];
  return out;
}

}  // namespace skewcheck
