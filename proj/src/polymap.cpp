#include "skewcheck/polymap.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skewcheck/norms.hpp"

namespace skewcheck {

using json = nlohmann::ordered_json;

PolyMap::PolyMap(int n, int N, Vec constant, std::vector<SymMultiMap> parts)
    : n_(n), N_(N), degree_(static_cast<int>(parts.size())),
      constant_(std::move(constant)), parts_(std::move(parts)) {
  if (n_ < 1 || N_ < 1) throw std::invalid_argument("PolyMap: bad dimensions");
  if (degree_ < 1 || degree_ > kMaxDegree)
    throw std::invalid_argument("PolyMap: degree must be in 1..4");
  if (constant_.size() != N_) throw std::invalid_argument("PolyMap: constant size mismatch");
  for (int k = 1; k <= degree_; ++k) {
    const auto& p = parts_[static_cast<std::size_t>(k - 1)];
    if (p.degree() != k || p.domain_dim() != n_ || p.codomain_dim() != N_)
      throw std::invalid_argument("PolyMap: part shape mismatch");
  }
}

PolyMap PolyMap::zero(int n, int N, int degree) {
  std::vector<SymMultiMap> parts;
  for (int k = 1; k <= degree; ++k) parts.push_back(SymMultiMap::zero(n, N, k));
  return PolyMap(n, N, Vec::Zero(N), std::move(parts));
}

const SymMultiMap& PolyMap::part(int k) const {
  if (k < 1 || k > degree_) throw std::out_of_range("PolyMap::part: no such part");
  return parts_[static_cast<std::size_t>(k - 1)];
}

Vec PolyMap::eval(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("PolyMap::eval: dimension mismatch");
  Vec out = constant_;
  for (int k = 1; k <= degree_; ++k) {
    out += parts_[static_cast<std::size_t>(k - 1)].apply_diag(x) /
           static_cast<double>(factorial(k));
  }
  return out;
}

PolyMap PolyMap::shift(const Vec& a) const {
  if (a.size() != n_) throw std::invalid_argument("PolyMap::shift: dimension mismatch");
  const auto blocks = shifted_part_coeffs<double>(a);
  std::vector<SymMultiMap> parts;
  parts.reserve(blocks.size());
  for (int k = 1; k <= degree_; ++k)
    parts.emplace_back(n_, N_, k, blocks[static_cast<std::size_t>(k - 1)]);
  return PolyMap(n_, N_, eval(a), std::move(parts));
}

SymMultiMap PolyMap::derivative(const Vec& a, int k) const {
  if (k < 1 || k > MultiIndexSet::kMaxDegree)
    throw std::invalid_argument("PolyMap::derivative: order out of range");
  if (k > degree_) return SymMultiMap::zero(n_, N_, k);
  const auto blocks = shifted_part_coeffs<double>(a);
  return SymMultiMap(n_, N_, k, blocks[static_cast<std::size_t>(k - 1)]);
}

Mat PolyMap::jacobian(const Vec& a) const { return derivative(a, 1).as_matrix(); }

Jet3 PolyMap::jet3(const Vec& a) const {
  return Jet3{eval(a), jacobian(a), derivative(a, 2), derivative(a, 3)};
}

Vec PolyMap::taylor_tail(const Vec& a, const Vec& x, int k) const {
  if (x.size() != n_ || a.size() != n_)
    throw std::invalid_argument("PolyMap::taylor_tail: dimension mismatch");
  Vec out = Vec::Zero(N_);
  if (k >= degree_) return out;
  const auto blocks = shifted_part_coeffs<double>(a);
  for (int j = k + 1; j <= degree_; ++j) {
    std::vector<Vec> args(static_cast<std::size_t>(j), x);
    out += detail::apply_coeffs<double, double>(n_, j, blocks[static_cast<std::size_t>(j - 1)],
                                                std::span<const Vec>(args.data(), args.size())) /
           static_cast<double>(factorial(j));
  }
  return out;
}

TaylorRemainder PolyMap::taylor_remainder(const Vec& a, const Vec& x, int k) const {
  if (k < 1 || k + 1 > kMaxDegree)
    throw std::invalid_argument("PolyMap::taylor_remainder: need 1 <= k <= 3");
  TaylorRemainder out;
  out.remainder = taylor_tail(a, x, k);
  if (k >= degree_) {
    out.bound = 0.0;
    out.within_bound = out.remainder.norm() <= out.bound;
    return out;
  }
  // sup over s in [0,1] of the (k+1)-th derivative norm along a + s x,
  // by a dense grid of sampled norm estimates; a single estimate suffices
  // when that derivative does not depend on the base point.
  double sup = 0.0;
  if (degree_ <= k + 1) {
    sup = operator_norm_estimate(derivative(a, k + 1));
  } else {
    const int grid = 33;
    NormEstimateOptions opts;
    opts.samples = 512;
    opts.refine_iterations = 40;
    for (int i = 0; i < grid; ++i) {
      const double s = static_cast<double>(i) / (grid - 1);
      sup = std::max(sup, operator_norm_estimate(derivative(a + s * x, k + 1), opts));
    }
  }
  const double xn = x.norm();
  out.bound = std::pow(xn, k + 1) / static_cast<double>(factorial(k + 1)) * sup;
  out.within_bound = out.remainder.norm() <= out.bound;
  return out;
}

namespace {

json coeff_entry(const MultiIndexSet& set, int rank, const Vec& value) {
  json idx = json::array();
  for (int i = 0; i < set.degree(); ++i) idx.push_back(set.tuple(rank)[i]);
  json val = json::array();
  for (int i = 0; i < value.size(); ++i) val.push_back(value[i]);
  return json{{"index", idx}, {"value", val}};
}

}  // namespace

std::string polymap_to_json_text(const PolyMap& f) {
  json j;
  j["n"] = f.domain_dim();
  j["N"] = f.codomain_dim();
  j["degree"] = f.degree();
  json cst = json::array();
  for (int i = 0; i < f.codomain_dim(); ++i) cst.push_back(f.constant()[i]);
  j["constant"] = cst;
  json parts = json::array();
  for (int k = 1; k <= f.degree(); ++k) {
    const auto& p = f.part(k);
    const MultiIndexSet set = p.index_set();
    json coeffs = json::array();
    for (int r = 0; r < set.size(); ++r) {
      if (p.coeffs().col(r).isZero(0.0)) continue;
      coeffs.push_back(coeff_entry(set, r, p.coeffs().col(r)));
    }
    parts.push_back(json{{"k", k}, {"coeffs", coeffs}});
  }
  j["parts"] = parts;
  return j.dump(2);
}

PolyMap polymap_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("PolyMap JSON parse error: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    const int N = j.at("N").get<int>();
    const int degree = j.at("degree").get<int>();
    if (n < 1 || N < 1 || degree < 1 || degree > PolyMap::kMaxDegree)
      throw std::runtime_error("n/N/degree out of range");
    Vec constant = Vec::Zero(N);
    if (j.contains("constant")) {
      const auto& c = j.at("constant");
      if (static_cast<int>(c.size()) != N) throw std::runtime_error("constant length != N");
      for (int i = 0; i < N; ++i) constant[i] = c.at(static_cast<std::size_t>(i)).get<double>();
    }
    std::vector<SymMultiMap> parts;
    for (int k = 1; k <= degree; ++k) parts.push_back(SymMultiMap::zero(n, N, k));
    if (j.contains("parts")) {
      for (const auto& pj : j.at("parts")) {
        const int k = pj.at("k").get<int>();
        if (k < 1 || k > degree) throw std::runtime_error("part degree out of range");
        const MultiIndexSet set(n, k);
        Mat coeffs = Mat::Zero(N, set.size());
        std::vector<bool> seen(static_cast<std::size_t>(set.size()), false);
        for (const auto& entry : pj.at("coeffs")) {
          const auto& idx = entry.at("index");
          if (static_cast<int>(idx.size()) != k) throw std::runtime_error("index length != k");
          std::array<int, MultiIndexSet::kMaxDegree> t{};
          for (int i = 0; i < k; ++i) {
            t[static_cast<std::size_t>(i)] = idx.at(static_cast<std::size_t>(i)).get<int>();
            if (t[static_cast<std::size_t>(i)] < 0 || t[static_cast<std::size_t>(i)] >= n)
              throw std::runtime_error("index entry out of range");
            if (i > 0 && t[static_cast<std::size_t>(i)] < t[static_cast<std::size_t>(i - 1)])
              throw std::runtime_error("index entries must be sorted ascending");
          }
          const int r = set.rank(t);
          if (seen[static_cast<std::size_t>(r)]) throw std::runtime_error("duplicate multi-index");
          seen[static_cast<std::size_t>(r)] = true;
          const auto& val = entry.at("value");
          if (static_cast<int>(val.size()) != N) throw std::runtime_error("value length != N");
          for (int i = 0; i < N; ++i)
            coeffs(i, r) = val.at(static_cast<std::size_t>(i)).get<double>();
        }
        parts[static_cast<std::size_t>(k - 1)] = SymMultiMap(n, N, k, coeffs);
      }
    }
    return PolyMap(n, N, std::move(constant), std::move(parts));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("PolyMap JSON schema error: ") + e.what());
  }
}

PolyMap polymap_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return polymap_from_json_text(ss.str());
}

}  // namespace skewcheck
