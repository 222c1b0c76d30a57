#include "skewcheck/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "skewcheck/parallel.hpp"
#include "skewcheck/rng.hpp"

namespace skewcheck {

namespace {

constexpr double kPi = std::numbers::pi;

Vec circle_point(double theta) {
  Vec y(2);
  y << std::cos(theta), std::sin(theta);
  return y;
}

// Geodesic angle between unit vectors, accurate for small separations.
double geodesic_angle(const Vec& u, const Vec& v) {
  const double c = u.dot(v);
  const double s = (u - c * v).norm();
  return std::atan2(s, c);
}

}  // namespace

std::vector<Vec> sphere_samples(int n, int count, std::uint64_t seed) {
  std::vector<Vec> out;
  if (n == 1) {
    out.push_back(Vec::Ones(1));
    out.push_back(-Vec::Ones(1));
    return out;
  }
  out.reserve(static_cast<std::size_t>(count) + 2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(Vec::Unit(n, i));
    out.push_back(-Vec::Unit(n, i));
  }
  int quasi = 0;
  if (n == 2) {
    quasi = count / 2;
    for (int i = 0; i < quasi; ++i) out.push_back(circle_point(2.0 * kPi * i / quasi));
  } else if (n == 3) {
    quasi = count / 2;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < quasi; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / quasi;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec y(3);
      y << r * std::cos(golden * i), r * std::sin(golden * i), z;
      out.push_back(y);
    }
  }
  for (int i = quasi; i < count; ++i) {
    auto rng = rng_stream(seed, static_cast<std::uint64_t>(i));
    out.push_back(random_unit_vector(rng, n));
  }
  return out;
}

Mat tangent_basis(const Vec& y) {
  const int n = static_cast<int>(y.size());
  Eigen::HouseholderQR<Mat> qr(y);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  // First column of Q spans y; the rest is the tangent frame.
  return q.rightCols(n - 1);
}

namespace {

struct LocalSearchResult {
  double value;
  Vec y;
};

// Projected descent on value^2 with finite-difference tangent gradients and
// backtracking, followed by cyclic great-circle line searches.
LocalSearchResult refine_from(const Vec& start, double start_value,
                              const std::function<double(const Vec&)>& value,
                              int descent_steps) {
  const int n = static_cast<int>(start.size());
  const auto g = [&](const Vec& y) {
    const double v = value(y);
    return v * v;
  };
  Vec y = start;
  double gy = start_value * start_value;
  const double h = 1e-6;
  double step = 0.25;
  for (int it = 0; it < descent_steps; ++it) {
    const Mat tb = tangent_basis(y);
    Vec grad(n - 1);
    for (int j = 0; j < n - 1; ++j) {
      const Vec u = tb.col(j);
      const double gp = g((y + h * u).normalized());
      const double gm = g((y - h * u).normalized());
      grad[j] = (gp - gm) / (2.0 * h);
    }
    const double gn = grad.norm();
    if (gn < 1e-14) break;
    const Vec dir = -(tb * grad) / gn;
    bool accepted = false;
    double alpha = step;
    for (int bt = 0; bt < 30; ++bt) {
      const Vec cand = (y + alpha * dir).normalized();
      const double gc = g(cand);
      if (gc < gy) {
        y = cand;
        gy = gc;
        step = std::min(2.0 * alpha, 0.25);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  // Great-circle polish: Brent line searches along each tangent direction.
  const int digits = 40;
  const double spans[3] = {0.5, 1e-2, 1e-5};
  for (double span : spans) {
    const Mat tb = tangent_basis(y);
    for (int j = 0; j < n - 1; ++j) {
      const Vec base = y;
      const Vec u = tb.col(j);
      const auto line = [&](double theta) {
        return g((std::cos(theta) * base + std::sin(theta) * u).normalized());
      };
      const auto [theta, val] = boost::math::tools::brent_find_minima(line, -span, span, digits);
      if (val < gy) {
        y = (std::cos(theta) * base + std::sin(theta) * u).normalized();
        gy = val;
      }
    }
  }
  return LocalSearchResult{value(y), y};
}

}  // namespace

SphereMinResult minimize_on_sphere(int n, const std::function<double(const Vec&)>& value,
                                   const SphereMinOptions& opts) {
  SphereMinResult out;
  if (n == 1) {
    const Vec plus = Vec::Ones(1);
    const Vec minus = -plus;
    const double vp = value(plus);
    const double vm = value(minus);
    out.min_value = std::min(vp, vm);
    out.argmin = vp <= vm ? plus : minus;
    out.evaluations = 2;
    return out;
  }
  const std::vector<Vec> samples = sphere_samples(n, opts.samples_per_dim * n, opts.seed);
  std::vector<double> values(samples.size());
  for_each_index(samples.size(), [&](std::size_t i) { values[i] = value(samples[i]); },
                 opts.threads);
  out.evaluations = samples.size();

  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(opts.starts),
                                                   samples.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] < values[b];
                      return a < b;
                    });

  std::vector<LocalSearchResult> refined(starts);
  for_each_index(starts, [&](std::size_t s) {
    refined[s] = refine_from(samples[order[s]], values[order[s]], value, opts.descent_steps);
  }, opts.threads);

  MinLoc best{values[order[0]], 0};
  out.argmin = samples[order[0]];
  for (std::size_t s = 0; s < starts; ++s) {
    if (refined[s].value < best.value) {
      best = MinLoc{refined[s].value, s};
      out.argmin = refined[s].y;
    }
  }
  out.min_value = best.value;
  return out;
}

namespace {

struct TriangleStats {
  MinLoc best;
  Vec argmin;
  double max_circ = 0.0;
  std::size_t seq = 0;
};

double circumradius(const Vec& a, const Vec& b, const Vec& c) {
  const Eigen::Vector3d a3 = a.head<3>();
  const Eigen::Vector3d normal = (b.head<3>() - a3).cross(Eigen::Vector3d(c.head<3>() - a3));
  const double nn = normal.norm();
  if (nn < 1e-300) return 0.0;
  Vec cc = normal / nn;
  if (cc.dot(a + b + c) < 0.0) cc = -cc;
  return std::max({geodesic_angle(cc, a), geodesic_angle(cc, b), geodesic_angle(cc, c)});
}

void scan_triangle(const Vec& a, const Vec& b, const Vec& c, int depth,
                   const std::function<double(const Vec&)>& value, TriangleStats& st) {
  if (depth == 0) {
    st.max_circ = std::max(st.max_circ, circumradius(a, b, c));
    for (const Vec* v : {&a, &b, &c}) {
      const double val = value(*v);
      const MinLoc cur{val, st.seq};
      ++st.seq;
      if (improves(cur, st.best)) {
        st.best = cur;
        st.argmin = *v;
      }
    }
    return;
  }
  const Vec ab = ((a + b) * 0.5).normalized();
  const Vec bc = ((b + c) * 0.5).normalized();
  const Vec ca = ((c + a) * 0.5).normalized();
  scan_triangle(a, ab, ca, depth - 1, value, st);
  scan_triangle(ab, b, bc, depth - 1, value, st);
  scan_triangle(ca, bc, c, depth - 1, value, st);
  scan_triangle(ab, bc, ca, depth - 1, value, st);
}

double probe_max_circ(const Vec& a, const Vec& b, const Vec& c, int depth) {
  if (depth == 0) return circumradius(a, b, c);
  const Vec ab = ((a + b) * 0.5).normalized();
  const Vec bc = ((b + c) * 0.5).normalized();
  const Vec ca = ((c + a) * 0.5).normalized();
  return std::max({probe_max_circ(a, ab, ca, depth - 1), probe_max_circ(ab, b, bc, depth - 1),
                   probe_max_circ(ca, bc, c, depth - 1), probe_max_circ(ab, bc, ca, depth - 1)});
}

struct Icosahedron {
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> faces;
};

Icosahedron make_icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double pts[12][3] = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                             {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                             {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  const int fc[20][3] = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                         {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                         {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                         {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  Icosahedron ico;
  for (const auto& p : pts) {
    Vec v(3);
    v << p[0], p[1], p[2];
    ico.vertices.push_back(v.normalized());
  }
  for (const auto& f : fc) ico.faces.push_back({f[0], f[1], f[2]});
  return ico;
}

NetScanResult scan_circle(double delta, std::size_t budget,
                          const std::function<double(const Vec&)>& value, int threads) {
  const auto k = static_cast<std::size_t>(std::ceil(1.1 * kPi / delta));
  if (k > budget) throw NetBudgetError("circle net exceeds the evaluation budget; increase mesh");
  std::vector<double> values(k);
  for_each_index(k, [&](std::size_t i) { values[i] = value(circle_point(2.0 * kPi * i / k)); },
                 threads);
  MinLoc best = min_index_serial(k, [&](std::size_t i) { return values[i]; });
  NetScanResult out;
  out.min_value = best.value;
  out.argmin = circle_point(2.0 * kPi * best.index / k);
  out.mesh = 1.1 * kPi / static_cast<double>(k);
  out.points = k;
  return out;
}

NetScanResult scan_icosahedral(double delta, std::size_t budget,
                               const std::function<double(const Vec&)>& value, int threads) {
  const Icosahedron ico = make_icosahedron();
  const auto& f0 = ico.faces[0];
  int depth = 0;
  while (true) {
    const double circ =
        probe_max_circ(ico.vertices[f0[0]], ico.vertices[f0[1]], ico.vertices[f0[2]], depth);
    const double evals = 20.0 * 3.0 * std::pow(4.0, depth);
    if (evals > static_cast<double>(budget))
      throw NetBudgetError("icosahedral net exceeds the evaluation budget; increase mesh");
    if (1.1 * circ <= delta) break;
    ++depth;
    if (depth > 16) throw NetBudgetError("icosahedral refinement too deep; increase mesh");
  }
  const std::size_t per_task = 3 * static_cast<std::size_t>(std::llround(std::pow(4.0, depth)));
  std::vector<TriangleStats> stats(ico.faces.size());
  for_each_index(ico.faces.size(), [&](std::size_t t) {
    const auto& f = ico.faces[t];
    scan_triangle(ico.vertices[f[0]], ico.vertices[f[1]], ico.vertices[f[2]],
                  depth, value, stats[t]);
  }, threads);
  NetScanResult out;
  MinLoc best;
  double max_circ = 0.0;
  for (std::size_t t = 0; t < stats.size(); ++t) {
    max_circ = std::max(max_circ, stats[t].max_circ);
    const MinLoc cur{stats[t].best.value, t * per_task + stats[t].best.index};
    if (improves(cur, best)) {
      best = cur;
      out.argmin = stats[t].argmin;
    }
    out.points += stats[t].seq;
  }
  out.min_value = best.value;
  out.mesh = 1.1 * max_circ;
  return out;
}

NetScanResult scan_angle_grid_s3(double delta, std::size_t budget,
                                 const std::function<double(const Vec&)>& value, int threads) {
  const double h = 2.0 * delta / (1.1 * std::sqrt(3.0));
  const auto m1 = static_cast<std::size_t>(std::ceil(kPi / h)) + 1;
  const auto m2 = m1;
  const auto m3 = static_cast<std::size_t>(std::ceil(2.0 * kPi / h));
  const double total_d = static_cast<double>(m1) * static_cast<double>(m2) * static_cast<double>(m3);
  if (total_d > static_cast<double>(budget))
    throw NetBudgetError("angle-grid net exceeds the evaluation budget; increase mesh");
  const std::size_t total = m1 * m2 * m3;
  const auto point_at = [&](std::size_t idx) {
    const std::size_t i = idx / (m2 * m3);
    const std::size_t rem = idx % (m2 * m3);
    const std::size_t j = rem / m3;
    const std::size_t l = rem % m3;
    const double t1 = kPi * static_cast<double>(i) / static_cast<double>(m1 - 1);
    const double t2 = kPi * static_cast<double>(j) / static_cast<double>(m2 - 1);
    const double t3 = 2.0 * kPi * static_cast<double>(l) / static_cast<double>(m3);
    Vec y(4);
    y << std::cos(t1), std::sin(t1) * std::cos(t2), std::sin(t1) * std::sin(t2) * std::cos(t3),
        std::sin(t1) * std::sin(t2) * std::sin(t3);
    return y;
  };
  MinLoc best = min_index(total, [&](std::size_t i) { return value(point_at(i)); }, threads);
  NetScanResult out;
  out.min_value = best.value;
  out.argmin = point_at(best.index);
  out.mesh = 1.1 * std::sqrt(3.0) * h / 2.0;
  out.points = total;
  return out;
}

}  // namespace

NetScanResult scan_sphere_net(int n, double delta, std::size_t budget,
                              const std::function<double(const Vec&)>& value, int threads) {
  if (delta <= 0.0) throw std::invalid_argument("scan_sphere_net: mesh must be positive");
  if (n == 1) {
    NetScanResult out;
    const Vec plus = Vec::Ones(1);
    const Vec minus = -plus;
    const double vp = value(plus);
    const double vm = value(minus);
    out.min_value = std::min(vp, vm);
    out.argmin = vp <= vm ? plus : minus;
    out.mesh = 0.0;
    out.points = 2;
    return out;
  }
  if (n == 2) return scan_circle(delta, budget, value, threads);
  if (n == 3) return scan_icosahedral(delta, budget, value, threads);
  if (n == 4) return scan_angle_grid_s3(delta, budget, value, threads);
  throw std::invalid_argument("scan_sphere_net: certification supports n <= 4");
}

}  // namespace skewcheck
