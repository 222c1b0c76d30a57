#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "skewcheck/polymap.hpp"
#include "skewcheck/types.hpp"

namespace skewcheck {

// N x (2n+1) boundary matrix [ Df_a | D^2 f_a(y, .) | D^3 f_a(y, y, y) ]
// for unit y; injectivity for every unit y is the third-order condition
// the rest of the library certifies or refutes.
Mat boundary_matrix(const PolyMap& f, const Vec& a, const Vec& y);
Mat boundary_matrix_from_jet(const Jet3& jet, const Vec& y);

struct KernelWitness {
  Vec v1;
  Vec v2;
  double lambda = 0.0;
  double residual = 0.0;   // ||matrix * witness||
  double sigma_min = 0.0;
};

// Smallest-singular right vector split into (v1, v2, lambda), returned when
// sigma_min <= rel_tol * sigma_max.
std::optional<KernelWitness> kernel_witness(const PolyMap& f, const Vec& a, const Vec& y,
                                            double rel_tol = 1e-8);

struct LocalOptions {
  double tol = 1e-8;        // absolute threshold on the sphere minimum
  int samples_per_dim = 2048;
  int starts = 8;
  int descent_steps = 200;
  std::uint64_t seed = 12345;
  int threads = 0;
};

struct CertifyOptions {
  double mesh = 1e-3;       // requested net covering radius
  double tol = 1e-8;
  std::size_t budget = 30000000;  // net evaluation budget
  std::uint64_t seed = 12345;
  int threads = 0;
};

enum class Holds { True, False, Unknown };

const char* holds_name(Holds h);

struct LocalConditionReport {
  Holds holds = Holds::Unknown;
  double min_sigma = 0.0;
  Vec argmin_y;
  std::string mode;         // "heuristic" or "certified"
  double mesh = 0.0;        // certified: measured covering radius (with safety)
  double lipschitz = 0.0;   // certified: estimated Lipschitz constant
  std::optional<KernelWitness> witness;
  std::string reason;       // structural outcomes
  double tol = 0.0;
  std::size_t evaluations = 0;
};

// Heuristic decision: estimate min over unit y of sigma_min(boundary matrix)
// by sphere sampling plus local refinement; holds iff the estimate exceeds
// opts.tol. The estimate is an upper bound of the true minimum, so a
// reported failure always comes with a witness.
LocalConditionReport check_local_condition(const PolyMap& f, const Vec& a,
                                           const LocalOptions& opts = {});

// Certified decision over a sphere net: holds=True when
// net minimum > lipschitz * mesh. A net cannot certify failure; False is
// only reported with a confirmed kernel witness, otherwise Unknown.
LocalConditionReport certify_local_condition(const PolyMap& f, const Vec& a,
                                             const CertifyOptions& opts = {});

}  // namespace skewcheck
