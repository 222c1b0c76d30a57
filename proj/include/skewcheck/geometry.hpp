#pragma once

#include <cstdint>
#include <optional>

#include "skewcheck/local_condition.hpp"
#include "skewcheck/polymap.hpp"

namespace skewcheck {

// Third-order jet of a curve at a parameter value.
struct CurveJet {
  double t0 = 0.0;
  Vec g1;  // gamma'
  Vec g2;  // gamma''
  Vec g3;  // gamma'''
};

// Jet of the parameterized curve t -> f(t) at t0 (n = 1 maps).
CurveJet curve_jet(const PolyMap& f, double t0);

// Normal-space-valued bilinear form at a: D^2 f_a followed by orthogonal
// projection onto the complement of the tangent space Im Df_a.
struct SecondFundamentalForm {
  Vec base;
  SymMultiMap form;   // projected bilinear map
  Mat tangent_frame;  // orthonormal basis of Im Df_a (N x n)
};

SecondFundamentalForm second_fundamental_form(const PolyMap& f, const Vec& a,
                                              double tol = 1e-9);

struct BilinearMinOptions {
  double tol = 1e-8;
  int samples = 4096;
  int starts = 8;
  int iterations = 60;
  std::uint64_t seed = 12345;
  int threads = 0;
};

struct BilinearMinResult {
  bool nonsingular = false;
  double min_norm = 0.0;
  Vec witness_x;
  Vec witness_y;
};

// min over unit (x, y) of ||form(x, y)||, by sampling plus alternating
// exact one-variable minimization (for fixed x the map in y is linear, so
// the best y is a smallest right-singular vector).
BilinearMinResult ii_nonsingular(const SecondFundamentalForm& form,
                                 const BilinearMinOptions& opts = {});

// Third derivative of f∘gamma at t0 from the curve jet:
//   Df_a(g3) + D^2 f_a(3 g2, g1) + D^3 f_a(g1, g1, g1).
Vec faa_di_bruno_third(const PolyMap& f, const Vec& a, const CurveJet& jet);

struct CurveConditionResult {
  bool holds = false;
  double min_residual = 0.0;
  Vec argmin_y;
};

// No curve through a can have vanishing third derivative iff for every unit
// y the column D^3 f_a(y,y,y) stays outside the span of
// [ Df_a | D^2 f_a(., y) ]; decided by minimizing the orthogonal-projection
// residual over the sphere.
CurveConditionResult curve_third_derivative_condition(const PolyMap& f, const Vec& a,
                                                      const LocalOptions& opts = {});

// det(g1, g2, g3) / ||g1 x g2||^2 for a curve jet in R^3. Throws
// std::domain_error when the curvature degenerates (||g1 x g2|| <= tol).
double torsion(const CurveJet& jet, double tol = 1e-12);

struct EquivalenceReport {
  LocalConditionReport local;
  BilinearMinResult ii;
  CurveConditionResult curve;
  bool equivalence_holds = false;
  bool borderline = false;  // some margin within 10x of its tolerance
  std::optional<double> curve_torsion;  // n = 1, N = 3 only
};

// Evaluates the three decisions (third-order condition; second fundamental
// form nonsingular; curve third-derivative condition) and checks the
// boolean identity local <=> (1) and (2).
EquivalenceReport equivalence_check(const PolyMap& f, const Vec& a,
                                    const LocalOptions& opts = {});

// Jet of f∘psi at a fixed point of psi, by the chain rule up to third order.
// `outer` is the jet of f at psi(a), `inner` the jet of psi at a.
Jet3 compose_jet3(const Jet3& outer, const Jet3& inner);

// Cubic polynomial map with the given jet at the given base point.
PolyMap polymap_from_jet3(const Jet3& jet, const Vec& at);

}  // namespace skewcheck
