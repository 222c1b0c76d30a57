#include "skewcheck/report.hpp"

namespace skewcheck {

Json to_json(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Json to_json(const KernelWitness& w) {
  return Json{{"v1", to_json(w.v1)},
              {"v2", to_json(w.v2)},
              {"lambda", w.lambda},
              {"residual", w.residual}};
}

Json report_json(const LocalConditionReport& r) {
  Json j;
  j["kind"] = "local";
  j["holds"] = holds_name(r.holds);
  j["min_sigma"] = r.min_sigma;
  j["argmin_y"] = to_json(r.argmin_y);
  j["mode"] = r.mode;
  if (r.mode == "certified") {
    j["mesh"] = r.mesh;
    j["lipschitz"] = r.lipschitz;
    j["notes"] = "lipschitz uses sampled operator-norm estimates";
  }
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["tol"] = r.tol;
  return j;
}

Json report_json(const SweepReport& r) {
  Json j;
  j["kind"] = "sweep";
  j["pass"] = r.pass;
  j["min_sigma"] = r.min_sigma;
  j["worst_pair"] = Json::array({to_json(r.worst_p), to_json(r.worst_q)});
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  j["r"] = r.r;
  j["non_skew"] = r.non_skew;
  j["cross_checks"] = r.cross_checks;
  j["cross_disagreements"] = r.cross_disagreements;
  if (r.non_skew > 0) {
    Json f;
    f["kind"] = failure_kind_name(r.worst_failure.kind);
    f["v1"] = to_json(r.worst_failure.v1);
    f["v2"] = to_json(r.worst_failure.v2);
    f["lambda"] = r.worst_failure.lambda;
    j["worst_failure"] = f;
  }
  j["notes"] = "min_sigma is a basis-dependent margin, not a canonical quantity";
  return j;
}

Json report_json(const GenericityReport& r) {
  Json j;
  j["kind"] = "genericity";
  j["n"] = r.n;
  j["N"] = r.N;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["min_sigma_quartiles"] = Json::array({r.quartiles[0], r.quartiles[1], r.quartiles[2]});
  j["seed"] = r.seed;
  j["asserted"] = r.asserted;
  j["pass"] = r.pass;
  return j;
}

Json report_json(const EquivalenceReport& r) {
  Json j;
  j["kind"] = "geometry";
  j["local_holds"] = r.local.holds == Holds::True;
  j["ii_nonsingular"] = r.ii.nonsingular;
  j["curve_condition"] = r.curve.holds;
  j["equivalence_holds"] = r.equivalence_holds;
  j["borderline"] = r.borderline;
  j["local_min_sigma"] = r.local.min_sigma;
  j["ii_min_norm"] = r.ii.min_norm;
  j["curve_min_residual"] = r.curve.min_residual;
  if (r.curve_torsion) j["torsion"] = *r.curve_torsion;
  return j;
}

Json report_json(const PairSkewResult& skew, const FailureClassification& cls) {
  Json j;
  j["kind"] = "pair";
  j["skew"] = skew.skew;
  j["sigma_min"] = skew.sigma_min;
  j["sigma_max"] = skew.sigma_max;
  j["failure_kind"] = failure_kind_name(cls.kind);
  if (cls.kind != FailureKind::None) {
    j["witness"] = Json{{"v1", to_json(cls.v1)},
                        {"v2", to_json(cls.v2)},
                        {"lambda", cls.lambda}};
  }
  if (!skew.reason.empty()) j["reason"] = skew.reason;
  return j;
}

Json report_json(const TransversalityResult& r, int n, int N, double tol) {
  Json j;
  j["kind"] = "transversality";
  j["n"] = n;
  j["N"] = N;
  j["injective"] = r.injective;
  j["sigma_min"] = r.sigma_min;
  j["unconstrained_kernel_dim"] = r.unconstrained_kernel_dim;
  j["tol"] = tol;
  return j;
}

std::string finalize_report(Json report, const Json& config_echo) {
  report["config"] = config_echo;
  report["version"] = kVersion;
  return report.dump(2) + "\n";
}

}  // namespace skewcheck
