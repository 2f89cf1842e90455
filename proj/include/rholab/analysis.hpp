#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rholab/family.hpp"
#include "rholab/phi.hpp"
#include "rholab/space.hpp"

namespace rholab {

// One row of a finite correspondence f |-> Tf between two families.
struct MapPair {
  ComplexFunction domain_fn;
  ComplexFunction image_fn;
};

// A finite map between two function families, given extensionally as pairs.
// Construction validates that the correspondence is a function (equal inputs
// get equal outputs), that both columns are members of their families, that
// every listed domain function is covered, and that every listed codomain
// function is hit. A MapTable that exists is structurally sound; whether it
// preserves anything is the analysis' job.
class MapTable {
 public:
  MapTable(FunctionFamily domain, FunctionFamily codomain,
           std::vector<MapPair> pairs, const ToleranceConfig& tol);

  const FunctionFamily& domain() const { return domain_; }
  const FunctionFamily& codomain() const { return codomain_; }
  const std::vector<MapPair>& pairs() const { return pairs_; }
  FamilyPath path() const { return domain_.path(); }

 private:
  FunctionFamily domain_;
  FunctionFamily codomain_;
  std::vector<MapPair> pairs_;
};

struct NormPreservationReport {
  bool ok = false;
  // max over pairs of |  ||Tf|| - ||f||  | / (1 + ||f||)
  double max_deviation = 0.0;
  int worst_pair = -1;
};

// ||Tf|| == ||f|| for every pair, within eq_tol * (1 + ||f||).
NormPreservationReport check_norm_preservation(const MapTable& table,
                                               const ToleranceConfig& tol);

struct RhoPreservationReport {
  bool ok = false;
  // max over compared (i, j) of |rho(Tf_i, Tf_j) - rho(f_i, f_j)| scaled by
  // 1 / (1 + rho(f_i, f_j))
  double max_deviation = 0.0;
  int compared = 0;
  // All ordered pairs when their count fits the budget; a seeded subsample
  // otherwise.
  bool exhaustive = true;
  int worst_i = -1;
  int worst_j = -1;
};

// rho(Tf, Tg) == rho(f, g) over ordered pairs of table rows.
RhoPreservationReport check_rho_preservation(const MapTable& table,
                                             const PhiSpec& spec, RhoKind kind,
                                             const ToleranceConfig& tol,
                                             std::uint64_t seed = 1,
                                             int budget = 262144);

// Intersection of max-modulus sets over a peak-selected subset of table rows.
// An empty selector makes the intersection the whole space by convention;
// that case is flagged vacuous and downstream certification refuses to lean
// on it.
struct IntersectionResult {
  PointSet points;
  bool vacuous = false;
  int selector_count = 0;
};

// Rows whose IMAGE peaks at y0 with radius r (value peak on the additive
// path, modulus peak on the multiplicative path); intersects the max-modulus
// sets of their DOMAIN functions. Lives inside the domain space.
IntersectionResult intersection_I(const MapTable& table, const std::string& y0,
                                  double r, const ToleranceConfig& tol);

// Mirror image: rows whose DOMAIN peaks at x0; intersects max-modulus sets
// of their images. Lives inside the codomain space.
IntersectionResult intersection_J(const MapTable& table, const std::string& x0,
                                  double r, const ToleranceConfig& tol);

struct DualityViolation {
  std::string x0;
  std::string y0;
  double r = 0.0;
  bool x_in_I = false;
  bool y_in_J = false;
};

struct DualityReport {
  bool ok = false;
  int tested = 0;          // (x0, y0, r) triples with both selectors peopled
  int vacuous_triples = 0; // skipped because a selector was empty
  std::vector<DualityViolation> violations;  // capped at 16
};

// x0 in I_r(y0)  <=>  y0 in J_r(x0), over all point pairs and the given
// radii. Triples where either selector is empty carry no evidence and are
// counted, not judged.
DualityReport duality_check(const MapTable& table,
                            const std::vector<double>& r_schedule,
                            const ToleranceConfig& tol);

enum class RecoveryFailure { NonSingleton, RDependence, NotBijective, Vacuous };

const char* recovery_failure_name(RecoveryFailure kind);

struct RecoveryIssue {
  RecoveryFailure kind;
  std::string detail;
};

struct RecoveryResult {
  bool ok = false;
  // y0 -> x0 once every radius certifies the same singleton both ways.
  std::map<std::string, std::string> point_map;
  std::vector<RecoveryIssue> issues;
  std::vector<double> r_schedule;
};

// Attempts to certify a composition structure: for every codomain point y0
// and every scheduled radius, I_r(y0) must be the same non-vacuous singleton
// {x0}, J_r(x0) must certify {y0} back, and the resulting point map must be
// a bijection. Failures are recorded, not thrown.
RecoveryResult recover_phi(const MapTable& table,
                           const std::vector<double>& r_schedule,
                           const ToleranceConfig& tol);

struct ModulusIdentityReport {
  bool ok = false;
  // max over pairs and points of | |Tf(y)| - |f(phi(y))| | / (1 + ||f||)
  double max_deviation = 0.0;
  int worst_pair = -1;
  std::string worst_point;
};

// |Tf(y)| == |f(phi(y))| for every table row and codomain point, where phi
// is a recovered point map.
ModulusIdentityReport verify_modulus_identity(
    const MapTable& table, const std::map<std::string, std::string>& point_map,
    const ToleranceConfig& tol);

struct FipReport {
  bool ok = false;
  int testable = 0;    // same-sphere row pairs with a listed combined witness
  int untestable = 0;  // same-sphere row pairs without one
  std::vector<std::string> violations;  // capped at 16
};

// Finite-intersection evidence on norm spheres: when two domain functions of
// equal norm r admit a listed on-sphere combination (the midpoint on the
// additive path, the r-normalized product on the multiplicative path), their
// images must share a max-modulus point.
FipReport fip_check(const MapTable& table, const ToleranceConfig& tol);

struct TransportReport {
  bool ok = false;
  int tested = 0;   // (y0, r) cells with a peopled side
  int vacuous = 0;  // cells empty on both sides
  std::vector<std::string> violations;  // capped at 16
};

// Multiplicative path only: rows whose domain modulus-peaks at x0 = phi(y0)
// must be exactly the rows whose image modulus-peaks at y0, per scheduled
// radius.
TransportReport f_transport_check(
    const MapTable& table, const std::map<std::string, std::string>& point_map,
    const std::vector<double>& r_schedule, const ToleranceConfig& tol);

enum class StageStatus { Pass, Fail, Skipped, NotApplicable };

const char* stage_status_name(StageStatus status);

struct StageOutcome {
  std::string name;
  StageStatus status = StageStatus::Skipped;
  std::string detail;
};

enum class OverallVerdict { Pass, Fail, HypothesisFailed, Vacuous };

const char* overall_verdict_name(OverallVerdict verdict);

struct AnalysisOptions {
  std::vector<double> r_schedule = {0.5, 1.0, 2.0};
  SamplerConfig sampler;       // drives the gauge law checks
  std::uint64_t rho_seed = 1;  // subsampling seed for oversized tables
  int rho_budget = 262144;
};

struct AnalysisReport {
  OverallVerdict overall = OverallVerdict::Fail;
  std::vector<StageOutcome> stages;
  std::vector<double> r_schedule;
  RhoKind rho_kind = RhoKind::Max;

  BoundaryReport boundary_domain;
  BoundaryReport boundary_codomain;
  CheckVerdict inc_verdict;
  CheckVerdict con_verdict;
  CheckVerdict axis_verdict;
  CheckVerdict divergence_verdict;
  NormPreservationReport norm_report;
  RhoPreservationReport rho_report;
  RecoveryResult recovery;
  DualityReport duality;
  FipReport fip;
  TransportReport transport;
  ModulusIdentityReport modulus;
};

// The full pipeline, in dependency order:
//   hypothesis stages (strong boundaries cover both spaces; the gauge is
//   monotone; averaged subadditivity on the additive path; a usable
//   axis-vanishing or divergence case for the plus combination)
//   -> preservation stages (rho, then the derived norm identity)
//   -> structure stages (point-map recovery, duality, finite-intersection
//      evidence, modulus transport on the multiplicative path, the modulus
//      identity along the recovered map).
// A failed hypothesis stage yields HypothesisFailed and skips the rest; a
// failed later stage yields Fail and skips what depends on it. Recovery that
// fails purely for lack of evidence yields Vacuous.
AnalysisReport run_full_analysis(const MapTable& table, const PhiSpec& spec,
                                 RhoKind kind, const AnalysisOptions& opts,
                                 const ToleranceConfig& tol);

}  // namespace rholab
