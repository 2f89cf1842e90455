#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rholab/analysis.hpp"
#include "rholab/scenario.hpp"

namespace rholab {

inline constexpr const char* kToolVersion = "0.1.0";

// Named custom gauges usable from scenario and gauge files (closures cannot
// ride in JSON). Deliberately includes law violators so failure paths can be
// driven from data:
//   abs_s           |s|                  ignores t, fails strict monotonicity
//   sqrt_sum        sqrt(|s| + |t|)      concave, fails averaged subadditivity
//   phase_sensitive 2|s| + Re(s) + |t|   depends on more than the moduli
//   bounded_product |st| / (1 + |st|)    bounded, diverges nowhere
PhiSpec lookup_custom_phi(const std::string& name);
std::vector<std::string> custom_phi_names();

// Complex numbers ride as [re, im]. `where` names the position in messages.
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& where);

// Gauge <-> JSON. Parsing is strict: unknown keys are rejected by name,
// custom nodes resolve through the registry above.
nlohmann::json phi_to_json(const PhiSpec& spec);
PhiSpec phi_from_json(const nlohmann::json& j);

// A fully materialized scenario file: everything the analyze pipeline needs.
struct Scenario {
  ToleranceConfig tolerance;
  PhiSpec phi;
  RhoKind rho;
  MapTable table;
  std::vector<double> r_schedule;
  SamplerConfig sampler;
  std::uint64_t seed;
};

// Parses and materializes a scenario document:
//   version      1 (required)
//   tolerance    equality tolerance, default 1e-9
//   spaces       {"X": [ids], "Y": [ids]}
//   phi          gauge object
//   rho          "plus" | "max"
//   family_A     {"kind", "path", "functions", "closure_base_count"?}
//   map          {"planted": {"sigma": [x ids in Y order],
//                             "weights_rad": [angles]?}}
//                or {"pairs": [{"f": [...], "Tf": [...]}]}
//   perturbation {"pair_index", "point", "delta"}, optional
//   sampler      gauge sampling plan, optional
//   seed         preservation subsample seed, optional
//   r_schedule   radii for selectors, optional, default [0.5, 1, 2]
// Planted maps get peaking anchors via build_composition_map; explicit pair
// tables are taken verbatim with the codomain family derived from the
// images. A perturbation is applied last.
Scenario parse_scenario(const nlohmann::json& j);

// Demo scenario documents, reparsable by parse_scenario:
//   additive-basic        explicit additive list, twisted weights, passes
//   multiplicative-basic  multiplicative list, unit weight, passes
//   perturbed             additive-basic plus one modulus bump, fails
//   degenerate            a diagonal cone with no strong boundary points,
//                         hypothesis_failed
nlohmann::json demo_scenario(const std::string& template_name,
                             std::uint64_t seed);
std::vector<std::string> demo_template_names();

// Structured report of a finished analysis. Deterministic byte-for-byte for
// a given scenario: keys are sorted, numbers round-trip shortest, and wall
// time is deliberately absent.
nlohmann::json report_to_json(const AnalysisReport& report,
                              const ToleranceConfig& tol, std::uint64_t seed);

// Terminal rendering of the same report (stage table plus highlights).
std::string render_report_text(const AnalysisReport& report);

// The check-phi bundle: the two axioms, the axis/divergence probes, and the
// resulting case label ("axis_vanishing", "divergence", "unclassified").
struct PhiCheckResult {
  CheckVerdict inc;
  CheckVerdict con;
  CheckVerdict axis;
  CheckVerdict divergence;
  std::string case_label;
  bool pass = false;  // inc and con both pass; the case label is advisory
};

PhiCheckResult run_phi_checks(const PhiSpec& spec, const SamplerConfig& cfg,
                              const ToleranceConfig& tol);
nlohmann::json phi_check_to_json(const PhiSpec& spec,
                                 const PhiCheckResult& result,
                                 const ToleranceConfig& tol);
std::string render_phi_check_text(const PhiSpec& spec,
                                  const PhiCheckResult& result);

// Writes text via a sibling temp file and rename, so readers never observe a
// half-written document.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace rholab
