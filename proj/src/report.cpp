#include "rholab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rholab/random.hpp"

namespace rholab {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw Error(where + " must be a JSON object");
  }
}

// Strict schema gate: every required key present, nothing outside the two
// lists tolerated. Unknown keys are reported by name so typos surface.
void expect_keys(const json& j, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional,
                 const std::string& where) {
  expect_object(j, where);
  for (const auto& key : required) {
    if (!j.contains(key)) {
      throw Error(where + ": missing required key '" + key + "'");
    }
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) {
      throw Error(where + ": unknown key '" + key + "'");
    }
  }
}

double number_at(const json& j, const std::string& key,
                 const std::string& where) {
  if (!j.at(key).is_number()) {
    throw Error(where + ": '" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

std::string string_at(const json& j, const std::string& key,
                      const std::string& where) {
  if (!j.at(key).is_string()) {
    throw Error(where + ": '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

PhiSpec lookup_custom_phi(const std::string& name) {
  if (name == "abs_s") {
    return PhiSpec::custom("abs_s",
                           [](Complex s, Complex) { return std::abs(s); });
  }
  if (name == "sqrt_sum") {
    return PhiSpec::custom("sqrt_sum", [](Complex s, Complex t) {
      return std::sqrt(std::abs(s) + std::abs(t));
    });
  }
  if (name == "phase_sensitive") {
    return PhiSpec::custom("phase_sensitive", [](Complex s, Complex t) {
      return 2.0 * std::abs(s) + s.real() + std::abs(t);
    });
  }
  if (name == "bounded_product") {
    return PhiSpec::custom("bounded_product", [](Complex s, Complex t) {
      const double p = std::abs(s * t);
      return p / (1.0 + p);
    });
  }
  throw Error("unknown custom gauge '" + name + "'; registered names: " +
              [] {
                std::string all;
                for (const auto& n : custom_phi_names()) {
                  if (!all.empty()) all += ", ";
                  all += n;
                }
                return all;
              }());
}

std::vector<std::string> custom_phi_names() {
  return {"abs_s", "sqrt_sum", "phase_sensitive", "bounded_product"};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw Error(where + " must be a two-number array [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json phi_to_json(const PhiSpec& spec) {
  json out;
  switch (spec.kind()) {
    case PhiSpec::Kind::Linear:
      out["kind"] = "linear";
      out["a"] = spec.param_a();
      out["b"] = spec.param_b();
      break;
    case PhiSpec::Kind::Power:
      out["kind"] = "power";
      out["a"] = spec.param_a();
      out["b"] = spec.param_b();
      break;
    case PhiSpec::Kind::PNorm:
      out["kind"] = "pnorm";
      out["p"] = spec.param_p();
      break;
    case PhiSpec::Kind::MaxOf:
      out["kind"] = "max_of";
      break;
    case PhiSpec::Kind::MinOf:
      out["kind"] = "min_of";
      break;
    case PhiSpec::Kind::Product:
      out["kind"] = "product";
      break;
    case PhiSpec::Kind::Sum: {
      out["kind"] = "sum";
      json terms = json::array();
      for (const auto& term : spec.terms()) terms.push_back(phi_to_json(term));
      out["terms"] = std::move(terms);
      break;
    }
    case PhiSpec::Kind::Custom:
      out["kind"] = "custom";
      out["name"] = spec.custom_label();
      break;
  }
  return out;
}

PhiSpec phi_from_json(const json& j) {
  const std::string where = "gauge";
  expect_object(j, where);
  if (!j.contains("kind")) {
    throw Error(where + ": missing required key 'kind'");
  }
  const std::string kind = string_at(j, "kind", where);

  if (kind == "linear" || kind == "power") {
    expect_keys(j, {"kind", "a", "b"}, {}, where);
    const double a = number_at(j, "a", where);
    const double b = number_at(j, "b", where);
    return kind == "linear" ? PhiSpec::linear(a, b) : PhiSpec::power(a, b);
  }
  if (kind == "pnorm") {
    expect_keys(j, {"kind", "p"}, {}, where);
    return PhiSpec::pnorm(number_at(j, "p", where));
  }
  if (kind == "max_of" || kind == "min_of" || kind == "product") {
    expect_keys(j, {"kind"}, {}, where);
    if (kind == "max_of") return PhiSpec::max_of();
    if (kind == "min_of") return PhiSpec::min_of();
    return PhiSpec::product();
  }
  if (kind == "sum") {
    expect_keys(j, {"kind", "terms"}, {}, where);
    if (!j.at("terms").is_array() || j.at("terms").empty()) {
      throw Error(where + ": 'terms' must be a nonempty array");
    }
    std::vector<PhiSpec> terms;
    for (const auto& term : j.at("terms")) terms.push_back(phi_from_json(term));
    return PhiSpec::sum(std::move(terms));
  }
  if (kind == "custom") {
    expect_keys(j, {"kind", "name"}, {}, where);
    return lookup_custom_phi(string_at(j, "name", where));
  }
  throw Error(where + ": unknown kind '" + kind + "'");
}

namespace {

RhoKind rho_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "plus") return RhoKind::Plus;
  if (j.is_string() && j.get<std::string>() == "max") return RhoKind::Max;
  throw Error("'rho' must be \"plus\" or \"max\"");
}

const char* rho_name(RhoKind kind) {
  return kind == RhoKind::Plus ? "plus" : "max";
}

SpacePtr space_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw Error(where + " must be a nonempty array of point ids");
  }
  std::vector<std::string> points;
  for (const auto& p : j) {
    if (!p.is_string()) {
      throw Error(where + " entries must be strings");
    }
    points.push_back(p.get<std::string>());
  }
  return make_space(points);
}

ComplexFunction function_from_json(const json& j, const SpacePtr& space,
                                   const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != space->size()) {
    std::ostringstream msg;
    msg << where << " must be an array of " << space->size()
        << " complex values (one per point)";
    throw Error(msg.str());
  }
  Eigen::VectorXcd values(space->size());
  for (int i = 0; i < space->size(); ++i) {
    std::ostringstream slot;
    slot << where << "[" << i << "]";
    values(i) = complex_from_json(j[i], slot.str());
  }
  return ComplexFunction(space, values);
}

json function_to_json(const ComplexFunction& f) {
  json out = json::array();
  for (int i = 0; i < f.space()->size(); ++i) {
    out.push_back(complex_to_json(f.at(i)));
  }
  return out;
}

FamilyKind family_kind_from_json(const std::string& name,
                                 const std::string& where) {
  for (FamilyKind kind :
       {FamilyKind::SubspaceSpan, FamilyKind::PositiveConeOfSpan,
        FamilyKind::MultiplicativeList, FamilyKind::ExplicitList}) {
    if (name == family_kind_name(kind)) return kind;
  }
  throw Error(where + ": unknown family kind '" + name + "'");
}

FamilyPath family_path_from_json(const std::string& name,
                                 const std::string& where) {
  if (name == "additive") return FamilyPath::Additive;
  if (name == "multiplicative") return FamilyPath::Multiplicative;
  throw Error(where + ": unknown path '" + name + "'");
}

FunctionFamily family_from_json(const json& j, const SpacePtr& space,
                                const ToleranceConfig& tol) {
  const std::string where = "family_A";
  expect_keys(j, {"kind", "path", "functions"}, {"closure_base_count"},
              where);
  const FamilyKind kind =
      family_kind_from_json(string_at(j, "kind", where), where);
  const FamilyPath path =
      family_path_from_json(string_at(j, "path", where), where);
  if (!j.at("functions").is_array() || j.at("functions").empty()) {
    throw Error(where + ": 'functions' must be a nonempty array");
  }
  std::vector<ComplexFunction> functions;
  for (std::size_t i = 0; i < j.at("functions").size(); ++i) {
    std::ostringstream slot;
    slot << where << ".functions[" << i << "]";
    functions.push_back(
        function_from_json(j.at("functions")[i], space, slot.str()));
  }
  int base = -1;
  if (j.contains("closure_base_count")) {
    if (!j.at("closure_base_count").is_number_integer()) {
      throw Error(where + ": 'closure_base_count' must be an integer");
    }
    base = j.at("closure_base_count").get<int>();
  }
  return FunctionFamily(space, kind, path, std::move(functions), tol, base);
}

std::vector<double> schedule_from_json(const json& j,
                                       const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw Error(where + " must be a nonempty array of radii");
  }
  std::vector<double> out;
  for (const auto& r : j) {
    if (!r.is_number() || !(r.get<double>() > 0.0) ||
        !std::isfinite(r.get<double>())) {
      throw Error(where + " entries must be finite numbers > 0");
    }
    out.push_back(r.get<double>());
  }
  return out;
}

SamplerConfig sampler_from_json(const json& j) {
  const std::string where = "sampler";
  expect_keys(j, {},
              {"seed", "grid_radius", "grid_steps", "random_samples",
               "strictness_margin"},
              where);
  SamplerConfig cfg;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      throw Error(where + ": 'seed' must be a nonnegative integer");
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("grid_radius")) {
    cfg.grid_radius = number_at(j, "grid_radius", where);
  }
  if (j.contains("grid_steps")) {
    if (!j.at("grid_steps").is_number_integer()) {
      throw Error(where + ": 'grid_steps' must be an integer");
    }
    cfg.grid_steps = j.at("grid_steps").get<int>();
  }
  if (j.contains("random_samples")) {
    if (!j.at("random_samples").is_number_integer()) {
      throw Error(where + ": 'random_samples' must be an integer");
    }
    cfg.random_samples = j.at("random_samples").get<int>();
  }
  if (j.contains("strictness_margin")) {
    cfg.strictness_margin = number_at(j, "strictness_margin", where);
  }
  cfg.validate();
  return cfg;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  expect_keys(j, {"version", "spaces", "phi", "rho", "family_A", "map"},
              {"tolerance", "perturbation", "sampler", "seed", "r_schedule"},
              "scenario");
  if (!j.at("version").is_number_integer() ||
      j.at("version").get<int>() != 1) {
    throw Error("scenario: 'version' must be the integer 1");
  }

  ToleranceConfig tol;
  if (j.contains("tolerance")) {
    tol.eq_tol = number_at(j, "tolerance", "scenario");
  }
  tol.validate();

  expect_keys(j.at("spaces"), {"X", "Y"}, {}, "spaces");
  SpacePtr X = space_from_json(j.at("spaces").at("X"), "spaces.X");
  SpacePtr Y = space_from_json(j.at("spaces").at("Y"), "spaces.Y");

  PhiSpec phi = phi_from_json(j.at("phi"));
  RhoKind rho = rho_from_json(j.at("rho"));
  FunctionFamily family = family_from_json(j.at("family_A"), X, tol);

  std::vector<double> r_schedule = {0.5, 1.0, 2.0};
  if (j.contains("r_schedule")) {
    r_schedule = schedule_from_json(j.at("r_schedule"), "r_schedule");
  }

  const json& map = j.at("map");
  expect_object(map, "map");
  if (map.contains("planted") == map.contains("pairs")) {
    throw Error("map: provide exactly one of 'planted' or 'pairs'");
  }

  auto table = [&]() -> MapTable {
    if (map.contains("planted")) {
      expect_keys(map, {"planted"}, {}, "map");
      const json& p = map.at("planted");
      expect_keys(p, {"sigma"}, {"weights_rad"}, "map.planted");
      if (!p.at("sigma").is_array() ||
          static_cast<int>(p.at("sigma").size()) != Y->size()) {
        std::ostringstream msg;
        msg << "map.planted: 'sigma' must list " << Y->size()
            << " domain point ids, one per codomain point";
        throw Error(msg.str());
      }
      PlantedMap planted;
      for (const auto& id : p.at("sigma")) {
        if (!id.is_string()) {
          throw Error("map.planted: 'sigma' entries must be point ids");
        }
        planted.sigma.push_back(X->index_of(id.get<std::string>()));
      }
      if (p.contains("weights_rad")) {
        if (!p.at("weights_rad").is_array() ||
            static_cast<int>(p.at("weights_rad").size()) != Y->size()) {
          throw Error("map.planted: 'weights_rad' must list one angle per "
                      "codomain point");
        }
        for (const auto& w : p.at("weights_rad")) {
          if (!w.is_number()) {
            throw Error("map.planted: 'weights_rad' entries must be numbers");
          }
          planted.weights_rad.push_back(w.get<double>());
        }
      } else {
        planted.weights_rad.assign(Y->size(), 0.0);
      }
      return build_composition_map(family, Y, planted, tol, r_schedule);
    }

    expect_keys(map, {"pairs"}, {}, "map");
    if (!map.at("pairs").is_array() || map.at("pairs").empty()) {
      throw Error("map: 'pairs' must be a nonempty array");
    }
    std::vector<MapPair> pairs;
    std::vector<ComplexFunction> images;
    for (std::size_t i = 0; i < map.at("pairs").size(); ++i) {
      std::ostringstream where;
      where << "map.pairs[" << i << "]";
      const json& row = map.at("pairs")[i];
      expect_keys(row, {"f", "Tf"}, {}, where.str());
      auto f = function_from_json(row.at("f"), X, where.str() + ".f");
      auto image = function_from_json(row.at("Tf"), Y, where.str() + ".Tf");
      pairs.push_back({f, image});
      bool seen = false;
      for (const auto& g : images) {
        if (sup_distance(g, image) <= tol.eq_tol * (1.0 + sup_norm(image))) {
          seen = true;
          break;
        }
      }
      if (!seen) images.push_back(image);
    }
    // The codomain family is read off the images. A multiplicative list
    // assembled this way gets no closure promise.
    const int base =
        family.kind() == FamilyKind::MultiplicativeList ? 0 : -1;
    FunctionFamily codomain(Y, family.kind(), family.path(),
                            std::move(images), tol, base);
    return MapTable(family, std::move(codomain), std::move(pairs), tol);
  }();

  if (j.contains("perturbation")) {
    const json& p = j.at("perturbation");
    expect_keys(p, {"pair_index", "point", "delta"}, {}, "perturbation");
    if (!p.at("pair_index").is_number_integer()) {
      throw Error("perturbation: 'pair_index' must be an integer");
    }
    Perturbation pert;
    pert.pair_index = p.at("pair_index").get<int>();
    pert.point = string_at(p, "point", "perturbation");
    pert.delta = complex_from_json(p.at("delta"), "perturbation.delta");
    table = perturb_table(table, pert, tol);
  }

  SamplerConfig sampler;
  if (j.contains("sampler")) sampler = sampler_from_json(j.at("sampler"));

  std::uint64_t seed = 1;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      throw Error("scenario: 'seed' must be a nonnegative integer");
    }
    seed = j.at("seed").get<std::uint64_t>();
  }

  return Scenario{tol,        std::move(phi), rho, std::move(table),
                  r_schedule, sampler,        seed};
}

std::vector<std::string> demo_template_names() {
  return {"additive-basic", "multiplicative-basic", "perturbed", "degenerate"};
}

json demo_scenario(const std::string& template_name, std::uint64_t seed) {
  ToleranceConfig tol;
  auto X = make_space({"x1", "x2", "x3"});
  const json spaces = {{"X", {"x1", "x2", "x3"}}, {"Y", {"y1", "y2", "y3"}}};
  const json sigma = {"x2", "x3", "x1"};

  auto family_json = [&](const FunctionFamily& fam) {
    json out;
    out["kind"] = family_kind_name(fam.kind());
    out["path"] = family_path_name(fam.path());
    json fns = json::array();
    for (const auto& f : fam.functions()) fns.push_back(function_to_json(f));
    out["functions"] = std::move(fns);
    if (fam.kind() == FamilyKind::MultiplicativeList) {
      out["closure_base_count"] = fam.closure_base_count();
    }
    return out;
  };

  if (template_name == "additive-basic" || template_name == "perturbed") {
    auto fam = random_family(X, FamilyKind::ExplicitList, FamilyPath::Additive,
                             15, seed, tol);
    Rng rng(seed + 1);
    json weights = json::array();
    for (int i = 0; i < 3; ++i) weights.push_back(rng.angle());

    json out;
    out["version"] = 1;
    out["tolerance"] = tol.eq_tol;
    out["spaces"] = spaces;
    out["phi"] = {{"kind", "linear"}, {"a", 1.0}, {"b", 1.0}};
    out["rho"] = "max";
    out["family_A"] = family_json(fam);
    out["map"] = {{"planted",
                   {{"sigma", sigma}, {"weights_rad", std::move(weights)}}}};
    out["seed"] = seed;
    if (template_name == "perturbed") {
      // A 0.35 modulus bump at a point where the first image vanishes: norms
      // of listed members stay within the anchor range, so some cross rho
      // must move and the preservation stage has to fail.
      out["perturbation"] = {{"pair_index", 0},
                             {"point", "y1"},
                             {"delta", {0.35, 0.0}}};
    }
    return out;
  }

  if (template_name == "multiplicative-basic") {
    auto fam = random_family(X, FamilyKind::MultiplicativeList,
                             FamilyPath::Multiplicative, 12, seed, tol);
    json out;
    out["version"] = 1;
    out["tolerance"] = tol.eq_tol;
    out["spaces"] = spaces;
    out["phi"] = {{"kind", "product"}};
    out["rho"] = "plus";
    out["family_A"] = family_json(fam);
    out["map"] = {{"planted",
                   {{"sigma", sigma},
                    {"weights_rad", {0.0, 0.0, 0.0}}}}};
    out["seed"] = seed;
    return out;
  }

  if (template_name == "degenerate") {
    json out;
    out["version"] = 1;
    out["tolerance"] = tol.eq_tol;
    out["spaces"] = spaces;
    out["phi"] = {{"kind", "linear"}, {"a", 1.0}, {"b", 1.0}};
    out["rho"] = "max";
    // The diagonal cone separates no points: every stage after the boundary
    // hypothesis is unreachable by design.
    out["family_A"] = {{"kind", "positive_cone"},
                       {"path", "additive"},
                       {"functions",
                        {{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}}}};
    out["map"] = {{"planted", {{"sigma", {"x1", "x2", "x3"}}}}};
    out["seed"] = seed;
    return out;
  }

  throw Error("unknown demo template '" + template_name +
              "'; available: additive-basic, multiplicative-basic, "
              "perturbed, degenerate");
}

namespace {

const char* check_status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

json verdict_to_json(const CheckVerdict& verdict) {
  json out;
  out["status"] = check_status_name(verdict.status);
  out["samples"] = verdict.samples_used;
  if (verdict.counterexample) {
    json ce;
    ce["law"] = verdict.counterexample->law;
    json inputs = json::array();
    for (Complex z : verdict.counterexample->inputs) {
      inputs.push_back(complex_to_json(z));
    }
    ce["inputs"] = std::move(inputs);
    ce["lhs"] = verdict.counterexample->lhs;
    ce["rhs"] = verdict.counterexample->rhs;
    out["counterexample"] = std::move(ce);
  }
  return out;
}

json boundary_to_json(const BoundaryReport& report) {
  json out;
  out["hypothesis_ok"] = report.hypothesis_ok;
  out["witness_mode"] = report.witness_mode;
  out["points"] = json::array();
  for (const auto& p : report.delta_points) out["points"].push_back(p);
  return out;
}

}  // namespace

json report_to_json(const AnalysisReport& report, const ToleranceConfig& tol,
                    std::uint64_t seed) {
  json out;
  out["tool"] = "rholab";
  out["tool_version"] = kToolVersion;
  out["overall"] = overall_verdict_name(report.overall);
  out["rho_kind"] = rho_name(report.rho_kind);
  out["r_schedule"] = report.r_schedule;
  out["tolerance"] = tol.eq_tol;
  out["seed"] = seed;

  json stages = json::array();
  for (const auto& s : report.stages) {
    stages.push_back({{"name", s.name},
                      {"status", stage_status_name(s.status)},
                      {"detail", s.detail}});
  }
  out["stages"] = std::move(stages);

  out["boundary"] = {{"domain", boundary_to_json(report.boundary_domain)},
                     {"codomain", boundary_to_json(report.boundary_codomain)}};
  out["gauge"] = {{"inc", verdict_to_json(report.inc_verdict)},
                  {"con", verdict_to_json(report.con_verdict)},
                  {"axis_vanishing", verdict_to_json(report.axis_verdict)},
                  {"divergence", verdict_to_json(report.divergence_verdict)}};
  out["preservation"] = {
      {"norm",
       {{"ok", report.norm_report.ok},
        {"max_deviation", report.norm_report.max_deviation},
        {"worst_pair", report.norm_report.worst_pair}}},
      {"rho",
       {{"ok", report.rho_report.ok},
        {"max_deviation", report.rho_report.max_deviation},
        {"compared", report.rho_report.compared},
        {"exhaustive", report.rho_report.exhaustive},
        {"worst_i", report.rho_report.worst_i},
        {"worst_j", report.rho_report.worst_j}}}};

  json issues = json::array();
  for (const auto& issue : report.recovery.issues) {
    issues.push_back({{"kind", recovery_failure_name(issue.kind)},
                      {"detail", issue.detail}});
  }
  json point_map = json::object();
  for (const auto& [y, x] : report.recovery.point_map) point_map[y] = x;
  out["recovery"] = {{"ok", report.recovery.ok},
                     {"point_map", std::move(point_map)},
                     {"issues", std::move(issues)}};

  json duality_violations = json::array();
  for (const auto& v : report.duality.violations) {
    duality_violations.push_back({{"x0", v.x0},
                                  {"y0", v.y0},
                                  {"r", v.r},
                                  {"x_in_I", v.x_in_I},
                                  {"y_in_J", v.y_in_J}});
  }
  out["duality"] = {{"ok", report.duality.ok},
                    {"tested", report.duality.tested},
                    {"vacuous_triples", report.duality.vacuous_triples},
                    {"violations", std::move(duality_violations)}};
  out["fip"] = {{"ok", report.fip.ok},
                {"testable", report.fip.testable},
                {"untestable", report.fip.untestable},
                {"violations", report.fip.violations}};
  out["transport"] = {{"ok", report.transport.ok},
                      {"tested", report.transport.tested},
                      {"vacuous", report.transport.vacuous},
                      {"violations", report.transport.violations}};
  out["modulus_identity"] = {
      {"ok", report.modulus.ok},
      {"max_deviation", report.modulus.max_deviation},
      {"worst_pair", report.modulus.worst_pair},
      {"worst_point", report.modulus.worst_point}};
  return out;
}

std::string render_report_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "overall: " << overall_verdict_name(report.overall) << "\n\n";
  for (const auto& s : report.stages) {
    out << "  " << std::left << std::setw(20) << s.name << std::setw(16)
        << stage_status_name(s.status) << s.detail << "\n";
  }
  if (!report.recovery.point_map.empty()) {
    out << "\npoint map:";
    for (const auto& [y, x] : report.recovery.point_map) {
      out << " " << y << " -> " << x;
    }
    out << "\n";
  }
  return out.str();
}

PhiCheckResult run_phi_checks(const PhiSpec& spec, const SamplerConfig& cfg,
                              const ToleranceConfig& tol) {
  PhiCheckResult result;
  result.inc = check_inc(spec, cfg, tol);
  result.con = check_con(spec, cfg, tol);
  result.axis = check_axis_vanishing(spec, cfg, tol);
  result.divergence = check_divergence(spec, cfg, tol);
  if (result.axis.status == CheckStatus::Pass) {
    result.case_label = "axis_vanishing";
  } else if (result.divergence.status == CheckStatus::Pass) {
    result.case_label = "divergence";
  } else {
    result.case_label = "unclassified";
  }
  result.pass = result.inc.status == CheckStatus::Pass &&
                result.con.status == CheckStatus::Pass;
  return result;
}

json phi_check_to_json(const PhiSpec& spec, const PhiCheckResult& result,
                       const ToleranceConfig& tol) {
  json out;
  out["tool"] = "rholab";
  out["tool_version"] = kToolVersion;
  out["phi"] = phi_to_json(spec);
  out["describe"] = spec.describe();
  out["tolerance"] = tol.eq_tol;
  out["checks"] = {{"inc", verdict_to_json(result.inc)},
                   {"con", verdict_to_json(result.con)},
                   {"axis_vanishing", verdict_to_json(result.axis)},
                   {"divergence", verdict_to_json(result.divergence)}};
  out["case"] = result.case_label;
  out["pass"] = result.pass;
  return out;
}

std::string render_phi_check_text(const PhiSpec& spec,
                                  const PhiCheckResult& result) {
  std::ostringstream out;
  out << "gauge: " << spec.describe() << "\n";
  auto line = [&](const char* label, const CheckVerdict& v) {
    out << "  " << std::left << std::setw(16) << label
        << check_status_name(v.status) << "  (" << v.samples_used
        << " samples)";
    if (v.counterexample) {
      out << "  " << v.counterexample->law << ": lhs "
          << v.counterexample->lhs << ", rhs " << v.counterexample->rhs;
    }
    out << "\n";
  };
  line("inc", result.inc);
  line("con", result.con);
  line("axis_vanishing", result.axis);
  line("divergence", result.divergence);
  out << "case: " << result.case_label << "\n";
  out << "verdict: " << (result.pass ? "pass" : "fail") << "\n";
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.flush()) throw Error("failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("failed to move '" + tmp + "' into place");
  }
}

}  // namespace rholab
