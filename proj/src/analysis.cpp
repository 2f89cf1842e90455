#include "rholab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "rholab/random.hpp"

namespace rholab {

namespace {

constexpr std::size_t kMaxViolations = 16;

bool on_space(const ComplexFunction& f, const SpacePtr& sp) {
  return f.space() == sp || *f.space() == *sp;
}

double match_tol(const ComplexFunction& f, const ToleranceConfig& tol) {
  return tol.eq_tol * (1.0 + sup_norm(f));
}

// Index of a table row whose domain function matches f, or -1.
int find_domain_row(const std::vector<MapPair>& pairs,
                    const ComplexFunction& f, const ToleranceConfig& tol) {
  const double bound = match_tol(f, tol);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (sup_distance(pairs[i].domain_fn, f) <= bound) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

// Peak selector along the table's structural path: pinned positive value on
// the additive path, pinned modulus on the multiplicative path.
bool peaks(FamilyPath path, const ComplexFunction& f, const std::string& p,
           double r, const ToleranceConfig& tol) {
  return path == FamilyPath::Additive ? value_peaks_at(f, p, r, tol)
                                      : modulus_peaks_at(f, p, r, tol);
}

std::string format_points(const PointSet& points) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& p : points) {
    if (!first) out << ", ";
    out << p;
    first = false;
  }
  out << "}";
  return out.str();
}

void validate_schedule(const std::vector<double>& r_schedule) {
  if (r_schedule.empty()) {
    throw Error("radius schedule must not be empty");
  }
  for (double r : r_schedule) {
    if (!std::isfinite(r) || r <= 0.0) {
      std::ostringstream msg;
      msg << "radius schedule entries must be finite and > 0, got " << r;
      throw Error(msg.str());
    }
  }
}

}  // namespace

MapTable::MapTable(FunctionFamily domain, FunctionFamily codomain,
                   std::vector<MapPair> pairs, const ToleranceConfig& tol)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      pairs_(std::move(pairs)) {
  tol.validate();
  if (pairs_.empty()) throw Error("MapTable: needs at least one pair");
  if (domain_.path() != codomain_.path()) {
    throw Error("MapTable: domain and codomain families follow different "
                "structural paths");
  }

  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (!on_space(pairs_[i].domain_fn, domain_.space())) {
      std::ostringstream msg;
      msg << "MapTable: pair #" << i << " domain function lives off the "
             "domain space";
      throw Error(msg.str());
    }
    if (!on_space(pairs_[i].image_fn, codomain_.space())) {
      std::ostringstream msg;
      msg << "MapTable: pair #" << i << " image function lives off the "
             "codomain space";
      throw Error(msg.str());
    }
    if (!membership(domain_, pairs_[i].domain_fn, tol)) {
      std::ostringstream msg;
      msg << "MapTable: pair #" << i << " domain function is not a member "
             "of the domain family";
      throw Error(msg.str());
    }
    if (!membership(codomain_, pairs_[i].image_fn, tol)) {
      std::ostringstream msg;
      msg << "MapTable: pair #" << i << " image function is not a member "
             "of the codomain family";
      throw Error(msg.str());
    }
  }

  // Equal inputs must map to equal outputs, or the table is not a function.
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
      if (sup_distance(pairs_[i].domain_fn, pairs_[j].domain_fn) <=
              match_tol(pairs_[i].domain_fn, tol) &&
          sup_distance(pairs_[i].image_fn, pairs_[j].image_fn) >
              match_tol(pairs_[i].image_fn, tol)) {
        std::ostringstream msg;
        msg << "MapTable: pairs #" << i << " and #" << j
            << " share a domain function but disagree on its image";
        throw Error(msg.str());
      }
    }
  }

  // Coverage both ways: the table must speak for every listed function.
  for (std::size_t k = 0; k < domain_.functions().size(); ++k) {
    if (find_domain_row(pairs_, domain_.functions()[k], tol) < 0) {
      std::ostringstream msg;
      msg << "MapTable: listed domain function #" << k
          << " is covered by no pair";
      throw Error(msg.str());
    }
  }
  for (std::size_t k = 0; k < codomain_.functions().size(); ++k) {
    const auto& g = codomain_.functions()[k];
    const double bound = match_tol(g, tol);
    bool hit = false;
    for (const auto& p : pairs_) {
      if (sup_distance(p.image_fn, g) <= bound) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      std::ostringstream msg;
      msg << "MapTable: listed codomain function #" << k
          << " is hit by no pair";
      throw Error(msg.str());
    }
  }
}

NormPreservationReport check_norm_preservation(const MapTable& table,
                                               const ToleranceConfig& tol) {
  tol.validate();
  NormPreservationReport report;
  report.ok = true;
  for (std::size_t i = 0; i < table.pairs().size(); ++i) {
    const double nf = sup_norm(table.pairs()[i].domain_fn);
    const double ng = sup_norm(table.pairs()[i].image_fn);
    const double scaled = std::abs(ng - nf) / (1.0 + nf);
    if (scaled > report.max_deviation) {
      report.max_deviation = scaled;
      report.worst_pair = static_cast<int>(i);
    }
  }
  report.ok = report.max_deviation <= tol.eq_tol;
  return report;
}

RhoPreservationReport check_rho_preservation(const MapTable& table,
                                             const PhiSpec& spec, RhoKind kind,
                                             const ToleranceConfig& tol,
                                             std::uint64_t seed, int budget) {
  tol.validate();
  if (budget < 1) throw Error("check_rho_preservation: budget must be >= 1");

  RhoPreservationReport report;
  const auto& pairs = table.pairs();
  const int m = static_cast<int>(pairs.size());

  auto compare = [&](int i, int j) {
    const double before = rho(spec, kind, pairs[i].domain_fn,
                              pairs[j].domain_fn);
    const double after = rho(spec, kind, pairs[i].image_fn,
                             pairs[j].image_fn);
    const double scaled = std::abs(after - before) / (1.0 + before);
    if (scaled > report.max_deviation) {
      report.max_deviation = scaled;
      report.worst_i = i;
      report.worst_j = j;
    }
    ++report.compared;
  };

  if (static_cast<long>(m) * m <= budget) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) compare(i, j);
    }
  } else {
    report.exhaustive = false;
    Rng rng(seed);
    for (int n = 0; n < budget; ++n) {
      compare(rng.uniform_int(m), rng.uniform_int(m));
    }
  }

  report.ok = report.max_deviation <= tol.eq_tol;
  return report;
}

IntersectionResult intersection_I(const MapTable& table, const std::string& y0,
                                  double r, const ToleranceConfig& tol) {
  tol.validate();
  table.codomain().space()->index_of(y0);  // reject unknown points
  IntersectionResult result;
  result.points = ambient_choquet(*table.domain().space());
  for (const auto& pair : table.pairs()) {
    if (!peaks(table.path(), pair.image_fn, y0, r, tol)) continue;
    ++result.selector_count;
    PointSet keep;
    const PointSet m = max_modulus_set(pair.domain_fn, tol);
    std::set_intersection(result.points.begin(), result.points.end(),
                          m.begin(), m.end(),
                          std::inserter(keep, keep.begin()));
    result.points = std::move(keep);
  }
  result.vacuous = result.selector_count == 0;
  return result;
}

IntersectionResult intersection_J(const MapTable& table, const std::string& x0,
                                  double r, const ToleranceConfig& tol) {
  tol.validate();
  table.domain().space()->index_of(x0);
  IntersectionResult result;
  result.points = ambient_choquet(*table.codomain().space());
  for (const auto& pair : table.pairs()) {
    if (!peaks(table.path(), pair.domain_fn, x0, r, tol)) continue;
    ++result.selector_count;
    PointSet keep;
    const PointSet m = max_modulus_set(pair.image_fn, tol);
    std::set_intersection(result.points.begin(), result.points.end(),
                          m.begin(), m.end(),
                          std::inserter(keep, keep.begin()));
    result.points = std::move(keep);
  }
  result.vacuous = result.selector_count == 0;
  return result;
}

DualityReport duality_check(const MapTable& table,
                            const std::vector<double>& r_schedule,
                            const ToleranceConfig& tol) {
  tol.validate();
  validate_schedule(r_schedule);
  DualityReport report;

  const auto& xs = table.domain().space()->points();
  const auto& ys = table.codomain().space()->points();
  for (double r : r_schedule) {
    std::vector<IntersectionResult> is;
    is.reserve(ys.size());
    for (const auto& y0 : ys) is.push_back(intersection_I(table, y0, r, tol));
    std::vector<IntersectionResult> js;
    js.reserve(xs.size());
    for (const auto& x0 : xs) js.push_back(intersection_J(table, x0, r, tol));

    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      for (std::size_t yi = 0; yi < ys.size(); ++yi) {
        if (is[yi].vacuous || js[xi].vacuous) {
          ++report.vacuous_triples;
          continue;
        }
        ++report.tested;
        const bool x_in = is[yi].points.count(xs[xi]) > 0;
        const bool y_in = js[xi].points.count(ys[yi]) > 0;
        if (x_in != y_in &&
            report.violations.size() < kMaxViolations) {
          report.violations.push_back({xs[xi], ys[yi], r, x_in, y_in});
        }
      }
    }
  }

  report.ok = report.violations.empty();
  return report;
}

const char* recovery_failure_name(RecoveryFailure kind) {
  switch (kind) {
    case RecoveryFailure::NonSingleton: return "non_singleton";
    case RecoveryFailure::RDependence: return "radius_dependence";
    case RecoveryFailure::NotBijective: return "not_bijective";
    case RecoveryFailure::Vacuous: return "vacuous";
  }
  return "?";
}

RecoveryResult recover_phi(const MapTable& table,
                           const std::vector<double>& r_schedule,
                           const ToleranceConfig& tol) {
  tol.validate();
  validate_schedule(r_schedule);
  RecoveryResult result;
  result.r_schedule = r_schedule;

  bool per_point_ok = true;
  for (const auto& y0 : table.codomain().space()->points()) {
    bool y_ok = true;
    std::string x0;
    for (double r : r_schedule) {
      auto inter = intersection_I(table, y0, r, tol);
      std::ostringstream where;
      where << "y0 = " << y0 << ", r = " << r;
      if (inter.vacuous) {
        result.issues.push_back(
            {RecoveryFailure::Vacuous,
             where.str() + ": no image peaks there, nothing to intersect"});
        y_ok = false;
        continue;
      }
      if (inter.points.size() != 1) {
        result.issues.push_back(
            {RecoveryFailure::NonSingleton,
             where.str() + ": intersection is " +
                 format_points(inter.points) + ", expected a singleton"});
        y_ok = false;
        continue;
      }
      const std::string candidate = *inter.points.begin();
      if (x0.empty()) {
        x0 = candidate;
      } else if (candidate != x0) {
        result.issues.push_back(
            {RecoveryFailure::RDependence,
             where.str() + ": intersection selects " + candidate +
                 " but an earlier radius selected " + x0});
        y_ok = false;
      }
    }
    if (!y_ok || x0.empty()) {
      per_point_ok = false;
      continue;
    }

    // Reverse certification: the mirrored intersection must single out y0.
    for (double r : r_schedule) {
      auto inter = intersection_J(table, x0, r, tol);
      std::ostringstream where;
      where << "reverse at x0 = " << x0 << ", r = " << r;
      if (inter.vacuous) {
        result.issues.push_back(
            {RecoveryFailure::Vacuous,
             where.str() + ": no domain function peaks there"});
        y_ok = false;
      } else if (inter.points != PointSet{y0}) {
        result.issues.push_back(
            {RecoveryFailure::NonSingleton,
             where.str() + ": intersection is " +
                 format_points(inter.points) + ", expected {" + y0 + "}"});
        y_ok = false;
      }
    }
    if (!y_ok) {
      per_point_ok = false;
      continue;
    }
    result.point_map[y0] = x0;
  }

  if (per_point_ok) {
    // Injectivity plus full coverage of the domain space.
    std::map<std::string, std::string> seen;  // x0 -> y0
    for (const auto& [y0, x0] : result.point_map) {
      auto [it, fresh] = seen.emplace(x0, y0);
      if (!fresh) {
        result.issues.push_back(
            {RecoveryFailure::NotBijective,
             "both " + it->second + " and " + y0 + " map to " + x0});
      }
    }
    for (const auto& x : table.domain().space()->points()) {
      if (!seen.count(x)) {
        result.issues.push_back(
            {RecoveryFailure::NotBijective,
             "domain point " + x + " is hit by no codomain point"});
      }
    }
  }

  result.ok = result.issues.empty() &&
              static_cast<int>(result.point_map.size()) ==
                  table.codomain().space()->size();
  return result;
}

ModulusIdentityReport verify_modulus_identity(
    const MapTable& table, const std::map<std::string, std::string>& point_map,
    const ToleranceConfig& tol) {
  tol.validate();
  ModulusIdentityReport report;
  const auto& ys = table.codomain().space()->points();
  for (const auto& y : ys) {
    if (!point_map.count(y)) {
      throw Error("verify_modulus_identity: point map has no entry for '" +
                  y + "'");
    }
  }

  for (std::size_t i = 0; i < table.pairs().size(); ++i) {
    const auto& pair = table.pairs()[i];
    const double nf = sup_norm(pair.domain_fn);
    for (const auto& y : ys) {
      const double lhs = std::abs(pair.image_fn.at(y));
      const double rhs = std::abs(pair.domain_fn.at(point_map.at(y)));
      const double scaled = std::abs(lhs - rhs) / (1.0 + nf);
      if (scaled > report.max_deviation) {
        report.max_deviation = scaled;
        report.worst_pair = static_cast<int>(i);
        report.worst_point = y;
      }
    }
  }
  report.ok = report.max_deviation <= tol.eq_tol;
  return report;
}

FipReport fip_check(const MapTable& table, const ToleranceConfig& tol) {
  tol.validate();
  FipReport report;
  const auto& pairs = table.pairs();
  const bool additive = table.path() == FamilyPath::Additive;

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double ri = sup_norm(pairs[i].domain_fn);
    if (ri <= tol.eq_tol) continue;  // the zero sphere carries no evidence
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const double rj = sup_norm(pairs[j].domain_fn);
      if (std::abs(ri - rj) > tol.eq_tol * (1.0 + ri)) continue;

      // The combined witness whose listedness makes the pair testable:
      // the midpoint on a linear sphere, the normalized product on a
      // multiplicative one.
      ComplexFunction witness =
          additive ? Complex(0.5, 0.0) *
                         (pairs[i].domain_fn + pairs[j].domain_fn)
                   : Complex(1.0 / ri, 0.0) *
                         pointwise_product(pairs[i].domain_fn,
                                           pairs[j].domain_fn);
      const bool on_sphere =
          std::abs(sup_norm(witness) - ri) <= tol.eq_tol * (1.0 + ri);
      if (!on_sphere || find_domain_row(pairs, witness, tol) < 0) {
        ++report.untestable;
        continue;
      }

      ++report.testable;
      const PointSet mi = max_modulus_set(pairs[i].image_fn, tol);
      const PointSet mj = max_modulus_set(pairs[j].image_fn, tol);
      PointSet common;
      std::set_intersection(mi.begin(), mi.end(), mj.begin(), mj.end(),
                            std::inserter(common, common.begin()));
      if (common.empty() && report.violations.size() < kMaxViolations) {
        std::ostringstream msg;
        msg << "rows #" << i << " and #" << j << " share the sphere r = "
            << ri << " and a listed witness, but their images peak on "
               "disjoint sets";
        report.violations.push_back(msg.str());
      }
    }
  }

  report.ok = report.violations.empty();
  return report;
}

TransportReport f_transport_check(
    const MapTable& table, const std::map<std::string, std::string>& point_map,
    const std::vector<double>& r_schedule, const ToleranceConfig& tol) {
  tol.validate();
  validate_schedule(r_schedule);
  if (table.path() != FamilyPath::Multiplicative) {
    throw Error("f_transport_check: defined on the multiplicative path only");
  }

  TransportReport report;
  const auto& pairs = table.pairs();
  for (const auto& y0 : table.codomain().space()->points()) {
    auto it = point_map.find(y0);
    if (it == point_map.end()) {
      throw Error("f_transport_check: point map has no entry for '" + y0 +
                  "'");
    }
    const std::string& x0 = it->second;
    for (double r : r_schedule) {
      std::vector<int> domain_side;
      std::vector<int> image_side;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (modulus_peaks_at(pairs[i].domain_fn, x0, r, tol)) {
          domain_side.push_back(static_cast<int>(i));
        }
        if (modulus_peaks_at(pairs[i].image_fn, y0, r, tol)) {
          image_side.push_back(static_cast<int>(i));
        }
      }
      if (domain_side.empty() && image_side.empty()) {
        ++report.vacuous;
        continue;
      }
      ++report.tested;
      if (domain_side != image_side &&
          report.violations.size() < kMaxViolations) {
        std::ostringstream msg;
        msg << "y0 = " << y0 << ", r = " << r << ": " << domain_side.size()
            << " rows peak at x0 = " << x0 << " but " << image_side.size()
            << " rows peak at y0, and the row sets differ";
        report.violations.push_back(msg.str());
      }
    }
  }

  report.ok = report.violations.empty();
  return report;
}

const char* stage_status_name(StageStatus status) {
  switch (status) {
    case StageStatus::Pass: return "pass";
    case StageStatus::Fail: return "fail";
    case StageStatus::Skipped: return "skipped";
    case StageStatus::NotApplicable: return "not_applicable";
  }
  return "?";
}

const char* overall_verdict_name(OverallVerdict verdict) {
  switch (verdict) {
    case OverallVerdict::Pass: return "pass";
    case OverallVerdict::Fail: return "fail";
    case OverallVerdict::HypothesisFailed: return "hypothesis_failed";
    case OverallVerdict::Vacuous: return "vacuous";
  }
  return "?";
}

namespace {

std::string counterexample_note(const CheckVerdict& verdict) {
  if (!verdict.counterexample) return "no counterexample";
  std::ostringstream msg;
  msg << verdict.counterexample->law << " (lhs " << verdict.counterexample->lhs
      << ", rhs " << verdict.counterexample->rhs << ")";
  return msg.str();
}

}  // namespace

AnalysisReport run_full_analysis(const MapTable& table, const PhiSpec& spec,
                                 RhoKind kind, const AnalysisOptions& opts,
                                 const ToleranceConfig& tol) {
  tol.validate();
  opts.sampler.validate();
  validate_schedule(opts.r_schedule);

  AnalysisReport report;
  report.r_schedule = opts.r_schedule;
  report.rho_kind = kind;

  const std::vector<std::string> stage_names = {
      "boundary-domain", "boundary-codomain", "gauge-inc",
      "gauge-con",       "gauge-case",        "rho-preservation",
      "norm-preservation", "recovery",        "duality",
      "fip",             "transport",         "modulus-identity"};
  for (const auto& name : stage_names) {
    report.stages.push_back({name, StageStatus::Skipped, ""});
  }
  auto stage = [&](const std::string& name) -> StageOutcome& {
    for (auto& s : report.stages) {
      if (s.name == name) return s;
    }
    throw Error("unknown stage " + name);  // unreachable by construction
  };
  auto set = [&](const std::string& name, StageStatus status,
                 const std::string& detail) {
    stage(name).status = status;
    stage(name).detail = detail;
  };

  // Hypothesis block. The first failure here means the characterization's
  // standing assumptions do not hold, so the later conclusions are not owed.
  report.boundary_domain = strong_boundary_points(table.domain(), tol);
  {
    std::ostringstream detail;
    detail << report.boundary_domain.delta_points.size() << " of "
           << report.boundary_domain.ambient_choquet.size()
           << " points are strong boundary points";
    set("boundary-domain",
        report.boundary_domain.hypothesis_ok ? StageStatus::Pass
                                             : StageStatus::Fail,
        detail.str());
  }
  if (!report.boundary_domain.hypothesis_ok) {
    report.overall = OverallVerdict::HypothesisFailed;
    return report;
  }

  report.boundary_codomain = strong_boundary_points(table.codomain(), tol);
  {
    std::ostringstream detail;
    detail << report.boundary_codomain.delta_points.size() << " of "
           << report.boundary_codomain.ambient_choquet.size()
           << " points are strong boundary points";
    set("boundary-codomain",
        report.boundary_codomain.hypothesis_ok ? StageStatus::Pass
                                               : StageStatus::Fail,
        detail.str());
  }
  if (!report.boundary_codomain.hypothesis_ok) {
    report.overall = OverallVerdict::HypothesisFailed;
    return report;
  }

  report.inc_verdict = check_inc(spec, opts.sampler, tol);
  set("gauge-inc",
      report.inc_verdict.status == CheckStatus::Pass ? StageStatus::Pass
                                                     : StageStatus::Fail,
      report.inc_verdict.status == CheckStatus::Pass
          ? "monotone in both slots on the sampled plan"
          : counterexample_note(report.inc_verdict));
  if (report.inc_verdict.status != CheckStatus::Pass) {
    report.overall = OverallVerdict::HypothesisFailed;
    return report;
  }

  if (table.path() == FamilyPath::Additive) {
    report.con_verdict = check_con(spec, opts.sampler, tol);
    set("gauge-con",
        report.con_verdict.status == CheckStatus::Pass ? StageStatus::Pass
                                                       : StageStatus::Fail,
        report.con_verdict.status == CheckStatus::Pass
            ? "averaged subadditivity holds on the sampled plan"
            : counterexample_note(report.con_verdict));
    if (report.con_verdict.status != CheckStatus::Pass) {
      report.overall = OverallVerdict::HypothesisFailed;
      return report;
    }
  } else {
    set("gauge-con", StageStatus::NotApplicable,
        "not assumed on the multiplicative path");
  }

  if (kind == RhoKind::Plus) {
    report.axis_verdict = check_axis_vanishing(spec, opts.sampler, tol);
    if (report.axis_verdict.status == CheckStatus::Pass) {
      set("gauge-case", StageStatus::Pass, "axis-vanishing case certified");
    } else {
      report.divergence_verdict = check_divergence(spec, opts.sampler, tol);
      if (report.divergence_verdict.status == CheckStatus::Pass) {
        set("gauge-case", StageStatus::Pass,
            "divergence case certified along dyadic scales");
      } else {
        set("gauge-case", StageStatus::Fail,
            "neither axis-vanishing nor divergence could be certified");
        report.overall = OverallVerdict::HypothesisFailed;
        return report;
      }
    }
  } else {
    set("gauge-case", StageStatus::NotApplicable,
        "the max combination needs no case split");
  }

  // Preservation block: rho preservation is the working hypothesis about the
  // map; norm preservation is its first derived consequence.
  report.rho_report = check_rho_preservation(table, spec, kind, tol,
                                             opts.rho_seed, opts.rho_budget);
  {
    std::ostringstream detail;
    detail << report.rho_report.compared << " ordered pairs compared"
           << (report.rho_report.exhaustive ? " exhaustively" : " by sample")
           << ", max scaled deviation " << report.rho_report.max_deviation;
    set("rho-preservation",
        report.rho_report.ok ? StageStatus::Pass : StageStatus::Fail,
        detail.str());
  }
  if (!report.rho_report.ok) {
    report.overall = OverallVerdict::Fail;
    return report;
  }

  report.norm_report = check_norm_preservation(table, tol);
  {
    std::ostringstream detail;
    detail << "max scaled deviation " << report.norm_report.max_deviation;
    set("norm-preservation",
        report.norm_report.ok ? StageStatus::Pass : StageStatus::Fail,
        detail.str());
  }
  if (!report.norm_report.ok) {
    report.overall = OverallVerdict::Fail;
    return report;
  }

  // Structure block: the conclusions a certified table owes.
  report.recovery = recover_phi(table, opts.r_schedule, tol);
  {
    std::ostringstream detail;
    if (report.recovery.ok) {
      detail << "point map certified at " << opts.r_schedule.size()
             << " radii per point";
    } else {
      detail << report.recovery.issues.size() << " issue(s), first: "
             << recovery_failure_name(report.recovery.issues.front().kind)
             << ": " << report.recovery.issues.front().detail;
    }
    set("recovery",
        report.recovery.ok ? StageStatus::Pass : StageStatus::Fail,
        detail.str());
  }
  if (!report.recovery.ok) {
    const bool all_vacuous =
        std::all_of(report.recovery.issues.begin(),
                    report.recovery.issues.end(), [](const RecoveryIssue& i) {
                      return i.kind == RecoveryFailure::Vacuous;
                    });
    report.overall =
        all_vacuous ? OverallVerdict::Vacuous : OverallVerdict::Fail;
    return report;
  }

  report.duality = duality_check(table, opts.r_schedule, tol);
  {
    std::ostringstream detail;
    detail << report.duality.tested << " triples tested, "
           << report.duality.vacuous_triples << " vacuous";
    if (!report.duality.ok) {
      detail << ", " << report.duality.violations.size() << " violation(s)";
    }
    set("duality", report.duality.ok ? StageStatus::Pass : StageStatus::Fail,
        detail.str());
  }
  if (!report.duality.ok) {
    report.overall = OverallVerdict::Fail;
    return report;
  }

  report.fip = fip_check(table, tol);
  {
    std::ostringstream detail;
    detail << report.fip.testable << " sphere pairs testable, "
           << report.fip.untestable << " without a listed witness";
    set("fip", report.fip.ok ? StageStatus::Pass : StageStatus::Fail,
        detail.str());
  }
  if (!report.fip.ok) {
    report.overall = OverallVerdict::Fail;
    return report;
  }

  if (table.path() == FamilyPath::Multiplicative) {
    report.transport = f_transport_check(table, report.recovery.point_map,
                                         opts.r_schedule, tol);
    std::ostringstream detail;
    detail << report.transport.tested << " cells tested, "
           << report.transport.vacuous << " vacuous";
    set("transport",
        report.transport.ok ? StageStatus::Pass : StageStatus::Fail,
        detail.str());
    if (!report.transport.ok) {
      report.overall = OverallVerdict::Fail;
      return report;
    }
  } else {
    set("transport", StageStatus::NotApplicable,
        "modulus transport is a multiplicative-path conclusion");
  }

  report.modulus = verify_modulus_identity(table, report.recovery.point_map,
                                           tol);
  {
    std::ostringstream detail;
    detail << "max scaled deviation " << report.modulus.max_deviation;
    set("modulus-identity",
        report.modulus.ok ? StageStatus::Pass : StageStatus::Fail,
        detail.str());
  }
  if (!report.modulus.ok) {
    report.overall = OverallVerdict::Fail;
    return report;
  }

  report.overall = OverallVerdict::Pass;
  return report;
}

}  // namespace rholab
