// Acceptance gate for the laboratory. Exercises the eight end-to-end
// contracts against the core library and the installed CLI, printing one
// pass/fail line per criterion. Exits nonzero if any criterion fails.
//
// Usage: rholab_acceptance <cli-binary> <golden-data-dir> <scratch-dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rholab/random.hpp"
#include "rholab/report.hpp"

namespace {

using namespace rholab;
using nlohmann::json;

// Tolerances and budgets, pinned here so a regression cannot loosen them
// through configuration.
constexpr double kModulusTol = 1e-12;       // gauge modulus invariance
constexpr double kPreservationTol = 1e-9;   // scaled rho/norm deviation
constexpr double kIdentityTol = 1e-9;       // |Tf(y)| vs |f(phi(y))|
constexpr double kAxiomBudgetSeconds = 5.0;
constexpr double kForwardBudgetSeconds = 30.0;
constexpr int kScenarioCount = 100;
constexpr int kPerturbationTrials = 100;
constexpr int kWitnessDraws = 1000;
constexpr int kInvarianceSamples = 10000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) throw Error("failed to launch: " + command);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

// ---------------------------------------------------------------------------
// The shared scenario pool: 100 seeded composition tables covering
// |X| = |Y| in {2..8}, all four family kinds (hence both paths), both rho
// combinations, and the three acceptance gauges. Weight twists are applied
// only where the family kind admits complex values.

struct PoolEntry {
  MapTable table;
  PhiSpec phi;
  RhoKind rho;
  std::vector<int> sigma;
  FamilyKind kind;
  SpacePtr X;
  SpacePtr Y;
};

SpacePtr lettered_space(const std::string& prefix, int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    ids.push_back(prefix + std::to_string(i + 1));
  }
  return make_space(ids);
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
  }
  return perm;
}

PhiSpec pool_gauge(int index) {
  switch (index % 3) {
    case 0: return PhiSpec::linear(1.0, 1.0);
    case 1: return PhiSpec::product();
    default: return PhiSpec::pnorm(2.0);
  }
}

std::vector<PoolEntry> build_pool(const ToleranceConfig& tol) {
  std::vector<PoolEntry> pool;
  pool.reserve(kScenarioCount);
  const FamilyKind kinds[4] = {
      FamilyKind::SubspaceSpan, FamilyKind::PositiveConeOfSpan,
      FamilyKind::MultiplicativeList, FamilyKind::ExplicitList};

  for (int s = 0; s < kScenarioCount; ++s) {
    const int n = 2 + s % 7;
    const FamilyKind kind = kinds[s % 4];
    const FamilyPath path =
        kind == FamilyKind::MultiplicativeList ? FamilyPath::Multiplicative
        : kind == FamilyKind::ExplicitList
            ? (s % 8 < 4 ? FamilyPath::Additive : FamilyPath::Multiplicative)
            : FamilyPath::Additive;

    int target = 0;
    switch (kind) {
      case FamilyKind::SubspaceSpan:
      case FamilyKind::PositiveConeOfSpan: target = n + 2 + s % 8; break;
      case FamilyKind::ExplicitList: target = 3 * n + s % 5; break;
      case FamilyKind::MultiplicativeList: target = n + 2; break;
    }

    auto X = lettered_space("x", n);
    auto Y = lettered_space("y", n);
    auto family = random_family(X, kind, path,
                                target, 1000 + static_cast<std::uint64_t>(s),
                                tol);
    if (static_cast<int>(family.functions().size()) > 32) {
      throw Error("pool family exceeds 32 members");
    }

    PlantedMap planted;
    Rng perm_rng(2000 + static_cast<std::uint64_t>(s));
    planted.sigma = random_permutation(n, perm_rng);
    const bool real_structure = kind == FamilyKind::PositiveConeOfSpan ||
                                kind == FamilyKind::MultiplicativeList;
    Rng weight_rng(3000 + static_cast<std::uint64_t>(s));
    for (int i = 0; i < n; ++i) {
      planted.weights_rad.push_back(real_structure ? 0.0 : weight_rng.angle());
    }

    auto table = build_composition_map(family, Y, planted, tol);
    pool.push_back(PoolEntry{std::move(table), pool_gauge(s),
                             (s / 2) % 2 == 0 ? RhoKind::Max : RhoKind::Plus,
                             planted.sigma, kind, X, Y});
  }
  return pool;
}

// ---------------------------------------------------------------------------
// Criterion runners. Each returns pass/fail plus a one-line summary.

struct CriterionResult {
  bool pass = false;
  std::string summary;
};

CriterionResult fail_with(const std::string& why) {
  return {false, why};
}

// Criterion 1: the combination-law checkers certify every gauge the theory
// claims and reject the crafted violators, reproducibly, within budget.
CriterionResult criterion_axiom_suite() {
  const auto start = Clock::now();
  ToleranceConfig tol;
  SamplerConfig cfg;  // defaults: 21-step grid, 10_000 random samples, seed 1

  const std::vector<PhiSpec> inc_claimed = {
      PhiSpec::linear(1, 1),
      PhiSpec::linear(2, 3),
      PhiSpec::power(1, 1),
      PhiSpec::power(0.5, 2),
      PhiSpec::power(2, 1),
      PhiSpec::pnorm(0.5),
      PhiSpec::pnorm(2),
      PhiSpec::product(),
      PhiSpec::sum({PhiSpec::linear(1, 2), PhiSpec::power(2, 1)}),
      PhiSpec::sum({PhiSpec::max_of(), PhiSpec::linear(1, 1)}),
      PhiSpec::sum({PhiSpec::max_of(), PhiSpec::product()}),
      PhiSpec::sum({PhiSpec::min_of(), PhiSpec::linear(1, 1)}),
      PhiSpec::sum({PhiSpec::min_of(), PhiSpec::product()}),
  };
  const std::vector<PhiSpec> con_claimed = {
      PhiSpec::linear(1, 1),
      PhiSpec::linear(2, 3),
      PhiSpec::product(),
      PhiSpec::sum({PhiSpec::linear(1, 1), PhiSpec::product()}),
      PhiSpec::sum({PhiSpec::max_of(), PhiSpec::linear(1, 1)}),
      PhiSpec::sum({PhiSpec::max_of(), PhiSpec::product()}),
  };

  for (const auto& spec : inc_claimed) {
    if (check_inc(spec, cfg, tol).status != CheckStatus::Pass) {
      return fail_with("inc rejected for " + spec.describe());
    }
  }
  for (const auto& spec : con_claimed) {
    if (check_con(spec, cfg, tol).status != CheckStatus::Pass) {
      return fail_with("con rejected for " + spec.describe());
    }
  }

  // Crafted violators, run twice to confirm the counterexample reproduces.
  const auto abs_s =
      PhiSpec::custom("abs_s", [](Complex s, Complex) { return std::abs(s); });
  const auto sqrt_plus = PhiSpec::custom(
      "sqrt_abs_s_plus_abs_t",
      [](Complex s, Complex t) { return std::sqrt(std::abs(s)) + std::abs(t); });
  const auto inc_a = check_inc(abs_s, cfg, tol);
  const auto inc_b = check_inc(abs_s, cfg, tol);
  if (inc_a.status != CheckStatus::Fail || !inc_a.counterexample) {
    return fail_with("inc violator |s| not rejected");
  }
  if (!inc_b.counterexample ||
      inc_b.counterexample->inputs != inc_a.counterexample->inputs) {
    return fail_with("inc counterexample did not reproduce");
  }
  const auto con_a = check_con(sqrt_plus, cfg, tol);
  const auto con_b = check_con(sqrt_plus, cfg, tol);
  if (con_a.status != CheckStatus::Fail || !con_a.counterexample) {
    return fail_with("con violator sqrt|s|+|t| not rejected");
  }
  if (!con_b.counterexample ||
      con_b.counterexample->inputs != con_a.counterexample->inputs) {
    return fail_with("con counterexample did not reproduce");
  }

  const double elapsed = seconds_since(start);
  if (elapsed >= kAxiomBudgetSeconds) {
    std::ostringstream why;
    why << "budget exceeded: " << elapsed << " s >= " << kAxiomBudgetSeconds
        << " s";
    return fail_with(why.str());
  }
  std::ostringstream ok;
  ok << inc_claimed.size() << " inc + " << con_claimed.size()
     << " con gauges certified, 2 violators rejected reproducibly ("
     << std::fixed << std::setprecision(2) << elapsed << " s < "
     << kAxiomBudgetSeconds << " s)";
  return {true, ok.str()};
}

// Criterion 2: every built-in gauge reads only the moduli of its arguments.
CriterionResult criterion_modulus_invariance() {
  const std::vector<PhiSpec> builtins = {
      PhiSpec::linear(1, 1),
      PhiSpec::linear(2, 3),
      PhiSpec::power(1, 1),
      PhiSpec::power(0.5, 2),
      PhiSpec::pnorm(0.5),
      PhiSpec::pnorm(2),
      PhiSpec::max_of(),
      PhiSpec::min_of(),
      PhiSpec::product(),
      PhiSpec::sum({PhiSpec::max_of(), PhiSpec::linear(1, 1)}),
      PhiSpec::sum({PhiSpec::min_of(), PhiSpec::product()}),
  };
  double worst = 0.0;
  for (const auto& spec : builtins) {
    Rng rng(42);
    for (int it = 0; it < kInvarianceSamples; ++it) {
      const Complex s = rng.complex_in_disk(10.0);
      const Complex t = rng.complex_in_disk(10.0);
      const double direct = spec.eval(s, t);
      const double via_moduli =
          spec.eval(Complex(std::abs(s), 0.0), Complex(std::abs(t), 0.0));
      worst = std::max(worst, std::abs(direct - via_moduli));
      if (worst > kModulusTol) {
        std::ostringstream why;
        why << spec.describe() << " deviates by " << worst << " at sample "
            << it;
        return fail_with(why.str());
      }
    }
  }
  std::ostringstream ok;
  ok << builtins.size() << " gauges x " << kInvarianceSamples
     << " samples, worst |phi(s,t) - phi(|s|,|t|)| = " << worst << " <= "
     << kModulusTol;
  return {true, ok.str()};
}

// Criterion 3: planted composition tables preserve rho within tolerance.
CriterionResult criterion_forward_soundness(const std::vector<PoolEntry>& pool,
                                            const ToleranceConfig& tol) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& entry = pool[i];
    const auto report =
        check_rho_preservation(entry.table, entry.phi, entry.rho, tol);
    worst = std::max(worst, report.max_deviation);
    if (!report.ok || report.max_deviation > kPreservationTol) {
      std::ostringstream why;
      why << "scenario " << i << " (" << family_kind_name(entry.kind)
          << ", " << entry.phi.describe() << ") deviates by "
          << report.max_deviation;
      return fail_with(why.str());
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= kForwardBudgetSeconds) {
    std::ostringstream why;
    why << "budget exceeded: " << elapsed << " s >= "
        << kForwardBudgetSeconds << " s";
    return fail_with(why.str());
  }
  std::ostringstream ok;
  ok << pool.size() << " scenarios, worst rho deviation " << worst << " <= "
     << kPreservationTol << " (" << std::fixed << std::setprecision(2)
     << elapsed << " s < " << kForwardBudgetSeconds << " s)";
  return {true, ok.str()};
}

// Criterion 4: recovery returns the planted point map exactly, via singleton
// intersections at every codomain point and radius, and the recovered map
// satisfies the modulus identity. Includes the hand-checked swap golden.
CriterionResult criterion_round_trip(const std::vector<PoolEntry>& pool,
                                     const ToleranceConfig& tol,
                                     const std::string& data_dir) {
  const std::vector<double> schedule = {0.5, 1.0, 2.0};
  double worst_identity = 0.0;
  int singleton_cells = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& entry = pool[i];
    const auto recovery = recover_phi(entry.table, schedule, tol);
    if (!recovery.ok || !recovery.issues.empty()) {
      std::ostringstream why;
      why << "scenario " << i << " recovery failed";
      if (!recovery.issues.empty()) {
        why << " (" << recovery_failure_name(recovery.issues[0].kind) << ": "
            << recovery.issues[0].detail << ")";
      }
      return fail_with(why.str());
    }
    for (int j = 0; j < entry.Y->size(); ++j) {
      const std::string expected = entry.X->point(entry.sigma[j]);
      const auto it = recovery.point_map.find(entry.Y->point(j));
      if (it == recovery.point_map.end() || it->second != expected) {
        std::ostringstream why;
        why << "scenario " << i << " recovered map disagrees with the "
            << "planted permutation at " << entry.Y->point(j);
        return fail_with(why.str());
      }
      // Re-derive each certification: the intersection must be the
      // singleton {sigma(y0)} at every scheduled radius.
      for (double r : schedule) {
        const auto cell = intersection_I(entry.table, entry.Y->point(j), r,
                                         tol);
        if (cell.vacuous || cell.points.size() != 1 ||
            *cell.points.begin() != expected) {
          std::ostringstream why;
          why << "scenario " << i << " intersection at " << entry.Y->point(j)
              << ", r = " << r << " is not the planted singleton";
          return fail_with(why.str());
        }
        ++singleton_cells;
      }
    }
    const auto identity =
        verify_modulus_identity(entry.table, recovery.point_map, tol);
    worst_identity = std::max(worst_identity, identity.max_deviation);
    if (!identity.ok || identity.max_deviation > kIdentityTol) {
      std::ostringstream why;
      why << "scenario " << i << " modulus identity deviates by "
          << identity.max_deviation;
      return fail_with(why.str());
    }
  }

  // The hand-checked two-point swap, loaded from its golden file.
  const Scenario swap =
      parse_scenario(json::parse(slurp(data_dir + "/swap_pairs.json")));
  const auto swap_recovery =
      recover_phi(swap.table, swap.r_schedule, swap.tolerance);
  if (!swap_recovery.ok || swap_recovery.point_map.at("x1") != "x2" ||
      swap_recovery.point_map.at("x2") != "x1") {
    return fail_with("swap golden did not certify the two-point swap");
  }

  std::ostringstream ok;
  ok << pool.size() << " planted maps recovered exactly, " << singleton_cells
     << " singleton cells, worst modulus identity deviation "
     << worst_identity << " <= " << kIdentityTol << ", swap golden certified";
  return {true, ok.str()};
}

// Criterion 5: the structural lemmas hold on every certified table, and a
// passing rho check never coexists with a failing norm check.
CriterionResult criterion_lemma_suite(const std::vector<PoolEntry>& pool,
                                      const ToleranceConfig& tol) {
  const std::vector<double> schedule = {0.5, 1.0, 2.0};
  int duality_triples = 0;
  int fip_testable = 0;
  int transport_cells = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& entry = pool[i];

    const auto duality = duality_check(entry.table, schedule, tol);
    if (!duality.ok) {
      std::ostringstream why;
      why << "scenario " << i << " duality violated ("
          << duality.violations.size() << " triples)";
      return fail_with(why.str());
    }
    duality_triples += duality.tested;

    const auto recovery = recover_phi(entry.table, schedule, tol);
    for (const auto& issue : recovery.issues) {
      if (issue.kind == RecoveryFailure::RDependence) {
        std::ostringstream why;
        why << "scenario " << i << " selector depends on the radius: "
            << issue.detail;
        return fail_with(why.str());
      }
    }
    if (!recovery.ok) {
      std::ostringstream why;
      why << "scenario " << i << " recovery failed inside the lemma suite";
      return fail_with(why.str());
    }

    const auto fip = fip_check(entry.table, tol);
    if (!fip.ok) {
      std::ostringstream why;
      why << "scenario " << i << " finite-intersection check violated: "
          << (fip.violations.empty() ? "?" : fip.violations[0]);
      return fail_with(why.str());
    }
    fip_testable += fip.testable;

    if (entry.table.path() == FamilyPath::Multiplicative) {
      const auto transport =
          f_transport_check(entry.table, recovery.point_map, schedule, tol);
      if (!transport.ok) {
        std::ostringstream why;
        why << "scenario " << i << " modulus-peaking transport violated";
        return fail_with(why.str());
      }
      transport_cells += transport.tested;
    }

    const auto rho_report =
        check_rho_preservation(entry.table, entry.phi, entry.rho, tol);
    const auto norm_report = check_norm_preservation(entry.table, tol);
    if (rho_report.ok && !norm_report.ok) {
      std::ostringstream why;
      why << "scenario " << i << " passes rho preservation but fails norm "
          << "preservation";
      return fail_with(why.str());
    }
  }
  std::ostringstream ok;
  ok << "duality on " << duality_triples << " triples, " << fip_testable
     << " sphere pairs, transport on " << transport_cells
     << " cells, rho=>norm implication unbroken across " << pool.size()
     << " scenarios";
  return {true, ok.str()};
}

// Criterion 6: negative controls. Modulus bumps >= 0.1 always flip the rho
// verdict, pure phase twists never do, and the degenerate demo exits 3 with
// no recovered map.
CriterionResult criterion_negative_controls(const std::vector<PoolEntry>& pool,
                                            const ToleranceConfig& tol,
                                            const std::string& cli,
                                            const std::string& tmp_dir) {
  // Locate the pair carrying the unit indicator at a chosen domain point;
  // every family kind in the pool lists it, so lookup must succeed.
  auto indicator_pair = [&](const PoolEntry& entry, int x_index) {
    const auto probe =
        ComplexFunction::indicator(entry.X, entry.X->point(x_index));
    const auto& pairs = entry.table.pairs();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (sup_distance(pairs[p].domain_fn, probe) <= 1e-12) {
        return static_cast<int>(p);
      }
    }
    return -1;
  };

  int flips = 0;
  for (int t = 0; t < kPerturbationTrials; ++t) {
    const auto& entry = pool[t % pool.size()];
    const int n = entry.X->size();
    Rng rng(7000 + static_cast<std::uint64_t>(t));
    const int pair_index = indicator_pair(entry, t % n);
    if (pair_index < 0) return fail_with("unit indicator pair not listed");
    const auto& image = entry.table.pairs()[pair_index].image_fn;

    // The image of an indicator is supported at one point; bump a point
    // where it vanishes, so the modulus change equals |delta| >= 0.1.
    int zero_point = -1;
    for (int y = 0; y < n; ++y) {
      if (std::abs(image.at(y)) <= 1e-12) {
        zero_point = y;
        break;
      }
    }
    if (zero_point < 0) return fail_with("indicator image has no zero point");

    Perturbation pert;
    pert.pair_index = pair_index;
    pert.point = entry.Y->point(zero_point);
    pert.delta = Complex(0.1 + 0.3 * rng.uniform01(), 0.0);
    const auto bumped = perturb_table(entry.table, pert, tol);
    if (!check_rho_preservation(bumped, entry.phi, entry.rho, tol).ok) {
      ++flips;
    }
  }
  if (flips != kPerturbationTrials) {
    std::ostringstream why;
    why << "modulus bumps flipped only " << flips << "/"
        << kPerturbationTrials;
    return fail_with(why.str());
  }

  // Pure phase twists keep every modulus, hence every verdict. A twist is
  // only a legal member perturbation where the kind admits complex values,
  // so the trials draw from the non-cone entries.
  std::vector<int> twistable;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].kind != FamilyKind::PositiveConeOfSpan) {
      twistable.push_back(static_cast<int>(i));
    }
  }
  int phase_flips = 0;
  for (int t = 0; t < kPerturbationTrials; ++t) {
    const auto& entry = pool[twistable[t % twistable.size()]];
    const int n = entry.X->size();
    Rng rng(8000 + static_cast<std::uint64_t>(t));
    const int pair_index = indicator_pair(entry, t % n);
    if (pair_index < 0) return fail_with("unit indicator pair not listed");
    const auto& image = entry.table.pairs()[pair_index].image_fn;

    int support = -1;
    for (int y = 0; y < n; ++y) {
      if (std::abs(image.at(y)) > 1e-12) {
        support = y;
        break;
      }
    }
    if (support < 0) return fail_with("indicator image vanished entirely");

    const Complex v = image.at(support);
    const double theta = 0.5 + 2.0 * rng.uniform01();
    Perturbation pert;
    pert.pair_index = pair_index;
    pert.point = entry.Y->point(support);
    pert.delta = v * (std::polar(1.0, theta) - 1.0);
    const auto twisted = perturb_table(entry.table, pert, tol);
    if (!check_rho_preservation(twisted, entry.phi, entry.rho, tol).ok ||
        !check_norm_preservation(twisted, tol).ok) {
      ++phase_flips;
    }
  }
  if (phase_flips != 0) {
    std::ostringstream why;
    why << "phase twists flipped " << phase_flips << "/"
        << kPerturbationTrials << " verdicts";
    return fail_with(why.str());
  }

  // Degenerate families walk away with exit code 3 and no recovered map.
  const std::string gen_path = tmp_dir + "/degenerate_gen.json";
  const std::string report_path = tmp_dir + "/degenerate_report.json";
  if (run_cli(cli + " gen-demo --template degenerate --out " + gen_path +
              " > /dev/null") != 0) {
    return fail_with("gen-demo degenerate failed");
  }
  const int code = run_cli(cli + " analyze " + gen_path + " --quiet --report " +
                           report_path);
  if (code != 3) {
    std::ostringstream why;
    why << "degenerate scenario exited " << code << ", expected 3";
    return fail_with(why.str());
  }
  const json report = json::parse(slurp(report_path));
  if (!report.at("recovery").at("point_map").empty()) {
    return fail_with("degenerate scenario fabricated a point map");
  }

  std::ostringstream ok;
  ok << flips << "/" << kPerturbationTrials << " modulus bumps flip, "
     << phase_flips << "/" << kPerturbationTrials
     << " phase twists flip, degenerate demo exits 3 with no map";
  return {true, ok.str()};
}

// ---------------------------------------------------------------------------
// Criterion 7 verifies the peaking-witness inequalities with hand-rolled
// gauge arithmetic so a bug in PhiSpec::eval cannot certify itself.

enum HandGauge { kLinear11, kProduct, kPNorm2 };

double hand_phi(HandGauge gauge, double a, double b) {
  switch (gauge) {
    case kLinear11: return a + b;
    case kProduct: return a * b;
    case kPNorm2: return std::sqrt(a * a + b * b);
  }
  return 0.0;
}

double hand_rho(HandGauge gauge, RhoKind kind, const ComplexFunction& f,
                const ComplexFunction& g) {
  double fwd = 0.0, rev = 0.0;
  for (int i = 0; i < f.space()->size(); ++i) {
    const double a = std::abs(f.at(i));
    const double b = std::abs(g.at(i));
    fwd = std::max(fwd, hand_phi(gauge, a, b));
    rev = std::max(rev, hand_phi(gauge, b, a));
  }
  return kind == RhoKind::Plus ? fwd + rev : std::max(fwd, rev);
}

double hand_rho_scalar(HandGauge gauge, RhoKind kind, double a, double b) {
  const double fwd = hand_phi(gauge, a, b);
  const double rev = hand_phi(gauge, b, a);
  return kind == RhoKind::Plus ? fwd + rev : std::max(fwd, rev);
}

PhiSpec spec_for(HandGauge gauge) {
  switch (gauge) {
    case kLinear11: return PhiSpec::linear(1.0, 1.0);
    case kProduct: return PhiSpec::product();
    case kPNorm2: return PhiSpec::pnorm(2.0);
  }
  return PhiSpec::linear(1.0, 1.0);
}

CriterionResult criterion_witness_lemmas(const ToleranceConfig& tol) {
  // Case gates, established once: the product gauge vanishes on the axes,
  // the linear gauge diverges along its diagonal.
  SamplerConfig gate_cfg;
  gate_cfg.random_samples = 2000;
  if (check_axis_vanishing(PhiSpec::product(), gate_cfg, tol).status !=
      CheckStatus::Pass) {
    return fail_with("product gauge failed its axis-vanishing gate");
  }
  if (check_divergence(PhiSpec::linear(1, 1), gate_cfg, tol).status !=
      CheckStatus::Pass) {
    return fail_with("linear gauge failed its divergence gate");
  }

  int romax_checked = 0;
  int roplus_checked = 0;
  for (int t = 0; t < kWitnessDraws; ++t) {
    Rng rng(9000 + static_cast<std::uint64_t>(t));
    const int n = 2 + t % 5;
    auto X = lettered_space("x", n);
    const FamilyKind kind =
        t % 2 == 0 ? FamilyKind::SubspaceSpan : FamilyKind::ExplicitList;
    auto family =
        random_family(X, kind, FamilyPath::Additive, 3 * n,
                      5000 + static_cast<std::uint64_t>(t), tol);
    const std::string x0 = X->point(t % n);

    Eigen::VectorXcd values(n);
    for (int i = 0; i < n; ++i) values(i) = rng.complex_in_disk(2.0);
    const ComplexFunction f(X, values);
    const double eps = 0.05 + 0.5 * rng.uniform01();

    // Lemma for the max combination: cycle all three gauges.
    {
      const HandGauge gauge = static_cast<HandGauge>(t % 3);
      const auto h = peaking_witness_romax(family, x0, f, eps, spec_for(gauge),
                                           tol);
      if (std::abs(h.at(x0) - Complex(1.0, 0.0)) > 1e-12 ||
          sup_norm(h) > 1.0 + 1e-12) {
        return fail_with("romax witness is not a peaking function");
      }
      const auto scaled = Complex(sup_norm(f), 0.0) * h;
      const double lhs = hand_rho(gauge, RhoKind::Max, f, scaled);
      const double rhs = hand_rho_scalar(gauge, RhoKind::Max,
                                         std::abs(f.at(x0)) + eps,
                                         sup_norm(f));
      if (lhs > rhs + 1e-12) {
        std::ostringstream why;
        why << "romax inequality broken at draw " << t << ": " << lhs
            << " > " << rhs;
        return fail_with(why.str());
      }
      ++romax_checked;
    }

    // Lemma for the plus combination, case-gated by parity.
    {
      const bool axis_case = t % 2 == 0;
      const HandGauge gauge = axis_case ? kProduct : kLinear11;
      const auto witness = peaking_witness_roplus(
          family, x0, f, eps, spec_for(gauge), tol,
          axis_case ? RoPlusCase::AxisVanishing : RoPlusCase::Divergence);
      if (std::abs(witness.h.at(x0) - Complex(1.0, 0.0)) > 1e-12 ||
          sup_norm(witness.h) > 1.0 + 1e-12) {
        return fail_with("roplus witness is not a peaking function");
      }
      const auto scaled = Complex(witness.lambda, 0.0) * witness.h;
      const double lhs = hand_rho(gauge, RhoKind::Plus, f, scaled);
      const double rhs = hand_rho_scalar(gauge, RhoKind::Plus,
                                         std::abs(f.at(x0)) + eps,
                                         witness.lambda);
      if (!(lhs < rhs)) {
        std::ostringstream why;
        why << "roplus inequality not strict at draw " << t << ": " << lhs
            << " vs " << rhs;
        return fail_with(why.str());
      }
      ++roplus_checked;
    }
  }
  std::ostringstream ok;
  ok << romax_checked << " romax + " << roplus_checked
     << " roplus witnesses re-verified by direct evaluation, case-gated";
  return {true, ok.str()};
}

// Criterion 8: analyzing a golden twice produces byte-identical reports.
CriterionResult criterion_determinism(const std::string& cli,
                                      const std::string& data_dir,
                                      const std::string& tmp_dir) {
  const std::vector<std::pair<std::string, int>> goldens = {
      {"additive_basic", 0}, {"multiplicative_basic", 0}, {"perturbed", 1},
      {"degenerate", 3},     {"swap_pairs", 0},
  };
  for (const auto& [name, expected] : goldens) {
    const std::string scenario = data_dir + "/" + name + ".json";
    const std::string first = tmp_dir + "/" + name + "_first.json";
    const std::string second = tmp_dir + "/" + name + "_second.json";
    const int code_a =
        run_cli(cli + " analyze " + scenario + " --quiet --report " + first);
    const int code_b =
        run_cli(cli + " analyze " + scenario + " --quiet --report " + second);
    if (code_a != expected || code_b != expected) {
      std::ostringstream why;
      why << name << " exited " << code_a << "/" << code_b << ", expected "
          << expected;
      return fail_with(why.str());
    }
    if (slurp(first) != slurp(second)) {
      return fail_with(name + " reports differ between runs");
    }
  }
  std::ostringstream ok;
  ok << goldens.size()
     << " goldens re-analyzed, reports byte-identical, exit codes stable";
  return {true, ok.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: rholab_acceptance <cli-binary> <data-dir> <tmp-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string data_dir = argv[2];
  const std::string tmp_dir = argv[3];
  std::filesystem::create_directories(tmp_dir);

  const ToleranceConfig tol;
  bool all_pass = true;
  int number = 0;
  auto report = [&](const std::string& name, const CriterionResult& result) {
    ++number;
    std::cout << "criterion " << number << " ("
              << name << "): " << (result.pass ? "pass" : "FAIL") << " - "
              << result.summary << "\n";
    all_pass = all_pass && result.pass;
  };
  auto guarded = [&](auto&& fn) -> CriterionResult {
    try {
      return fn();
    } catch (const std::exception& e) {
      return fail_with(std::string("exception: ") + e.what());
    }
  };

  report("axiom suite", guarded([&] { return criterion_axiom_suite(); }));
  report("modulus invariance",
         guarded([&] { return criterion_modulus_invariance(); }));

  std::vector<PoolEntry> pool;
  try {
    pool = build_pool(tol);
  } catch (const std::exception& e) {
    std::cout << "scenario pool construction failed: " << e.what() << "\n";
  }
  if (pool.empty()) {
    for (const char* name :
         {"forward soundness", "round-trip recovery", "lemma suite",
          "negative controls"}) {
      report(name, fail_with("scenario pool unavailable"));
    }
  } else {
    report("forward soundness",
           guarded([&] { return criterion_forward_soundness(pool, tol); }));
    report("round-trip recovery", guarded([&] {
             return criterion_round_trip(pool, tol, data_dir);
           }));
    report("lemma suite",
           guarded([&] { return criterion_lemma_suite(pool, tol); }));
    report("negative controls", guarded([&] {
             return criterion_negative_controls(pool, tol, cli, tmp_dir);
           }));
  }

  report("witness lemmas",
         guarded([&] { return criterion_witness_lemmas(tol); }));
  report("determinism", guarded([&] {
           return criterion_determinism(cli, data_dir, tmp_dir);
         }));

  std::cout << (all_pass ? "acceptance: all 8 criteria pass\n"
                         : "acceptance: FAILURES above\n");
  return all_pass ? 0 : 1;
}
