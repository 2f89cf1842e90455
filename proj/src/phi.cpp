#include "rholab/phi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "rholab/random.hpp"

namespace rholab {

namespace {

void require_positive_param(double v, const char* ctor, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    std::ostringstream msg;
    msg << "PhiSpec::" << ctor << ": parameter " << name
        << " must be finite and > 0, got " << v;
    throw Error(msg.str());
  }
}

std::string format_complex(Complex z) {
  std::ostringstream out;
  out << "(" << z.real() << ", " << z.imag() << ")";
  return out.str();
}

}  // namespace

PhiSpec PhiSpec::linear(double a, double b) {
  require_positive_param(a, "linear", "a");
  require_positive_param(b, "linear", "b");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Linear;
  node->a = a;
  node->b = b;
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::power(double a, double b) {
  require_positive_param(a, "power", "a");
  require_positive_param(b, "power", "b");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Power;
  node->a = a;
  node->b = b;
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::pnorm(double p) {
  require_positive_param(p, "pnorm", "p");
  auto node = std::make_shared<Node>();
  node->kind = Kind::PNorm;
  node->p = p;
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::max_of() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::MaxOf;
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::min_of() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::MinOf;
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::product() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::sum(std::vector<PhiSpec> terms) {
  if (terms.empty()) {
    throw Error("PhiSpec::sum: needs at least one term");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->terms = std::move(terms);
  return PhiSpec(std::move(node));
}

PhiSpec PhiSpec::custom(std::string label,
                        std::function<double(Complex, Complex)> eval) {
  if (!eval) {
    throw Error("PhiSpec::custom: evaluator must be callable");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Custom;
  node->label = std::move(label);
  node->eval = std::move(eval);
  return PhiSpec(std::move(node));
}

bool PhiSpec::is_custom() const {
  if (node_->kind == Kind::Custom) return true;
  for (const PhiSpec& term : node_->terms) {
    if (term.is_custom()) return true;
  }
  return false;
}

double PhiSpec::eval(Complex s, Complex t) const {
  // Built-ins go through (|s|, |t|) so modulus invariance holds exactly.
  const double as = std::abs(s);
  const double at = std::abs(t);
  switch (node_->kind) {
    case Kind::Linear:
      return node_->a * as + node_->b * at;
    case Kind::Power:
      return std::pow(as, node_->a) * std::pow(at, node_->b);
    case Kind::PNorm:
      return std::pow(std::pow(as, node_->p) + std::pow(at, node_->p),
                      1.0 / node_->p);
    case Kind::MaxOf:
      return std::max(as, at);
    case Kind::MinOf:
      return std::min(as, at);
    case Kind::Product:
      return as * at;
    case Kind::Sum: {
      double acc = 0.0;
      for (const PhiSpec& term : node_->terms) acc += term.eval(s, t);
      return acc;
    }
    case Kind::Custom: {
      const double v = node_->eval(s, t);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << "custom phi '" << node_->label
            << "' returned invalid value " << v << " at s="
            << format_complex(s) << ", t=" << format_complex(t);
        throw EvalError(msg.str());
      }
      return v;
    }
  }
  throw Error("PhiSpec::eval: corrupt node");
}

std::string PhiSpec::describe() const {
  std::ostringstream out;
  switch (node_->kind) {
    case Kind::Linear:
      out << "linear(a=" << node_->a << ", b=" << node_->b << ")";
      break;
    case Kind::Power:
      out << "power(a=" << node_->a << ", b=" << node_->b << ")";
      break;
    case Kind::PNorm:
      out << "pnorm(p=" << node_->p << ")";
      break;
    case Kind::MaxOf:
      out << "max_of";
      break;
    case Kind::MinOf:
      out << "min_of";
      break;
    case Kind::Product:
      out << "product";
      break;
    case Kind::Sum: {
      out << "sum(";
      for (std::size_t i = 0; i < node_->terms.size(); ++i) {
        if (i) out << ", ";
        out << node_->terms[i].describe();
      }
      out << ")";
      break;
    }
    case Kind::Custom:
      out << "custom('" << node_->label << "')";
      break;
  }
  return out.str();
}

std::optional<bool> PhiSpec::analytic_inc() const {
  switch (node_->kind) {
    case Kind::Linear:
    case Kind::Power:
    case Kind::PNorm:
    case Kind::Product:
      return true;
    case Kind::MaxOf:
    case Kind::MinOf:
      // Plateaus once the other slot dominates; strictness fails.
      return false;
    case Kind::Sum: {
      // Every built-in is nondecreasing in each modulus, so one strictly
      // increasing term certifies the sum. No sound certificate otherwise:
      // e.g. max_of + min_of == |s| + |t| is strict although both terms
      // alone fail.
      bool any_strict = false;
      for (const PhiSpec& term : node_->terms) {
        if (term.is_custom()) return std::nullopt;
        if (term.analytic_inc() == true) any_strict = true;
      }
      if (any_strict) return true;
      return std::nullopt;
    }
    case Kind::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<bool> PhiSpec::analytic_con() const {
  switch (node_->kind) {
    case Kind::Linear:
    case Kind::Product:
    case Kind::MaxOf:
      return true;
    case Kind::MinOf:
      // Concave cap: averaging (0, 4) against level 1 breaks it.
      return false;
    case Kind::PNorm:
      return node_->p >= 1.0;
    case Kind::Power:
      return node_->a >= 1.0 && node_->b >= 1.0;
    case Kind::Sum: {
      // Sums of certified terms are certified. A failing term does NOT
      // condemn the sum (max_of + min_of is linear), so anything else is
      // left to the sampler.
      for (const PhiSpec& term : node_->terms) {
        if (term.analytic_con() != true) return std::nullopt;
      }
      return true;
    }
    case Kind::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

double phi_eval(const PhiSpec& spec, Complex s, Complex t) {
  return spec.eval(s, t);
}

ComplexFunction phi_pointwise(const PhiSpec& spec, const ComplexFunction& f,
                              const ComplexFunction& g) {
  require_same_space(f, g, "phi_pointwise");
  Eigen::VectorXcd v(f.space()->size());
  for (int i = 0; i < f.space()->size(); ++i) {
    v(i) = Complex(spec.eval(f.at(i), g.at(i)), 0.0);
  }
  return ComplexFunction(f.space(), std::move(v));
}

double rho(const PhiSpec& spec, RhoKind kind, const ComplexFunction& f,
           const ComplexFunction& g) {
  require_same_space(f, g, "rho");
  double fg = 0.0, gf = 0.0;
  for (int i = 0; i < f.space()->size(); ++i) {
    fg = std::max(fg, spec.eval(f.at(i), g.at(i)));
    gf = std::max(gf, spec.eval(g.at(i), f.at(i)));
  }
  return kind == RhoKind::Plus ? fg + gf : std::max(fg, gf);
}

double rho_scalar(const PhiSpec& spec, RhoKind kind, Complex r, Complex s) {
  const double rs = spec.eval(r, s);
  const double sr = spec.eval(s, r);
  return kind == RhoKind::Plus ? rs + sr : std::max(rs, sr);
}

void SamplerConfig::validate() const {
  if (grid_steps < 2) throw Error("SamplerConfig: grid_steps must be >= 2");
  if (!(grid_radius > 0.0) || !std::isfinite(grid_radius)) {
    throw Error("SamplerConfig: grid_radius must be finite and > 0");
  }
  if (random_samples < 0) {
    throw Error("SamplerConfig: random_samples must be >= 0");
  }
  if (!(strictness_margin >= 0.0) || !std::isfinite(strictness_margin)) {
    throw Error("SamplerConfig: strictness_margin must be finite and >= 0");
  }
}

namespace {

std::vector<double> grid_radii(const SamplerConfig& cfg) {
  std::vector<double> radii(cfg.grid_steps);
  const double step = cfg.grid_radius / (cfg.grid_steps - 1);
  for (int i = 0; i < cfg.grid_steps; ++i) radii[i] = i * step;
  return radii;
}

// Shared bookkeeping for a sequential sampling sweep: first violated
// instance wins and sampling stops.
class Sweep {
 public:
  explicit Sweep(CheckVerdict& verdict) : verdict_(verdict) {
    verdict_.status = CheckStatus::Pass;
    verdict_.samples_used = 0;
  }

  bool failed() const { return verdict_.status == CheckStatus::Fail; }

  void count() { ++verdict_.samples_used; }

  void fail(std::string law, std::vector<Complex> inputs, double lhs,
            double rhs) {
    if (failed()) return;
    verdict_.status = CheckStatus::Fail;
    verdict_.counterexample =
        Counterexample{std::move(law), std::move(inputs), lhs, rhs};
  }

 private:
  CheckVerdict& verdict_;
};

}  // namespace

CheckVerdict check_inc(const PhiSpec& spec, const SamplerConfig& cfg,
                       const ToleranceConfig& tol) {
  cfg.validate();
  tol.validate();
  CheckVerdict verdict;
  Sweep sweep(verdict);

  // Non-strict comparison allows eq_tol of relative noise; the strict one
  // must clear the margin relative to the larger side, so exact plateaus
  // (max_of, |s| alone) cannot hide in rounding.
  auto test_pair = [&](Complex lo, Complex hi, Complex other, bool strict) {
    struct Slot {
      const char* nonstrict;
      const char* strict_law;
      bool vary_first;
    };
    static const Slot slots[2] = {
        {"inc: slot 1 monotone", "inc: slot 1 strict", true},
        {"inc: slot 2 monotone", "inc: slot 2 strict", false},
    };
    for (const Slot& slot : slots) {
      if (sweep.failed()) return;
      const double lhs = slot.vary_first ? spec.eval(lo, other)
                                         : spec.eval(other, lo);
      const double rhs = slot.vary_first ? spec.eval(hi, other)
                                         : spec.eval(other, hi);
      sweep.count();
      const double slack = tol.eq_tol * (1.0 + std::max(lhs, rhs));
      if (lhs > rhs + slack) {
        sweep.fail(slot.nonstrict, {lo, hi, other}, lhs, rhs);
        return;
      }
      if (strict) {
        sweep.count();
        const double margin =
            cfg.strictness_margin * std::max(1.0, std::max(lhs, rhs));
        if (rhs - lhs <= margin) {
          sweep.fail(slot.strict_law, {lo, hi, other}, lhs, rhs);
          return;
        }
      }
    }
  };

  const std::vector<double> radii = grid_radii(cfg);
  for (std::size_t i = 0; i < radii.size() && !sweep.failed(); ++i) {
    for (std::size_t j = i + 1; j < radii.size() && !sweep.failed(); ++j) {
      for (double t : radii) {
        if (sweep.failed()) break;
        const bool strict = t > 0.0;
        test_pair(Complex(radii[i], 0.0), Complex(radii[j], 0.0),
                  Complex(t, 0.0), strict);
      }
    }
  }

  Rng rng(cfg.seed);
  for (int it = 0; it < cfg.random_samples && !sweep.failed(); ++it) {
    const Complex s1 = rng.complex_in_disk(cfg.grid_radius);
    if (it % 8 == 0) {
      // Equal moduli with independent phases: (inc) applied both ways forces
      // equality, which is exactly modulus invariance. Phase-sensitive
      // customs fail here.
      const Complex s2 = std::abs(s1) * rng.unit();
      const Complex t = rng.complex_in_disk(cfg.grid_radius);
      test_pair(s1, s2, t, false);
      if (!sweep.failed()) test_pair(s2, s1, t, false);
      continue;
    }
    // Ordered pair with a definite modulus gap so genuine strictness cannot
    // fall below the margin, plus a t bounded away from zero.
    const double gap = rng.uniform(0.1, 2.0);
    const Complex s2 = (std::abs(s1) + gap) * rng.unit();
    const Complex t_strict = rng.uniform(0.1, cfg.grid_radius) * rng.unit();
    test_pair(s1, s2, t_strict, true);
    if (!sweep.failed()) {
      const Complex t_any = rng.complex_in_disk(cfg.grid_radius);
      test_pair(s1, s2, t_any, false);
    }
  }
  return verdict;
}

CheckVerdict check_con(const PhiSpec& spec, const SamplerConfig& cfg,
                       const ToleranceConfig& tol) {
  cfg.validate();
  tol.validate();
  CheckVerdict verdict;
  Sweep sweep(verdict);

  // tuple = (s_1..s_n), other = t. Checks both slot placements.
  auto test_tuple = [&](const std::vector<Complex>& tuple, Complex other) {
    const int n = static_cast<int>(tuple.size());
    Complex mean(0.0, 0.0);
    for (Complex s : tuple) mean += s;
    mean /= static_cast<double>(n);

    for (int slot = 1; slot <= 2 && !sweep.failed(); ++slot) {
      double avg = 0.0;
      for (Complex s : tuple) {
        avg += slot == 1 ? spec.eval(s, other) : spec.eval(other, s);
      }
      avg /= static_cast<double>(n);
      const double lhs =
          slot == 1 ? spec.eval(mean, other) : spec.eval(other, mean);
      sweep.count();
      if (lhs > avg + tol.eq_tol * (1.0 + std::abs(avg))) {
        std::vector<Complex> inputs = tuple;
        inputs.push_back(other);
        std::ostringstream law;
        law << "con: slot " << slot << ", n=" << n;
        sweep.fail(law.str(), std::move(inputs), lhs, avg);
      }
    }
  };

  // Deterministic probes first. Real aligned tuples are the worst case: the
  // triangle inequality contributes no slack, so any concavity in the radial
  // profile shows up immediately. (0, 4) against t = 0 is the canonical
  // square-root violation.
  static const std::vector<std::vector<double>> kTuples = {
      {0, 4},       {0, 1},          {1, 1},       {0.5, 2},
      {4, 0},       {0, 0, 4},       {0, 4, 4},    {1, 2, 4},
      {0, 0, 0, 4}, {0.5, 1, 2, 4},  {0, 1, 1, 1}, {0, 0, 0, 0, 4},
      {1, 1, 1, 1, 4},
  };
  static const double kOthers[] = {0.0, 1.0, 0.5, 4.0};
  for (const auto& radii : kTuples) {
    for (double t : kOthers) {
      if (sweep.failed()) break;
      std::vector<Complex> tuple;
      tuple.reserve(radii.size());
      for (double r : radii) tuple.emplace_back(r, 0.0);
      test_tuple(tuple, Complex(t, 0.0));
    }
  }

  Rng rng(cfg.seed);
  for (int it = 0; it < cfg.random_samples && !sweep.failed(); ++it) {
    const int n = 2 + it % 4;
    const bool aligned = it % 2 == 0;
    std::vector<Complex> tuple(n);
    for (Complex& s : tuple) {
      s = aligned ? Complex(rng.uniform(0.0, cfg.grid_radius), 0.0)
                  : rng.complex_in_disk(cfg.grid_radius);
    }
    const Complex t = aligned
                          ? Complex(rng.uniform(0.0, cfg.grid_radius), 0.0)
                          : rng.complex_in_disk(cfg.grid_radius);
    test_tuple(tuple, t);
  }
  return verdict;
}

CheckVerdict check_axis_vanishing(const PhiSpec& spec,
                                  const SamplerConfig& cfg,
                                  const ToleranceConfig& tol) {
  cfg.validate();
  tol.validate();
  CheckVerdict verdict;
  Sweep sweep(verdict);

  auto probe = [&](double t) {
    const Complex zt(t, 0.0);
    const Complex zero(0.0, 0.0);
    const double left = spec.eval(zt, zero);
    sweep.count();
    if (left > tol.eq_tol) {
      sweep.fail("axis: phi(t, 0) != 0", {zt, zero}, left, 0.0);
      return;
    }
    const double right = spec.eval(zero, zt);
    sweep.count();
    if (right > tol.eq_tol) {
      sweep.fail("axis: phi(0, t) != 0", {zero, zt}, right, 0.0);
    }
  };

  for (double t : grid_radii(cfg)) {
    if (sweep.failed()) break;
    probe(t);
  }
  Rng rng(cfg.seed);
  const int extra = std::min(cfg.random_samples, 256);
  for (int it = 0; it < extra && !sweep.failed(); ++it) {
    probe(rng.uniform(0.0, cfg.grid_radius));
  }
  return verdict;
}

CheckVerdict check_divergence(const PhiSpec& spec, const SamplerConfig& cfg,
                              const ToleranceConfig& tol) {
  cfg.validate();
  tol.validate();
  CheckVerdict verdict;
  verdict.status = CheckStatus::Pass;

  // A finite scan cannot disprove divergence, so the only outcomes are Pass
  // (cleared the threshold and kept climbing through the horizon) and
  // Inconclusive.
  constexpr double kThreshold = 1e6;
  constexpr int kHorizon = 40;

  std::vector<double> bases;
  for (double r : grid_radii(cfg)) {
    if (r > 0.0) bases.push_back(r);
  }
  if (bases.empty()) bases.push_back(1.0);

  for (double a : bases) {
    for (int slot = 1; slot <= 2; ++slot) {
      double prev = 0.0;
      bool crossed = false;
      bool ok = false;
      for (int k = 1; k <= kHorizon; ++k) {
        const double t = std::ldexp(1.0, k);  // 2^k
        const Complex zt(t, 0.0), za(a, 0.0);
        const double v =
            slot == 1 ? spec.eval(zt, za) : spec.eval(za, zt);
        ++verdict.samples_used;
        if (crossed && v < prev * (1.0 - 1e-12)) {
          // Climbed past the threshold but then dipped: not established.
          ok = false;
          break;
        }
        if (v > kThreshold) {
          crossed = true;
          ok = true;
        }
        if (crossed) prev = v;
      }
      if (!ok) {
        verdict.status = CheckStatus::Inconclusive;
        return verdict;
      }
    }
  }
  return verdict;
}

CheckVerdict observation_checks(const PhiSpec& spec, RhoKind kind,
                                const ComplexFunction& f1,
                                const ComplexFunction& g1,
                                const ComplexFunction& f2,
                                const ComplexFunction& g2, double r, double s,
                                const ToleranceConfig& tol) {
  tol.validate();
  require_same_space(f1, g1, "observation_checks");
  require_same_space(f1, f2, "observation_checks");
  require_same_space(f1, g2, "observation_checks");
  if (!std::isfinite(r) || !std::isfinite(s)) {
    throw Error("observation_checks: r and s must be finite");
  }
  CheckVerdict verdict;
  Sweep sweep(verdict);

  auto one_sided = [&](const ComplexFunction& f, const ComplexFunction& g) {
    return sup_norm(phi_pointwise(spec, f, g));
  };

  // (i) A drop in rho must be visible in at least one one-sided gauge.
  sweep.count();
  if (rho(spec, kind, f1, g1) < rho(spec, kind, f2, g2)) {
    const bool moved = one_sided(f1, g1) < one_sided(f2, g2) ||
                       one_sided(g1, f1) < one_sided(g2, f2);
    if (!moved) {
      sweep.fail("observation (i): no one-sided gauge moved", {},
                 rho(spec, kind, f1, g1), rho(spec, kind, f2, g2));
    }
  }

  // (ii) rho below the constant benchmark forces a modulus dip below (r, s).
  auto scalar_bound = [&](const ComplexFunction& f, const ComplexFunction& g) {
    if (sweep.failed()) return;
    sweep.count();
    if (rho(spec, kind, f, g) < rho_scalar(spec, kind, Complex(r, 0.0),
                                           Complex(s, 0.0))) {
      const double fmin = f.values().cwiseAbs().minCoeff();
      const double gmin = g.values().cwiseAbs().minCoeff();
      if (!(fmin < r || gmin < s)) {
        sweep.fail("observation (ii): moduli never dip below (r, s)",
                   {Complex(r, 0.0), Complex(s, 0.0)},
                   rho(spec, kind, f, g),
                   rho_scalar(spec, kind, Complex(r, 0.0), Complex(s, 0.0)));
      }
    }
  };
  scalar_bound(f1, g1);
  scalar_bound(f2, g2);

  return verdict;
}

}  // namespace rholab
