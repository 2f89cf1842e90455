#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rholab/space.hpp"

namespace rholab {

// Which two-variable functional is built on top of phi:
//   Plus: rho(f, g) = ||phi(f, g)|| + ||phi(g, f)||
//   Max:  rho(f, g) = max(||phi(f, g)||, ||phi(g, f)||)
enum class RhoKind { Plus, Max };

// Thrown when a custom evaluator misbehaves (non-finite or negative output).
class EvalError : public Error {
 public:
  using Error::Error;
};

// A two-variable gauge phi : C x C -> [0, inf), represented as an immutable
// expression tree. Built-in constructors depend on (s, t) only through
// (|s|, |t|), which makes modulus invariance exact. Custom evaluators are the
// escape hatch for experiments and are flagged untrusted: nothing is assumed
// about them beyond finiteness and nonnegativity, which are enforced per call.
//
// Built-ins:
//   linear(a, b)  = a|s| + b|t|,  a, b > 0
//   power(a, b)   = |s|^a |t|^b,  a, b > 0
//   pnorm(p)      = (|s|^p + |t|^p)^(1/p),  p > 0
//   max_of()      = max(|s|, |t|)
//   min_of()      = min(|s|, |t|)
//   product()     = |s t|
//   sum(terms)    = pointwise sum of sub-specs
class PhiSpec {
 public:
  enum class Kind { Linear, Power, PNorm, MaxOf, MinOf, Product, Sum, Custom };

  static PhiSpec linear(double a, double b);
  static PhiSpec power(double a, double b);
  static PhiSpec pnorm(double p);
  static PhiSpec max_of();
  static PhiSpec min_of();
  static PhiSpec product();
  static PhiSpec sum(std::vector<PhiSpec> terms);
  static PhiSpec custom(std::string label,
                        std::function<double(Complex, Complex)> eval);

  Kind kind() const { return node_->kind; }
  double param_a() const { return node_->a; }
  double param_b() const { return node_->b; }
  double param_p() const { return node_->p; }
  const std::vector<PhiSpec>& terms() const { return node_->terms; }
  const std::string& custom_label() const { return node_->label; }

  // True when any node of the tree is a custom evaluator.
  bool is_custom() const;

  double eval(Complex s, Complex t) const;

  // Human-readable one-liner, e.g. "linear(a=1, b=2)" or
  // "sum(max_of, product)". Used in reports and diagnostics.
  std::string describe() const;

  // Closed-form knowledge about the built-in constructors; nullopt when no
  // sound certificate exists (customs, and mixed sums where termwise
  // reasoning proves nothing). Sampling remains the verdict of record; these
  // only annotate reports.
  std::optional<bool> analytic_inc() const;
  std::optional<bool> analytic_con() const;

 private:
  struct Node {
    Kind kind;
    double a = 0.0, b = 0.0, p = 0.0;
    std::vector<PhiSpec> terms;
    std::function<double(Complex, Complex)> eval;
    std::string label;
  };

  explicit PhiSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

double phi_eval(const PhiSpec& spec, Complex s, Complex t);

// x -> phi(f(x), g(x)) as a real-valued function; spaces must match.
ComplexFunction phi_pointwise(const PhiSpec& spec, const ComplexFunction& f,
                              const ComplexFunction& g);

// rho as defined by the kind; throws on space mismatch.
double rho(const PhiSpec& spec, RhoKind kind, const ComplexFunction& f,
           const ComplexFunction& g);

// rho of two scalars, i.e. of the constant functions on a one-point space.
double rho_scalar(const PhiSpec& spec, RhoKind kind, Complex r, Complex s);

// Deterministic sampling plan shared by the axiom checkers. The grid part
// enumerates nonnegative radii linspace(0, grid_radius, grid_steps); the
// random part draws from the disk of the same radius.
struct SamplerConfig {
  std::uint64_t seed = 1;
  double grid_radius = 10.0;
  int grid_steps = 21;
  int random_samples = 10000;
  // Strict inequalities must clear this margin relative to the larger side.
  double strictness_margin = 1e-12;

  void validate() const;
};

enum class CheckStatus { Pass, Fail, Inconclusive };

// A failed law instance pinned down far enough to re-evaluate by hand:
// the inputs in evaluation order plus both sides of the violated comparison.
struct Counterexample {
  std::string law;
  std::vector<Complex> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CheckVerdict {
  CheckStatus status = CheckStatus::Inconclusive;
  std::optional<Counterexample> counterexample;
  long samples_used = 0;
};

// Monotonicity in modulus, separately in each slot, with strictness against
// the other slot being nonzero. Samples are grid-first then random, and the
// reported counterexample is the earliest sample that fails.
CheckVerdict check_inc(const PhiSpec& spec, const SamplerConfig& cfg,
                       const ToleranceConfig& tol);

// Averaged subadditivity in each slot: for n in {2,...,5},
//   phi((1/n) sum s_i, t) <= (1/n) sum phi(s_i, t)   and mirrored.
// Violations beyond eq_tol (relative to the right side) fail.
CheckVerdict check_con(const PhiSpec& spec, const SamplerConfig& cfg,
                       const ToleranceConfig& tol);

// Axis condition: phi(t, 0) == 0 == phi(0, t) for sampled t >= 0
// (zero included).
CheckVerdict check_axis_vanishing(const PhiSpec& spec,
                                  const SamplerConfig& cfg,
                                  const ToleranceConfig& tol);

// Divergence condition: phi(t, a) -> inf and phi(a, t) -> inf along
// t = 2^k, k = 1..40, for sampled a > 0. A finite horizon cannot refute
// divergence, so this never returns Fail: Pass when the values clear a
// growth threshold and keep climbing, Inconclusive otherwise.
CheckVerdict check_divergence(const PhiSpec& spec, const SamplerConfig& cfg,
                              const ToleranceConfig& tol);

// Two directly computable consequences of the definitions, checked on
// concrete data:
//  (i)  rho(f1, g1) < rho(f2, g2) forces one of the one-sided sup gauges to
//       have moved;
//  (ii) rho(f, g) < rho(r*1, s*1) forces |f| < r or |g| < s somewhere,
//       checked for both (f1, g1) and (f2, g2).
// Instances whose antecedents are false pass vacuously.
CheckVerdict observation_checks(const PhiSpec& spec, RhoKind kind,
                                const ComplexFunction& f1,
                                const ComplexFunction& g1,
                                const ComplexFunction& f2,
                                const ComplexFunction& g2, double r, double s,
                                const ToleranceConfig& tol);

}  // namespace rholab
