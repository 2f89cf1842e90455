#include "rholab/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace rholab {

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::SubspaceSpan: return "subspace_span";
    case FamilyKind::PositiveConeOfSpan: return "positive_cone";
    case FamilyKind::MultiplicativeList: return "mult_list";
    case FamilyKind::ExplicitList: return "explicit_list";
  }
  return "?";
}

const char* family_path_name(FamilyPath path) {
  return path == FamilyPath::Additive ? "additive" : "multiplicative";
}

namespace {

bool kind_allowed_on_path(FamilyKind kind, FamilyPath path) {
  if (kind == FamilyKind::ExplicitList) return true;
  if (path == FamilyPath::Additive) {
    return kind == FamilyKind::SubspaceSpan ||
           kind == FamilyKind::PositiveConeOfSpan;
  }
  return kind == FamilyKind::MultiplicativeList;
}

bool real_nonnegative(const ComplexFunction& f, double tol) {
  for (int i = 0; i < f.space()->size(); ++i) {
    const Complex v = f.at(i);
    if (std::abs(v.imag()) > tol || v.real() < -tol) return false;
  }
  return true;
}

// Index of a listed function within sup-distance tol of f, or -1.
int find_in_list(const std::vector<ComplexFunction>& list,
                 const ComplexFunction& f, double tol) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (sup_distance(list[i], f) <= tol) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

FunctionFamily::FunctionFamily(SpacePtr space, FamilyKind kind,
                               FamilyPath path,
                               std::vector<ComplexFunction> functions,
                               const ToleranceConfig& tol,
                               int closure_base_count)
    : space_(std::move(space)),
      kind_(kind),
      path_(path),
      functions_(std::move(functions)),
      closure_base_count_(closure_base_count) {
  tol.validate();
  if (!space_) throw Error("FunctionFamily: null space");
  if (functions_.empty()) {
    throw Error("FunctionFamily: needs at least one listed function");
  }
  for (const auto& f : functions_) {
    if (!(f.space() == space_ || *f.space() == *space_)) {
      throw Error("FunctionFamily: listed function lives on a foreign space");
    }
  }
  if (!kind_allowed_on_path(kind_, path_)) {
    std::ostringstream msg;
    msg << "FunctionFamily: kind " << family_kind_name(kind_)
        << " is not permitted on the " << family_path_name(path_) << " path";
    throw Error(msg.str());
  }

  if (kind_ == FamilyKind::PositiveConeOfSpan) {
    for (std::size_t i = 0; i < functions_.size(); ++i) {
      if (!real_nonnegative(functions_[i], tol.eq_tol)) {
        std::ostringstream msg;
        msg << "FunctionFamily: positive_cone generator #" << i
            << " is not real nonnegative";
        throw Error(msg.str());
      }
    }
  }

  if (kind_ == FamilyKind::MultiplicativeList) {
    const int n = static_cast<int>(functions_.size());
    int base = closure_base_count_ < 0 ? n : closure_base_count_;
    if (base > n) {
      throw Error("FunctionFamily: closure_base_count exceeds list size");
    }
    closure_base_count_ = base;
    // Depth-2 closure: products of base pairs and {1/2, 2} rescalings of the
    // base must all be listed. Exact closure of a finite list is impossible
    // (radii multiply without bound), so the invariant is depth-limited by
    // design and the tested depth is recorded by the base.
    for (int i = 0; i < base; ++i) {
      for (int j = i; j < base; ++j) {
        auto prod = pointwise_product(functions_[i], functions_[j]);
        const double match_tol = tol.eq_tol * (1.0 + sup_norm(prod));
        if (find_in_list(functions_, prod, match_tol) < 0) {
          std::ostringstream msg;
          msg << "FunctionFamily: mult_list not closed at depth 2: product "
                 "of members #" << i << " and #" << j << " is unlisted";
          throw Error(msg.str());
        }
      }
      for (double r : {0.5, 2.0}) {
        auto scaled = Complex(r, 0.0) * functions_[i];
        const double match_tol = tol.eq_tol * (1.0 + sup_norm(scaled));
        if (find_in_list(functions_, scaled, match_tol) < 0) {
          std::ostringstream msg;
          msg << "FunctionFamily: mult_list not closed under rescaling by "
              << r << ": member #" << i;
          throw Error(msg.str());
        }
      }
    }
  }
}

bool membership(const FunctionFamily& family, const ComplexFunction& f,
                const ToleranceConfig& tol) {
  tol.validate();
  if (!(f.space() == family.space() || *f.space() == *family.space())) {
    throw Error("membership: function lives on a foreign space");
  }
  const double bound = tol.eq_tol * (1.0 + sup_norm(f));

  if (family.is_list_kind()) {
    return find_in_list(family.functions(), f, bound) >= 0;
  }

  // Span kinds: exact least-squares distance from f to the generator span.
  const int n = family.space()->size();
  const int k = static_cast<int>(family.functions().size());
  Eigen::MatrixXcd gens(n, k);
  for (int j = 0; j < k; ++j) gens.col(j) = family.functions()[j].values();
  Eigen::VectorXcd coeff =
      gens.completeOrthogonalDecomposition().solve(f.values());
  const double residual = (gens * coeff - f.values()).cwiseAbs().maxCoeff();
  if (residual > bound) return false;

  if (family.kind() == FamilyKind::PositiveConeOfSpan) {
    return real_nonnegative(f, tol.eq_tol);
  }
  return true;
}

PointSet ambient_choquet(const FiniteSpace& space) {
  PointSet out;
  for (const auto& p : space.points()) out.insert(p);
  return out;
}

namespace {

// Peak candidates at x0 within a list: value pinned to 1, norm pinned to 1.
bool peaks_at(const ComplexFunction& h, int idx, double eq_tol) {
  return std::abs(h.at(idx) - Complex(1.0, 0.0)) <= eq_tol &&
         sup_norm(h) <= 1.0 + eq_tol;
}

double off_point_max(const ComplexFunction& h, int idx) {
  double m = 0.0;
  for (int i = 0; i < h.space()->size(); ++i) {
    if (i != idx) m = std::max(m, std::abs(h.at(i)));
  }
  return m;
}

// Sharpest listed witness peaking at x0: smallest off-point modulus.
// Returns (index, achieved bound) or nullopt if nothing peaks at all.
std::optional<std::pair<int, double>> sharpest_witness(
    const FunctionFamily& family, int idx, const ToleranceConfig& tol) {
  std::optional<std::pair<int, double>> best;
  for (std::size_t i = 0; i < family.functions().size(); ++i) {
    const auto& h = family.functions()[i];
    if (!peaks_at(h, idx, tol.eq_tol)) continue;
    const double achieved = off_point_max(h, idx);
    if (!best || achieved < best->second) {
      best = {static_cast<int>(i), achieved};
    }
  }
  return best;
}

}  // namespace

BoundaryReport strong_boundary_points(const FunctionFamily& family,
                                      const ToleranceConfig& tol) {
  tol.validate();
  BoundaryReport report;
  report.ambient_choquet = ambient_choquet(*family.space());
  report.witness_mode = family.is_list_kind();

  const auto& sp = *family.space();
  for (int idx = 0; idx < sp.size(); ++idx) {
    const std::string& point = sp.point(idx);

    if (!report.witness_mode) {
      // Exact kinds: the limit of any peaking sequence is the indicator, and
      // span/cone families contain their limits, so the residual test on the
      // indicator decides exactly.
      auto ind = ComplexFunction::indicator(family.space(), point);
      if (membership(family, ind, tol)) {
        report.delta_points.insert(point);
        report.witnesses.push_back({point, ind, 0.0});
      }
      continue;
    }

    // List kinds: walk the epsilon schedule; every epsilon must be witnessed.
    // A witness for the smallest epsilon serves all larger ones, but the
    // schedule is checked as stated so the report can name the failing level.
    bool all_witnessed = true;
    for (int k = 0; k <= 20 && all_witnessed; ++k) {
      const double eps = std::ldexp(1.0, -k);  // 1, 1/2, ..., 2^-20
      bool found = false;
      for (const auto& h : family.functions()) {
        if (peaks_at(h, idx, tol.eq_tol) && off_point_max(h, idx) < eps) {
          found = true;
          break;
        }
      }
      all_witnessed = found;
    }
    if (all_witnessed) {
      auto best = sharpest_witness(family, idx, tol);
      report.delta_points.insert(point);
      report.witnesses.push_back(
          {point, family.functions()[best->first], best->second});
    }
  }

  report.hypothesis_ok = report.delta_points == report.ambient_choquet;
  return report;
}

namespace {

void require_radius(double r, const char* where) {
  if (!std::isfinite(r) || r <= 0.0) {
    std::ostringstream msg;
    msg << where << ": radius must be finite and > 0, got " << r;
    throw Error(msg.str());
  }
}

}  // namespace

bool value_peaks_at(const ComplexFunction& f, const std::string& x0, double r,
                    const ToleranceConfig& tol) {
  tol.validate();
  require_radius(r, "value_peaks_at");
  const double slack = tol.eq_tol * (1.0 + r);
  // Value pinned to the positive real r (this forces realness), norm == r.
  return std::abs(f.at(x0) - Complex(r, 0.0)) <= slack &&
         std::abs(sup_norm(f) - r) <= slack;
}

bool modulus_peaks_at(const ComplexFunction& f, const std::string& x0,
                      double r, const ToleranceConfig& tol) {
  tol.validate();
  require_radius(r, "modulus_peaks_at");
  const double slack = tol.eq_tol * (1.0 + r);
  return std::abs(std::abs(f.at(x0)) - r) <= slack &&
         std::abs(sup_norm(f) - r) <= slack;
}

std::vector<int> v_set_members(const FunctionFamily& family,
                               const std::string& x0, double r,
                               const ToleranceConfig& tol) {
  tol.validate();
  require_radius(r, "v_set_members");
  family.space()->index_of(x0);  // reject unknown points up front
  std::vector<int> out;
  for (std::size_t i = 0; i < family.functions().size(); ++i) {
    if (value_peaks_at(family.functions()[i], x0, r, tol)) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::vector<int> f_set_members(const FunctionFamily& family,
                               const std::string& x0, double r,
                               const ToleranceConfig& tol) {
  tol.validate();
  require_radius(r, "f_set_members");
  family.space()->index_of(x0);
  std::vector<int> out;
  for (std::size_t i = 0; i < family.functions().size(); ++i) {
    if (modulus_peaks_at(family.functions()[i], x0, r, tol)) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

namespace {

// Shared witness selection for the peaking lemmas. required_bound is the
// off-point modulus the proof needs; exact kinds always deliver the
// indicator (bound 0) once x0 is certified.
ComplexFunction select_peak_witness(const FunctionFamily& family,
                                    const std::string& x0,
                                    double required_bound,
                                    const ToleranceConfig& tol) {
  const int idx = family.space()->index_of(x0);

  if (!family.is_list_kind()) {
    auto ind = ComplexFunction::indicator(family.space(), x0);
    if (!membership(family, ind, tol)) {
      throw Error("peaking witness: '" + x0 +
                  "' is not a strong boundary point of the family");
    }
    return ind;
  }

  auto best = sharpest_witness(family, idx, tol);
  if (!best) {
    throw Error("peaking witness: '" + x0 +
                "' is not a strong boundary point of the family");
  }
  if (!(best->second < required_bound)) {
    std::ostringstream msg;
    msg << "peaking witness: list achieves off-point bound " << best->second
        << " at '" << x0 << "' but " << required_bound << " is required";
    throw NoWitnessError(msg.str(), best->second);
  }
  return family.functions()[best->first];
}

void require_witness_inputs(const FunctionFamily& family,
                            const ComplexFunction& f, double eps,
                            const char* where) {
  if (!(f.space() == family.space() || *f.space() == *family.space())) {
    throw Error(std::string(where) + ": f lives on a foreign space");
  }
  if (!std::isfinite(eps) || eps <= 0.0) {
    throw Error(std::string(where) + ": eps must be finite and > 0");
  }
}

}  // namespace

ComplexFunction peaking_witness_romax(const FunctionFamily& family,
                                      const std::string& x0,
                                      const ComplexFunction& f, double eps,
                                      const PhiSpec& spec,
                                      const ToleranceConfig& tol) {
  tol.validate();
  require_witness_inputs(family, f, eps, "peaking_witness_romax");

  const double norm_f = sup_norm(f);
  const double required = eps / std::max(norm_f, 1.0);
  ComplexFunction h = select_peak_witness(family, x0, required, tol);

  // Direct re-evaluation of the claimed inequality. A failure here means the
  // supplied spec does not satisfy the monotonicity hypothesis.
  const double lhs =
      rho(spec, RhoKind::Max, f, Complex(norm_f, 0.0) * h);
  const double target = std::abs(f.at(x0)) + eps;
  const double rhs =
      rho_scalar(spec, RhoKind::Max, Complex(target, 0.0),
                 Complex(norm_f, 0.0));
  if (lhs > rhs + tol.eq_tol * (1.0 + rhs)) {
    std::ostringstream msg;
    msg << "peaking_witness_romax: witness failed direct evaluation: "
        << lhs << " > " << rhs << " (phi = " << spec.describe() << ")";
    throw Error(msg.str());
  }
  return h;
}

ScaledPeakingWitness peaking_witness_roplus(const FunctionFamily& family,
                                            const std::string& x0,
                                            const ComplexFunction& f,
                                            double eps, const PhiSpec& spec,
                                            const ToleranceConfig& tol,
                                            RoPlusCase which) {
  tol.validate();
  require_witness_inputs(family, f, eps, "peaking_witness_roplus");

  const double norm_f = sup_norm(f);
  const double target = std::abs(f.at(x0)) + eps;

  double lambda = 1.0;
  if (which == RoPlusCase::Divergence && norm_f > 0.0) {
    // Smallest dyadic multiple of ||f|| clearing both scalar conditions.
    const double benchmark = spec.eval(Complex(norm_f, 0.0),
                                       Complex(norm_f, 0.0));
    bool found = false;
    for (int k = 1; k <= 40; ++k) {
      const double cand = norm_f * std::ldexp(1.0, k);
      const double fwd = spec.eval(Complex(cand, 0.0), Complex(target, 0.0));
      const double rev = spec.eval(Complex(target, 0.0), Complex(cand, 0.0));
      if (benchmark < fwd && benchmark < rev) {
        lambda = cand;
        found = true;
        break;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "peaking_witness_roplus: no scale up to ||f|| * 2^40 clears "
             "phi(||f||, ||f||) in both slots (phi = " << spec.describe()
          << "); divergence hypothesis looks unmet";
      throw Error(msg.str());
    }
  }

  const double required = eps / std::max(lambda, 1.0);
  ComplexFunction h = select_peak_witness(family, x0, required, tol);

  // The lemma's inequality is strict; re-verify before returning.
  const double lhs = rho(spec, RhoKind::Plus, f, Complex(lambda, 0.0) * h);
  const double rhs = rho_scalar(spec, RhoKind::Plus, Complex(target, 0.0),
                                Complex(lambda, 0.0));
  if (!(lhs < rhs)) {
    std::ostringstream msg;
    msg << "peaking_witness_roplus: witness failed direct evaluation: "
        << lhs << " >= " << rhs << " (lambda = " << lambda
        << ", phi = " << spec.describe() << ")";
    throw Error(msg.str());
  }
  return ScaledPeakingWitness{lambda, std::move(h)};
}

}  // namespace rholab
