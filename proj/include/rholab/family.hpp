#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rholab/phi.hpp"
#include "rholab/space.hpp"

namespace rholab {

// How the listed functions define the family:
//   SubspaceSpan:       complex linear span of the listed generators
//   PositiveConeOfSpan: real nonnegative members of that span
//   MultiplicativeList: extensional list, validated closed under pairwise
//                       products of its base members and under rescaling the
//                       base by {1/2, 2}
//   ExplicitList:       extensional list, no closure requirement
enum class FamilyKind {
  SubspaceSpan,
  PositiveConeOfSpan,
  MultiplicativeList,
  ExplicitList,
};

// Which structural hypotheses downstream analysis applies. Additive carries
// linear-structure kinds; Multiplicative carries product-structure kinds.
// ExplicitList is the desk-scale stand-in allowed on both.
enum class FamilyPath { Additive, Multiplicative };

const char* family_kind_name(FamilyKind kind);
const char* family_path_name(FamilyPath path);

// A finite description of a function family on one space. Construction
// validates the kind/path pairing and the kind's structural invariants; a
// family object that exists is structurally sound.
class FunctionFamily {
 public:
  // closure_base_count: for MultiplicativeList, the first that many listed
  // functions form the base whose depth-2 products and {1/2, 2} rescalings
  // must appear in the list. Negative means "the whole list". Ignored for
  // the other kinds.
  FunctionFamily(SpacePtr space, FamilyKind kind, FamilyPath path,
                 std::vector<ComplexFunction> functions,
                 const ToleranceConfig& tol, int closure_base_count = -1);

  const SpacePtr& space() const { return space_; }
  FamilyKind kind() const { return kind_; }
  FamilyPath path() const { return path_; }
  const std::vector<ComplexFunction>& functions() const { return functions_; }
  int closure_base_count() const { return closure_base_count_; }

  // True for the extensional kinds (membership by list lookup).
  bool is_list_kind() const {
    return kind_ == FamilyKind::MultiplicativeList ||
           kind_ == FamilyKind::ExplicitList;
  }

 private:
  SpacePtr space_;
  FamilyKind kind_;
  FamilyPath path_;
  std::vector<ComplexFunction> functions_;
  int closure_base_count_;
};

// Membership test:
//   SubspaceSpan:       least-squares residual <= eq_tol * (1 + ||f||)
//   PositiveConeOfSpan: the above, plus f real and >= 0 pointwise within tol
//   list kinds:         sup-distance to some listed function within tol
bool membership(const FunctionFamily& family, const ComplexFunction& f,
                const ToleranceConfig& tol);

struct BoundaryWitness {
  std::string point;
  ComplexFunction h;
  // Off-point modulus bound this witness certifies (0 for exact indicators).
  double epsilon;
};

struct BoundaryReport {
  PointSet delta_points;
  PointSet ambient_choquet;
  // delta_points covers the whole space, i.e. the recovery hypotheses hold.
  bool hypothesis_ok = false;
  // List kinds certify via finite witness schedules rather than exact
  // indicator membership; flagged so reports can say so.
  bool witness_mode = false;
  std::vector<BoundaryWitness> witnesses;
};

// Strong boundary points of the family.
//
// Exact kinds: on a finite discrete space, x is a strong boundary point iff
// the indicator of {x} belongs to the family (peaking functions converge to
// the indicator, and the family is closed); the test is the membership
// residual and the witness is the indicator itself.
//
// List kinds: x qualifies iff every epsilon in {1, 1/2, ..., 2^-20} admits a
// listed h with |h(x) - 1| <= eq_tol, ||h|| <= 1 + eq_tol, and |h| < epsilon
// off x. The recorded witness is the one for the smallest epsilon.
BoundaryReport strong_boundary_points(const FunctionFamily& family,
                                      const ToleranceConfig& tol);

// Choquet boundary of the ambient algebra of ALL functions on the space:
// every point of a finite discrete space, since each indicator lies in the
// algebra and peaks there.
PointSet ambient_choquet(const FiniteSpace& space);

// True when f takes the positive real value r at x0 and ||f|| == r
// (tolerance scaled by 1 + r). The pointwise test behind v_set_members.
bool value_peaks_at(const ComplexFunction& f, const std::string& x0, double r,
                    const ToleranceConfig& tol);

// Same with |f(x0)| == r == ||f||: the modulus-peaking variant.
bool modulus_peaks_at(const ComplexFunction& f, const std::string& x0,
                      double r, const ToleranceConfig& tol);

// Indices into family.functions() of members with f(x0) == r == ||f||
// (value pinned to the positive real r; tolerance-scaled by 1 + r).
std::vector<int> v_set_members(const FunctionFamily& family,
                               const std::string& x0, double r,
                               const ToleranceConfig& tol);

// Same with |f(x0)| == r == ||f||: the modulus-peaking variant.
std::vector<int> f_set_members(const FunctionFamily& family,
                               const std::string& x0, double r,
                               const ToleranceConfig& tol);

// Thrown by the peaking-witness searches when the family certifies x0 as a
// boundary point but no listed witness is sharp enough for the requested
// epsilon. Carries the sharpest epsilon the list achieves.
class NoWitnessError : public Error {
 public:
  NoWitnessError(const std::string& msg, double best) : Error(msg),
                                                        best_epsilon(best) {}
  double best_epsilon;
};

// Finds h with h(x0) = 1 = ||h|| witnessing
//   rho_max(f, ||f|| h) <= rho_max(|f(x0)| + eps, ||f||)
// and re-verifies that inequality by direct evaluation before returning.
// Exact kinds use the indicator; list kinds use a recorded witness with
// off-point bound <= eps / max(||f||, 1). Requires spec to satisfy (inc).
ComplexFunction peaking_witness_romax(const FunctionFamily& family,
                                      const std::string& x0,
                                      const ComplexFunction& f, double eps,
                                      const PhiSpec& spec,
                                      const ToleranceConfig& tol);

enum class RoPlusCase { AxisVanishing, Divergence };

struct ScaledPeakingWitness {
  double lambda = 1.0;
  ComplexFunction h;
};

// Finds (lambda, h) with h(x0) = 1 = ||h|| witnessing
//   rho_plus(f, lambda h) < rho_plus(|f(x0)| + eps, lambda),
// strictly, re-verified by direct evaluation before returning.
//
// AxisVanishing (phi vanishes on both axes): lambda = 1.
// Divergence: lambda searched over ||f|| * 2^k, k = 1..40, for the smallest
// scalar clearing phi(||f||, ||f||) < phi(lambda, |f(x0)| + eps) and its
// mirror. The caller is responsible for having gated the case by
// check_axis_vanishing / check_divergence.
ScaledPeakingWitness peaking_witness_roplus(const FunctionFamily& family,
                                            const std::string& x0,
                                            const ComplexFunction& f,
                                            double eps, const PhiSpec& spec,
                                            const ToleranceConfig& tol,
                                            RoPlusCase which);

}  // namespace rholab
