#pragma once

#include <cstdint>
#include <vector>

#include "rholab/analysis.hpp"
#include "rholab/family.hpp"
#include "rholab/space.hpp"

namespace rholab {

// A weighted composition recipe: Tf(y) = u(y) * f(sigma(y)).
struct PlantedMap {
  // sigma[i] = index into the domain space of the point the i-th codomain
  // point reads from; must be a bijection, so the spaces have equal size.
  std::vector<int> sigma;
  // Angle (radians) of the unimodular weight u at the i-th codomain point.
  std::vector<double> weights_rad;
};

// Builds the pair table of the planted recipe over the domain family.
//
// The domain list is augmented with peaking anchors at the given radii:
// r * indicator(x) (so domain-side selectors are peopled at every x and r)
// and its phase-corrected twin r * conj(u) * indicator(x) (so image-side
// selectors are peopled too once the weight twists values off the positive
// axis). List kinds absorb anchors by definition; span kinds only take
// anchors that are already members, so the family is never silently
// enlarged. The codomain family is the image of the augmented list, same
// kind and path.
//
// Real-structure kinds (positive cone, multiplicative list) require u == 1:
// a twisted image would leave the codomain kind unrepresentable.
MapTable build_composition_map(
    const FunctionFamily& domain, SpacePtr codomain_space,
    const PlantedMap& planted, const ToleranceConfig& tol,
    const std::vector<double>& anchor_radii = {0.5, 1.0, 2.0});

// A point nudge on one image function: image(point) += delta. The codomain
// list entry is updated in step so the table still constructs; on
// multiplicative lists the closure base is dropped when the nudge breaks
// closure, since condemning perturbed tables is the analysis' job, not the
// constructor's.
struct Perturbation {
  int pair_index = 0;
  std::string point;
  Complex delta{0.0, 0.0};
};

MapTable perturb_table(const MapTable& table, const Perturbation& pert,
                       const ToleranceConfig& tol);

// Deterministic family generator for the given kind, seeded and sized
// roughly by target_count:
//   SubspaceSpan:       all indicators (so the span is the whole algebra,
//                       as the boundary hypothesis demands) plus random
//                       complex members
//   PositiveConeOfSpan: all indicators plus random nonnegative members
//   ExplicitList:       scaled indicators, then midpoint triples on the
//                       additive path (peaks sharing a sphere with their
//                       listed midpoint) or the constant one, phase-twisted
//                       indicators and zero on the multiplicative path
//   MultiplicativeList: the constant one, all indicators, a random chain of
//                       subset indicators, zero, and the {1/2, 2}
//                       rescalings of that base
FunctionFamily random_family(SpacePtr space, FamilyKind kind, FamilyPath path,
                             int target_count, std::uint64_t seed,
                             const ToleranceConfig& tol);

}  // namespace rholab
