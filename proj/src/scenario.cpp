#include "rholab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "rholab/random.hpp"

namespace rholab {

namespace {

bool listed_within(const std::vector<ComplexFunction>& list,
                   const ComplexFunction& f, const ToleranceConfig& tol) {
  const double bound = tol.eq_tol * (1.0 + sup_norm(f));
  for (const auto& g : list) {
    if (sup_distance(g, f) <= bound) return true;
  }
  return false;
}

void validate_planted(const PlantedMap& planted, int domain_size,
                      int codomain_size) {
  if (domain_size != codomain_size) {
    throw Error("build_composition_map: a planted bijection needs spaces of "
                "equal size");
  }
  if (static_cast<int>(planted.sigma.size()) != codomain_size ||
      static_cast<int>(planted.weights_rad.size()) != codomain_size) {
    throw Error("build_composition_map: sigma and weights_rad must have one "
                "entry per codomain point");
  }
  std::vector<bool> hit(domain_size, false);
  for (int idx : planted.sigma) {
    if (idx < 0 || idx >= domain_size) {
      std::ostringstream msg;
      msg << "build_composition_map: sigma entry " << idx
          << " is outside the domain space";
      throw Error(msg.str());
    }
    if (hit[idx]) {
      std::ostringstream msg;
      msg << "build_composition_map: sigma is not injective, domain index "
          << idx << " is read twice";
      throw Error(msg.str());
    }
    hit[idx] = true;
  }
  for (double w : planted.weights_rad) {
    if (!std::isfinite(w)) {
      throw Error("build_composition_map: weight angles must be finite");
    }
  }
}

ComplexFunction apply_planted(const PlantedMap& planted,
                              const ComplexFunction& f,
                              const SpacePtr& codomain_space) {
  Eigen::VectorXcd values(codomain_space->size());
  for (int i = 0; i < codomain_space->size(); ++i) {
    values(i) = std::polar(1.0, planted.weights_rad[i]) *
                f.at(planted.sigma[i]);
  }
  return ComplexFunction(codomain_space, values);
}

}  // namespace

MapTable build_composition_map(const FunctionFamily& domain,
                               SpacePtr codomain_space,
                               const PlantedMap& planted,
                               const ToleranceConfig& tol,
                               const std::vector<double>& anchor_radii) {
  tol.validate();
  if (!codomain_space) {
    throw Error("build_composition_map: null codomain space");
  }
  validate_planted(planted, domain.space()->size(), codomain_space->size());
  for (double r : anchor_radii) {
    if (!std::isfinite(r) || r <= 0.0) {
      throw Error("build_composition_map: anchor radii must be finite and "
                  "> 0");
    }
  }

  const bool real_structure = domain.kind() == FamilyKind::PositiveConeOfSpan ||
                              domain.kind() == FamilyKind::MultiplicativeList;
  if (real_structure) {
    for (double w : planted.weights_rad) {
      if (std::abs(std::polar(1.0, w) - Complex(1.0, 0.0)) > tol.eq_tol) {
        throw Error("build_composition_map: " +
                    std::string(family_kind_name(domain.kind())) +
                    " families require the unit weight");
      }
    }
  }

  // sigma^{-1}: domain point index -> codomain point index, for the
  // phase-corrected anchors.
  std::vector<int> sigma_inv(domain.space()->size(), -1);
  for (std::size_t yi = 0; yi < planted.sigma.size(); ++yi) {
    sigma_inv[planted.sigma[yi]] = static_cast<int>(yi);
  }

  auto functions = domain.functions();
  for (int xi = 0; xi < domain.space()->size(); ++xi) {
    const Complex weight =
        std::polar(1.0, planted.weights_rad[sigma_inv[xi]]);
    for (double r : anchor_radii) {
      const auto plain = Complex(r, 0.0) * ComplexFunction::indicator(
                                               domain.space(),
                                               domain.space()->point(xi));
      const auto corrected = std::conj(weight) * plain;
      for (const auto& anchor : {plain, corrected}) {
        if (listed_within(functions, anchor, tol)) continue;
        if (!domain.is_list_kind() && !membership(domain, anchor, tol)) {
          continue;  // never enlarge a span behind the caller's back
        }
        functions.push_back(anchor);
      }
    }
  }

  FunctionFamily augmented(domain.space(), domain.kind(), domain.path(),
                           functions, tol, domain.closure_base_count());

  std::vector<ComplexFunction> image_list;
  std::vector<MapPair> pairs;
  image_list.reserve(functions.size());
  for (const auto& f : functions) {
    auto image = apply_planted(planted, f, codomain_space);
    pairs.push_back({f, image});
    image_list.push_back(std::move(image));
  }
  FunctionFamily codomain(codomain_space, domain.kind(), domain.path(),
                          std::move(image_list), tol,
                          domain.closure_base_count());

  return MapTable(std::move(augmented), std::move(codomain), std::move(pairs),
                  tol);
}

MapTable perturb_table(const MapTable& table, const Perturbation& pert,
                       const ToleranceConfig& tol) {
  tol.validate();
  const auto& pairs = table.pairs();
  if (pert.pair_index < 0 ||
      pert.pair_index >= static_cast<int>(pairs.size())) {
    std::ostringstream msg;
    msg << "perturb_table: pair index " << pert.pair_index
        << " is outside the table (" << pairs.size() << " pairs)";
    throw Error(msg.str());
  }
  const int point_idx = table.codomain().space()->index_of(pert.point);
  if (!std::isfinite(pert.delta.real()) || !std::isfinite(pert.delta.imag())) {
    throw Error("perturb_table: delta must be finite");
  }

  const ComplexFunction& old_image = pairs[pert.pair_index].image_fn;
  Eigen::VectorXcd values = old_image.values();
  values(point_idx) += pert.delta;
  ComplexFunction new_image(table.codomain().space(), values);

  // Swap the matching codomain list entry for the nudged image.
  auto image_list = table.codomain().functions();
  const double bound = tol.eq_tol * (1.0 + sup_norm(old_image));
  int entry = -1;
  for (std::size_t i = 0; i < image_list.size(); ++i) {
    if (sup_distance(image_list[i], old_image) <= bound) {
      entry = static_cast<int>(i);
      break;
    }
  }
  if (entry < 0) {
    throw Error("perturb_table: the perturbed image is missing from the "
                "codomain list");
  }
  image_list[entry] = new_image;

  auto rebuild = [&](int base_count) {
    return FunctionFamily(table.codomain().space(), table.codomain().kind(),
                          table.codomain().path(), image_list, tol,
                          base_count);
  };
  FunctionFamily codomain = [&] {
    try {
      return rebuild(table.codomain().closure_base_count());
    } catch (const Error&) {
      // The nudge broke a multiplicative closure promise; keep the family
      // constructible with an empty closure base and let the checks condemn
      // the table on substance.
      return rebuild(0);
    }
  }();

  auto new_pairs = pairs;
  new_pairs[pert.pair_index].image_fn = std::move(new_image);
  return MapTable(table.domain(), std::move(codomain), std::move(new_pairs),
                  tol);
}

namespace {

ComplexFunction random_function(const SpacePtr& space, Rng& rng,
                                double radius) {
  Eigen::VectorXcd values(space->size());
  for (int i = 0; i < space->size(); ++i) {
    values(i) = rng.complex_in_disk(radius);
  }
  return ComplexFunction(space, values);
}

ComplexFunction random_nonnegative(const SpacePtr& space, Rng& rng,
                                   double radius) {
  Eigen::VectorXcd values(space->size());
  for (int i = 0; i < space->size(); ++i) {
    values(i) = Complex(rng.uniform(0.0, radius), 0.0);
  }
  return ComplexFunction(space, values);
}

ComplexFunction subset_indicator(const SpacePtr& space,
                                 const std::set<int>& subset) {
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(space->size());
  for (int i : subset) values(i) = Complex(1.0, 0.0);
  return ComplexFunction(space, values);
}

void push_unique(std::vector<ComplexFunction>& list, ComplexFunction f,
                 const ToleranceConfig& tol) {
  if (!listed_within(list, f, tol)) list.push_back(std::move(f));
}

}  // namespace

FunctionFamily random_family(SpacePtr space, FamilyKind kind, FamilyPath path,
                             int target_count, std::uint64_t seed,
                             const ToleranceConfig& tol) {
  tol.validate();
  if (!space) throw Error("random_family: null space");
  if (target_count < 1) {
    throw Error("random_family: target_count must be >= 1");
  }
  Rng rng(seed);
  const int n = space->size();
  std::vector<ComplexFunction> members;

  switch (kind) {
    case FamilyKind::SubspaceSpan: {
      for (int i = 0; i < n; ++i) {
        members.push_back(ComplexFunction::indicator(space, space->point(i)));
      }
      while (static_cast<int>(members.size()) < target_count) {
        push_unique(members, random_function(space, rng, 2.0), tol);
      }
      break;
    }

    case FamilyKind::PositiveConeOfSpan: {
      for (int i = 0; i < n; ++i) {
        members.push_back(ComplexFunction::indicator(space, space->point(i)));
      }
      while (static_cast<int>(members.size()) < target_count) {
        push_unique(members, random_nonnegative(space, rng, 2.0), tol);
      }
      break;
    }

    case FamilyKind::ExplicitList: {
      for (int i = 0; i < n; ++i) {
        for (double r : {0.5, 1.0, 2.0}) {
          push_unique(members,
                      Complex(r, 0.0) *
                          ComplexFunction::indicator(space, space->point(i)),
                      tol);
        }
      }
      if (path == FamilyPath::Additive) {
        // Midpoint triples: two unit peaks at the same point whose listed
        // midpoint shares their sphere, so the intersection evidence on
        // spheres has testable instances.
        while (static_cast<int>(members.size()) < target_count) {
          const int x = rng.uniform_int(n);
          const int x1 = n == 1 ? x : (x + 1 + rng.uniform_int(n - 1)) % n;
          const int x2 = n == 1 ? x : (x + 1 + rng.uniform_int(n - 1)) % n;
          auto peak = ComplexFunction::indicator(space, space->point(x));
          auto f = peak + Complex(rng.uniform(0.1, 0.9), 0.0) *
                              ComplexFunction::indicator(space,
                                                         space->point(x1));
          auto g = peak + Complex(rng.uniform(0.1, 0.9), 0.0) *
                              ComplexFunction::indicator(space,
                                                         space->point(x2));
          auto mid = Complex(0.5, 0.0) * (f + g);
          push_unique(members, std::move(f), tol);
          push_unique(members, std::move(g), tol);
          push_unique(members, std::move(mid), tol);
        }
      } else {
        push_unique(members, ComplexFunction::constant(space, 1.0), tol);
        push_unique(members, ComplexFunction::zero(space), tol);
        while (static_cast<int>(members.size()) < target_count) {
          // Phase-twisted peaks: modulus selectors see them, value selectors
          // do not, which is exactly the multiplicative regime.
          const int x = rng.uniform_int(n);
          push_unique(members,
                      std::polar(1.0, rng.angle()) *
                          ComplexFunction::indicator(space, space->point(x)),
                      tol);
        }
      }
      return FunctionFamily(std::move(space), kind, path, std::move(members),
                            tol);
    }

    case FamilyKind::MultiplicativeList: {
      // Base: constant one, every point indicator, a chain of subset
      // indicators (chains are closed under intersection), and zero.
      members.push_back(ComplexFunction::constant(space, 1.0));
      for (int i = 0; i < n; ++i) {
        members.push_back(ComplexFunction::indicator(space, space->point(i)));
      }
      std::set<int> subset;
      for (int i = 0; i < n; ++i) subset.insert(i);
      while (static_cast<int>(members.size()) < target_count &&
             static_cast<int>(subset.size()) > 2) {
        subset.erase(std::next(subset.begin(),
                               rng.uniform_int(static_cast<int>(
                                   subset.size()))));
        push_unique(members, subset_indicator(space, subset), tol);
      }
      push_unique(members, ComplexFunction::zero(space), tol);

      const int base_count = static_cast<int>(members.size());
      for (int i = 0; i < base_count; ++i) {
        for (double r : {0.5, 2.0}) {
          push_unique(members, Complex(r, 0.0) * members[i], tol);
        }
      }
      return FunctionFamily(std::move(space), kind, path, std::move(members),
                            tol, base_count);
    }
  }

  return FunctionFamily(std::move(space), kind, path, std::move(members),
                        tol);
}

}  // namespace rholab
