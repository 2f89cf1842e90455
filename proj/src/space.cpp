#include "rholab/space.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace rholab {

void ToleranceConfig::validate() const {
  if (!(eq_tol >= 0.0) || !(eq_tol < 1e-3) || !std::isfinite(eq_tol)) {
    std::ostringstream msg;
    msg << "ToleranceConfig: eq_tol must satisfy 0 <= eq_tol < 1e-3, got "
        << eq_tol;
    throw Error(msg.str());
  }
}

FiniteSpace::FiniteSpace(std::vector<std::string> points)
    : points_(std::move(points)) {
  if (points_.empty()) {
    throw Error("FiniteSpace: point list must be nonempty");
  }
  index_.reserve(points_.size());
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    if (points_[i].empty()) {
      throw Error("FiniteSpace: point identifiers must be nonempty strings");
    }
    auto [_, inserted] = index_.emplace(points_[i], i);
    if (!inserted) {
      throw Error("FiniteSpace: duplicate point identifier '" + points_[i] +
                  "'");
    }
  }
}

int FiniteSpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error("FiniteSpace: unknown point identifier '" + id + "'");
  }
  return it->second;
}

SpacePtr make_space(std::vector<std::string> points) {
  return std::make_shared<const FiniteSpace>(std::move(points));
}

ComplexFunction::ComplexFunction(SpacePtr space, Eigen::VectorXcd values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) {
    throw Error("ComplexFunction: null space");
  }
  if (values_.size() != space_->size()) {
    std::ostringstream msg;
    msg << "ComplexFunction: " << values_.size() << " values for a space of "
        << space_->size() << " points";
    throw Error(msg.str());
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_(i).real()) || !std::isfinite(values_(i).imag())) {
      throw Error("ComplexFunction: non-finite value at point '" +
                  space_->point(static_cast<int>(i)) + "'");
    }
  }
}

ComplexFunction ComplexFunction::zero(SpacePtr space) {
  if (!space) throw Error("ComplexFunction::zero: null space");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space->size());
  return ComplexFunction(std::move(space), std::move(v));
}

ComplexFunction ComplexFunction::constant(SpacePtr space, Complex c) {
  if (!space) throw Error("ComplexFunction::constant: null space");
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(space->size(), c);
  return ComplexFunction(std::move(space), std::move(v));
}

ComplexFunction ComplexFunction::indicator(SpacePtr space,
                                           const std::string& id) {
  if (!space) throw Error("ComplexFunction::indicator: null space");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space->size());
  v(space->index_of(id)) = Complex(1.0, 0.0);
  return ComplexFunction(std::move(space), std::move(v));
}

bool same_space(const ComplexFunction& f, const ComplexFunction& g) {
  return f.space() == g.space() || *f.space() == *g.space();
}

void require_same_space(const ComplexFunction& f, const ComplexFunction& g,
                        const char* where) {
  if (!same_space(f, g)) {
    throw Error(std::string(where) + ": operands live on different spaces");
  }
}

double sup_norm(const ComplexFunction& f) {
  return f.values().cwiseAbs().maxCoeff();
}

double sup_distance(const ComplexFunction& f, const ComplexFunction& g) {
  require_same_space(f, g, "sup_distance");
  return (f.values() - g.values()).cwiseAbs().maxCoeff();
}

ComplexFunction modulus(const ComplexFunction& f) {
  Eigen::VectorXcd v = f.values().cwiseAbs().cast<Complex>();
  return ComplexFunction(f.space(), std::move(v));
}

PointSet max_modulus_set(const ComplexFunction& f, const ToleranceConfig& tol) {
  tol.validate();
  const double peak = sup_norm(f);
  PointSet out;
  for (int i = 0; i < f.space()->size(); ++i) {
    if (std::abs(f.at(i)) >= peak - tol.eq_tol) {
      out.insert(f.space()->point(i));
    }
  }
  return out;
}

ComplexFunction operator+(const ComplexFunction& f, const ComplexFunction& g) {
  require_same_space(f, g, "operator+");
  return ComplexFunction(f.space(), f.values() + g.values());
}

ComplexFunction operator-(const ComplexFunction& f, const ComplexFunction& g) {
  require_same_space(f, g, "operator-");
  return ComplexFunction(f.space(), f.values() - g.values());
}

ComplexFunction operator*(Complex c, const ComplexFunction& f) {
  return ComplexFunction(f.space(), c * f.values());
}

ComplexFunction pointwise_product(const ComplexFunction& f,
                                  const ComplexFunction& g) {
  require_same_space(f, g, "pointwise_product");
  return ComplexFunction(f.space(), f.values().cwiseProduct(g.values()));
}

}  // namespace rholab
