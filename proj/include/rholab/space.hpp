#pragma once

#include <complex>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace rholab {

using Complex = std::complex<double>;

// Base error for everything this library throws on bad input or broken
// preconditions. Subclasses exist where callers need to branch on the kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Equality comparisons everywhere go through one shared tolerance so a run
// has a single notion of "equal". Values must satisfy 0 <= eq_tol < 1e-3.
struct ToleranceConfig {
  double eq_tol = 1e-9;

  void validate() const;
};

// An ordered list of distinct point identifiers. Points are opaque strings;
// identity across spaces is by identifier, never by index.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> points);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(int i) const { return points_.at(i); }
  bool contains(const std::string& id) const {
    return index_.count(id) != 0;
  }
  // Throws Error for unknown identifiers.
  int index_of(const std::string& id) const;

  // Two spaces are interchangeable iff they list the same ids in the same
  // order.
  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<std::string> points_;
  std::unordered_map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(std::vector<std::string> points);

// A complex-valued function on a FiniteSpace, stored densely in space order.
// All components are required to be finite at construction.
class ComplexFunction {
 public:
  ComplexFunction(SpacePtr space, Eigen::VectorXcd values);

  const SpacePtr& space() const { return space_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Complex at(int i) const { return values_(i); }
  Complex at(const std::string& id) const {
    return values_(space_->index_of(id));
  }

  static ComplexFunction zero(SpacePtr space);
  static ComplexFunction constant(SpacePtr space, Complex c);
  // 1 at the named point, 0 elsewhere.
  static ComplexFunction indicator(SpacePtr space, const std::string& id);

 private:
  SpacePtr space_;
  Eigen::VectorXcd values_;
};

// True iff both functions live on interchangeable spaces.
bool same_space(const ComplexFunction& f, const ComplexFunction& g);

// Throws Error unless same_space(f, g).
void require_same_space(const ComplexFunction& f, const ComplexFunction& g,
                        const char* where);

// sup-norm: max_x |f(x)|. Spaces are nonempty, so this is always attained.
double sup_norm(const ComplexFunction& f);

// sup-norm of f - g; the equality metric used for list lookups.
double sup_distance(const ComplexFunction& f, const ComplexFunction& g);

// |f| as a real-valued function on the same space.
ComplexFunction modulus(const ComplexFunction& f);

// Point sets are id sets; rendering code orders them by space order.
using PointSet = std::set<std::string>;

// M(f) = { x : |f(x)| >= sup_norm(f) - eq_tol }. Nonempty by construction;
// equals the whole space when f == 0.
PointSet max_modulus_set(const ComplexFunction& f, const ToleranceConfig& tol);

// Pointwise arithmetic. All mixed-operand forms require matching spaces.
ComplexFunction operator+(const ComplexFunction& f, const ComplexFunction& g);
ComplexFunction operator-(const ComplexFunction& f, const ComplexFunction& g);
ComplexFunction operator*(Complex c, const ComplexFunction& f);
ComplexFunction pointwise_product(const ComplexFunction& f,
                                  const ComplexFunction& g);

}  // namespace rholab
