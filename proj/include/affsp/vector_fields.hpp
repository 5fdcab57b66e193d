#pragma once

// Polynomial vector fields on R^{2n} with coordinates x1..xn, y1..yn.

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "affsp/rational.hpp"

namespace affsp {

enum class Axis { X = 0, Y = 1 };

/// A coordinate function x_i or y_i (index is 1-based). Ordered x1 < x2 < ... < y1 < y2 < ...
struct Variable {
  Axis axis;
  unsigned index;

  friend auto operator<=>(const Variable&, const Variable&) = default;
  std::string name() const;  // "x3", "y1"
};

inline Variable x(unsigned i) { return {Axis::X, i}; }
inline Variable y(unsigned i) { return {Axis::Y, i}; }

/// Product of coordinate powers; exponents are positive and kept sorted by variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Variable v, unsigned power = 1);

  const std::vector<std::pair<Variable, unsigned>>& factors() const { return factors_; }
  unsigned degree() const;
  unsigned exponent(Variable v) const;
  bool is_constant() const { return factors_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string str() const;  // "1" for the constant monomial

 private:
  std::vector<std::pair<Variable, unsigned>> factors_;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational c);  // NOLINT(google-explicit-constructor)
  Polynomial(Variable v);  // NOLINT(google-explicit-constructor)
  Polynomial(const Monomial& m, Rational c = Rational(1));

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree; 0 for the zero polynomial.
  unsigned degree() const;
  /// Largest coordinate index used; 0 when constant.
  unsigned max_index() const;

  Polynomial derivative(Variable v) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Σ_v P_v ∂/∂v with polynomial coefficients. Zero components are not stored.
class PolyVectorField {
 public:
  PolyVectorField() = default;
  /// coefficient * ∂/∂direction
  PolyVectorField(Variable direction, Polynomial coefficient);

  /// Renders e.g. "-x1*d/dx1 + y1*d/dy1"; "0" for the zero field.
  std::string str() const;
  /// Parses the rendering grammar: signed terms, each a product of an optional
  /// rational, coordinate powers (x1^2) and exactly one d/dxi or d/dyi.
  static PolyVectorField parse(std::string_view text);

  const std::map<Variable, Polynomial>& components() const { return components_; }
  Polynomial component(Variable direction) const;
  bool is_zero() const { return components_.empty(); }
  unsigned max_index() const;

  /// Derivative of f along this field.
  Polynomial apply(const Polynomial& f) const;

  PolyVectorField& operator+=(const PolyVectorField& o);
  PolyVectorField& operator-=(const PolyVectorField& o);
  PolyVectorField& operator*=(const Rational& c);
  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
  friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
  friend PolyVectorField operator*(const Rational& c, PolyVectorField a) { return a *= c; }
  friend PolyVectorField operator-(PolyVectorField a) { return a *= Rational(-1); }
  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;

 private:
  void add_component(Variable v, const Polynomial& p);
  std::map<Variable, Polynomial> components_;
};

/// X_H = Σ_i ∂H/∂x_i ∂/∂y_i − ∂H/∂y_i ∂/∂x_i on R^{2n}. DomainError if H
/// mentions a coordinate with index > n, or n == 0.
PolyVectorField hamiltonian_field(const Polynomial& h, unsigned n);

/// Commutator [X, Y] of derivations: [X,Y](f) = X(Y(f)) − Y(X(f)).
PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b);

/// Poisson bracket {H, K} = Σ_i ∂H/∂x_i ∂K/∂y_i − ∂H/∂y_i ∂K/∂x_i.
Polynomial poisson_bracket(const Polynomial& h, const Polynomial& k);

}  // namespace affsp
