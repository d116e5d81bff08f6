#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylforge/rational.hpp"

namespace weylforge {

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  /// sum_i c_i x_i
  static Polynomial linear(const RVec& coefficients);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;

  void add_term(const Exponents& e, const Rational& c);
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t var) const;
  bool operator==(const Polynomial& other) const = default;

  Rational evaluate(const RVec& x) const;
  double evaluate(const double* x) const;

  /// Human-readable form, e.g. "3*x1^2*x2 - 1/2*x3".
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t nvars_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace weylforge
