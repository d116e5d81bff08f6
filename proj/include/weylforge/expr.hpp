#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weylforge/polynomial.hpp"

namespace weylforge {

/// Value with gradient and Hessian, filled up to the requested order.
struct Jet {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

class Node;
using NodePtr = std::shared_ptr<const Node>;

class Node {
 public:
  virtual ~Node() = default;
  /// order 0: value only, 1: value and gradient, 2: everything.
  virtual void eval(const Eigen::VectorXd& y, int order, Jet& out) const = 0;
  virtual std::string describe() const = 0;

  Jet jet(const Eigen::VectorXd& y, int order = 2) const;
  double value(const Eigen::VectorXd& y) const;
};

/// sum_j w_j (a_j . y)^m
NodePtr linear_power_sum(Eigen::MatrixXd rows, Eigen::VectorXd weights, int m, std::string label = {});
/// sum_{i in idx} y_i^2 (all coordinates when idx is empty)
NodePtr squared_norm(std::size_t dim, std::vector<std::size_t> idx = {});
/// sum_i c_i f_i
NodePtr weighted_sum(std::vector<NodePtr> terms, std::vector<double> coefficients);
NodePtr product(NodePtr a, NodePtr b);
/// f^r; f is expected positive unless r is a nonnegative integer.
NodePtr power(NodePtr f, double r);
/// Dense polynomial with rational coefficients, evaluated in doubles.
NodePtr polynomial_node(const Polynomial& p);
/// f(M y) for a fixed square matrix M.
NodePtr linear_substitution(NodePtr f, Eigen::MatrixXd m);

}  // namespace weylforge
