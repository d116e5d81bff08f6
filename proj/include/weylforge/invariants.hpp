#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "weylforge/polynomial.hpp"
#include "weylforge/weylgrp.hpp"

namespace weylforge {

/// Degrees of the basic invariants, in the order the classical table lists
/// them (A_l: 2..l+1, B/C/BC_l: 2,4..2l, D_l: 2,4..2l-2,l, exceptional rows fixed).
std::vector<int> chevalley_degrees(RootType type, int rank);

enum class Parity { kEven, kOdd };

/// H -> mult * sum_{mu in orbit} mu(H)^degree, where mult = |W| / |orbit|,
/// so the value equals the sum of lambda(phi(H))^degree over all phi in W.
class InvariantPolynomial {
 public:
  InvariantPolynomial(std::shared_ptr<const Orbit> orbit, std::size_t weight_index, int degree,
                      Integer multiplicity);

  const Orbit& orbit() const { return *orbit_; }
  std::shared_ptr<const Orbit> orbit_ptr() const { return orbit_; }
  std::size_t weight_index() const { return weight_index_; }
  int degree() const { return degree_; }
  const Integer& multiplicity() const { return multiplicity_; }
  Parity parity() const { return degree_ % 2 ? Parity::kOdd : Parity::kEven; }
  std::size_t dim() const { return orbit_->dim(); }

  Rational evaluate(const RVec& h) const;
  RVec gradient(const RVec& h) const;
  double evaluate(const double* h) const;

  /// Full expansion in the ambient coordinates x1..xn.
  Polynomial expand() const;

  std::string describe() const;

 private:
  std::shared_ptr<const Orbit> orbit_;
  std::size_t weight_index_;
  int degree_;
  Integer multiplicity_;
};

/// Orbit power sum of the fundamental weight `weight_index` (0-based).
InvariantPolynomial power_sum(const WeylGroup& group, std::size_t weight_index, int degree,
                              std::size_t orbit_cap = kDefaultOrbitCap);

/// One generator per Chevalley degree, paired with fundamental weights by a
/// deterministic smallest-index-first search certified by the Jacobian test.
std::vector<InvariantPolynomial> homogeneous_generators(const WeylGroup& group,
                                                        std::size_t orbit_cap = kDefaultOrbitCap);

enum class TrigKind { kRealPart, kImaginaryPart };

/// Real or imaginary part of q(H) = sum_{phi in W} exp(i lambda(phi H)).
struct TrigInvariant {
  std::shared_ptr<const Orbit> orbit;
  std::size_t weight_index = 0;
  TrigKind kind = TrigKind::kRealPart;
  double multiplicity = 1.0;

  double evaluate(const double* h) const;
};

std::vector<TrigInvariant> trigonometric_generators(const WeylGroup& group,
                                                    std::size_t orbit_cap = kDefaultOrbitCap);

struct JacobianReport {
  bool passed = false;
  bool nonzero_at_regular = false;
  bool vanishes_on_hyperplanes = false;
  bool ratio_constant = false;
  Rational ratio;  // J(H) / prod_{a in positive roots} a(H)
  double max_ratio_relative_spread = 0.0;
  std::size_t regular_samples = 0;
  std::size_t hyperplane_samples = 0;
  std::string detail;
};

/// J(H) = det of the gradients paired with the simple roots, evaluated
/// exactly at random rational points of the Cartan subspace.
JacobianReport jacobian_independence_test(const WeylGroup& group, const std::vector<InvariantPolynomial>& polys,
                                          int trials, std::uint64_t seed = 42);

bool skew_invariants_exist(const WeylGroup& group);

}  // namespace weylforge
