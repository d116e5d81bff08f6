#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weylforge/expr.hpp"
#include "weylforge/weylgrp.hpp"

namespace weylforge {

enum class NormMode { kAbsolute, kPositive };

struct GroupRef {
  RootType type = RootType::kA;
  int rank = 1;
};

/// Q = positivity * |y|^(2k) + p^(2k/degree), term c * Q^(1/k), where p is the
/// orbit power sum of the chosen fundamental weight averaged over the orbit.
struct TermSpec {
  int degree = 2;
  std::optional<std::size_t> weight_index;  // 0-based; empty picks the first nonvanishing one
  int k = 1;
  double c = 1.0;
  std::optional<double> positivity;  // empty = computed
};

/// c * (W-average of (sum_i w_i y_i^p)^(1/p))^2, needs an enumerated group.
struct AverageTermSpec {
  int p = 4;
  std::vector<double> weights;
  double c = 1.0;
};

/// P_k = amplitude * p_k (odd degree k), R = c|y|^(2k) + P_k^2,
/// Q = d|y|^(2k) + (R^(1/2) + P_k)^2, term coefficient * Q^(1/k).
struct OddSpec {
  int degree_k = 3;
  std::optional<std::size_t> weight_index;
  double amplitude = 1.0;
  std::optional<double> c;
  std::optional<double> d;
  double coefficient = 1.0;
};

/// c1|X|^2 + c2 (sum_i s_i |X_i|^(2p))^(1/p) over consecutive blocks of size dims[i].
struct ProductSpec {
  double c1 = 1.0;
  double c2 = 1.0;
  double p = 2.0;
  std::vector<std::size_t> dims;
  std::vector<double> scales;  // empty = all 1
};

struct NormSpec {
  NormMode mode = NormMode::kAbsolute;
  std::optional<GroupRef> group;
  std::vector<TermSpec> terms;
  std::vector<AverageTermSpec> averages;
  std::optional<OddSpec> odd;
  std::optional<double> gamma;  // empty = computed
  std::optional<ProductSpec> product;
};

struct NormOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 0;  // 0 = default_sample_count(dim)
  double tolerance = 1e-8;
  double gamma_margin = 0.05;
  double positivity_margin = 0.1;
  std::size_t fd_points = 1000;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t orbit_cap = kDefaultOrbitCap;
};

struct ConvexityCertificate {
  std::size_t sample_count = 0;
  double min_eigenvalue = 0.0;
  double gamma_used = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<double> worst_point;
  std::uint64_t seed = 0;
  std::size_t fd_points = 0;
  double fd_max_relative_error = 0.0;
  bool fd_agreement = true;
};

/// A compiled norm on R^n (Cartan frame coordinates for group norms).
class Norm {
 public:
  std::size_t dim() const { return static_cast<std::size_t>(frame_.cols()); }
  std::size_t ambient_dim() const { return static_cast<std::size_t>(frame_.rows()); }
  NormMode mode() const { return spec_.mode; }
  /// Coefficient of |y|^2 (c1 for product norms).
  double gamma() const { return gamma_; }
  /// Spec with every computed constant filled in.
  const NormSpec& spec() const { return spec_; }
  /// Orthonormal columns spanning the Cartan space inside the ambient coordinates.
  const Eigen::MatrixXd& frame() const { return frame_; }
  const WeylGroup* group() const { return group_.get(); }
  std::shared_ptr<const WeylGroup> group_ptr() const { return group_; }
  /// Simple reflections written in frame coordinates.
  std::vector<Eigen::MatrixXd> weyl_generators() const;

  double evaluate(const Eigen::VectorXd& y) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& y) const;
  /// g_ij = (1/2) d_i d_j L^2, symmetric by construction.
  Eigen::MatrixXd fundamental_tensor(const Eigen::VectorXd& y) const;
  Jet squared(const Eigen::VectorXd& y, int order = 2) const;
  /// The 2-homogeneous part without the gamma |y|^2 term.
  const Node& perturbation() const { return *f_; }

  Eigen::VectorXd to_frame(const Eigen::VectorXd& ambient) const;
  Eigen::VectorXd to_ambient(const Eigen::VectorXd& y) const;

  std::string describe() const;

 private:
  friend Norm compile_norm(const NormSpec&, const NormOptions&);
  NormSpec spec_;
  double gamma_ = 0.0;
  Eigen::MatrixXd frame_;
  std::shared_ptr<const WeylGroup> group_;
  NodePtr f_;
  NodePtr l2_;
};

/// c such that c|y|^(2k) + P > 0 on the sphere; 0 when P is already
/// positive there, 1 when P vanishes identically.
double strict_positivity_constant(const Node& p, std::size_t dim, int degree, std::size_t samples,
                                  std::uint64_t seed, double margin = 0.1);

struct GammaResult {
  double gamma = 0.0;
  double delta = 0.0;  // min eigenvalue of (1/2) Hess F on the sphere
  double scale = 0.0;  // max |F| on the sphere
  ConvexityCertificate certificate;
};

GammaResult gamma_for_convexity(const Node& f, std::size_t dim, std::size_t samples, std::uint64_t seed,
                                double margin = 0.05, double tolerance = 1e-8);

/// Fill in every computed constant (positivity, c, d, gamma).
NormSpec resolve_norm_spec(const NormSpec& spec, const NormOptions& opts = {});
/// Compile a fully resolved spec; probes positivity of every Q.
Norm compile_norm(const NormSpec& resolved, const NormOptions& opts = {});

struct BuildResult {
  Norm norm;
  ConvexityCertificate certificate;
};

/// Resolve, compile and certify; a failed certificate is reported, not thrown.
BuildResult build_norm(const NormSpec& spec, const NormOptions& opts = {});

/// These throw ConvexityFail when the certificate fails.
BuildResult build_absolute_norm(const NormSpec& spec, const NormOptions& opts = {});
BuildResult build_positive_norm(const NormSpec& spec, const NormOptions& opts = {});
BuildResult build_product_norm(const ProductSpec& spec, const NormOptions& opts = {});

ConvexityCertificate certify(const Norm& norm, std::size_t samples, double tolerance, std::uint64_t seed,
                             std::size_t fd_points = 1000);

double reversibility_defect(const Norm& norm, std::size_t samples, std::uint64_t seed = 42);

/// max |L(t v) - t L(v)| / (t max(1, L(v))) over sampled unit v and a few t > 0.
double homogeneity_error(const Norm& norm, std::size_t samples, std::uint64_t seed = 42);

/// L(y - x).
double flat_distance(const Norm& norm, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// |L(g v) - L(v)| <= tol * max(1, L(v)) on sampled unit vectors.
bool flat_isometry_check(const Norm& norm, const Eigen::MatrixXd& g, std::size_t samples,
                         std::uint64_t seed = 42, double tol = 1e-10);

/// Descending eigenvalues of a symmetric traceless matrix.
Eigen::VectorXd descending_spectrum(const Eigen::MatrixXd& x, double tol = 1e-10);

/// L_c(spectrum(X)) for a norm on the Cartan space of A_{n-1}.
double extend_A_family(const Norm& norm, const Eigen::MatrixXd& x, double tol = 1e-10);

}  // namespace weylforge
