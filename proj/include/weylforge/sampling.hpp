#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace weylforge {

/// Default sphere sample count for a space of dimension n:
/// 2^14 per coordinate plane, at least 2^14, at most 2^18.
std::size_t default_sample_count(std::size_t n);

/// Unit vectors: the first half from a Halton sequence pushed through
/// Box-Muller, the rest from a seeded Gaussian generator.
std::vector<Eigen::VectorXd> sphere_samples(std::size_t n, std::size_t count, std::uint64_t seed);

/// Seeded Gaussian vectors normalized to the sphere.
std::vector<Eigen::VectorXd> random_unit_vectors(std::size_t n, std::size_t count, std::uint64_t seed);

/// Runs body(i) for i in [0, count) on a fixed chunking over hardware threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace weylforge
