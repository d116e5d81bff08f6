#include "weylforge/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

namespace weylforge {

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                           73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

Eigen::VectorXd normalized_or_axis(Eigen::VectorXd v) {
  const double n = v.norm();
  if (!(n > 0)) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / n;
}

}  // namespace

std::size_t default_sample_count(std::size_t n) {
  const std::size_t planes = n < 2 ? 1 : n * (n - 1) / 2;
  return std::clamp<std::size_t>(planes * 16384, 16384, 262144);
}

std::vector<Eigen::VectorXd> random_unit_vectors(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    Eigen::VectorXd v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(rng);
    out.push_back(normalized_or_axis(std::move(v)));
  }
  return out;
}

std::vector<Eigen::VectorXd> sphere_samples(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  if (n == 0 || count == 0) return out;
  out.reserve(count);
  if (n == 1) {
    for (std::size_t c = 0; c < count; ++c) out.push_back(Eigen::VectorXd::Constant(1, c % 2 ? -1.0 : 1.0));
    return out;
  }
  const std::size_t halton = count / 2;
  const std::size_t pairs = (n + 1) / 2;
  const std::size_t max_dims = std::size(kPrimes);
  for (std::size_t c = 0; c < halton && 2 * pairs <= max_dims; ++c) {
    Eigen::VectorXd v(n);
    for (std::size_t p = 0; p < pairs; ++p) {
      const double u1 = 1.0 - radical_inverse(c + 1, kPrimes[2 * p]);  // in (0, 1]
      const double u2 = radical_inverse(c + 1, kPrimes[2 * p + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[2 * p] = r * std::cos(2 * std::numbers::pi * u2);
      if (2 * p + 1 < n) v[2 * p + 1] = r * std::sin(2 * std::numbers::pi * u2);
    }
    out.push_back(normalized_or_axis(std::move(v)));
  }
  auto rest = random_unit_vectors(n, count - out.size(), seed);
  for (auto& v : rest) out.push_back(std::move(v));
  return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, (count + 255) / 256);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace weylforge
