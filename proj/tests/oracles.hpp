#pragma once

// Test-only brute-force references. Nothing here calls the code paths it is
// used to check.

#include <set>
#include <vector>

#include "weylforge/rational.hpp"

namespace oracle {

using weylforge::Rational;
using weylforge::RVec;
using RMat = std::vector<RVec>;

inline Rational ip(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RVec refl(const RVec& v, const RVec& a) {
  Rational f = 2 * ip(v, a) / ip(a, a);
  RVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - f * a[i];
  return out;
}

/// Closure of `seeds` under reflections in `mirrors`.
inline std::set<RVec> reflection_closure(const std::vector<RVec>& seeds, const std::vector<RVec>& mirrors) {
  std::set<RVec> seen(seeds.begin(), seeds.end());
  std::vector<RVec> todo(seeds.begin(), seeds.end());
  while (!todo.empty()) {
    RVec v = todo.back();
    todo.pop_back();
    for (const auto& m : mirrors) {
      RVec w = refl(v, m);
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  return seen;
}

inline RMat reflection_matrix(const RVec& a) {
  const std::size_t n = a.size();
  RMat m(n, RVec(n, Rational(0)));
  const Rational n2 = ip(a, a);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(i == j ? 1 : 0) - 2 * a[i] * a[j] / n2;
  return m;
}

inline RMat mul(const RMat& x, const RMat& y) {
  const std::size_t n = x.size();
  RMat m(n, RVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) m[i][j] += x[i][k] * y[k][j];
  return m;
}

/// Naive closure of the matrix group generated by reflections in `mirrors`.
inline std::set<RMat> matrix_group(const std::vector<RVec>& mirrors) {
  const std::size_t n = mirrors.front().size();
  RMat id(n, RVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  std::vector<RMat> gens;
  for (const auto& a : mirrors) gens.push_back(reflection_matrix(a));
  std::set<RMat> seen{id};
  std::vector<RMat> todo{id};
  while (!todo.empty()) {
    RMat g = todo.back();
    todo.pop_back();
    for (const auto& s : gens) {
      RMat h = mul(s, g);
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  return seen;
}

}  // namespace oracle
