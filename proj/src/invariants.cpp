#include "weylforge/invariants.hpp"

#include <cmath>
#include <map>
#include <random>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

struct ScaledPoint {
  Integer denominator;
  std::vector<Integer> coords;
};

ScaledPoint scale_to_integers(const RVec& h) {
  ScaledPoint p{common_denominator(h), {}};
  p.coords.reserve(h.size());
  for (const auto& q : h) p.coords.emplace_back(q.get_num() * (p.denominator / q.get_den()));
  return p;
}

// <numerators(i), h>
void orbit_pairing(const Orbit& orbit, std::size_t i, const ScaledPoint& h, Integer& out) {
  out = 0;
  const std::int64_t* num = orbit.numerators(i);
  for (std::size_t k = 0; k < orbit.dim(); ++k) {
    if (num[k] == 0) continue;
    out += h.coords[k] * static_cast<long>(num[k]);
  }
}

bool is_irreducible(const WeylGroup& group) {
  return group.components().size() == 1 && group.euclidean_dim() == 0 && group.system() != nullptr;
}

RVec random_span_point(const WeylGroup& group, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 5);
  RVec h(group.dim(), Rational(0));
  for (const auto& a : group.simple_roots()) {
    Rational t(num(rng), den(rng));
    t.canonicalize();
    h = add(h, scale(t, a));
  }
  return h;
}

bool is_regular(const WeylGroup& group, const RVec& h) {
  for (const auto& a : group.positive_roots())
    if (sgn(dot(a, h)) == 0) return false;
  return true;
}

RVec random_regular_point(const WeylGroup& group, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    RVec h = random_span_point(group, rng);
    if (is_regular(group, h)) return h;
  }
  throw Error(ErrorCode::kDegenerateSample, "could not sample a regular point");
}

// Rows: gradients of each polynomial paired with the simple roots.
std::vector<RVec> gradient_matrix(const WeylGroup& group, const std::vector<const InvariantPolynomial*>& polys,
                                  const RVec& h) {
  std::vector<RVec> rows;
  for (const auto* p : polys) {
    RVec g = p->gradient(h);
    RVec row;
    for (const auto& a : group.simple_roots()) row.push_back(dot(g, a));
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational jacobian(const WeylGroup& group, const std::vector<InvariantPolynomial>& polys, const RVec& h) {
  std::vector<const InvariantPolynomial*> ptrs;
  for (const auto& p : polys) ptrs.push_back(&p);
  return determinant(gradient_matrix(group, ptrs, h));
}

// One factor per mirror: a non-reduced system contributes alpha but not 2 alpha.
Rational root_product(const WeylGroup& group, const RVec& h) {
  const auto& pos = group.positive_roots();
  Rational prod = 1;
  for (const auto& a : pos) {
    bool doubled = false;
    for (const auto& b : pos)
      if (scale(Rational(2), b) == a) doubled = true;
    if (!doubled) prod *= dot(a, h);
  }
  return prod;
}

}  // namespace

std::vector<int> chevalley_degrees(RootType type, int rank) {
  check_admissible(type, rank);
  std::vector<int> d;
  switch (type) {
    case RootType::kA:
      for (int i = 2; i <= rank + 1; ++i) d.push_back(i);
      break;
    case RootType::kB:
    case RootType::kC:
    case RootType::kBC:
      for (int i = 1; i <= rank; ++i) d.push_back(2 * i);
      break;
    case RootType::kD:
      for (int i = 1; i <= rank - 1; ++i) d.push_back(2 * i);
      d.push_back(rank);
      break;
    case RootType::kE6: d = {2, 5, 6, 8, 9, 12}; break;
    case RootType::kE7: d = {2, 6, 8, 10, 12, 14, 18}; break;
    case RootType::kE8: d = {2, 8, 12, 14, 18, 20, 24, 30}; break;
    case RootType::kF4: d = {2, 6, 8, 12}; break;
    case RootType::kG2: d = {2, 6}; break;
    case RootType::kCustom: break;
  }
  return d;
}

// ------------------------------------------------------------ InvariantPolynomial

InvariantPolynomial::InvariantPolynomial(std::shared_ptr<const Orbit> orbit, std::size_t weight_index, int degree,
                                         Integer multiplicity)
    : orbit_(std::move(orbit)), weight_index_(weight_index), degree_(degree), multiplicity_(std::move(multiplicity)) {
  if (degree_ < 1) throw Error(ErrorCode::kBadParams, "invariant degree must be positive");
}

Rational InvariantPolynomial::evaluate(const RVec& h) const {
  if (h.size() != dim()) throw Error(ErrorCode::kBadParams, "point has wrong dimension");
  const ScaledPoint p = scale_to_integers(h);
  const auto m = static_cast<unsigned long>(degree_);
  Integer sum = 0;
  Integer s;
  Integer power;
  for (std::size_t i = 0; i < orbit_->size(); ++i) {
    orbit_pairing(*orbit_, i, p, s);
    mpz_pow_ui(power.get_mpz_t(), s.get_mpz_t(), m);
    sum += power;
  }
  Integer den = orbit_->denominator() * p.denominator;
  Integer den_pow;
  mpz_pow_ui(den_pow.get_mpz_t(), den.get_mpz_t(), m);
  Rational out(sum * multiplicity_, den_pow);
  out.canonicalize();
  return out;
}

RVec InvariantPolynomial::gradient(const RVec& h) const {
  if (h.size() != dim()) throw Error(ErrorCode::kBadParams, "point has wrong dimension");
  const ScaledPoint p = scale_to_integers(h);
  const auto m = static_cast<unsigned long>(degree_);
  std::vector<Integer> acc(dim(), Integer(0));
  Integer s;
  Integer power;
  for (std::size_t i = 0; i < orbit_->size(); ++i) {
    orbit_pairing(*orbit_, i, p, s);
    mpz_pow_ui(power.get_mpz_t(), s.get_mpz_t(), m - 1);
    const std::int64_t* num = orbit_->numerators(i);
    for (std::size_t k = 0; k < dim(); ++k)
      if (num[k] != 0) acc[k] += power * static_cast<long>(num[k]);
  }
  // mult * m / (den^m * dH^(m-1))
  Integer den_m;
  mpz_pow_ui(den_m.get_mpz_t(), orbit_->denominator().get_mpz_t(), m);
  Integer dh;
  mpz_pow_ui(dh.get_mpz_t(), p.denominator.get_mpz_t(), m - 1);
  const Integer denom = den_m * dh;
  RVec g(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    g[k] = Rational(acc[k] * multiplicity_ * static_cast<long>(m), denom);
    g[k].canonicalize();
  }
  return g;
}

double InvariantPolynomial::evaluate(const double* h) const {
  const double den = orbit_->denominator().get_d();
  double sum = 0.0;
  for (std::size_t i = 0; i < orbit_->size(); ++i) {
    const std::int64_t* num = orbit_->numerators(i);
    double s = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) s += static_cast<double>(num[k]) * h[k];
    sum += std::pow(s / den, degree_);
  }
  return sum * multiplicity_.get_d();
}

Polynomial InvariantPolynomial::expand() const {
  Polynomial total(dim());
  for (std::size_t i = 0; i < orbit_->size(); ++i)
    total += Polynomial::linear(orbit_->point(i)).pow(static_cast<unsigned>(degree_));
  total *= Rational(multiplicity_);
  return total;
}

std::string InvariantPolynomial::describe() const {
  return "p(lambda_" + std::to_string(weight_index_ + 1) + ", degree " + std::to_string(degree_) +
         ", orbit " + std::to_string(orbit_->size()) + ", multiplicity " + multiplicity_.get_str() + ")";
}

InvariantPolynomial power_sum(const WeylGroup& group, std::size_t weight_index, int degree, std::size_t orbit_cap) {
  if (weight_index >= group.fundamental_weights().size())
    throw Error(ErrorCode::kBadParams, "weight index out of range");
  auto orb = std::make_shared<const Orbit>(group.orbit(group.fundamental_weights()[weight_index], orbit_cap));
  Integer mult = orb->stabilizer_order();
  return InvariantPolynomial(std::move(orb), weight_index, degree, std::move(mult));
}

std::vector<InvariantPolynomial> homogeneous_generators(const WeylGroup& group, std::size_t orbit_cap) {
  if (!is_irreducible(group))
    throw Error(ErrorCode::kBadParams, "homogeneous generators need an irreducible Weyl group");
  const auto* sys = group.system();
  const auto degrees = chevalley_degrees(sys->type, sys->rank);
  const std::size_t l = degrees.size();

  std::vector<std::shared_ptr<const Orbit>> orbits(l);
  auto candidate = [&](std::size_t j, int m) {
    if (!orbits[j]) orbits[j] = std::make_shared<const Orbit>(group.orbit(group.fundamental_weights()[j], orbit_cap));
    return InvariantPolynomial(orbits[j], j, m, orbits[j]->stabilizer_order());
  };

  std::mt19937_64 rng(0x5eed);
  const std::vector<RVec> probes{random_regular_point(group, rng), random_regular_point(group, rng),
                                 random_regular_point(group, rng)};
  auto identically_zero = [&](const InvariantPolynomial& p) {
    for (const auto& h : probes)
      if (sgn(p.evaluate(h)) != 0) return false;
    return true;
  };
  auto independent = [&](const std::vector<const InvariantPolynomial*>& chosen) {
    for (const auto& h : probes)
      if (rank_of(gradient_matrix(group, chosen, h)) == chosen.size()) return true;
    return false;
  };

  // Depth-first search over weight indices per degree, smallest index first.
  std::vector<InvariantPolynomial> chosen;
  std::vector<std::size_t> next_index(l, 0);
  std::vector<int> failed;
  std::size_t depth = 0;
  while (depth < l) {
    bool placed = false;
    while (next_index[depth] < l) {
      const std::size_t j = next_index[depth]++;
      InvariantPolynomial p = candidate(j, degrees[depth]);
      if (identically_zero(p)) continue;
      std::vector<const InvariantPolynomial*> ptrs;
      for (const auto& c : chosen) ptrs.push_back(&c);
      ptrs.push_back(&p);
      if (!independent(ptrs)) continue;
      chosen.push_back(std::move(p));
      placed = true;
      break;
    }
    if (placed) {
      ++depth;
      if (depth < l) next_index[depth] = 0;
      continue;
    }
    failed.push_back(degrees[depth]);
    if (depth == 0) break;
    --depth;
    chosen.pop_back();
  }
  if (chosen.size() != l) {
    std::string msg = "no weight assignment for degrees:";
    for (int d : failed) msg += " " + std::to_string(d);
    throw Error(ErrorCode::kNoValidAssignment, msg);
  }
  auto report = jacobian_independence_test(group, chosen, 2, 0x5eed);
  if (!report.passed) throw Error(ErrorCode::kNoValidAssignment, "Jacobian certificate failed: " + report.detail);
  return chosen;
}

// ------------------------------------------------------------ trigonometric

double TrigInvariant::evaluate(const double* h) const {
  const double den = orbit->denominator().get_d();
  double sum = 0.0;
  for (std::size_t i = 0; i < orbit->size(); ++i) {
    const std::int64_t* num = orbit->numerators(i);
    double s = 0.0;
    for (std::size_t k = 0; k < orbit->dim(); ++k) s += static_cast<double>(num[k]) * h[k];
    s /= den;
    sum += kind == TrigKind::kRealPart ? std::cos(s) : std::sin(s);
  }
  return multiplicity * sum;
}

std::vector<TrigInvariant> trigonometric_generators(const WeylGroup& group, std::size_t orbit_cap) {
  std::vector<TrigInvariant> out;
  const bool odd_parts = !group.contains_minus_id();
  for (std::size_t j = 0; j < group.fundamental_weights().size(); ++j) {
    auto orb = std::make_shared<const Orbit>(group.orbit(group.fundamental_weights()[j], orbit_cap));
    const double mult = orb->stabilizer_order().get_d();
    out.push_back({orb, j, TrigKind::kRealPart, mult});
    if (odd_parts) out.push_back({orb, j, TrigKind::kImaginaryPart, mult});
  }
  return out;
}

// ------------------------------------------------------------ Jacobian test

JacobianReport jacobian_independence_test(const WeylGroup& group, const std::vector<InvariantPolynomial>& polys,
                                          int trials, std::uint64_t seed) {
  if (polys.size() != group.rank())
    throw Error(ErrorCode::kBadParams, "need exactly rank-many polynomials for the Jacobian test");
  if (trials < 1) throw Error(ErrorCode::kBadParams, "trials must be positive");
  JacobianReport report;
  std::mt19937_64 rng(seed);

  report.nonzero_at_regular = true;
  report.ratio_constant = true;
  std::vector<Rational> ratios;
  for (int t = 0; t < trials; ++t) {
    RVec h = random_regular_point(group, rng);
    Rational j = jacobian(group, polys, h);
    ++report.regular_samples;
    if (sgn(j) == 0) {
      report.nonzero_at_regular = false;
      report.detail = "J vanishes at regular point " + to_string(h);
      continue;
    }
    ratios.push_back(j / root_product(group, h));
  }
  if (!ratios.empty()) {
    report.ratio = ratios.front();
    const double base = std::abs(ratios.front().get_d());
    for (const auto& r : ratios) {
      if (r != ratios.front()) report.ratio_constant = false;
      const double spread = std::abs(Rational(r - ratios.front()).get_d()) / base;
      report.max_ratio_relative_spread = std::max(report.max_ratio_relative_spread, spread);
    }
    if (!report.ratio_constant && report.detail.empty()) report.detail = "J / prod(alpha) is not constant";
  } else {
    report.ratio_constant = false;
  }

  report.vanishes_on_hyperplanes = true;
  for (const auto& a : group.positive_roots()) {
    RVec h = random_span_point(group, rng);
    h = sub(h, scale(dot(h, a) / dot(a, a), a));
    ++report.hyperplane_samples;
    if (sgn(jacobian(group, polys, h)) != 0) {
      report.vanishes_on_hyperplanes = false;
      if (report.detail.empty()) report.detail = "J nonzero on the hyperplane of " + to_string(a);
    }
  }
  report.passed = report.nonzero_at_regular && report.vanishes_on_hyperplanes && report.ratio_constant;
  return report;
}

bool skew_invariants_exist(const WeylGroup& group) { return !group.contains_minus_id(); }

}  // namespace weylforge
