#include "weylforge/normforge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "weylforge/error.hpp"
#include "weylforge/invariants.hpp"
#include "weylforge/sampling.hpp"

namespace weylforge {

namespace {

constexpr double kZeroGuard = 1e-300;
constexpr double kTouchRel = 1e-6;
constexpr std::uint64_t kGammaSeedSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kProbeSeedSalt = 0x2545f4914f6cdd1dULL;
constexpr std::size_t kProbeCount = 2048;
constexpr std::size_t kRefineStarts = 8;

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) return std::numeric_limits<double>::quiet_NaN();
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

Eigen::MatrixXd half_sym(const Eigen::MatrixXd& h) { return 0.25 * (h + h.transpose()); }

Eigen::MatrixXd to_eigen(const RMatrix& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].get_d();
  return out;
}

Eigen::MatrixXd cartan_frame(const WeylGroup& g) {
  const std::size_t n = g.dim();
  const std::size_t l = g.rank();
  if (l == n) return Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd b(n, l);
  for (std::size_t j = 0; j < l; ++j) {
    Eigen::VectorXd v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.simple_roots()[j][i].get_d();
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) v -= b.col(k).dot(v) * b.col(k);
    b.col(j) = v.normalized();
  }
  return b;
}

// Pattern search on the sphere minimizing `objective`, from a fixed start.
template <class F>
std::pair<double, Eigen::VectorXd> sphere_descent(const F& objective, Eigen::VectorXd y, double value) {
  const auto n = y.size();
  double r = 0.05;
  for (int iter = 0; iter < 80 && r > 1e-7; ++iter) {
    bool improved = false;
    for (Eigen::Index j = 0; j < n && !improved; ++j) {
      for (double sgn : {1.0, -1.0}) {
        Eigen::VectorXd t = y;
        t[j] += sgn * r;
        t.normalize();
        const double v = objective(t);
        if (v < value) {
          value = v;
          y = t;
          improved = true;
          break;
        }
      }
    }
    if (!improved) r *= 0.5;
  }
  return {value, y};
}

std::vector<std::size_t> lowest_indices(const std::vector<double>& v, std::size_t count) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + count, idx.end(), [&](std::size_t a, std::size_t b) {
    return v[a] < v[b] || (v[a] == v[b] && a < b);
  });
  idx.resize(count);
  return idx;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::string point_string(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str() + ")";
}

// ------------------------------------------------------------ group pieces

struct GroupData {
  std::shared_ptr<const WeylGroup> group;
  Eigen::MatrixXd frame;
};

GroupData make_group(const GroupRef& ref, const NormOptions& opts) {
  auto sys = build_root_system(ref.type, ref.rank);
  auto g = std::make_shared<const WeylGroup>(generate_weyl_group(sys, opts.enumeration_cap));
  return {g, cartan_frame(*g)};
}

RVec random_span_point(const WeylGroup& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  RVec h(g.dim(), Rational(0));
  for (const auto& a : g.simple_roots()) {
    Rational t(num(rng), den(rng));
    t.canonicalize();
    h = add(h, scale(t, a));
  }
  return h;
}

bool power_sum_vanishes(const WeylGroup& g, std::size_t weight, int degree, std::size_t orbit_cap) {
  auto p = power_sum(g, weight, degree, orbit_cap);
  std::mt19937_64 rng(0x5eed);
  for (int i = 0; i < 4; ++i)
    if (sgn(p.evaluate(random_span_point(g, rng))) != 0) return false;
  return true;
}

std::size_t pick_weight(const WeylGroup& g, int degree, std::optional<std::size_t> requested,
                        std::size_t orbit_cap) {
  const std::size_t l = g.fundamental_weights().size();
  if (requested) {
    if (*requested >= l) throw Error(ErrorCode::kBadParams, "weight_index out of range");
    if (power_sum_vanishes(g, *requested, degree, orbit_cap))
      throw Error(ErrorCode::kBadParams, "power sum of weight " + std::to_string(*requested) + " and degree " +
                                             std::to_string(degree) + " vanishes identically");
    return *requested;
  }
  for (std::size_t j = 0; j < l; ++j)
    if (!power_sum_vanishes(g, j, degree, orbit_cap)) return j;
  throw Error(ErrorCode::kBadParams, "no nonvanishing invariant of degree " + std::to_string(degree));
}

// Orbit mean of mu(H)^m in frame coordinates.
NodePtr orbit_node(const GroupData& gd, std::size_t weight, int degree, std::size_t orbit_cap) {
  Orbit orb = gd.group->orbit(gd.group->fundamental_weights()[weight], orbit_cap);
  const auto n = gd.frame.cols();
  Eigen::MatrixXd rows(orb.size(), n);
  const double den = orb.denominator().get_d();
  for (std::size_t i = 0; i < orb.size(); ++i) {
    Eigen::VectorXd mu(orb.dim());
    for (std::size_t k = 0; k < orb.dim(); ++k) mu[k] = static_cast<double>(orb.numerators(i)[k]) / den;
    rows.row(i) = (gd.frame.transpose() * mu).transpose();
  }
  Eigen::VectorXd w = Eigen::VectorXd::Constant(orb.size(), 1.0 / static_cast<double>(orb.size()));
  return linear_power_sum(std::move(rows), std::move(w), degree,
                          "p" + std::to_string(degree) + "[lambda_" + std::to_string(weight + 1) + "]");
}

NodePtr euclid_power(std::size_t n, int k) { return power(squared_norm(n), k); }

NodePtr term_polynomial(const GroupData& gd, const TermSpec& t, std::size_t weight, std::size_t orbit_cap) {
  NodePtr base = orbit_node(gd, weight, t.degree, orbit_cap);
  const int e = 2 * t.k / t.degree;
  return e == 1 ? base : power(base, e);
}

NodePtr odd_polynomial(const GroupData& gd, const OddSpec& o, std::size_t weight, std::size_t orbit_cap) {
  return weighted_sum({orbit_node(gd, weight, o.degree_k, orbit_cap)}, {o.amplitude});
}

struct OddNodes {
  NodePtr r, qstar, q;
};

OddNodes odd_nodes(std::size_t n, const NodePtr& pk, int k, double c, double d) {
  NodePtr ek = euclid_power(n, k);
  NodePtr r = weighted_sum({ek, power(pk, 2)}, {c, 1.0});
  NodePtr qstar = power(weighted_sum({power(r, 0.5), pk}, {1.0, 1.0}), 2);
  NodePtr q = weighted_sum({ek, qstar}, {d, 1.0});
  return {r, qstar, q};
}

NodePtr average_node(const GroupData& gd, const AverageTermSpec& a) {
  const auto& g = *gd.group;
  if (!g.enumerated()) throw Error(ErrorCode::kBadParams, "averaged terms need an enumerated Weyl group");
  const auto n = gd.frame.cols();
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = a.weights[i];
  std::vector<NodePtr> parts;
  std::vector<double> coeff;
  const double inv = 1.0 / static_cast<double>(g.element_count());
  for (std::size_t e = 0; e < g.element_count(); ++e) {
    Eigen::MatrixXd m = gd.frame.transpose() * to_eigen(g.element(e)) * gd.frame;
    parts.push_back(power(linear_power_sum(m, w, a.p), 1.0 / a.p));
    coeff.push_back(inv);
  }
  return power(weighted_sum(std::move(parts), std::move(coeff)), 2);
}

void validate_spec(const NormSpec& s) {
  if (s.product) {
    if (s.mode != NormMode::kAbsolute) throw Error(ErrorCode::kBadParams, "product norms are absolute");
    if (!s.terms.empty() || !s.averages.empty() || s.odd)
      throw Error(ErrorCode::kBadParams, "product norms take no invariant terms");
    const auto& p = *s.product;
    if (p.dims.size() < 2) throw Error(ErrorCode::kBadParams, "product norm needs at least two factors");
    if (!(p.c1 > 0) || !(p.c2 > 0)) throw Error(ErrorCode::kBadParams, "product norm needs c1, c2 > 0");
    if (!(p.p > 1) || !std::isfinite(p.p)) throw Error(ErrorCode::kBadParams, "product norm needs p > 1");
    for (auto d : p.dims)
      if (d == 0) throw Error(ErrorCode::kBadParams, "factor dimensions must be positive");
    if (!p.scales.empty()) {
      if (p.scales.size() != p.dims.size()) throw Error(ErrorCode::kBadParams, "one scale per factor");
      for (double x : p.scales)
        if (!(x > 0)) throw Error(ErrorCode::kBadParams, "factor scales must be positive");
    }
    return;
  }
  if (!s.group) throw Error(ErrorCode::kBadParams, "norm spec needs a group or a product section");
  if (s.mode == NormMode::kPositive && !s.odd) throw Error(ErrorCode::kBadParams, "positive mode needs an odd part");
  if (s.mode == NormMode::kAbsolute && s.odd) throw Error(ErrorCode::kBadParams, "absolute mode takes no odd part");
  for (const auto& t : s.terms) {
    if (t.degree < 1 || t.k < 1) throw Error(ErrorCode::kBadParams, "term degree and k must be positive");
    if ((2 * t.k) % t.degree != 0)
      throw Error(ErrorCode::kBadParams, "term degree must divide 2k (degree " + std::to_string(t.degree) +
                                             ", k " + std::to_string(t.k) + ")");
    if (t.positivity && !(*t.positivity >= 0)) throw Error(ErrorCode::kBadParams, "positivity constant must be >= 0");
  }
  for (const auto& a : s.averages)
    if (a.p < 2 || a.p % 2 != 0) throw Error(ErrorCode::kBadParams, "averaged term needs an even p >= 2");
  if (s.odd) {
    if (s.odd->degree_k < 1 || s.odd->degree_k % 2 == 0)
      throw Error(ErrorCode::kBadParams, "odd part needs an odd degree k");
    if (s.odd->c && !(*s.odd->c >= 0)) throw Error(ErrorCode::kBadParams, "odd part constant c must be >= 0");
    if (s.odd->d && !(*s.odd->d >= 0)) throw Error(ErrorCode::kBadParams, "odd part constant d must be >= 0");
  }
  if (s.gamma && !(*s.gamma >= 0)) throw Error(ErrorCode::kBadParams, "gamma must be >= 0");
}

std::size_t sample_count(const NormOptions& opts, std::size_t n) {
  return opts.samples ? opts.samples : default_sample_count(n);
}

// The 2-homogeneous part F and the positivity-checked pieces.
struct Assembly {
  GroupData gd;
  NodePtr f;
  std::vector<std::pair<std::string, NodePtr>> positive_parts;
  double gamma = 0.0;
};

Assembly assemble(const NormSpec& s, const NormOptions& opts) {
  Assembly a;
  if (s.product) {
    const auto& p = *s.product;
    const std::size_t n = std::accumulate(p.dims.begin(), p.dims.end(), std::size_t{0});
    a.gd.frame = Eigen::MatrixXd::Identity(n, n);
    std::vector<NodePtr> blocks;
    std::vector<double> scales;
    std::size_t off = 0;
    for (std::size_t i = 0; i < p.dims.size(); ++i) {
      std::vector<std::size_t> idx(p.dims[i]);
      std::iota(idx.begin(), idx.end(), off);
      off += p.dims[i];
      blocks.push_back(power(squared_norm(n, idx), p.p));
      scales.push_back(p.scales.empty() ? 1.0 : p.scales[i]);
    }
    a.f = weighted_sum({power(weighted_sum(std::move(blocks), std::move(scales)), 1.0 / p.p)}, {p.c2});
    a.gamma = p.c1;
    return a;
  }
  a.gd = make_group(*s.group, opts);
  const std::size_t n = a.gd.frame.cols();
  std::vector<NodePtr> parts;
  std::vector<double> coeff;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    const auto& t = s.terms[i];
    NodePtr pn = term_polynomial(a.gd, t, *t.weight_index, opts.orbit_cap);
    NodePtr q = weighted_sum({euclid_power(n, t.k), pn}, {*t.positivity, 1.0});
    a.positive_parts.emplace_back("term " + std::to_string(i), q);
    parts.push_back(power(q, 1.0 / t.k));
    coeff.push_back(t.c);
  }
  for (const auto& av : s.averages) {
    if (av.weights.size() != n) throw Error(ErrorCode::kBadParams, "averaged term needs one weight per coordinate");
    for (double w : av.weights)
      if (!(w > 0)) throw Error(ErrorCode::kBadParams, "averaged term weights must be positive");
    parts.push_back(average_node(a.gd, av));
    coeff.push_back(av.c);
  }
  if (s.odd) {
    const auto& o = *s.odd;
    NodePtr pk = odd_polynomial(a.gd, o, *o.weight_index, opts.orbit_cap);
    OddNodes on = odd_nodes(n, pk, o.degree_k, *o.c, *o.d);
    a.positive_parts.emplace_back("odd part R", on.r);
    a.positive_parts.emplace_back("odd part Q", on.q);
    parts.push_back(power(on.q, 1.0 / o.degree_k));
    coeff.push_back(o.coefficient);
  }
  a.f = weighted_sum(std::move(parts), std::move(coeff));
  a.gamma = s.gamma.value_or(0.0);
  return a;
}

}  // namespace

// ------------------------------------------------------------ Norm

std::vector<Eigen::MatrixXd> Norm::weyl_generators() const {
  std::vector<Eigen::MatrixXd> out;
  if (!group_) return out;
  for (std::size_t i = 0; i < group_->generator_count(); ++i)
    out.push_back(frame_.transpose() * to_eigen(group_->generator(i)) * frame_);
  return out;
}

Jet Norm::squared(const Eigen::VectorXd& y, int order) const {
  if (static_cast<std::size_t>(y.size()) != dim()) throw Error(ErrorCode::kBadParams, "point has wrong dimension");
  return l2_->jet(y, order);
}

double Norm::evaluate(const Eigen::VectorXd& y) const {
  if (static_cast<std::size_t>(y.size()) != dim()) throw Error(ErrorCode::kBadParams, "point has wrong dimension");
  if (y.norm() < kZeroGuard) return 0.0;
  return std::sqrt(l2_->value(y));
}

Eigen::VectorXd Norm::gradient(const Eigen::VectorXd& y) const {
  if (static_cast<std::size_t>(y.size()) != dim()) throw Error(ErrorCode::kBadParams, "point has wrong dimension");
  if (y.norm() < kZeroGuard) throw Error(ErrorCode::kDegenerateSample, "norm is not differentiable at the origin");
  Jet j = l2_->jet(y, 1);
  return j.grad / (2 * std::sqrt(j.value));
}

Eigen::MatrixXd Norm::fundamental_tensor(const Eigen::VectorXd& y) const {
  if (static_cast<std::size_t>(y.size()) != dim()) throw Error(ErrorCode::kBadParams, "point has wrong dimension");
  if (y.norm() < kZeroGuard) throw Error(ErrorCode::kDegenerateSample, "fundamental tensor is undefined at the origin");
  return half_sym(l2_->jet(y, 2).hess);
}

Eigen::VectorXd Norm::to_frame(const Eigen::VectorXd& ambient) const {
  if (static_cast<std::size_t>(ambient.size()) != ambient_dim())
    throw Error(ErrorCode::kBadParams, "ambient point has wrong dimension");
  return frame_.transpose() * ambient;
}

Eigen::VectorXd Norm::to_ambient(const Eigen::VectorXd& y) const { return frame_ * y; }

std::string Norm::describe() const {
  std::ostringstream os;
  os.precision(10);
  os << "L(y)^2 = " << gamma_ << "*|y|^2 + " << f_->describe();
  return os.str();
}

// ------------------------------------------------------------ constants

double strict_positivity_constant(const Node& p, std::size_t dim, int degree, std::size_t samples,
                                  std::uint64_t seed, double margin) {
  if (degree % 2 != 0) throw Error(ErrorCode::kBadParams, "positivity constant needs an even degree");
  if (dim == 0 || samples == 0) throw Error(ErrorCode::kBadParams, "positivity constant needs samples");
  auto pts = sphere_samples(dim, samples, seed);
  std::vector<double> v(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { v[i] = p.value(pts[i]); });
  double maxabs = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kNotPositive, "polynomial is not finite on the sphere");
    maxabs = std::max(maxabs, std::abs(x));
  }
  if (maxabs == 0.0) return 1.0;
  double lo = *std::min_element(v.begin(), v.end());
  for (std::size_t i : lowest_indices(v, kRefineStarts)) {
    auto [val, pt] = sphere_descent([&](const Eigen::VectorXd& y) { return p.value(y); }, pts[i], v[i]);
    lo = std::min(lo, val);
  }
  if (lo > kTouchRel * maxabs) return 0.0;
  return std::max((1 + margin) * std::max(0.0, -lo), margin * maxabs);
}

GammaResult gamma_for_convexity(const Node& f, std::size_t dim, std::size_t samples, std::uint64_t seed,
                                double margin, double tolerance) {
  if (dim == 0 || samples == 0) throw Error(ErrorCode::kBadParams, "gamma search needs samples");
  auto pts = sphere_samples(dim, samples, seed);
  std::vector<double> lam(pts.size()), val(pts.size());
  auto eig_at = [&](const Eigen::VectorXd& y) { return min_eigenvalue(half_sym(f.jet(y, 2).hess)); };
  parallel_for(pts.size(), [&](std::size_t i) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      Jet j = f.jet(pts[i], 2);
      lam[i] = min_eigenvalue(half_sym(j.hess));
      val[i] = j.value;
      if (std::isfinite(lam[i]) && std::isfinite(val[i])) return;
      Eigen::VectorXd y = pts[i];
      y[static_cast<Eigen::Index>((i + attempt) % dim)] += 1e-6;
      pts[i] = y.normalized();
    }
  });
  GammaResult r;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(lam[i]) || !std::isfinite(val[i]))
      throw Error(ErrorCode::kNonFiniteHessian, "non-finite Hessian near " + point_string(pts[i]));
    if (lam[i] < lam[worst]) worst = i;
    r.scale = std::max(r.scale, std::abs(val[i]));
  }
  r.delta = lam[worst];
  Eigen::VectorXd worst_pt = pts[worst];
  for (std::size_t i : lowest_indices(lam, kRefineStarts)) {
    auto [v, pt] = sphere_descent(
        [&](const Eigen::VectorXd& y) {
          double e = eig_at(y);
          return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
        },
        pts[i], lam[i]);
    if (v < r.delta) {
      r.delta = v;
      worst_pt = pt;
    }
  }
  if (r.scale == 0.0) r.scale = 1.0;
  r.gamma = std::max(0.0, -r.delta) + margin * r.scale;
  auto& c = r.certificate;
  c.sample_count = pts.size();
  c.min_eigenvalue = r.delta + r.gamma;
  c.gamma_used = r.gamma;
  c.tolerance = tolerance;
  c.pass = c.min_eigenvalue > tolerance;
  c.worst_point = to_std(worst_pt);
  c.seed = seed;
  return r;
}

NormSpec resolve_norm_spec(const NormSpec& spec, const NormOptions& opts) {
  validate_spec(spec);
  NormSpec s = spec;
  if (s.product) {
    if (s.product->scales.empty()) s.product->scales.assign(s.product->dims.size(), 1.0);
    s.gamma = s.product->c1;
    return s;
  }
  GroupData gd = make_group(*s.group, opts);
  const std::size_t n = gd.frame.cols();
  const std::size_t samples = sample_count(opts, n);
  if (s.mode == NormMode::kPositive && gd.group->contains_minus_id())
    throw Error(ErrorCode::kSkewUnavailable,
                "Weyl group " + gd.group->label() + " contains -id; it has no odd invariants");
  for (auto& t : s.terms) {
    t.weight_index = pick_weight(*gd.group, t.degree, t.weight_index, opts.orbit_cap);
    if (!t.positivity) {
      NodePtr pn = term_polynomial(gd, t, *t.weight_index, opts.orbit_cap);
      t.positivity = strict_positivity_constant(*pn, n, 2 * t.k, samples, opts.seed, opts.positivity_margin);
    }
  }
  if (s.odd) {
    auto& o = *s.odd;
    o.weight_index = pick_weight(*gd.group, o.degree_k, o.weight_index, opts.orbit_cap);
    NodePtr pk = odd_polynomial(gd, o, *o.weight_index, opts.orbit_cap);
    if (!o.c) o.c = strict_positivity_constant(*power(pk, 2), n, 2 * o.degree_k, samples, opts.seed,
                                               opts.positivity_margin);
    if (!o.d) {
      OddNodes on = odd_nodes(n, pk, o.degree_k, *o.c, 0.0);
      auto pts = sphere_samples(n, samples, opts.seed);
      std::vector<double> v(pts.size());
      parallel_for(pts.size(), [&](std::size_t i) { v[i] = on.qstar->value(pts[i]); });
      const double lo = *std::min_element(v.begin(), v.end());
      const double hi = *std::max_element(v.begin(), v.end());
      o.d = lo > kTouchRel * hi ? 0.0 : opts.positivity_margin * std::max(hi, 1.0);
    }
  }
  if (!s.gamma) {
    NormSpec tmp = s;
    tmp.gamma = 0.0;
    Assembly a = assemble(tmp, opts);
    s.gamma = gamma_for_convexity(*a.f, n, samples, opts.seed ^ kGammaSeedSalt, opts.gamma_margin, opts.tolerance)
                  .gamma;
  }
  return s;
}

Norm compile_norm(const NormSpec& s, const NormOptions& opts) {
  validate_spec(s);
  if (!s.product) {
    bool resolved = s.gamma.has_value();
    for (const auto& t : s.terms) resolved = resolved && t.weight_index && t.positivity;
    if (s.odd) resolved = resolved && s.odd->weight_index && s.odd->c && s.odd->d;
    if (!resolved) throw Error(ErrorCode::kBadParams, "norm spec has unresolved constants");
  }
  Assembly a = assemble(s, opts);
  const std::size_t n = a.gd.frame.cols();
  auto probes = random_unit_vectors(n, kProbeCount, opts.seed ^ kProbeSeedSalt);
  for (const auto& [name, node] : a.positive_parts)
    for (const auto& y : probes) {
      const double v = node->value(y);
      if (!(v > 0) || !std::isfinite(v))
        throw Error(ErrorCode::kNotPositive, name + " is not positive at " + point_string(y));
    }
  Norm norm;
  norm.spec_ = s;
  if (s.product && norm.spec_.product->scales.empty()) norm.spec_.product->scales.assign(s.product->dims.size(), 1.0);
  norm.spec_.gamma = a.gamma;
  norm.gamma_ = a.gamma;
  norm.frame_ = a.gd.frame;
  norm.group_ = a.gd.group;
  norm.f_ = a.f;
  norm.l2_ = weighted_sum({squared_norm(n), a.f}, {a.gamma, 1.0});
  return norm;
}

// ------------------------------------------------------------ certification

ConvexityCertificate certify(const Norm& norm, std::size_t samples, double tolerance, std::uint64_t seed,
                             std::size_t fd_points) {
  if (samples == 0) throw Error(ErrorCode::kBadParams, "certify needs samples >= 1");
  if (!(tolerance > 0)) throw Error(ErrorCode::kBadParams, "certify needs tolerance > 0");
  const std::size_t n = norm.dim();
  auto pts = sphere_samples(n, samples, seed);
  auto eig_at = [&](const Eigen::VectorXd& y) {
    double e = min_eigenvalue(norm.fundamental_tensor(y));
    return std::isfinite(e) ? e : -std::numeric_limits<double>::infinity();
  };
  std::vector<double> lam(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { lam[i] = eig_at(pts[i]); });

  fd_points = std::min(fd_points, pts.size());
  std::vector<double> fd_err(fd_points, 0.0);
  const std::size_t stride = fd_points ? pts.size() / fd_points : 1;
  constexpr double h = 1e-5;
  parallel_for(fd_points, [&](std::size_t k) {
    const Eigen::VectorXd& y = pts[k * stride];
    Eigen::MatrixXd g = norm.fundamental_tensor(y);
    Eigen::MatrixXd fd(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Eigen::VectorXd yp = y, ym = y;
      yp[j] += h;
      ym[j] -= h;
      fd.col(j) = (norm.squared(yp, 1).grad - norm.squared(ym, 1).grad) / (4 * h);
    }
    const double scale = g.cwiseAbs().maxCoeff();
    fd_err[k] = (g - fd).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);
    if (!std::isfinite(fd_err[k])) fd_err[k] = std::numeric_limits<double>::infinity();
  });

  ConvexityCertificate c;
  c.sample_count = pts.size();
  c.tolerance = tolerance;
  c.gamma_used = norm.gamma();
  c.seed = seed;
  c.fd_points = fd_points;
  std::size_t worst = static_cast<std::size_t>(std::min_element(lam.begin(), lam.end()) - lam.begin());
  c.min_eigenvalue = lam[worst];
  Eigen::VectorXd worst_pt = pts[worst];
  if (std::isfinite(c.min_eigenvalue)) {
    for (std::size_t i : lowest_indices(lam, kRefineStarts)) {
      auto [v, pt] = sphere_descent(eig_at, pts[i], lam[i]);
      if (v < c.min_eigenvalue) {
        c.min_eigenvalue = v;
        worst_pt = pt;
      }
    }
  }
  c.worst_point = to_std(worst_pt);
  for (double e : fd_err) c.fd_max_relative_error = std::max(c.fd_max_relative_error, e);
  c.fd_agreement = c.fd_max_relative_error <= 1e-6;
  c.pass = c.min_eigenvalue > tolerance;
  return c;
}

BuildResult build_norm(const NormSpec& spec, const NormOptions& opts) {
  NormSpec resolved = resolve_norm_spec(spec, opts);
  Norm norm = compile_norm(resolved, opts);
  auto cert = certify(norm, sample_count(opts, norm.dim()), opts.tolerance, opts.seed, opts.fd_points);
  return {std::move(norm), std::move(cert)};
}

namespace {

BuildResult require_pass(BuildResult r) {
  if (!r.certificate.pass)
    throw Error(ErrorCode::kConvexityFail,
                "fundamental tensor not positive definite: min eigenvalue " +
                    std::to_string(r.certificate.min_eigenvalue) + " at " +
                    point_string(Eigen::Map<const Eigen::VectorXd>(r.certificate.worst_point.data(),
                                                                   r.certificate.worst_point.size())));
  return r;
}

}  // namespace

BuildResult build_absolute_norm(const NormSpec& spec, const NormOptions& opts) {
  if (spec.mode != NormMode::kAbsolute) throw Error(ErrorCode::kBadParams, "expected an absolute-mode spec");
  return require_pass(build_norm(spec, opts));
}

BuildResult build_positive_norm(const NormSpec& spec, const NormOptions& opts) {
  if (spec.mode != NormMode::kPositive) throw Error(ErrorCode::kBadParams, "expected a positive-mode spec");
  return require_pass(build_norm(spec, opts));
}

BuildResult build_product_norm(const ProductSpec& spec, const NormOptions& opts) {
  NormSpec s;
  s.product = spec;
  return require_pass(build_norm(s, opts));
}

// ------------------------------------------------------------ flat geometry

double reversibility_defect(const Norm& norm, std::size_t samples, std::uint64_t seed) {
  auto pts = sphere_samples(norm.dim(), samples, seed);
  std::vector<double> d(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { d[i] = std::abs(norm.evaluate(pts[i]) - norm.evaluate(-pts[i])); });
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

double homogeneity_error(const Norm& norm, std::size_t samples, std::uint64_t seed) {
  auto pts = sphere_samples(norm.dim(), samples, seed);
  std::vector<double> e(pts.size(), 0.0);
  parallel_for(pts.size(), [&](std::size_t i) {
    const double lv = norm.evaluate(pts[i]);
    for (double t : {0.001, 0.5, 2.0, 3.0, 17.0}) {
      const double err = std::abs(norm.evaluate(t * pts[i]) - t * lv) / (t * std::max(1.0, lv));
      e[i] = std::max(e[i], err);
    }
  });
  return e.empty() ? 0.0 : *std::max_element(e.begin(), e.end());
}

double flat_distance(const Norm& norm, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kBadParams, "points have different dimensions");
  return norm.evaluate(y - x);
}

bool flat_isometry_check(const Norm& norm, const Eigen::MatrixXd& g, std::size_t samples, std::uint64_t seed,
                         double tol) {
  const auto n = static_cast<Eigen::Index>(norm.dim());
  if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::kBadParams, "map has wrong shape");
  for (const auto& v : sphere_samples(norm.dim(), samples, seed)) {
    const double lv = norm.evaluate(v);
    if (!(std::abs(norm.evaluate(g * v) - lv) <= tol * std::max(1.0, lv))) return false;
  }
  return true;
}

Eigen::VectorXd descending_spectrum(const Eigen::MatrixXd& x, double tol) {
  if (x.rows() != x.cols() || x.rows() == 0) throw Error(ErrorCode::kBadParams, "matrix must be square");
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if ((x - x.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw Error(ErrorCode::kNotSymmetric, "matrix is not symmetric");
  if (std::abs(x.trace()) > tol * scale) throw Error(ErrorCode::kNotTraceless, "matrix is not traceless");
  Eigen::VectorXd ev;
  const bool diagonal = (x - Eigen::MatrixXd(x.diagonal().asDiagonal())).isZero(0.0);
  if (diagonal) {
    ev = x.diagonal();
  } else if (x.rows() == 2) {
    // traceless 2x2: +-sqrt(a^2 + b^2), exact when that is representable
    const double r = std::hypot(x(0, 0), 0.5 * (x(0, 1) + x(1, 0)));
    ev = Eigen::Vector2d(r, -r);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (x + x.transpose()), Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  }
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

double extend_A_family(const Norm& norm, const Eigen::MatrixXd& x, double tol) {
  const WeylGroup* g = norm.group();
  if (!g || !g->system() || g->system()->type != RootType::kA ||
      static_cast<Eigen::Index>(g->rank()) + 1 != x.rows())
    throw Error(ErrorCode::kBadParams, "extension needs a norm on the Cartan space of A_{n-1} for an n x n matrix");
  // Probe symmetry of L_c under coordinate transpositions.
  const auto n = x.rows();
  for (const auto& v : random_unit_vectors(norm.dim(), 4, 0x7a11)) {
    Eigen::VectorXd amb = norm.to_ambient(v);
    const double lv = norm.evaluate(v);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      Eigen::VectorXd sw = amb;
      std::swap(sw[i], sw[i + 1]);
      if (std::abs(norm.evaluate(norm.to_frame(sw)) - lv) > 1e-10 * std::max(1.0, lv))
        throw Error(ErrorCode::kNotPermutationInvariant, "norm is not invariant under coordinate permutations");
    }
  }
  return norm.evaluate(norm.to_frame(descending_spectrum(x, tol)));
}

}  // namespace weylforge
