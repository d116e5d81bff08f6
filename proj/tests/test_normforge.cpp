#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "weylforge/error.hpp"
#include "weylforge/norm_io.hpp"
#include "weylforge/normforge.hpp"
#include "weylforge/sampling.hpp"

using namespace weylforge;

namespace {

NormOptions quick() {
  NormOptions o;
  o.samples = 4096;
  o.fd_points = 200;
  return o;
}

NormSpec group_spec(RootType t, int l, int degree, int k) {
  NormSpec s;
  s.group = GroupRef{t, l};
  s.terms.push_back({degree, {}, k, 1.0, {}});
  return s;
}

NormSpec a2_positive() {
  NormSpec s;
  s.mode = NormMode::kPositive;
  s.group = GroupRef{RootType::kA, 2};
  s.odd = OddSpec{};
  return s;
}

NormSpec euclidean(int l) {
  NormSpec s;
  s.group = GroupRef{RootType::kA, l};
  s.gamma = 1.0;
  return s;
}

Eigen::MatrixXd random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("strict positivity constant") {
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  Polynomial r2 = x * x + y * y;
  CHECK(strict_positivity_constant(*polynomial_node(r2 * r2), 2, 4, 2048, 1) == 0.0);

  Polynomial p = x * x * x * x - x * x * y * y * Rational(3);
  // oracle: minimum of cos^4 - 3 cos^2 sin^2 on a dense angle grid
  double lo = 0;
  for (int i = 0; i < 200000; ++i) {
    double t = 2 * std::numbers::pi * i / 200000.0, c = std::cos(t), s = std::sin(t);
    lo = std::min(lo, c * c * c * c - 3 * c * c * s * s);
  }
  CHECK(lo == doctest::Approx(-9.0 / 16).epsilon(1e-8));
  double c = strict_positivity_constant(*polynomial_node(p), 2, 4, 2048, 1);
  CHECK(c >= -lo * 1.1 * (1 - 1e-9));
  CHECK(c == doctest::Approx(-lo * 1.1).epsilon(1e-6));

  CHECK_THROWS_AS(strict_positivity_constant(*polynomial_node(x * x * x), 2, 3, 100, 1), Error);
}

TEST_CASE("gamma search on the identity quadratic") {
  auto r = gamma_for_convexity(*squared_norm(3), 3, 2048, 1);
  CHECK(r.delta == doctest::Approx(1.0));
  CHECK(r.scale == doctest::Approx(1.0));
  CHECK(r.gamma == doctest::Approx(0.05));
  CHECK(r.certificate.pass);
}

TEST_CASE("Euclidean norm certifies with eigenvalue 1") {
  auto r = build_norm(euclidean(2), quick());
  CHECK(r.certificate.pass);
  CHECK(r.certificate.min_eigenvalue == doctest::Approx(1.0));
  Eigen::VectorXd x(2), y(2);
  x << 0.3, -1.2;
  y << 2.0, 0.5;
  CHECK(flat_distance(r.norm, x, y) == doctest::Approx((y - x).norm()).epsilon(1e-15));
  CHECK(reversibility_defect(r.norm, 1000) == 0.0);
}

TEST_CASE("worked absolute norms") {
  std::mt19937_64 rng(9);
  for (auto [t, l, deg, k] : {std::tuple{RootType::kA, 2, 6, 3}, std::tuple{RootType::kB, 2, 4, 2},
                              std::tuple{RootType::kG2, 2, 6, 3}, std::tuple{RootType::kA, 3, 4, 2}}) {
    CAPTURE(to_string(t));
    auto r = build_absolute_norm(group_spec(t, l, deg, k), quick());
    const Norm& L = r.norm;
    CHECK(r.certificate.pass);
    CHECK(r.certificate.fd_agreement);
    CHECK(L.gamma() > 0);
    CHECK(reversibility_defect(L, 2000) <= 1e-12);
    auto pts = random_unit_vectors(L.dim(), 200, 3);
    for (const auto& v : pts) {
      const double lv = L.evaluate(v);
      for (double s : {0.5, 2.0, 17.0}) CHECK(std::abs(L.evaluate(s * v) - s * lv) <= 1e-12 * s * lv);
      for (const auto& g : L.weyl_generators()) CHECK(std::abs(L.evaluate(g * v) - lv) <= 1e-12 * lv);
      Eigen::MatrixXd g0 = L.fundamental_tensor(v);
      CHECK(g0 == g0.transpose());
      for (double s : {0.5, 2.0}) CHECK((L.fundamental_tensor(s * v) - g0).cwiseAbs().maxCoeff() <= 1e-10);
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      CHECK(L.evaluate(pts[i] + 3 * pts[i + 1]) <= L.evaluate(pts[i]) + L.evaluate(3 * pts[i + 1]) + 1e-10);
    for (const auto& g : L.weyl_generators()) CHECK(flat_isometry_check(L, g, 200));
    CHECK(flat_isometry_check(L, Eigen::MatrixXd::Identity(L.dim(), L.dim()), 50));
  }
}

TEST_CASE("B2 norm is not Euclidean") {
  auto r = build_absolute_norm(group_spec(RootType::kB, 2, 4, 2), quick());
  Eigen::VectorXd e1(2), d(2);
  e1 << 1, 0;
  d << std::sqrt(0.5), std::sqrt(0.5);
  CHECK(std::abs(r.norm.evaluate(e1) - r.norm.evaluate(d)) > 1e-3);
  std::mt19937_64 rng(2);
  CHECK_FALSE(flat_isometry_check(r.norm, random_orthogonal(2, rng) * 1.3, 100));
}

TEST_CASE("positive-mode norm on A2 is irreversible") {
  auto r = build_positive_norm(a2_positive(), quick());
  CHECK(r.certificate.pass);
  CHECK(r.certificate.fd_agreement);
  CHECK(reversibility_defect(r.norm, 4000) > 1e-3);
  for (const auto& g : r.norm.weyl_generators()) CHECK(flat_isometry_check(r.norm, g, 200));
  Eigen::VectorXd x(2), y(2);
  x << 0.1, 0.2;
  y << 1.3, -0.4;
  CHECK(flat_distance(r.norm, x, x) == 0.0);
  CHECK(std::abs(flat_distance(r.norm, x, y) - flat_distance(r.norm, y, x)) > 1e-6);

  // forcing gamma = 0 loses strong convexity
  NormSpec forced = r.norm.spec();
  forced.gamma = 0.0;
  auto bad = certify(compile_norm(forced), 4096, 1e-8, 42, 10);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_point.size() == 2);
  CHECK_THROWS_AS(build_positive_norm(forced, quick()), Error);
}

TEST_CASE("positive mode edge cases") {
  NormSpec b2 = a2_positive();
  b2.group = GroupRef{RootType::kB, 2};
  try {
    build_positive_norm(b2, quick());
    FAIL("expected SkewUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSkewUnavailable);
  }
  NormSpec zero = a2_positive();
  zero.odd->amplitude = 0.0;
  auto r = build_positive_norm(zero, quick());
  CHECK(reversibility_defect(r.norm, 2000) <= 1e-12);

  NormSpec even = a2_positive();
  even.odd->degree_k = 2;
  CHECK_THROWS_AS(build_norm(even, quick()), Error);
}

TEST_CASE("product norm") {
  ProductSpec p{1, 1, 2, {2, 2}, {}};
  auto r = build_product_norm(p, quick());
  Eigen::VectorXd x(4);
  x << 3, 0, 0, 4;
  CHECK(r.norm.evaluate(x) == doctest::Approx(std::sqrt(25 + std::sqrt(337.0))).epsilon(1e-15));
  x << 0.6, 0.8, 0, 0;
  CHECK(r.norm.evaluate(x) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.certificate.pass);

  std::mt19937_64 rng(4);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(4, 4);
  block.topLeftCorner(2, 2) = random_orthogonal(2, rng);
  block.bottomRightCorner(2, 2) = random_orthogonal(2, rng);
  for (const auto& v : random_unit_vectors(4, 300, 8)) CHECK(std::abs(r.norm.evaluate(block * v) - r.norm.evaluate(v)) <= 1e-12);

  p.p = 1;
  CHECK_THROWS_AS(build_product_norm(p, quick()), Error);
  ProductSpec one{1, 1, 2, {3}, {}};
  CHECK_THROWS_AS(build_product_norm(one, quick()), Error);
}

TEST_CASE("zero guard") {
  auto r = build_norm(euclidean(2), quick());
  CHECK(r.norm.evaluate(Eigen::VectorXd::Zero(2)) == 0.0);
  CHECK_THROWS_AS(r.norm.fundamental_tensor(Eigen::VectorXd::Zero(2)), Error);
}

TEST_CASE("A-family extension") {
  auto r = build_absolute_norm(group_spec(RootType::kA, 1, 2, 1), quick());
  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  Eigen::VectorXd spec(2);
  spec << 1, -1;
  CHECK(extend_A_family(r.norm, x) == doctest::Approx(r.norm.evaluate(r.norm.to_frame(spec))).epsilon(1e-14));

  auto a3 = build_absolute_norm(group_spec(RootType::kA, 3, 4, 2), quick());
  std::mt19937_64 rng(6);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  d.diagonal() << 2.0, 0.5, -1.0, -1.5;
  Eigen::VectorXd diag = d.diagonal();
  CHECK(extend_A_family(a3.norm, d) == a3.norm.evaluate(a3.norm.to_frame(diag)));
  const double base = extend_A_family(a3.norm, d);
  for (int i = 0; i < 50; ++i) {
    Eigen::MatrixXd o = random_orthogonal(4, rng);
    CHECK(std::abs(extend_A_family(a3.norm, o.transpose() * d * o) - base) <= 1e-9);
  }

  Eigen::MatrixXd ns = x;
  ns(0, 1) = 2;
  try {
    extend_A_family(r.norm, ns);
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotSymmetric);
  }
  Eigen::MatrixXd tr = Eigen::MatrixXd::Identity(2, 2);
  try {
    extend_A_family(r.norm, tr);
    FAIL("expected NotTraceless");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotTraceless);
  }
  auto b2 = build_absolute_norm(group_spec(RootType::kB, 2, 4, 2), quick());
  CHECK_THROWS_AS(extend_A_family(b2.norm, x), Error);
}

TEST_CASE("norm spec JSON") {
  auto s = parse_norm_spec(R"({"mode":"positive","group":{"type":"A","rank":2},"odd":{"degree_k":3,"c":"auto"},"gamma":"auto"})");
  CHECK(s.mode == NormMode::kPositive);
  CHECK(s.odd->degree_k == 3);
  CHECK_FALSE(s.odd->c.has_value());
  CHECK_FALSE(s.gamma.has_value());

  auto r = build_norm(s, quick());
  std::string compiled = norm_to_json(r.norm);
  Norm back = load_norm(compiled);
  for (const auto& v : random_unit_vectors(2, 50, 1)) CHECK(back.evaluate(v) == r.norm.evaluate(v));
  CHECK(norm_to_json(back) == compiled);
  CHECK(compiled.find("\"gamma\":" ) != std::string::npos);

  try {
    parse_norm_spec("{not json");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
  try {
    parse_norm_spec(R"({"mode":"absolute","grup":{}})");
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadParams);
  }
  auto e6 = parse_norm_spec(R"({"group":{"type":"E6"},"terms":[{"degree":6,"k":3,"weight_index":1}]})");
  CHECK(e6.group->rank == 6);
  CHECK(*e6.terms[0].weight_index == 0);

  ConvexityCertificate c;
  c.min_eigenvalue = 0.1;
  std::string cj = certificate_to_json(c);
  CHECK(cj.find("0.10000000000000001") != std::string::npos);
}
