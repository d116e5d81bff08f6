#include "doctest.h"
#include "oracles.hpp"
#include "weylforge/error.hpp"
#include "weylforge/rootsys.hpp"

using namespace weylforge;

namespace {

struct Case {
  RootType type;
  int rank;
};

const Case kAllCanonical[] = {
    {RootType::kA, 1},  {RootType::kA, 2},  {RootType::kA, 3},  {RootType::kA, 6},  {RootType::kB, 2},
    {RootType::kB, 3},  {RootType::kB, 5},  {RootType::kC, 3},  {RootType::kC, 4},  {RootType::kBC, 1},
    {RootType::kBC, 2}, {RootType::kBC, 3}, {RootType::kD, 4},  {RootType::kD, 5},  {RootType::kD, 6},
    {RootType::kE6, 6}, {RootType::kE7, 7}, {RootType::kE8, 8}, {RootType::kF4, 4}, {RootType::kG2, 2},
};

RVec ints(std::initializer_list<long> xs) {
  RVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("A2 and G2 root counts") {
  auto a2 = build_root_system(RootType::kA, 2);
  CHECK(a2.roots.size() == 6);
  CHECK(a2.positive_roots.size() == 3);
  CHECK(a2.ambient_dim == 3);

  // e_i - e_j over three coordinates, enumerated directly.
  std::set<RVec> expected;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        RVec v(3, Rational(0));
        v[i] = 1;
        v[j] = -1;
        expected.insert(v);
      }
  CHECK(std::set<RVec>(a2.roots.begin(), a2.roots.end()) == expected);

  auto g2 = build_root_system(RootType::kG2, 2);
  CHECK(g2.roots.size() == 12);
  CHECK(g2.positive_roots.size() == 6);
}

TEST_CASE("BC1 is {+-a, +-2a}") {
  auto bc1 = build_root_system(RootType::kBC, 1);
  CHECK(bc1.roots == std::vector<RVec>{ints({-2}), ints({-1}), ints({1}), ints({2})});
  CHECK_FALSE(bc1.reduced());
  CHECK(validate(bc1).passed());
}

TEST_CASE("root sets equal the reflection closure of the simple roots") {
  for (const auto& c : kAllCanonical) {
    if (c.type == RootType::kE8 || c.type == RootType::kE7) continue;  // covered by counts
    CAPTURE(to_string(c.type));
    CAPTURE(c.rank);
    auto sys = build_root_system(c.type, c.rank);
    auto closure = oracle::reflection_closure(sys.simple_roots, sys.simple_roots);
    if (c.type == RootType::kBC) {
      // The doubles of the short simple root complete BC.
      std::vector<RVec> seeds = sys.simple_roots;
      RVec d = sys.simple_roots.back();
      for (auto& x : d) x *= 2;
      seeds.push_back(d);
      closure = oracle::reflection_closure(seeds, sys.simple_roots);
    }
    CHECK(std::set<RVec>(sys.roots.begin(), sys.roots.end()) == closure);
  }
}

TEST_CASE("closed-form root counts, confirmed by enumeration above") {
  // l(l+1), 2l^2, 2l(l-1), and the exceptional values.
  CHECK(build_root_system(RootType::kA, 6).roots.size() == 42);
  CHECK(build_root_system(RootType::kB, 5).roots.size() == 50);
  CHECK(build_root_system(RootType::kD, 6).roots.size() == 60);
  CHECK(build_root_system(RootType::kG2, 2).roots.size() == 12);
  CHECK(build_root_system(RootType::kF4, 4).roots.size() == 48);
  CHECK(build_root_system(RootType::kE6, 6).roots.size() == 72);
  CHECK(build_root_system(RootType::kE7, 7).roots.size() == 126);
  CHECK(build_root_system(RootType::kE8, 8).roots.size() == 240);
}

TEST_CASE("every canonical system validates") {
  for (const auto& c : kAllCanonical) {
    CAPTURE(to_string(c.type));
    CAPTURE(c.rank);
    auto sys = build_root_system(c.type, c.rank);
    auto report = validate(sys);
    for (const auto& check : report.checks) {
      CAPTURE(check.name);
      CAPTURE(check.detail);
      CHECK(check.passed);
    }
    CHECK(static_cast<int>(sys.simple_roots.size()) == c.rank);
    CHECK(static_cast<int>(sys.fundamental_weights.size()) == c.rank);
  }
}

TEST_CASE("validate reports axiom failures with counterexamples") {
  SUBCASE("axiom (ii)") {
    auto sys = custom_root_system({ints({1, 0}), ints({-1, 0}), ints({1, 1}), ints({-1, -1})});
    auto report = validate(sys);
    CHECK_FALSE(report.passed());
    const auto* c = report.find("axiom_ii_reflection_stable");
    REQUIRE(c);
    CHECK_FALSE(c->passed);
    CHECK(c->detail.find("outside") != std::string::npos);
  }
  SUBCASE("axiom (iii)") {
    RVec third{Rational(1, 3)};
    RVec mthird{Rational(-1, 3)};
    auto sys = custom_root_system({ints({1}), ints({-1}), third, mthird});
    auto report = validate(sys);
    const auto* c = report.find("axiom_iii_integrality");
    REQUIRE(c);
    CHECK_FALSE(c->passed);
    CHECK(c->detail.find("2/3") != std::string::npos);
  }
}

TEST_CASE("reflections fix the mirror and negate the root") {
  for (const auto& c : kAllCanonical) {
    auto sys = build_root_system(c.type, c.rank);
    for (const auto& a : sys.positive_roots) {
      CHECK(reflect(a, a) == negate(a));
      // A vector orthogonal to a: project a simple root off a.
      for (const auto& s : sys.simple_roots) {
        RVec p = sub(s, scale(dot(s, a) / dot(a, a), a));
        CHECK(reflect(p, a) == p);
      }
    }
  }
}

TEST_CASE("fundamental weights for B2 match the Bourbaki table") {
  auto b2 = build_root_system(RootType::kB, 2);
  CHECK(b2.fundamental_weights[0] == ints({1, 0}));
  CHECK(b2.fundamental_weights[1] == RVec{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("admissibility") {
  CHECK_THROWS_AS(build_root_system(RootType::kB, 1), Error);
  CHECK_THROWS_AS(build_root_system(RootType::kD, 3), Error);
  CHECK_THROWS_AS(build_root_system(RootType::kC, 2), Error);
  try {
    parse_root_type("H", 3);
    FAIL("expected UnknownType");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownType);
  }
  try {
    build_root_system(RootType::kE6, 7);
    FAIL("expected RankOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRankOutOfRange);
  }
  CHECK(parse_root_type("e", 7) == RootType::kE7);
  CHECK(parse_root_type("bc", 2) == RootType::kBC);
}

TEST_CASE("JSON round trip is exact") {
  for (auto [t, r] : {std::pair{RootType::kE6, 6}, std::pair{RootType::kBC, 2}, std::pair{RootType::kG2, 2}}) {
    auto sys = build_root_system(t, r);
    auto back = root_system_from_json(to_json(sys));
    CHECK(back.type == sys.type);
    CHECK(back.rank == sys.rank);
    CHECK(back.roots == sys.roots);
    CHECK(back.simple_roots == sys.simple_roots);
    CHECK(back.positive_roots == sys.positive_roots);
    CHECK(back.fundamental_weights == sys.fundamental_weights);
  }
  CHECK(to_json(build_root_system(RootType::kE8, 8)).find("\"1/2\"") != std::string::npos);
}
