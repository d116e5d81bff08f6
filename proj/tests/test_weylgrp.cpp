#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "weylforge/error.hpp"
#include "weylforge/weylgrp.hpp"

using namespace weylforge;

namespace {

WeylGroup group(RootType t, int r, std::uint64_t cap = kDefaultEnumerationCap) {
  return generate_weyl_group(build_root_system(t, r), cap);
}

RVec random_rvec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 7);
  RVec v(n);
  for (auto& x : v) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return v;
}

}  // namespace

TEST_CASE("orders agree with a naive matrix-closure oracle") {
  struct C {
    RootType t;
    int r;
  };
  for (auto c : {C{RootType::kA, 1}, C{RootType::kA, 2}, C{RootType::kA, 3}, C{RootType::kB, 2},
                 C{RootType::kB, 3}, C{RootType::kC, 3}, C{RootType::kG2, 2}, C{RootType::kBC, 2}}) {
    CAPTURE(to_string(c.t));
    CAPTURE(c.r);
    auto sys = build_root_system(c.t, c.r);
    auto naive = oracle::matrix_group(sys.simple_roots);
    auto g = generate_weyl_group(sys);
    REQUIRE(g.enumerated());
    CHECK(g.element_count() == naive.size());
    std::set<RMatrix> ours;
    for (std::size_t i = 0; i < g.element_count(); ++i) ours.insert(g.element(i));
    CHECK(ours == naive);
  }
}

TEST_CASE("classical order formulas (frozen after the oracle check)") {
  // (l+1)!, 2^l l!, 2^(l-1) l!
  CHECK(group(RootType::kA, 2).order() == 6);
  CHECK(group(RootType::kA, 4).order() == 120);
  CHECK(group(RootType::kB, 2).order() == 8);
  CHECK(group(RootType::kB, 4).order() == 384);
  CHECK(group(RootType::kD, 4).order() == 192);
  CHECK(group(RootType::kG2, 2).order() == 12);
  CHECK(group(RootType::kF4, 4).order() == 1152);
  auto e6 = group(RootType::kE6, 6);
  CHECK(e6.enumerated());
  CHECK(e6.order() == 51840);
}

TEST_CASE("E8 degrades to generator-only mode") {
  auto e8 = group(RootType::kE8, 8, 1'000'000);
  CHECK_FALSE(e8.enumerated());
  CHECK(e8.order() == 696729600);
  CHECK(e8.components().front().label.name() == "E8");
  CHECK(e8.contains_minus_id());
  CHECK(e8.to_json().find("\"enumerated\":false") != std::string::npos);
}

TEST_CASE("generators are involutive isometries and elements permute the roots") {
  for (auto [t, r] : {std::pair{RootType::kB, 3}, std::pair{RootType::kG2, 2}, std::pair{RootType::kF4, 4}}) {
    auto g = group(t, r);
    for (std::size_t i = 0; i < g.generator_count(); ++i) {
      auto s = g.generator(i);
      auto s2 = oracle::mul(s, s);
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
          CHECK(s2[a][b] == (a == b ? 1 : 0));
          Rational ip = 0;  // s^T s = I
          for (std::size_t k = 0; k < s.size(); ++k) ip += s[k][a] * s[k][b];
          CHECK(ip == (a == b ? 1 : 0));
        }
    }
    std::set<RVec> roots(g.roots().begin(), g.roots().end());
    for (std::size_t e = 0; e < g.element_count(); e += 7)
      for (const auto& a : g.roots()) CHECK(roots.count(g.apply_element(e, a)) == 1);
  }
}

TEST_CASE("minus id") {
  CHECK_FALSE(group(RootType::kA, 2).contains_minus_id());
  auto b2 = group(RootType::kB, 2);
  CHECK(b2.contains_minus_id());
  // Confirm -I among the enumerated elements.
  bool found = false;
  for (std::size_t i = 0; i < b2.element_count(); ++i) {
    auto m = b2.element(i);
    bool neg = true;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) neg = neg && m[r][c] == (r == c ? -1 : 0);
    found = found || neg;
  }
  CHECK(found);
  CHECK(b2.apply_word(b2.minus_id_word(), RVec{3, 5}) == RVec{-3, -5});
  CHECK_FALSE(minus_id_rule({RootType::kD, 3}));
  CHECK_FALSE(group(RootType::kD, 5).contains_minus_id());
  CHECK(group(RootType::kD, 4).contains_minus_id());
  CHECK(group(RootType::kA, 1).contains_minus_id());
  CHECK_FALSE(group(RootType::kE6, 6, 1).contains_minus_id());
}

TEST_CASE("orbits") {
  auto a2 = group(RootType::kA, 2);
  auto o = a2.orbit(a2.simple_roots()[0]);
  CHECK(o.size() == 6);
  CHECK(o.stabilizer_order() == 1);
  auto z = a2.orbit(RVec(3, Rational(0)));
  CHECK(z.size() == 1);
  CHECK(z.stabilizer_order() == 6);

  auto g2 = group(RootType::kG2, 2);
  auto long_orbit = g2.orbit(g2.simple_roots()[1]);
  CHECK(long_orbit.size() == 6);
  auto short_orbit = g2.orbit(g2.simple_roots()[0]);
  CHECK(short_orbit.size() == 6);
  CHECK_FALSE(long_orbit.contains(g2.simple_roots()[0]));

  CHECK_THROWS_AS(g2.orbit(RVec{1, 2, -3}, 3), Error);
}

TEST_CASE("orbit-stabilizer holds for weight orbits") {
  std::mt19937_64 rng(7);
  for (auto [t, r] : {std::pair{RootType::kB, 3}, std::pair{RootType::kF4, 4}, std::pair{RootType::kE6, 6}}) {
    auto g = group(t, r);
    for (const auto& w : g.fundamental_weights()) {
      auto o = g.orbit(w);
      CHECK(Integer(static_cast<unsigned long>(o.size())) * o.stabilizer_order() == g.order());
      // Every orbit point is an image of the seed under an element.
      if (g.enumerated() && g.element_count() < 2000) {
        std::set<RVec> images;
        for (std::size_t e = 0; e < g.element_count(); ++e) images.insert(g.apply_element(e, w));
        CHECK(images.size() == o.size());
      }
    }
  }
}

TEST_CASE("chamber representatives") {
  auto a2 = group(RootType::kA, 2);
  CHECK(a2.chamber_representative(RVec{-1, 1, 0}) == RVec{1, 0, -1});
  CHECK(a2.chamber_representative(RVec{1, -1, 0}) == RVec{1, 0, -1});
  RVec dominant{5, 1, -6};
  CHECK(a2.chamber_representative(dominant) == dominant);
  CHECK(a2.chamber_representative(RVec(3, Rational(0))) == RVec(3, Rational(0)));

  std::mt19937_64 rng(11);
  auto f4 = group(RootType::kF4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    RVec v = random_rvec(rng, 4);
    RVec rep = f4.chamber_representative(v);
    for (const auto& a : f4.simple_roots()) CHECK(sgn(dot(rep, a)) >= 0);
    std::uniform_int_distribution<std::size_t> pick(0, f4.element_count() - 1);
    CHECK(f4.chamber_representative(f4.apply_element(pick(rng), v)) == rep);
  }
}

TEST_CASE("JSON record") {
  auto j = group(RootType::kA, 2).to_json();
  CHECK(j == R"({"type":"A","label":"A2","rank":2,"order":6,"contains_minus_id":false,"enumerated":true})");
}
