#include "weylforge/rootsys.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

RVec unit(std::size_t dim, std::size_t i, int value = 1) {
  RVec v(dim, Rational(0));
  v[i] = value;
  return v;
}

RVec combo(std::size_t dim, std::initializer_list<std::pair<std::size_t, int>> terms) {
  RVec v(dim, Rational(0));
  for (auto [i, c] : terms) v[i] += c;
  return v;
}

// +-e_i +- e_j for i < j.
void add_long_pairs(std::vector<RVec>& roots, std::size_t dim, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) roots.push_back(combo(dim, {{i, si}, {j, sj}}));
}

std::vector<RVec> e8_roots() {
  std::vector<RVec> roots;
  add_long_pairs(roots, 8, 8);
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    RVec v(8);
    for (std::size_t i = 0; i < 8; ++i) v[i] = Rational((mask >> i) & 1U ? -1 : 1, 2);
    roots.push_back(v);
  }
  return roots;
}

std::vector<RVec> e8_simple() {
  const Rational h(1, 2);
  std::vector<RVec> s;
  s.push_back(RVec{h, -h, -h, -h, -h, -h, -h, h});
  s.push_back(combo(8, {{0, 1}, {1, 1}}));
  for (std::size_t i = 0; i + 1 < 7; ++i) s.push_back(combo(8, {{i, -1}, {i + 1, 1}}));
  return s;
}

// Coefficients of v in the basis `basis` (which spans a subspace containing v).
RVec basis_coordinates(const std::vector<RVec>& basis, const RVec& v) {
  const std::size_t l = basis.size();
  std::vector<RVec> gram(l, RVec(l));
  RVec rhs(l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  return solve(std::move(gram), std::move(rhs));
}

}  // namespace

std::vector<RVec> fundamental_weights_of(const std::vector<RVec>& simple) {
  if (simple.empty()) return {};
  // lambda_i = sum_k x_k alpha_k with 2<lambda_i, alpha_j>/<alpha_j, alpha_j> = delta_ij.
  const std::size_t l = simple.size();
  std::vector<RVec> cartan(l, RVec(l));
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t k = 0; k < l; ++k)
      cartan[j][k] = 2 * dot(simple[k], simple[j]) / dot(simple[j], simple[j]);
  std::vector<RVec> weights;
  for (std::size_t i = 0; i < l; ++i) {
    RVec rhs(l, Rational(0));
    rhs[i] = 1;
    RVec x = solve(cartan, rhs);
    RVec w(simple.front().size(), Rational(0));
    for (std::size_t k = 0; k < l; ++k) w = add(w, scale(x[k], simple[k]));
    weights.push_back(std::move(w));
  }
  return weights;
}

namespace {

void finalize(RootSystem& sys) {
  std::sort(sys.roots.begin(), sys.roots.end());
  sys.roots.erase(std::unique(sys.roots.begin(), sys.roots.end()), sys.roots.end());
  sys.simple_root_indices.clear();
  for (const auto& s : sys.simple_roots) {
    auto it = std::lower_bound(sys.roots.begin(), sys.roots.end(), s);
    if (it == sys.roots.end() || *it != s)
      throw Error(ErrorCode::kInvalidSystem, "simple root " + to_string(s) + " is not a root");
    sys.simple_root_indices.push_back(static_cast<std::size_t>(it - sys.roots.begin()));
  }
  sys.positive_roots.clear();
  if (!sys.simple_roots.empty()) {
    for (const auto& r : sys.roots) {
      RVec c = basis_coordinates(sys.simple_roots, r);
      auto first = std::find_if(c.begin(), c.end(), [](const Rational& q) { return sgn(q) != 0; });
      if (first != c.end() && sgn(*first) > 0) sys.positive_roots.push_back(r);
    }
    sys.fundamental_weights = fundamental_weights_of(sys.simple_roots);
  }
}

}  // namespace

std::string to_string(RootType type) {
  switch (type) {
    case RootType::kA: return "A";
    case RootType::kB: return "B";
    case RootType::kC: return "C";
    case RootType::kBC: return "BC";
    case RootType::kD: return "D";
    case RootType::kE6: return "E6";
    case RootType::kE7: return "E7";
    case RootType::kE8: return "E8";
    case RootType::kF4: return "F4";
    case RootType::kG2: return "G2";
    case RootType::kCustom: return "custom";
  }
  return "?";
}

RootType parse_root_type(std::string_view text, int rank) {
  std::string t(text);
  for (auto& ch : t) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (t == "A") return RootType::kA;
  if (t == "B") return RootType::kB;
  if (t == "C") return RootType::kC;
  if (t == "BC") return RootType::kBC;
  if (t == "D") return RootType::kD;
  if (t == "E6" || (t == "E" && rank == 6)) return RootType::kE6;
  if (t == "E7" || (t == "E" && rank == 7)) return RootType::kE7;
  if (t == "E8" || (t == "E" && rank == 8)) return RootType::kE8;
  if (t == "F4" || (t == "F" && rank == 4)) return RootType::kF4;
  if (t == "G2" || (t == "G" && rank == 2)) return RootType::kG2;
  if (t == "E" || t == "F" || t == "G")
    throw Error(ErrorCode::kRankOutOfRange, "no exceptional system " + t + std::to_string(rank));
  throw Error(ErrorCode::kUnknownType, "unknown root system type '" + std::string(text) + "'");
}

void check_admissible(RootType type, int rank) {
  constexpr int kMaxClassicalRank = 32;
  int lo = 1;
  int hi = kMaxClassicalRank;
  switch (type) {
    case RootType::kA: lo = 1; break;
    case RootType::kB: lo = 2; break;
    case RootType::kC: lo = 3; break;
    case RootType::kBC: lo = 1; break;
    case RootType::kD: lo = 4; break;
    case RootType::kE6: lo = hi = 6; break;
    case RootType::kE7: lo = hi = 7; break;
    case RootType::kE8: lo = hi = 8; break;
    case RootType::kF4: lo = hi = 4; break;
    case RootType::kG2: lo = hi = 2; break;
    case RootType::kCustom:
      throw Error(ErrorCode::kUnknownType, "custom systems have no canonical construction");
  }
  if (rank < lo || rank > hi)
    throw Error(ErrorCode::kRankOutOfRange,
                to_string(type) + " requires rank in [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "], got " + std::to_string(rank));
}

std::string RootSystem::label() const {
  switch (type) {
    case RootType::kA:
    case RootType::kB:
    case RootType::kC:
    case RootType::kBC:
    case RootType::kD: return to_string(type) + std::to_string(rank);
    default: return to_string(type);
  }
}

RVec RootSystem::simple_coordinates(const RVec& v) const {
  return basis_coordinates(simple_roots, v);
}

std::size_t expected_root_count(RootType type, int rank) {
  const auto l = static_cast<std::size_t>(rank);
  switch (type) {
    case RootType::kA: return l * (l + 1);
    case RootType::kB:
    case RootType::kC: return 2 * l * l;
    case RootType::kBC: return 2 * l * l + 2 * l;
    case RootType::kD: return 2 * l * (l - 1);
    case RootType::kE6: return 72;
    case RootType::kE7: return 126;
    case RootType::kE8: return 240;
    case RootType::kF4: return 48;
    case RootType::kG2: return 12;
    case RootType::kCustom: return 0;
  }
  return 0;
}

RootSystem build_root_system(RootType type, int rank) {
  check_admissible(type, rank);
  RootSystem sys;
  sys.type = type;
  sys.rank = rank;
  const auto l = static_cast<std::size_t>(rank);
  switch (type) {
    case RootType::kA: {
      const std::size_t n = l + 1;
      sys.ambient_dim = n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) sys.roots.push_back(combo(n, {{i, 1}, {j, -1}}));
      for (std::size_t i = 0; i < l; ++i) sys.simple_roots.push_back(combo(n, {{i, 1}, {i + 1, -1}}));
      break;
    }
    case RootType::kB:
    case RootType::kC:
    case RootType::kBC:
    case RootType::kD: {
      sys.ambient_dim = l;
      add_long_pairs(sys.roots, l, l);
      for (std::size_t i = 0; i < l; ++i) {
        if (type == RootType::kB || type == RootType::kBC) {
          sys.roots.push_back(unit(l, i, 1));
          sys.roots.push_back(unit(l, i, -1));
        }
        if (type == RootType::kC || type == RootType::kBC) {
          sys.roots.push_back(unit(l, i, 2));
          sys.roots.push_back(unit(l, i, -2));
        }
      }
      for (std::size_t i = 0; i + 1 < l; ++i) sys.simple_roots.push_back(combo(l, {{i, 1}, {i + 1, -1}}));
      if (type == RootType::kC) {
        sys.simple_roots.push_back(unit(l, l - 1, 2));
      } else if (type == RootType::kD) {
        sys.simple_roots.push_back(combo(l, {{l - 2, 1}, {l - 1, 1}}));
      } else {
        sys.simple_roots.push_back(unit(l, l - 1, 1));
      }
      break;
    }
    case RootType::kE6:
    case RootType::kE7:
    case RootType::kE8: {
      sys.ambient_dim = 8;
      auto all = e8_roots();
      auto simple = e8_simple();
      simple.resize(l);
      if (l == 8) {
        sys.roots = std::move(all);
      } else {
        // E6, E7: the E8 roots lying in the span of the first l simple roots.
        auto full = e8_simple();
        for (auto& r : all) {
          RVec c = basis_coordinates(full, r);
          bool inside = std::all_of(c.begin() + static_cast<long>(l), c.end(),
                                    [](const Rational& q) { return sgn(q) == 0; });
          if (inside) sys.roots.push_back(std::move(r));
        }
      }
      sys.simple_roots = std::move(simple);
      break;
    }
    case RootType::kF4: {
      sys.ambient_dim = 4;
      add_long_pairs(sys.roots, 4, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        sys.roots.push_back(unit(4, i, 1));
        sys.roots.push_back(unit(4, i, -1));
      }
      for (unsigned mask = 0; mask < 16; ++mask) {
        RVec v(4);
        for (std::size_t i = 0; i < 4; ++i) v[i] = Rational((mask >> i) & 1U ? -1 : 1, 2);
        sys.roots.push_back(v);
      }
      const Rational h(1, 2);
      sys.simple_roots = {combo(4, {{1, 1}, {2, -1}}), combo(4, {{2, 1}, {3, -1}}), unit(4, 3),
                          RVec{h, -h, -h, -h}};
      break;
    }
    case RootType::kG2: {
      sys.ambient_dim = 3;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) continue;
          sys.roots.push_back(combo(3, {{i, 1}, {j, -1}}));
        }
      for (std::size_t i = 0; i < 3; ++i)
        for (int s : {1, -1}) {
          RVec v(3, Rational(-s));
          v[i] = 2 * s;
          sys.roots.push_back(v);
        }
      sys.simple_roots = {combo(3, {{0, 1}, {1, -1}}), combo(3, {{0, -2}, {1, 1}, {2, 1}})};
      break;
    }
    case RootType::kCustom: break;
  }
  finalize(sys);
  return sys;
}

RootSystem custom_root_system(std::vector<RVec> roots, std::vector<RVec> simple_roots) {
  if (roots.empty()) throw Error(ErrorCode::kInvalidSystem, "empty root set");
  RootSystem sys;
  sys.type = RootType::kCustom;
  sys.ambient_dim = roots.front().size();
  for (const auto& r : roots)
    if (r.size() != sys.ambient_dim) throw Error(ErrorCode::kInvalidSystem, "mixed root dimensions");
  sys.rank = static_cast<int>(rank_of(roots));
  sys.roots = std::move(roots);
  sys.simple_roots = std::move(simple_roots);
  if (!sys.simple_roots.empty() && static_cast<int>(sys.simple_roots.size()) != sys.rank)
    throw Error(ErrorCode::kInvalidSystem, "simple roots do not match the rank");
  finalize(sys);
  return sys;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate(const RootSystem& sys) {
  ValidationReport report;
  const std::set<RVec> root_set(sys.roots.begin(), sys.roots.end());
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok, false, ok ? std::string() : std::move(detail)});
  };
  auto skip = [&](std::string name) { report.checks.push_back({std::move(name), true, true, "n/a"}); };

  {
    auto it = std::find_if(sys.roots.begin(), sys.roots.end(), [](const RVec& r) { return is_zero(r); });
    add("nonzero", it == sys.roots.end(), "zero vector in root set");
  }
  {
    std::string bad;
    for (const auto& r : sys.roots)
      if (!root_set.count(negate(r))) {
        bad = "-" + to_string(r) + " missing";
        break;
      }
    add("negation_closed", bad.empty(), bad);
  }
  {
    std::string bad;
    for (const auto& a : sys.roots) {
      if (is_zero(a)) continue;
      for (const auto& b : sys.roots) {
        RVec image = reflect(b, a);
        if (!root_set.count(image)) {
          bad = "s_" + to_string(a) + " maps " + to_string(b) + " to " + to_string(image) + " outside the set";
          break;
        }
      }
      if (!bad.empty()) break;
    }
    add("axiom_ii_reflection_stable", bad.empty(), bad);
  }
  {
    std::string bad;
    for (const auto& a : sys.roots) {
      if (is_zero(a)) continue;
      for (const auto& b : sys.roots) {
        Rational n = 2 * dot(b, a) / dot(a, a);
        if (n.get_den() != 1) {
          bad = "2<" + to_string(b) + "," + to_string(a) + ">/|a|^2 = " + to_string(n);
          break;
        }
      }
      if (!bad.empty()) break;
    }
    add("axiom_iii_integrality", bad.empty(), bad);
  }
  {
    bool has_double = false;
    for (const auto& r : sys.roots)
      if (root_set.count(scale(Rational(2), r))) has_double = true;
    if (sys.type == RootType::kCustom) {
      skip("reducedness");
    } else if (sys.type == RootType::kBC) {
      add("reducedness", has_double, "BC system without proportional pair (a, 2a)");
    } else {
      add("reducedness", !has_double, "reduced type contains a root and its double");
    }
  }
  if (sys.simple_roots.empty()) {
    skip("simple_roots_basis");
    skip("fundamental_weights");
    skip("positive_count");
  } else {
    std::string bad;
    const std::size_t span_rank = rank_of(sys.roots);
    if (rank_of(sys.simple_roots) != sys.simple_roots.size() ||
        span_rank != sys.simple_roots.size() || static_cast<int>(span_rank) != sys.rank) {
      bad = "simple roots do not form a basis of the root span";
    }
    if (bad.empty()) {
      for (const auto& r : sys.roots) {
        RVec c = sys.simple_coordinates(r);
        bool all_int = std::all_of(c.begin(), c.end(), [](const Rational& q) { return q.get_den() == 1; });
        bool nonneg = std::all_of(c.begin(), c.end(), [](const Rational& q) { return sgn(q) >= 0; });
        bool nonpos = std::all_of(c.begin(), c.end(), [](const Rational& q) { return sgn(q) <= 0; });
        if (!all_int || !(nonneg || nonpos)) {
          bad = to_string(r) + " has simple coordinates " + to_string(c);
          break;
        }
      }
    }
    add("simple_roots_basis", bad.empty(), bad);

    std::string wbad;
    if (sys.fundamental_weights.size() != sys.simple_roots.size()) wbad = "wrong number of weights";
    for (std::size_t i = 0; wbad.empty() && i < sys.fundamental_weights.size(); ++i)
      for (std::size_t j = 0; j < sys.simple_roots.size(); ++j) {
        const auto& a = sys.simple_roots[j];
        Rational v = 2 * dot(sys.fundamental_weights[i], a) / dot(a, a);
        if (v != (i == j ? 1 : 0)) {
          wbad = "2<l_" + std::to_string(i + 1) + ", a_" + std::to_string(j + 1) + ">/|a|^2 = " + to_string(v);
          break;
        }
      }
    add("fundamental_weights", wbad.empty(), wbad);
    add("positive_count", sys.positive_roots.size() * 2 == sys.roots.size(),
        std::to_string(sys.positive_roots.size()) + " positive of " + std::to_string(sys.roots.size()));
  }
  if (sys.type == RootType::kCustom) {
    skip("root_count");
  } else {
    const auto expected = expected_root_count(sys.type, sys.rank);
    add("root_count", sys.roots.size() == expected,
        std::to_string(sys.roots.size()) + " roots, expected " + std::to_string(expected));
  }
  return report;
}

namespace {

nlohmann::json rvec_json(const RVec& v) {
  auto arr = nlohmann::json::array();
  for (const auto& q : v) arr.push_back(to_string(q));
  return arr;
}

RVec rvec_from_json(const nlohmann::json& j) {
  RVec v;
  for (const auto& e : j) v.push_back(parse_rational(e.get<std::string>()));
  return v;
}

}  // namespace

std::string to_json(const RootSystem& sys) {
  nlohmann::json j;
  j["type"] = to_string(sys.type);
  j["rank"] = sys.rank;
  j["ambient_dim"] = sys.ambient_dim;
  j["roots"] = nlohmann::json::array();
  for (const auto& r : sys.roots) j["roots"].push_back(rvec_json(r));
  j["simple_root_indices"] = sys.simple_root_indices;
  std::vector<std::size_t> positive;
  for (const auto& p : sys.positive_roots)
    positive.push_back(static_cast<std::size_t>(
        std::lower_bound(sys.roots.begin(), sys.roots.end(), p) - sys.roots.begin()));
  j["positive_root_indices"] = positive;
  j["fundamental_weights"] = nlohmann::json::array();
  for (const auto& w : sys.fundamental_weights) j["fundamental_weights"].push_back(rvec_json(w));
  return j.dump();
}

RootSystem root_system_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    RootSystem sys;
    const auto type_name = j.at("type").get<std::string>();
    sys.rank = j.at("rank").get<int>();
    sys.type = type_name == "custom" ? RootType::kCustom : parse_root_type(type_name, sys.rank);
    sys.ambient_dim = j.at("ambient_dim").get<std::size_t>();
    for (const auto& r : j.at("roots")) sys.roots.push_back(rvec_from_json(r));
    sys.simple_root_indices = j.at("simple_root_indices").get<std::vector<std::size_t>>();
    for (auto i : sys.simple_root_indices) {
      if (i >= sys.roots.size()) throw Error(ErrorCode::kParse, "simple root index out of range");
      sys.simple_roots.push_back(sys.roots[i]);
    }
    for (auto i : j.at("positive_root_indices").get<std::vector<std::size_t>>()) {
      if (i >= sys.roots.size()) throw Error(ErrorCode::kParse, "positive root index out of range");
      sys.positive_roots.push_back(sys.roots[i]);
    }
    for (const auto& w : j.at("fundamental_weights")) sys.fundamental_weights.push_back(rvec_from_json(w));
    return sys;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("root system JSON: ") + e.what());
  }
}

}  // namespace weylforge
