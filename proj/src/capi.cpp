#include "weylforge.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json_util.hpp"
#include "weylforge/classify.hpp"
#include "weylforge/error.hpp"
#include "weylforge/invariants.hpp"
#include "weylforge/norm_io.hpp"
#include "weylforge/normforge.hpp"
#include "weylforge/rootsys.hpp"
#include "weylforge/sampling.hpp"
#include "weylforge/weylgrp.hpp"

struct wf_norm {
  weylforge::Norm norm;
};

namespace {

using namespace weylforge;
using nlohmann::ordered_json;

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
int guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(WF_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WF_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kBadParams, std::string(what) + " is null");
}

NormOptions to_options(const wf_options* o) {
  NormOptions n;
  if (!o) return n;
  n.seed = o->seed;
  n.samples = o->samples;
  n.tolerance = o->tolerance;
  n.fd_points = o->fd_points;
  n.enumeration_cap = o->enumeration_cap;
  if (!(n.tolerance >= 0)) throw Error(ErrorCode::kBadParams, "tolerance must be >= 0");
  return n;
}

std::pair<RootType, int> resolve_type(const char* type, int rank) {
  require(type, "type");
  if (rank < 0) throw Error(ErrorCode::kRankOutOfRange, "rank must be positive");
  const RootType t = parse_root_type(type, rank);
  switch (t) {
    case RootType::kE6: rank = rank ? rank : 6; break;
    case RootType::kE7: rank = rank ? rank : 7; break;
    case RootType::kE8: rank = rank ? rank : 8; break;
    case RootType::kF4: rank = rank ? rank : 4; break;
    case RootType::kG2: rank = rank ? rank : 2; break;
    default: break;
  }
  if (rank == 0) throw Error(ErrorCode::kRankOutOfRange, "rank is required for type " + std::string(type));
  check_admissible(t, rank);
  return {t, rank};
}

ordered_json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Eigen::VectorXd vec(const double* p, std::size_t n) {
  require(p, "point");
  return Eigen::Map<const Eigen::VectorXd>(p, static_cast<Eigen::Index>(n));
}

void check_dim(const wf_norm* norm, std::size_t n) {
  require(norm, "norm");
  if (n != norm->norm.dim())
    throw Error(ErrorCode::kBadParams,
                "point has " + std::to_string(n) + " coordinates, norm has dimension " + std::to_string(norm->norm.dim()));
}

std::map<std::string, double> quality_extras(const Norm& norm, std::size_t samples, std::uint64_t seed) {
  return {{"reversibility_defect", reversibility_defect(norm, samples, seed)},
          {"homogeneity_error", homogeneity_error(norm, samples, seed)}};
}

ordered_json record_json(const std::string& name, const SpaceRecord& r) {
  ordered_json j;
  j["name"] = name;
  j["row"] = r.row;
  j["matched"] = r.matched;
  j["noncompact"] = r.noncompact;
  j["compact"] = r.compact;
  j["weyl"] = r.weyl.name();
  j["rank"] = r.rank();
  j["dim"] = r.dim;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["contains_minus_id"] = minus_id_rule(r.weyl);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace

extern "C" {

void wf_options_init(wf_options* opts) {
  if (!opts) return;
  opts->seed = 42;
  opts->samples = 0;
  opts->tolerance = 1e-8;
  opts->fd_points = 1000;
  opts->enumeration_cap = kDefaultEnumerationCap;
}

const char* wf_last_error(void) { return g_last_error.c_str(); }

const char* wf_status_name(int status) {
  if (status < 0 || status > WF_INTERNAL) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(status));
}

void wf_string_free(char* s) { std::free(s); }

const char* wf_version(void) { return "0.1.0"; }

int wf_weyl_report(const char* type, int rank, uint64_t enumeration_cap, char** out_json) {
  return guarded([&]() -> int {
    require(out_json, "out_json");
    auto [t, l] = resolve_type(type, rank);
    const RootSystem sys = build_root_system(t, l);
    const WeylGroup g = generate_weyl_group(sys, enumeration_cap);
    const auto degrees = chevalley_degrees(t, l);
    long long sum = 0;
    Integer prod = 1;
    for (int m : degrees) {
      sum += m - 1;
      prod *= m;
    }
    ordered_json j;
    j["type"] = to_string(t);
    j["rank"] = l;
    j["system"] = sys.label();
    j["weyl"] = weyl_label_of(t, l).name();
    j["ambient_dim"] = sys.ambient_dim;
    j["order"] = integer_json(g.order());
    j["enumerated"] = g.enumerated();
    j["contains_minus_id"] = g.contains_minus_id();
    j["degrees"] = degrees;
    j["roots"] = sys.roots.size();
    j["positive_roots"] = sys.positive_roots.size();
    j["sum_degrees_minus_one"] = sum;
    j["degree_sum_check"] = sum == static_cast<long long>(sys.positive_roots.size());
    j["degree_product_check"] = prod == g.order();
    *out_json = dup_string(detail::dump_json(j));
    return WF_OK;
  });
}

int wf_root_system_json(const char* type, int rank, char** out_json) {
  return guarded([&]() -> int {
    require(out_json, "out_json");
    auto [t, l] = resolve_type(type, rank);
    *out_json = dup_string(to_json(build_root_system(t, l)));
    return WF_OK;
  });
}

int wf_invariants_report(const char* type, int rank, const wf_options* opts, int expand, char** out_json) {
  return guarded([&]() -> int {
    require(out_json, "out_json");
    const NormOptions o = to_options(opts);
    auto [t, l] = resolve_type(type, rank);
    const RootSystem sys = build_root_system(t, l);
    const WeylGroup g = generate_weyl_group(sys, o.enumeration_cap);
    const auto gens = homogeneous_generators(g, o.orbit_cap);
    const auto jac = jacobian_independence_test(g, gens, 2, o.seed);
    ordered_json j;
    j["type"] = to_string(t);
    j["rank"] = l;
    j["system"] = sys.label();
    j["degrees"] = chevalley_degrees(t, l);
    ordered_json arr = ordered_json::array();
    for (const auto& p : gens) {
      ordered_json e;
      e["degree"] = p.degree();
      e["weight_index"] = p.weight_index() + 1;
      e["orbit_size"] = p.orbit().size();
      e["multiplicity"] = integer_json(p.multiplicity());
      e["parity"] = p.parity() == Parity::kOdd ? "odd" : "even";
      e["description"] = p.describe();
      if (expand) e["expanded"] = p.expand().to_string();
      arr.push_back(e);
    }
    j["generators"] = arr;
    ordered_json jj;
    jj["passed"] = jac.passed;
    jj["nonzero_at_regular"] = jac.nonzero_at_regular;
    jj["vanishes_on_hyperplanes"] = jac.vanishes_on_hyperplanes;
    jj["ratio_constant"] = jac.ratio_constant;
    jj["ratio"] = jac.ratio.get_str();
    jj["regular_samples"] = jac.regular_samples;
    jj["hyperplane_samples"] = jac.hyperplane_samples;
    j["jacobian"] = jj;
    j["contains_minus_id"] = g.contains_minus_id();
    j["skew_invariants_exist"] = skew_invariants_exist(g);
    *out_json = dup_string(detail::dump_json(j));
    return WF_OK;
  });
}

int wf_norm_build(const char* spec_json, const wf_options* opts, wf_norm** out_norm, char** out_certificate_json) {
  return guarded([&]() -> int {
    require(spec_json, "spec_json");
    require(out_norm, "out_norm");
    require(out_certificate_json, "out_certificate_json");
    *out_norm = nullptr;
    *out_certificate_json = nullptr;
    const NormOptions o = to_options(opts);
    BuildResult res = build_norm(parse_norm_spec(spec_json), o);
    const auto extras = quality_extras(res.norm, res.certificate.sample_count, o.seed);
    std::string cert = certificate_to_json(res.certificate, extras);
    auto* n = new wf_norm{std::move(res.norm)};
    *out_norm = n;
    *out_certificate_json = dup_string(cert);
    if (!res.certificate.pass || !res.certificate.fd_agreement)
      return fail(WF_CONVEXITY_FAIL, !res.certificate.pass ? "convexity certificate failed"
                                                            : "finite-difference cross-check failed");
    return WF_OK;
  });
}

int wf_norm_load(const char* norm_json, const wf_options* opts, wf_norm** out_norm) {
  return guarded([&]() -> int {
    require(norm_json, "norm_json");
    require(out_norm, "out_norm");
    *out_norm = nullptr;
    *out_norm = new wf_norm{load_norm(norm_json, to_options(opts))};
    return WF_OK;
  });
}

void wf_norm_free(wf_norm* norm) { delete norm; }

int wf_norm_to_json(const wf_norm* norm, char** out_json) {
  return guarded([&]() -> int {
    require(norm, "norm");
    require(out_json, "out_json");
    *out_json = dup_string(norm_to_json(norm->norm));
    return WF_OK;
  });
}

int wf_norm_describe(const wf_norm* norm, char** out_text) {
  return guarded([&]() -> int {
    require(norm, "norm");
    require(out_text, "out_text");
    *out_text = dup_string(norm->norm.describe());
    return WF_OK;
  });
}

size_t wf_norm_dim(const wf_norm* norm) { return norm ? norm->norm.dim() : 0; }

size_t wf_norm_ambient_dim(const wf_norm* norm) { return norm ? norm->norm.ambient_dim() : 0; }

int wf_norm_certify(const wf_norm* norm, const wf_options* opts, char** out_certificate_json, int* passed) {
  return guarded([&]() -> int {
    require(norm, "norm");
    require(out_certificate_json, "out_certificate_json");
    const NormOptions o = to_options(opts);
    const std::size_t samples = o.samples ? o.samples : default_sample_count(norm->norm.dim());
    const auto cert = certify(norm->norm, samples, o.tolerance, o.seed, o.fd_points);
    *out_certificate_json = dup_string(certificate_to_json(cert, quality_extras(norm->norm, samples, o.seed)));
    const bool ok = cert.pass && cert.fd_agreement;
    if (passed) *passed = ok ? 1 : 0;
    return WF_OK;
  });
}

int wf_norm_eval(const wf_norm* norm, const double* y, size_t n, double* out_value) {
  return guarded([&]() -> int {
    check_dim(norm, n);
    require(out_value, "out_value");
    *out_value = norm->norm.evaluate(vec(y, n));
    return WF_OK;
  });
}

int wf_norm_gradient(const wf_norm* norm, const double* y, size_t n, double* out_gradient) {
  return guarded([&]() -> int {
    check_dim(norm, n);
    require(out_gradient, "out_gradient");
    const Eigen::VectorXd g = norm->norm.gradient(vec(y, n));
    for (std::size_t i = 0; i < n; ++i) out_gradient[i] = g(static_cast<Eigen::Index>(i));
    return WF_OK;
  });
}

int wf_norm_tensor(const wf_norm* norm, const double* y, size_t n, double* out_tensor) {
  return guarded([&]() -> int {
    check_dim(norm, n);
    require(out_tensor, "out_tensor");
    const Eigen::MatrixXd g = norm->norm.fundamental_tensor(vec(y, n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        out_tensor[r * n + c] = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return WF_OK;
  });
}

int wf_norm_to_frame(const wf_norm* norm, const double* ambient, size_t n, double* out_y) {
  return guarded([&]() -> int {
    require(norm, "norm");
    require(out_y, "out_y");
    if (n != norm->norm.ambient_dim()) throw Error(ErrorCode::kBadParams, "point does not match the ambient dimension");
    const Eigen::VectorXd y = norm->norm.to_frame(vec(ambient, n));
    for (Eigen::Index i = 0; i < y.size(); ++i) out_y[i] = y(i);
    return WF_OK;
  });
}

int wf_norm_distance(const wf_norm* norm, const double* x, const double* y, size_t n, double* out) {
  return guarded([&]() -> int {
    check_dim(norm, n);
    require(out, "out");
    *out = flat_distance(norm->norm, vec(x, n), vec(y, n));
    return WF_OK;
  });
}

int wf_norm_reversibility_defect(const wf_norm* norm, size_t samples, uint64_t seed, double* out) {
  return guarded([&]() -> int {
    require(norm, "norm");
    require(out, "out");
    if (samples == 0) samples = default_sample_count(norm->norm.dim());
    *out = reversibility_defect(norm->norm, samples, seed);
    return WF_OK;
  });
}

int wf_orbit_project(const double* matrix, size_t n, const wf_norm* norm_or_null, char** out_json) {
  return guarded([&]() -> int {
    require(matrix, "matrix");
    require(out_json, "out_json");
    if (n == 0) throw Error(ErrorCode::kBadParams, "empty matrix");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = matrix[r * n + c];
    const Eigen::VectorXd s = descending_spectrum(x);
    ordered_json j;
    j["n"] = n;
    j["spectrum"] = std::vector<double>(s.data(), s.data() + s.size());
    if (norm_or_null) j["norm_value"] = extend_A_family(norm_or_null->norm, x);
    *out_json = dup_string(detail::dump_json(j));
    return WF_OK;
  });
}

int wf_classify(const char* const* names, size_t count, size_t euclidean_dim, size_t nonsymmetric, char** out_json) {
  return guarded([&]() -> int {
    require(out_json, "out_json");
    if (count > 0) require(names, "names");
    DeRhamDecomposition d;
    d.euclidean_dim = euclidean_dim;
    d.nonsymmetric = nonsymmetric;
    ordered_json factors = ordered_json::array();
    std::string label;
    Integer order = 1;
    long long dim = static_cast<long long>(euclidean_dim);
    auto join = [&label](const std::string& s) { label += (label.empty() ? "" : " x ") + s; };
    for (std::size_t i = 0; i < count; ++i) {
      require(names[i], "name");
      d.symmetric.push_back(lookup(names[i]));
      factors.push_back(record_json(names[i], d.symmetric.back()));
      join(d.symmetric.back().weyl.name());
      order *= weyl_order(d.symmetric.back().weyl);
      dim += d.symmetric.back().dim;
    }
    for (std::size_t i = 0; i < nonsymmetric; ++i) {
      join("A1");
      order *= 2;
    }
    if (euclidean_dim > 0) join("1^" + std::to_string(euclidean_dim));
    ordered_json j;
    j["factors"] = factors;
    j["euclidean_dim"] = euclidean_dim;
    j["nonsymmetric"] = nonsymmetric;
    j["weyl"] = label;
    j["weyl_order"] = integer_json(order);
    j["rank"] = rank(d);
    if (nonsymmetric == 0) {
      j["dim"] = dim;
    } else {
      j["dim"] = nullptr;  // unknown for non-symmetric factors
    }
    j["nonriemannian_metrizable"] = nonriemannian_berwald_metrizable(d);
    j["irreversible_metrizable"] = irreversible_metrizable(d);
    if (nonsymmetric == 0) {
      j["cartan_symmetric_if_absolute"] = cartan_symmetric(d, NormMode::kAbsolute);
    } else {
      j["cartan_symmetric_if_absolute"] = nullptr;
    }
    *out_json = dup_string(detail::dump_json(j));
    return WF_OK;
  });
}

int wf_classify_dump(char** out_json) {
  return guarded([&]() -> int {
    require(out_json, "out_json");
    *out_json = dup_string(table_json());
    return WF_OK;
  });
}

int wf_classify_lists(char** out_json) {
  return guarded([&]() -> int {
    require(out_json, "out_json");
    ordered_json j;
    j["rank_one"] = rank_one_list();
    ordered_json iso = ordered_json::array();
    for (const auto& name : rank_one_isolated()) {
      ordered_json e;
      e["name"] = name;
      for (const auto& r : rank_one_isomorphisms())
        if (r.name == name) e["same_as"] = r.same_as;
      iso.push_back(e);
    }
    j["rank_one_isolated"] = iso;
    ordered_json skew = ordered_json::array();
    for (const auto& s : irreversible_list()) {
      ordered_json e;
      e["row"] = s.row;
      e["noncompact"] = s.noncompact;
      e["compact"] = s.compact;
      e["condition"] = s.condition;
      skew.push_back(e);
    }
    j["irreversible"] = skew;
    *out_json = dup_string(detail::dump_json(j));
    return WF_OK;
  });
}

}  // extern "C"
