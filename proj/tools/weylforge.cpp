// weylforge command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weylforge.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitCertificate = 3;
constexpr int kExitDegenerate = 4;

struct Config {
  std::uint64_t seed = 42;
  std::size_t samples = 0;
  double tolerance = 1e-8;
  std::size_t fd_points = 1000;
  std::uint64_t cap = 10'000'000;
  bool json = false;
};

// Thrown by helpers; carries the process exit code.
struct Exit {
  int code;
};

int exit_code_for(int status) {
  switch (status) {
    case WF_OK: return 0;
    case WF_CONVEXITY_FAIL:
    case WF_NOT_POSITIVE: return kExitCertificate;
    case WF_DEGENERATE_SAMPLE:
    case WF_NON_FINITE_HESSIAN:
    case WF_ORBIT_CAP_EXCEEDED:
    case WF_NO_VALID_ASSIGNMENT: return kExitDegenerate;
    case WF_INTERNAL: return 1;
    default: return kExitUsage;
  }
}

void check(int status) {
  if (status == WF_OK) return;
  std::fprintf(stderr, "error: %s: %s\n", wf_status_name(status), wf_last_error());
  throw Exit{exit_code_for(status)};
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  throw Exit{kExitUsage};
}

struct CString {
  char* p = nullptr;
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { wf_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct NormHandle {
  wf_norm* p = nullptr;
  NormHandle() = default;
  NormHandle(NormHandle&& o) noexcept : p(o.p) { o.p = nullptr; }
  NormHandle(const NormHandle&) = delete;
  NormHandle& operator=(const NormHandle&) = delete;
  ~NormHandle() { wf_norm_free(p); }
};

wf_options options(const Config& c) {
  wf_options o;
  wf_options_init(&o);
  o.seed = c.seed;
  o.samples = c.samples;
  o.tolerance = c.tolerance;
  o.fd_points = c.fd_points;
  o.enumeration_cap = c.cap;
  return o;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) usage_error("cannot write " + path);
  out << text << '\n';
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(x))
      usage_error("bad number '" + item + "' in '" + text + "'");
    v.push_back(x);
  }
  if (v.empty()) usage_error("empty vector");
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

NormHandle load(const std::string& path, const Config& cfg) {
  const std::string text = read_file(path);
  const wf_options o = options(cfg);
  NormHandle h;
  check(wf_norm_load(text.c_str(), &o, &h.p));
  return h;
}

void print_certificate(const std::string& cert_json) {
  const auto c = ordered_json::parse(cert_json);
  std::printf("verdict              %s\n", c["verdict"].get<std::string>().c_str());
  std::printf("samples              %s\n", c["sample_count"].dump().c_str());
  std::printf("min eigenvalue       %s\n", c["min_eigenvalue"].dump().c_str());
  std::printf("gamma used           %s\n", c["gamma_used"].dump().c_str());
  std::printf("tolerance            %s\n", c["tolerance"].dump().c_str());
  std::printf("fd max rel. error    %s (%s points, %s)\n", c["fd_max_relative_error"].dump().c_str(),
              c["fd_points"].dump().c_str(), c["fd_agreement"].get<bool>() ? "agree" : "DISAGREE");
  if (c.contains("reversibility_defect"))
    std::printf("reversibility defect %s\n", c["reversibility_defect"].dump().c_str());
  if (c.contains("homogeneity_error"))
    std::printf("homogeneity error    %s\n", c["homogeneity_error"].dump().c_str());
  std::printf("seed                 %s\n", c["seed"].dump().c_str());
  if (c["verdict"] != "pass" || !c["fd_agreement"].get<bool>())
    std::printf("worst point          %s\n", c["worst_point"].dump().c_str());
}

// ------------------------------------------------------------ subcommands

int cmd_weyl(const Config& cfg, const std::string& type, int rank, bool roots) {
  CString out;
  if (roots) {
    check(wf_root_system_json(type.c_str(), rank, &out.p));
    std::printf("%s\n", out.p);
    return 0;
  }
  check(wf_weyl_report(type.c_str(), rank, cfg.cap, &out.p));
  if (cfg.json) {
    std::printf("%s\n", out.p);
    return 0;
  }
  const auto j = ordered_json::parse(out.str());
  std::printf("group      %s (root system %s, ambient dimension %s)\n", j["weyl"].get<std::string>().c_str(),
              j["system"].get<std::string>().c_str(), j["ambient_dim"].dump().c_str());
  std::printf("order      %s%s\n", j["order"].is_string() ? j["order"].get<std::string>().c_str() : j["order"].dump().c_str(),
              j["enumerated"].get<bool>() ? " (enumerated)" : " (formula; over the enumeration cap)");
  std::printf("minus_id   %s\n", yes_no(j["contains_minus_id"].get<bool>()).c_str());
  std::printf("degrees    %s\n", j["degrees"].dump().c_str());
  std::printf("positive   %s roots\n", j["positive_roots"].dump().c_str());
  std::printf("check      sum(m_i - 1) = %s, |positive roots| = %s: %s\n", j["sum_degrees_minus_one"].dump().c_str(),
              j["positive_roots"].dump().c_str(), j["degree_sum_check"].get<bool>() ? "ok" : "MISMATCH");
  return 0;
}

int cmd_invariants(const Config& cfg, const std::string& type, int rank, bool expand) {
  CString out;
  const wf_options o = options(cfg);
  check(wf_invariants_report(type.c_str(), rank, &o, expand ? 1 : 0, &out.p));
  const auto j = ordered_json::parse(out.str());
  if (cfg.json) {
    std::printf("%s\n", out.p);
    return j["jacobian"]["passed"].get<bool>() ? 0 : kExitDegenerate;
  }
  std::printf("%s: degrees %s\n", j["system"].get<std::string>().c_str(), j["degrees"].dump().c_str());
  for (const auto& g : j["generators"]) {
    std::printf("  degree %-3s %s\n", g["degree"].dump().c_str(), g["description"].get<std::string>().c_str());
    if (g.contains("expanded")) std::printf("      = %s\n", g["expanded"].get<std::string>().c_str());
  }
  const auto& jac = j["jacobian"];
  std::printf("jacobian test: %s (J / prod(alpha) = %s)\n", jac["passed"].get<bool>() ? "pass" : "FAIL",
              jac["ratio"].get<std::string>().c_str());
  std::printf("skew invariants exist: %s\n", yes_no(j["skew_invariants_exist"].get<bool>()).c_str());
  return jac["passed"].get<bool>() ? 0 : kExitDegenerate;
}

std::string stem_of(const std::string& path) {
  std::string s = path;
  for (const std::string ext : {".json", ".spec"})
    if (s.size() > ext.size() && s.compare(s.size() - ext.size(), ext.size(), ext) == 0) s.resize(s.size() - ext.size());
  return s;
}

int cmd_build(const Config& cfg, const std::string& spec_path, std::string out_path, std::string cert_path) {
  const std::string text = read_file(spec_path);
  const std::string stem = spec_path == "-" ? "norm" : stem_of(spec_path);
  if (out_path.empty()) out_path = stem + ".norm.json";
  if (cert_path.empty()) cert_path = stem + ".cert.json";
  const wf_options o = options(cfg);
  NormHandle h;
  CString cert;
  const int status = wf_norm_build(text.c_str(), &o, &h.p, &cert.p);
  if (status != WF_OK && status != WF_CONVEXITY_FAIL) check(status);
  CString norm_json;
  check(wf_norm_to_json(h.p, &norm_json.p));
  write_file(out_path, norm_json.str());
  write_file(cert_path, cert.str());
  if (cfg.json) {
    std::printf("%s\n", cert.p);
  } else {
    CString desc;
    check(wf_norm_describe(h.p, &desc.p));
    std::printf("norm                 %s\n", desc.p);
    print_certificate(cert.str());
    std::printf("wrote %s and %s\n", out_path.c_str(), cert_path.c_str());
  }
  if (status != WF_OK) {
    std::fprintf(stderr, "error: %s: %s\n", wf_status_name(status), wf_last_error());
    return kExitCertificate;
  }
  return 0;
}

int cmd_certify(const Config& cfg, const std::string& path) {
  NormHandle h = load(path, cfg);
  const wf_options o = options(cfg);
  CString cert;
  int passed = 0;
  check(wf_norm_certify(h.p, &o, &cert.p, &passed));
  if (cfg.json)
    std::printf("%s\n", cert.p);
  else
    print_certificate(cert.str());
  return passed ? 0 : kExitCertificate;
}

int cmd_eval(const Config& cfg, const std::string& path, const std::string& at, bool ambient) {
  NormHandle h = load(path, cfg);
  std::vector<double> y = parse_vector(at);
  if (ambient) {
    std::vector<double> f(wf_norm_dim(h.p));
    check(wf_norm_to_frame(h.p, y.data(), y.size(), f.data()));
    y = f;
  }
  const std::size_t n = y.size();
  double value = 0;
  check(wf_norm_eval(h.p, y.data(), n, &value));
  std::vector<double> grad(n), tensor(n * n);
  check(wf_norm_gradient(h.p, y.data(), n, grad.data()));
  check(wf_norm_tensor(h.p, y.data(), n, tensor.data()));
  if (cfg.json) {
    ordered_json j;
    j["point"] = y;
    j["value"] = value;
    j["gradient"] = grad;
    ordered_json t = ordered_json::array();
    for (std::size_t r = 0; r < n; ++r) t.push_back(std::vector<double>(tensor.begin() + r * n, tensor.begin() + (r + 1) * n));
    j["tensor"] = t;
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  std::printf("point    %s\n", fmt(y).c_str());
  std::printf("L        %s\n", fmt(value).c_str());
  std::printf("gradient %s\n", fmt(grad).c_str());
  std::printf("g_ij\n");
  for (std::size_t r = 0; r < n; ++r)
    std::printf("  %s\n", fmt(std::vector<double>(tensor.begin() + r * n, tensor.begin() + (r + 1) * n)).c_str());
  return 0;
}

int cmd_distance(const Config& cfg, const std::string& path, const std::string& from, const std::string& to,
                 bool both) {
  NormHandle h = load(path, cfg);
  const auto x = parse_vector(from);
  const auto y = parse_vector(to);
  if (x.size() != y.size()) usage_error("--from and --to have different lengths");
  double d = 0, back = 0;
  check(wf_norm_distance(h.p, x.data(), y.data(), x.size(), &d));
  if (both) check(wf_norm_distance(h.p, y.data(), x.data(), x.size(), &back));
  if (cfg.json) {
    ordered_json j;
    j["from"] = x;
    j["to"] = y;
    j["distance"] = d;
    if (both) {
      j["reverse_distance"] = back;
      j["asymmetry"] = d - back;
    }
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  std::printf("d(x, y) = %s\n", fmt(d).c_str());
  if (both) std::printf("d(y, x) = %s\n", fmt(back).c_str());
  return 0;
}

int cmd_orbit_project(const Config& cfg, const std::string& matrix, const std::string& norm_path) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(matrix);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_vector(row));
  const std::size_t n = rows.size();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != n) usage_error("matrix must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  std::optional<NormHandle> h;
  if (!norm_path.empty()) h.emplace(load(norm_path, cfg));
  CString out;
  check(wf_orbit_project(flat.data(), n, h ? h->p : nullptr, &out.p));
  if (cfg.json) {
    std::printf("%s\n", out.p);
    return 0;
  }
  const auto j = ordered_json::parse(out.str());
  std::printf("spectrum %s\n", fmt(j["spectrum"].get<std::vector<double>>()).c_str());
  if (j.contains("norm_value")) std::printf("L        %s\n", fmt(j["norm_value"].get<double>()).c_str());
  return 0;
}

int cmd_classify(const Config& cfg, const std::vector<std::string>& names, std::size_t euclidean,
                 std::size_t nonsymmetric, bool dump, bool lists) {
  CString out;
  if (dump) {
    check(wf_classify_dump(&out.p));
    std::fputs(out.p, stdout);
    return 0;
  }
  if (lists) {
    check(wf_classify_lists(&out.p));
    if (cfg.json) {
      std::printf("%s\n", out.p);
      return 0;
    }
    const auto j = ordered_json::parse(out.str());
    std::printf("rank one (families):\n");
    for (const auto& s : j["rank_one"]) std::printf("  %s\n", s.get<std::string>().c_str());
    std::printf("rank one (isolated parameter values):\n");
    for (const auto& s : j["rank_one_isolated"])
      std::printf("  %-22s = %s\n", s["name"].get<std::string>().c_str(), s.value("same_as", "").c_str());
    std::printf("irreversible metrics:\n");
    for (const auto& s : j["irreversible"])
      std::printf("  %-26s %-28s %s\n", s["noncompact"].get<std::string>().c_str(),
                  s["compact"].get<std::string>().c_str(), s["condition"].get<std::string>().c_str());
    return 0;
  }
  if (names.empty() && euclidean == 0 && nonsymmetric == 0) usage_error("classify needs a space name, --dump or --lists");
  std::vector<const char*> ptrs;
  for (const auto& n : names) ptrs.push_back(n.c_str());
  check(wf_classify(ptrs.data(), ptrs.size(), euclidean, nonsymmetric, &out.p));
  if (cfg.json) {
    std::printf("%s\n", out.p);
    return 0;
  }
  const auto j = ordered_json::parse(out.str());
  for (const auto& f : j["factors"]) {
    std::printf("%s: row %s, %s = %s, Weyl %s, rank %s, dim %s\n", f["name"].get<std::string>().c_str(),
                f["row"].dump().c_str(), f["noncompact"].get<std::string>().c_str(),
                f["compact"].get<std::string>().c_str(), f["weyl"].get<std::string>().c_str(),
                f["rank"].dump().c_str(), f["dim"].dump().c_str());
    if (f.contains("note")) std::printf("  note: %s\n", f["note"].get<std::string>().c_str());
  }
  std::printf("weyl                          %s (order %s)\n", j["weyl"].get<std::string>().c_str(),
              j["weyl_order"].dump().c_str());
  std::printf("rank                          %s\n", j["rank"].dump().c_str());
  std::printf("dim                           %s\n", j["dim"].is_null() ? "unknown" : j["dim"].dump().c_str());
  std::printf("nonriemannian_metrizable      %s\n", yes_no(j["nonriemannian_metrizable"].get<bool>()).c_str());
  std::printf("irreversible_metrizable       %s\n", yes_no(j["irreversible_metrizable"].get<bool>()).c_str());
  std::printf("cartan_symmetric_if_absolute  %s\n",
              j["cartan_symmetric_if_absolute"].is_null() ? "n/a (non-symmetric factor)"
                                                          : yes_no(j["cartan_symmetric_if_absolute"].get<bool>()).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylforge: Weyl groups, invariant polynomials and Berwald-type Minkowski norms"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Config cfg;
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", cfg.seed, "seed for every sampled quantity");
  app.add_option("--samples", cfg.samples, "sphere samples for certificates (default grows with dimension)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tolerance, "eigenvalue floor for certificates")->check(CLI::PositiveNumber);
  app.add_option("--fd-points", cfg.fd_points, "finite-difference cross-check points");
  app.add_option("--cap", cfg.cap, "enumeration cap for Weyl groups")->envname("WEYLFORGE_CAP")->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json, "machine-readable output");

  std::string type, spec, norm, out, cert, at, from, to, matrix;
  int rank = 0;
  bool roots = false, expand = false, ambient = false, both = false, dump = false, lists = false;
  std::vector<std::string> names;
  std::size_t euclidean = 0, nonsym = 0;

  auto* weyl = app.add_subcommand("weyl", "order, -id, degrees and root counts of a Weyl group");
  weyl->add_option("type", type, "A, B, C, BC, D, E6, E7, E8, F4, G2")->required();
  weyl->add_option("rank", rank, "rank (optional for exceptional types)");
  weyl->add_flag("--roots", roots, "print the root system instead");

  auto* inv = app.add_subcommand("invariants", "basic invariant polynomials and the Jacobian test");
  inv->add_option("type", type)->required();
  inv->add_option("rank", rank);
  inv->add_flag("--expand", expand, "expand each generator in the ambient coordinates");

  auto* build = app.add_subcommand("build-norm", "resolve, compile and certify a norm spec");
  build->add_option("spec", spec, "spec file (JSON), - for stdin")->required();
  build->add_option("-o,--out", out, "compiled norm file (default <spec>.norm.json)");
  build->add_option("--cert", cert, "certificate file (default <spec>.cert.json)");

  auto* certify = app.add_subcommand("certify", "re-certify a compiled norm");
  certify->add_option("norm", norm)->required();

  auto* eval = app.add_subcommand("eval", "L, its gradient and the fundamental tensor at a point");
  eval->add_option("norm", norm)->required();
  eval->add_option("--at", at, "comma-separated point")->required();
  eval->add_flag("--ambient", ambient, "the point is in ambient coordinates");

  auto* dist = app.add_subcommand("distance", "flat distance d(x, y) = L(y - x)");
  dist->add_option("norm", norm)->required();
  dist->add_option("--from", from)->required();
  dist->add_option("--to", to)->required();
  dist->add_flag("--both-orders", both, "also print d(y, x)");

  auto* proj = app.add_subcommand("orbit-project", "descending spectrum of a symmetric traceless matrix");
  proj->add_option("--matrix", matrix, "rows separated by ';', entries by ','")->required();
  proj->add_option("--norm", norm, "norm on the A_{n-1} Cartan space to evaluate on the spectrum");

  auto* cls = app.add_subcommand("classify", "symmetric-space lookup and metrizability questions");
  cls->add_option("names", names, "symmetric factors of a de Rham decomposition");
  cls->add_option("--euclidean", euclidean, "dimension of the flat factor");
  cls->add_option("--nonsymmetric", nonsym, "number of non-symmetric irreducible factors");
  cls->add_flag("--dump", dump, "print the embedded table");
  cls->add_flag("--lists", lists, "print the rank-one and irreversible lists");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*weyl) return cmd_weyl(cfg, type, rank, roots);
    if (*inv) return cmd_invariants(cfg, type, rank, expand);
    if (*build) return cmd_build(cfg, spec, out, cert);
    if (*certify) return cmd_certify(cfg, norm);
    if (*eval) return cmd_eval(cfg, norm, at, ambient);
    if (*dist) return cmd_distance(cfg, norm, from, to, both);
    if (*proj) return cmd_orbit_project(cfg, matrix, norm);
    if (*cls) return cmd_classify(cfg, names, euclidean, nonsym, dump, lists);
  } catch (const Exit& e) {
    return e.code;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: unexpected library output: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
