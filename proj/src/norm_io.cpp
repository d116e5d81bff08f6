#include "weylforge/norm_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "json_util.hpp"
#include "weylforge/error.hpp"

namespace weylforge {

using json = nlohmann::ordered_json;

namespace detail {

namespace {

void write(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  write(j, out);
  return out;
}

}  // namespace detail

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::kBadParams, "norm spec: " + msg); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema(where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) schema("unknown key '" + it.key() + "' in " + where);
}

double num(const json& j, const std::string& what) {
  if (!j.is_number()) schema(what + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<int>();
}

std::optional<double> num_or_auto(const json& j, const std::string& what) {
  if (j.is_string() && j.get<std::string>() == "auto") return std::nullopt;
  return num(j, what);
}

std::optional<std::size_t> weight(const json& obj, const std::string& where) {
  if (!obj.contains("weight_index")) return std::nullopt;
  int w = integer(obj["weight_index"], where + ".weight_index");
  if (w < 1) schema(where + ".weight_index is 1-based");
  return static_cast<std::size_t>(w - 1);
}

json auto_or(const std::optional<double>& v) { return v ? json(*v) : json("auto"); }

}  // namespace

NormSpec parse_norm_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (root.is_object() && root.contains("format")) {
    if (root["format"] != "weylforge-norm" || !root.contains("spec")) schema("unrecognized file format");
    root = root["spec"];
  }
  only_keys(root, "spec", {"mode", "group", "terms", "averages", "odd", "gamma", "product"});
  NormSpec s;
  if (root.contains("mode")) {
    const auto& m = root["mode"];
    if (m == "absolute") s.mode = NormMode::kAbsolute;
    else if (m == "positive") s.mode = NormMode::kPositive;
    else schema("mode must be \"absolute\" or \"positive\"");
  }
  if (root.contains("group")) {
    const auto& g = root["group"];
    only_keys(g, "group", {"type", "rank"});
    if (!g.contains("type") || !g["type"].is_string()) schema("group.type must be a string");
    int rank = g.contains("rank") ? integer(g["rank"], "group.rank") : 0;
    GroupRef ref;
    ref.type = parse_root_type(g["type"].get<std::string>(), rank);
    if (!g.contains("rank")) {
      switch (ref.type) {
        case RootType::kE6: rank = 6; break;
        case RootType::kE7: rank = 7; break;
        case RootType::kE8: rank = 8; break;
        case RootType::kF4: rank = 4; break;
        case RootType::kG2: rank = 2; break;
        default: schema("group.rank is required for classical types");
      }
    }
    ref.rank = rank;
    s.group = ref;
  }
  if (root.contains("terms")) {
    if (!root["terms"].is_array()) schema("terms must be an array");
    for (const auto& t : root["terms"]) {
      only_keys(t, "term", {"degree", "weight_index", "k", "c", "positivity"});
      TermSpec ts;
      if (!t.contains("degree") || !t.contains("k")) schema("term needs degree and k");
      ts.degree = integer(t["degree"], "term.degree");
      ts.k = integer(t["k"], "term.k");
      ts.weight_index = weight(t, "term");
      if (t.contains("c")) ts.c = num(t["c"], "term.c");
      if (t.contains("positivity")) ts.positivity = num_or_auto(t["positivity"], "term.positivity");
      s.terms.push_back(ts);
    }
  }
  if (root.contains("averages")) {
    if (!root["averages"].is_array()) schema("averages must be an array");
    for (const auto& a : root["averages"]) {
      only_keys(a, "average", {"p", "weights", "c"});
      AverageTermSpec as;
      if (a.contains("p")) as.p = integer(a["p"], "average.p");
      if (!a.contains("weights") || !a["weights"].is_array()) schema("average needs a weights array");
      for (const auto& w : a["weights"]) as.weights.push_back(num(w, "average weight"));
      if (a.contains("c")) as.c = num(a["c"], "average.c");
      s.averages.push_back(as);
    }
  }
  if (root.contains("odd")) {
    const auto& o = root["odd"];
    only_keys(o, "odd", {"degree_k", "weight_index", "amplitude", "c", "d", "coefficient"});
    OddSpec os;
    if (o.contains("degree_k")) os.degree_k = integer(o["degree_k"], "odd.degree_k");
    os.weight_index = weight(o, "odd");
    if (o.contains("amplitude")) os.amplitude = num(o["amplitude"], "odd.amplitude");
    if (o.contains("c")) os.c = num_or_auto(o["c"], "odd.c");
    if (o.contains("d")) os.d = num_or_auto(o["d"], "odd.d");
    if (o.contains("coefficient")) os.coefficient = num(o["coefficient"], "odd.coefficient");
    s.odd = os;
  }
  if (root.contains("gamma")) s.gamma = num_or_auto(root["gamma"], "gamma");
  if (root.contains("product")) {
    const auto& p = root["product"];
    only_keys(p, "product", {"c1", "c2", "p", "dims", "scales"});
    ProductSpec ps;
    if (p.contains("c1")) ps.c1 = num(p["c1"], "product.c1");
    if (p.contains("c2")) ps.c2 = num(p["c2"], "product.c2");
    if (p.contains("p")) ps.p = num(p["p"], "product.p");
    if (!p.contains("dims") || !p["dims"].is_array()) schema("product needs a dims array");
    for (const auto& d : p["dims"]) {
      int v = integer(d, "product dim");
      if (v < 1) schema("product dims must be positive");
      ps.dims.push_back(static_cast<std::size_t>(v));
    }
    if (p.contains("scales")) {
      if (!p["scales"].is_array()) schema("product.scales must be an array");
      for (const auto& x : p["scales"]) ps.scales.push_back(num(x, "product scale"));
    }
    s.product = ps;
  }
  return s;
}

namespace {

json spec_json(const NormSpec& s) {
  json j;
  j["mode"] = s.mode == NormMode::kPositive ? "positive" : "absolute";
  if (s.group) j["group"] = {{"type", to_string(s.group->type)}, {"rank", s.group->rank}};
  if (!s.terms.empty()) {
    j["terms"] = json::array();
    for (const auto& t : s.terms) {
      json tj;
      tj["degree"] = t.degree;
      if (t.weight_index) tj["weight_index"] = *t.weight_index + 1;
      tj["k"] = t.k;
      tj["c"] = t.c;
      tj["positivity"] = auto_or(t.positivity);
      j["terms"].push_back(tj);
    }
  }
  if (!s.averages.empty()) {
    j["averages"] = json::array();
    for (const auto& a : s.averages) j["averages"].push_back({{"p", a.p}, {"weights", a.weights}, {"c", a.c}});
  }
  if (s.odd) {
    const auto& o = *s.odd;
    json oj;
    oj["degree_k"] = o.degree_k;
    if (o.weight_index) oj["weight_index"] = *o.weight_index + 1;
    oj["amplitude"] = o.amplitude;
    oj["c"] = auto_or(o.c);
    oj["d"] = auto_or(o.d);
    oj["coefficient"] = o.coefficient;
    j["odd"] = oj;
  }
  j["gamma"] = auto_or(s.gamma);
  if (s.product) {
    const auto& p = *s.product;
    json pj;
    pj["c1"] = p.c1;
    pj["c2"] = p.c2;
    pj["p"] = p.p;
    pj["dims"] = p.dims;
    if (!p.scales.empty()) pj["scales"] = p.scales;
    j["product"] = pj;
  }
  return j;
}

}  // namespace

std::string norm_spec_to_json(const NormSpec& spec) { return detail::dump_json(spec_json(spec)); }

std::string norm_to_json(const Norm& norm) {
  json j;
  j["format"] = "weylforge-norm";
  j["version"] = 1;
  j["mode"] = norm.mode() == NormMode::kPositive ? "positive" : "absolute";
  j["dim"] = norm.dim();
  j["ambient_dim"] = norm.ambient_dim();
  if (norm.group()) j["group"] = norm.group()->label();
  j["gamma"] = norm.gamma();
  j["spec"] = spec_json(norm.spec());
  json frame = json::array();
  for (Eigen::Index i = 0; i < norm.frame().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < norm.frame().cols(); ++c) row.push_back(norm.frame()(i, c));
    frame.push_back(row);
  }
  j["frame"] = frame;
  j["expression"] = norm.describe();
  return detail::dump_json(j);
}

Norm load_norm(const std::string& text, const NormOptions& opts) { return compile_norm(parse_norm_spec(text), opts); }

std::string certificate_to_json(const ConvexityCertificate& c, const std::map<std::string, double>& extra) {
  json j;
  j["verdict"] = c.pass ? "pass" : "fail";
  j["sample_count"] = c.sample_count;
  j["min_eigenvalue"] = c.min_eigenvalue;
  j["gamma_used"] = c.gamma_used;
  j["tolerance"] = c.tolerance;
  j["worst_point"] = c.worst_point;
  j["seed"] = c.seed;
  j["fd_points"] = c.fd_points;
  j["fd_max_relative_error"] = c.fd_max_relative_error;
  j["fd_agreement"] = c.fd_agreement;
  for (const auto& [k, v] : extra) j[k] = v;
  return detail::dump_json(j);
}

}  // namespace weylforge
