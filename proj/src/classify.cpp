#include "weylforge/classify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <optional>
#include <regex>
#include <set>

#include "weylforge/error.hpp"

namespace weylforge {
namespace detail {
extern const char* const kSymmetricSpacesJson;
}

namespace {

// ------------------------------------------------------------ expressions
// Tiny exact evaluator for the table formulas: integers, identifiers,
// + - * /, parentheses, floor(...) and implicit products such as "2n".

struct Unbound {
  std::string name;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::map<std::string, long long>& vars) : s_(text), vars_(vars) {}

  Rational parse() {
    Rational v = sum();
    skip();
    if (pos_ != s_.size()) throw Error(ErrorCode::kInternal, "trailing input in formula: " + std::string(s_));
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Rational sum() {
    Rational v = product();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Rational r = product();
      v = c == '+' ? Rational(v + r) : Rational(v - r);
    }
    return v;
  }

  Rational product() {
    Rational v = unary();
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        Rational r = unary();
        if (c == '/' && sgn(r) == 0) throw Error(ErrorCode::kInternal, "division by zero in formula");
        v = c == '*' ? Rational(v * r) : Rational(v / r);
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
        v *= unary();
      } else {
        return v;
      }
    }
  }

  Rational unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return atom();
  }

  Rational atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Rational v = sum();
      if (peek() != ')') throw Error(ErrorCode::kInternal, "missing ')' in formula");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
      Rational v(std::string(s_.substr(pos_, end - pos_)));
      pos_ = end;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      // identifiers are single letters, except the floor function
      if (s_.substr(pos_, 5) == "floor") {
        pos_ += 5;
        if (peek() != '(') throw Error(ErrorCode::kInternal, "floor needs '('");
        Rational v = atom();
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        return Rational(f);
      }
      const std::string name(1, c);
      ++pos_;
      auto it = vars_.find(name);
      if (it == vars_.end()) throw Unbound{name};
      return Rational(static_cast<long>(it->second));
    }
    throw Error(ErrorCode::kInternal, "bad formula: " + std::string(s_));
  }

  std::string_view s_;
  const std::map<std::string, long long>& vars_;
  std::size_t pos_ = 0;
};

Rational eval_expr(std::string_view text, const std::map<std::string, long long>& vars) {
  return ExprParser(text, vars).parse();
}

std::optional<long long> eval_integer(std::string_view text, const std::map<std::string, long long>& vars) {
  const Rational v = eval_expr(text, vars);
  if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
  return v.get_num().get_si();
}

std::set<std::string> expr_vars(std::string_view text) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.substr(i, 5) == "floor") {
      i += 4;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(text[i]))) out.insert(std::string(1, text[i]));
  }
  return out;
}

bool check_constraint(const std::string& c, const std::map<std::string, long long>& vars) {
  static const std::regex re(R"(^(.+?)(>=|<=|>|<|=)(.+)$)");
  std::smatch m;
  if (!std::regex_match(c, m, re)) throw Error(ErrorCode::kInternal, "bad constraint: " + c);
  const Rational a = eval_expr(m[1].str(), vars);
  const Rational b = eval_expr(m[3].str(), vars);
  const std::string op = m[2].str();
  if (op == ">=") return a >= b;
  if (op == "<=") return a <= b;
  if (op == ">") return a > b;
  if (op == "<") return a < b;
  return a == b;
}

// ------------------------------------------------------------- templates

struct Piece {
  bool placeholder = false;
  std::string text;
};

std::vector<Piece> split_template(const std::string& t) {
  std::vector<Piece> out;
  std::size_t i = 0;
  while (i < t.size()) {
    const std::size_t open = t.find('{', i);
    if (open == std::string::npos) {
      out.push_back({false, t.substr(i)});
      break;
    }
    if (open > i) out.push_back({false, t.substr(i, open - i)});
    const std::size_t close = t.find('}', open);
    if (close == std::string::npos) throw Error(ErrorCode::kInternal, "unclosed placeholder in " + t);
    out.push_back({true, t.substr(open + 1, close - open - 1)});
    i = close + 1;
  }
  return out;
}

std::string regex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::strchr("\\^$.|?*+()[]{}", c)) out += '\\';
    out += c;
  }
  return out;
}

// Render an affine placeholder with some parameters left symbolic:
// coefficients are probed by evaluating at unit vectors.
std::string render_affine(const std::string& expr, const std::map<std::string, long long>& bound,
                          const std::vector<std::string>& order) {
  std::vector<std::string> free;
  for (const auto& v : order)
    if (!bound.count(v) && expr_vars(expr).count(v)) free.push_back(v);
  auto at = [&](const std::string& unit) {
    auto vars = bound;
    for (const auto& f : free) vars[f] = f == unit ? 1 : 0;
    return eval_expr(expr, vars);
  };
  const Rational c0 = at("");
  std::string out;
  for (const auto& f : free) {
    const Rational c = at(f) - c0;
    if (sgn(c) == 0) continue;
    if (!out.empty() || sgn(c) < 0) out += sgn(c) < 0 ? "-" : "+";
    const Rational a = abs(c);
    if (a != 1) out += a.get_str();
    out += f;
  }
  if (sgn(c0) != 0 || out.empty()) {
    if (!out.empty() && sgn(c0) > 0) out += "+";
    out += c0.get_str();
  }
  return out;
}

std::string strip_trivial_factors(std::string s) {
  for (const std::string t : {"xSO(1)"}) {
    for (auto p = s.find(t); p != std::string::npos; p = s.find(t)) s.erase(p, t.size());
  }
  return s;
}

std::string render(const std::string& tmpl, const std::map<std::string, long long>& bound,
                   const std::vector<std::string>& order) {
  std::string out;
  for (const auto& piece : split_template(tmpl)) out += piece.placeholder ? render_affine(piece.text, bound, order) : piece.text;
  return strip_trivial_factors(out);
}

// Match a concrete name against a template; returns the parameter binding.
std::optional<std::map<std::string, long long>> match_template(const std::string& tmpl, const std::string& name,
                                                               std::map<std::string, long long> bound) {
  const auto pieces = split_template(tmpl);
  std::string pattern;
  std::vector<std::string> exprs;
  for (const auto& p : pieces) {
    if (p.placeholder) {
      pattern += "(\\d+)";
      exprs.push_back(p.text);
    } else {
      pattern += regex_escape(p.text);
    }
  }
  std::smatch m;
  if (!std::regex_match(name, m, std::regex(pattern))) return std::nullopt;
  std::vector<long long> values;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    const std::string digits = m[i + 1].str();
    if (digits.size() > 9) return std::nullopt;
    values.push_back(std::stoll(digits));
  }
  // Repeatedly solve placeholders with a single unknown.
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < exprs.size(); ++i) {
      std::vector<std::string> unknown;
      for (const auto& v : expr_vars(exprs[i]))
        if (!bound.count(v)) unknown.push_back(v);
      if (unknown.size() != 1) continue;
      auto vars = bound;
      vars[unknown[0]] = 0;
      const Rational a = eval_expr(exprs[i], vars);
      vars[unknown[0]] = 1;
      const Rational b = eval_expr(exprs[i], vars) - a;
      if (sgn(b) == 0) continue;
      const Rational x = (Rational(static_cast<long>(values[i])) - a) / b;
      if (x.get_den() != 1 || !x.get_num().fits_slong_p()) return std::nullopt;
      bound[unknown[0]] = x.get_num().get_si();
      progress = true;
    }
  }
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    try {
      if (eval_expr(exprs[i], bound) != Rational(static_cast<long>(values[i]))) return std::nullopt;
    } catch (const Unbound&) {
      return std::nullopt;
    }
  }
  return bound;
}

RootType weyl_type(const std::string& s) {
  static const std::map<std::string, RootType> kTypes = {
      {"A", RootType::kA},   {"B", RootType::kB},   {"D", RootType::kD},   {"E6", RootType::kE6},
      {"E7", RootType::kE7}, {"E8", RootType::kE8}, {"F4", RootType::kF4}, {"G2", RootType::kG2}};
  auto it = kTypes.find(s);
  if (it == kTypes.end()) throw Error(ErrorCode::kInternal, "bad Weyl type in dataset: " + s);
  return it->second;
}

struct Alias {
  std::string name;
  std::map<std::string, long long> bind;
};

struct Dataset {
  std::vector<SpaceRow> rows;
  std::vector<std::vector<Alias>> aliases;
  std::vector<RankOneIsomorphism> isomorphisms;
};

const Dataset& dataset() {
  static const Dataset data = [] {
    Dataset d;
    const auto j = nlohmann::json::parse(detail::kSymmetricSpacesJson);
    for (const auto& r : j.at("rows")) {
      SpaceRow row;
      row.id = r.at("id").get<int>();
      row.noncompact = r.at("noncompact").get<std::string>();
      row.compact = r.at("compact").get<std::string>();
      if (r.contains("params")) row.params = r.at("params").get<std::vector<std::string>>();
      row.weyl = r.at("weyl").get<std::string>();
      row.rank = r.at("rank").get<std::string>();
      row.dim = r.at("dim").get<std::string>();
      if (r.contains("constraints")) row.constraints = r.at("constraints").get<std::vector<std::string>>();
      if (r.contains("note")) row.note = r.at("note").get<std::string>();
      std::vector<Alias> aliases;
      if (r.contains("aliases"))
        for (const auto& a : r.at("aliases")) {
          Alias al{a.at("name").get<std::string>(), {}};
          if (a.contains("bind"))
            for (const auto& [k, v] : a.at("bind").items()) al.bind[k] = v.get<long long>();
          aliases.push_back(std::move(al));
        }
      weyl_type(row.weyl);
      d.rows.push_back(std::move(row));
      d.aliases.push_back(std::move(aliases));
    }
    for (const auto& iso : j.at("rank_one_isomorphisms"))
      d.isomorphisms.push_back({iso.at("name").get<std::string>(), iso.at("same_as").get<std::string>()});
    return d;
  }();
  return data;
}

bool satisfies(const SpaceRow& row, const std::map<std::string, long long>& vars) {
  for (const auto& c : row.constraints)
    if (!check_constraint(c, vars)) return false;
  return true;
}

SpaceRecord bind_row(const SpaceRow& row, const std::map<std::string, long long>& vars, std::string matched) {
  SpaceRecord rec;
  rec.row = row.id;
  rec.params = vars;
  rec.matched = std::move(matched);
  rec.noncompact = render(row.noncompact, vars, row.params);
  rec.compact = render(row.compact, vars, row.params);
  const auto r = eval_integer(row.rank, vars);
  const auto dim = eval_integer(row.dim, vars);
  if (!r || !dim || *r < 1 || *dim < 1) throw Error(ErrorCode::kInternal, "dataset formula gives a bad value");
  rec.weyl = WeylLabel{weyl_type(row.weyl), static_cast<int>(*r)};
  rec.dim = *dim;
  rec.note = row.note;
  return rec;
}

// Name of the lone parameter if the rank formula is just that parameter.
std::optional<std::string> rank_parameter(const SpaceRow& row) {
  for (const auto& p : row.params)
    if (row.rank == p) return p;
  return std::nullopt;
}

}  // namespace

const std::vector<SpaceRow>& table_rows() { return dataset().rows; }

const char* table_json() { return detail::kSymmetricSpacesJson; }

const std::vector<RankOneIsomorphism>& rank_one_isomorphisms() { return dataset().isomorphisms; }

std::string normalize_space_name(std::string_view name) {
  std::string s(name);
  auto replace_all = [&s](const std::string& from, const std::string& to) {
    for (auto p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  };
  replace_all("\\mathbf", "");
  replace_all("\\mathcal", "");
  replace_all("\\mathbb", "");
  replace_all("\\times", "x");
  replace_all("\xC3\x97", "x");          // multiplication sign
  replace_all("\xE2\x84\x9D", "R");      // double-struck R
  replace_all("\xE2\x84\x82", "C");      // double-struck C
  replace_all("\xE2\x88\x92", "-");      // minus sign
  replace_all("\\,", "");
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != '{' && c != '}' && c != '^') out += c;
  // "x2G" (a doubled factor written as a power) becomes "GxG"
  static const std::regex twice(R"((^|/)x2([A-Za-z][A-Za-z0-9*]*(\([^)]*\))?))");
  return std::regex_replace(out, twice, "$1$2x$2");
}

SpaceRecord lookup(std::string_view name) {
  const std::string key = normalize_space_name(name);
  const auto& d = dataset();
  bool violated = false;
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    const auto& row = d.rows[i];
    std::vector<std::tuple<std::string, std::map<std::string, long long>, std::string>> forms = {
        {row.noncompact, {}, "noncompact"}, {row.compact, {}, "compact"}};
    for (const auto& a : d.aliases[i]) forms.emplace_back(a.name, a.bind, "alias");
    for (const auto& [tmpl, bind, kind] : forms) {
      auto vars = match_template(tmpl, key, bind);
      if (!vars) continue;
      if (!satisfies(row, *vars)) {
        violated = true;
        continue;
      }
      return bind_row(row, *vars, kind);
    }
  }
  if (violated) throw Error(ErrorCode::kParamsViolateConstraints, "parameters violate the table constraints: " + key);
  throw Error(ErrorCode::kUnknownSpace, "unknown symmetric space: " + std::string(name));
}

std::vector<std::string> rank_one_list() {
  std::vector<std::string> out;
  for (const auto& row : table_rows()) {
    if (row.params.empty()) {
      if (row.rank == "1") {
        out.push_back(row.noncompact);
        out.push_back(row.compact);
      }
      continue;
    }
    // a family survives only if another parameter stays free
    if (auto p = rank_parameter(row); p && row.params.size() > 1) {
      const std::map<std::string, long long> bound = {{*p, 1}};
      out.push_back(render(row.noncompact, bound, row.params));
      out.push_back(render(row.compact, bound, row.params));
    }
  }
  return out;
}

std::vector<std::string> rank_one_isolated() {
  std::vector<std::string> out;
  for (const auto& row : table_rows()) {
    if (row.params.size() != 1) continue;
    for (long long v = 0; v <= 16; ++v) {
      const std::map<std::string, long long> vars = {{row.params[0], v}};
      if (!satisfies(row, vars) || eval_integer(row.rank, vars) != 1) continue;
      out.push_back(render(row.noncompact, vars, row.params));
      out.push_back(render(row.compact, vars, row.params));
    }
  }
  return out;
}

bool skew_label(const WeylLabel& label) { return !minus_id_rule(label); }

std::vector<SkewEntry> irreversible_list() {
  std::vector<SkewEntry> out;
  for (const auto& row : table_rows()) {
    const RootType t = weyl_type(row.weyl);
    SkewEntry e{row.id, render(row.noncompact, {}, row.params), render(row.compact, {}, row.params), ""};
    if (row.params.empty()) {
      if (skew_label({t, std::stoi(row.rank)})) out.push_back(e);
      continue;
    }
    if (row.params.size() != 1) continue;
    const std::string v = row.params[0];
    if (t == RootType::kA) {
      // smallest admissible value with rank >= 2; the rank grows with it
      for (long long n = 0; n <= 16; ++n) {
        const std::map<std::string, long long> vars = {{v, n}};
        if (satisfies(row, vars) && eval_integer(row.rank, vars).value_or(0) >= 2) {
          e.condition = v + ">=" + std::to_string(n);
          out.push_back(e);
          break;
        }
      }
    } else if (t == RootType::kD && rank_parameter(row)) {
      e.condition = v + "=2k+1";
      out.push_back(e);
    }
  }
  return out;
}

namespace {
void require_factor(const DeRhamDecomposition& d) {
  if (d.euclidean_dim == 0 && d.symmetric.empty() && d.nonsymmetric == 0)
    throw Error(ErrorCode::kBadParams, "decomposition has no factors");
}
}  // namespace

int rank(const DeRhamDecomposition& d) {
  require_factor(d);
  int r = static_cast<int>(d.euclidean_dim + d.nonsymmetric);
  for (const auto& s : d.symmetric) r += s.rank();
  return r;
}

bool nonriemannian_berwald_metrizable(const DeRhamDecomposition& d) { return rank(d) > 1; }

bool irreversible_metrizable(const DeRhamDecomposition& d) {
  if (rank(d) <= 1) return false;
  if (d.euclidean_dim > 0) return true;
  return std::any_of(d.symmetric.begin(), d.symmetric.end(), [](const SpaceRecord& s) { return skew_label(s.weyl); });
}

bool cartan_symmetric(const DeRhamDecomposition& d, NormMode mode) {
  require_factor(d);
  if (d.nonsymmetric > 0)
    throw Error(ErrorCode::kNotAffineSymmetric, "a non-symmetric irreducible factor is present");
  return mode == NormMode::kAbsolute;
}

WeylGroup product_weyl_group(const DeRhamDecomposition& d, std::uint64_t enumeration_cap) {
  require_factor(d);
  std::vector<RootSystem> systems;
  std::vector<WeylLabel> labels;
  std::size_t dim = d.euclidean_dim + d.nonsymmetric;
  for (const auto& s : d.symmetric) {
    systems.push_back(system_for_label(s.weyl));
    labels.push_back(s.weyl);
    dim += systems.back().ambient_dim;
  }
  std::vector<RVec> simple, roots;
  std::vector<WeylGroup::Component> comps;
  Integer order = 1;
  std::size_t offset = 0;
  auto embed = [&](const RVec& v) {
    RVec out(dim, Rational(0));
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    return out;
  };
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (const auto& a : systems[i].simple_roots) simple.push_back(embed(a));
    for (const auto& a : systems[i].roots) roots.push_back(embed(a));
    comps.push_back({labels[i], offset});
    order *= weyl_order(labels[i]);
    offset += systems[i].ambient_dim;
  }
  for (std::size_t i = 0; i < d.nonsymmetric; ++i) {
    const RVec e = embed(RVec{Rational(1)});
    simple.push_back(e);
    roots.push_back(e);
    RVec m = e;
    for (auto& x : m) x = -x;
    roots.push_back(m);
    comps.push_back({WeylLabel{RootType::kA, 1}, offset});
    order *= 2;
    ++offset;
  }
  std::sort(roots.begin(), roots.end());
  return WeylGroup::from_parts(dim, std::move(simple), std::move(roots), std::move(comps), d.euclidean_dim,
                               std::move(order), enumeration_cap);
}

}  // namespace weylforge
