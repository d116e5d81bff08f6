#include "weylforge/rational.hpp"

#include <algorithm>
#include <cctype>

#include "weylforge/error.hpp"

namespace weylforge {

namespace {

void check_same_size(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kBadParams, "vector dimension mismatch");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational dot(const RVec& a, const RVec& b) {
  check_same_size(a, b);
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

RVec add(const RVec& a, const RVec& b) {
  check_same_size(a, b);
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RVec sub(const RVec& a, const RVec& b) {
  check_same_size(a, b);
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RVec scale(const Rational& s, const RVec& v) {
  RVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

RVec negate(const RVec& v) { return scale(Rational(-1), v); }

bool is_zero(const RVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

RVec reflect(const RVec& v, const RVec& root) {
  Rational factor = 2 * dot(v, root) / dot(root, root);
  return sub(v, scale(factor, root));
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::kParse, "empty rational literal");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  auto dot_pos = s.find('.');
  if (dot_pos != std::string::npos) {
    if (s.find_first_of("/eE") != std::string::npos)
      throw Error(ErrorCode::kParse, "unsupported rational literal '" + s + "'");
    std::string digits = s.substr(0, dot_pos) + s.substr(dot_pos + 1);
    std::size_t decimals = s.size() - dot_pos - 1;
    if (digits.empty() || digits == "-") throw Error(ErrorCode::kParse, "bad decimal '" + s + "'");
    Rational q;
    if (q.set_str(digits, 10) != 0) throw Error(ErrorCode::kParse, "bad decimal '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
    q /= Rational(den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::kParse, "bad rational '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

RVec parse_rvec(std::string_view text) {
  RVec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string to_string(const RVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

std::vector<double> to_double(const RVec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

namespace {

// Row-reduces in place and returns the rank. When `det` is non-null it
// receives the determinant (only meaningful for square input).
std::size_t eliminate(std::vector<RVec>& rows, Rational* det) {
  if (det) *det = 1;
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != rank) {
      std::swap(rows[pivot], rows[rank]);
      if (det) *det = -*det;
    }
    const Rational p = rows[rank][col];
    if (det) *det *= p;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][col]) == 0) continue;
      const Rational f = rows[r][col] / p;
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  if (det && rank < rows.size()) *det = 0;
  return rank;
}

}  // namespace

std::size_t rank_of(const std::vector<RVec>& rows) {
  auto copy = rows;
  return eliminate(copy, nullptr);
}

Rational determinant(std::vector<RVec> rows) {
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw Error(ErrorCode::kBadParams, "determinant of non-square matrix");
  Rational det;
  eliminate(rows, &det);
  return det;
}

RVec solve(std::vector<RVec> a, RVec b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::kBadParams, "solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::kBadParams, "solve: matrix not square");
    a[i].push_back(b[i]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::kBadParams, "solve: singular matrix");
    std::swap(a[pivot], a[col]);
    const Rational p = a[col][col];
    for (std::size_t c = col; c <= n; ++c) a[col][c] /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  RVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

Integer common_denominator(const RVec& v) {
  Integer d = 1;
  for (const auto& q : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  return d;
}

}  // namespace weylforge
