#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace weylforge {

using Rational = mpq_class;
using Integer = mpz_class;

/// A covector with exact rational coordinates.
using RVec = std::vector<Rational>;

Rational dot(const RVec& a, const RVec& b);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
RVec scale(const Rational& s, const RVec& v);
RVec negate(const RVec& v);
bool is_zero(const RVec& v);

/// s_a(v) = v - (2<v,a>/<a,a>) a
RVec reflect(const RVec& v, const RVec& root);

/// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& q);
/// Accepts "p", "p/q", "-p/q" and finite decimals like "0.25".
Rational parse_rational(std::string_view text);
/// Comma separated list of rationals.
RVec parse_rvec(std::string_view text);
std::string to_string(const RVec& v);

std::vector<double> to_double(const RVec& v);

/// Rank of a list of rational vectors (exact Gaussian elimination).
std::size_t rank_of(const std::vector<RVec>& rows);

/// Exact determinant of a square matrix given by rows.
Rational determinant(std::vector<RVec> rows);

/// Solves A x = b exactly for square non-singular A (rows of A). Throws on singular input.
RVec solve(std::vector<RVec> a, RVec b);

/// Least common multiple of the denominators of all coordinates.
Integer common_denominator(const RVec& v);

}  // namespace weylforge
