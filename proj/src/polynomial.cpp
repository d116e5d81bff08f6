#include "weylforge/polynomial.hpp"

#include <cmath>
#include <numeric>

#include "weylforge/error.hpp"

namespace weylforge {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::linear(const RVec& coefficients) {
  Polynomial p(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    Exponents e(coefficients.size(), 0);
    e[i] = 1;
    p.add_term(e, coefficients[i]);
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0U)));
  return d;
}

bool Polynomial::is_homogeneous() const {
  const int d = degree();
  for (const auto& [e, c] : terms_)
    if (static_cast<int>(std::accumulate(e.begin(), e.end(), 0U)) != d) return false;
  return true;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw Error(ErrorCode::kBadParams, "monomial has wrong arity");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorCode::kBadParams, "polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorCode::kBadParams, "polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw Error(ErrorCode::kBadParams, "polynomial arity mismatch");
  Polynomial out(a.nvars_);
  Polynomial::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<long>(e[var]));
  }
  return out;
}

Rational Polynomial::evaluate(const RVec& x) const {
  if (x.size() != nvars_) throw Error(ErrorCode::kBadParams, "evaluation point has wrong dimension");
  Rational sum = 0;
  Rational mono;
  Rational power;
  for (const auto& [e, c] : terms_) {
    mono = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(power.get_num_mpz_t(), x[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(power.get_den_mpz_t(), x[i].get_den_mpz_t(), e[i]);
      mono *= power;
    }
    sum += mono;
  }
  return sum;
}

double Polynomial::evaluate(const double* x) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double mono = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) mono *= x[i];
    sum += mono;
  }
  return sum;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest total degree first, then reverse lexicographic exponents.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    bool constant_term = std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
    std::string factors;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (constant_term || mag != 1) {
      out += weylforge::to_string(mag);
      if (!factors.empty()) out += "*";
    }
    out += factors;
  }
  return out;
}

}  // namespace weylforge
