#include "weylforge/expr.hpp"

#include <cmath>
#include <sstream>

#include "weylforge/error.hpp"

namespace weylforge {

Jet Node::jet(const Eigen::VectorXd& y, int order) const {
  Jet j;
  eval(y, order, j);
  return j;
}

double Node::value(const Eigen::VectorXd& y) const {
  Jet j;
  eval(y, 0, j);
  return j.value;
}

namespace {

void reset(Jet& out, Eigen::Index n, int order) {
  out.value = 0.0;
  if (order >= 1) out.grad.setZero(n);
  if (order >= 2) out.hess.setZero(n, n);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

class LinearPowerSum final : public Node {
 public:
  LinearPowerSum(Eigen::MatrixXd rows, Eigen::VectorXd weights, int m, std::string label)
      : rows_(std::move(rows)), weights_(std::move(weights)), m_(m), label_(std::move(label)) {}

  void eval(const Eigen::VectorXd& y, int order, Jet& out) const override {
    reset(out, y.size(), order);
    const Eigen::VectorXd s = rows_ * y;
    for (Eigen::Index j = 0; j < rows_.rows(); ++j) {
      const double sj = s[j];
      const double w = weights_[j];
      out.value += w * std::pow(sj, m_);
      if (order >= 1 && m_ >= 1) out.grad.noalias() += (w * m_ * std::pow(sj, m_ - 1)) * rows_.row(j).transpose();
      if (order >= 2 && m_ >= 2)
        out.hess.noalias() +=
            (w * m_ * (m_ - 1) * std::pow(sj, m_ - 2)) * rows_.row(j).transpose() * rows_.row(j);
    }
  }

  std::string describe() const override {
    if (!label_.empty()) return label_;
    return "powersum(" + std::to_string(rows_.rows()) + " forms, degree " + std::to_string(m_) + ")";
  }

 private:
  Eigen::MatrixXd rows_;
  Eigen::VectorXd weights_;
  int m_;
  std::string label_;
};

class SquaredNorm final : public Node {
 public:
  SquaredNorm(std::size_t dim, std::vector<std::size_t> idx) : dim_(dim), idx_(std::move(idx)) {
    if (idx_.empty())
      for (std::size_t i = 0; i < dim_; ++i) idx_.push_back(i);
  }

  void eval(const Eigen::VectorXd& y, int order, Jet& out) const override {
    reset(out, y.size(), order);
    for (std::size_t i : idx_) {
      out.value += y[i] * y[i];
      if (order >= 1) out.grad[i] = 2 * y[i];
      if (order >= 2) out.hess(i, i) = 2;
    }
  }

  std::string describe() const override {
    if (idx_.size() == dim_) return "|y|^2";
    std::string s = "|y[";
    for (std::size_t i = 0; i < idx_.size(); ++i) s += (i ? "," : "") + std::to_string(idx_[i]);
    return s + "]|^2";
  }

 private:
  std::size_t dim_;
  std::vector<std::size_t> idx_;
};

class WeightedSum final : public Node {
 public:
  WeightedSum(std::vector<NodePtr> terms, std::vector<double> c) : terms_(std::move(terms)), c_(std::move(c)) {
    if (terms_.size() != c_.size()) throw Error(ErrorCode::kInternal, "sum arity mismatch");
  }

  void eval(const Eigen::VectorXd& y, int order, Jet& out) const override {
    reset(out, y.size(), order);
    Jet t;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (c_[i] == 0.0) continue;
      terms_[i]->eval(y, order, t);
      out.value += c_[i] * t.value;
      if (order >= 1) out.grad.noalias() += c_[i] * t.grad;
      if (order >= 2) out.hess.noalias() += c_[i] * t.hess;
    }
  }

  std::string describe() const override {
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) s += " + ";
      s += fmt(c_[i]) + "*" + terms_[i]->describe();
    }
    return "(" + s + ")";
  }

 private:
  std::vector<NodePtr> terms_;
  std::vector<double> c_;
};

class Product final : public Node {
 public:
  Product(NodePtr a, NodePtr b) : a_(std::move(a)), b_(std::move(b)) {}

  void eval(const Eigen::VectorXd& y, int order, Jet& out) const override {
    Jet a, b;
    a_->eval(y, order, a);
    b_->eval(y, order, b);
    out.value = a.value * b.value;
    if (order >= 1) out.grad = a.value * b.grad + b.value * a.grad;
    if (order >= 2)
      out.hess = a.value * b.hess + b.value * a.hess + a.grad * b.grad.transpose() + b.grad * a.grad.transpose();
  }

  std::string describe() const override { return a_->describe() + "*" + b_->describe(); }

 private:
  NodePtr a_, b_;
};

class Power final : public Node {
 public:
  Power(NodePtr f, double r) : f_(std::move(f)), r_(r) {}

  void eval(const Eigen::VectorXd& y, int order, Jet& out) const override {
    Jet f;
    f_->eval(y, order, f);
    out.value = std::pow(f.value, r_);
    if (order == 0) return;
    const double d1 = r_ * std::pow(f.value, r_ - 1);
    out.grad = d1 * f.grad;
    if (order >= 2) {
      // For 1 < r < 2 at a zero base the second-order term is taken as its
      // limit 0, which holds when f vanishes quadratically (grad f = 0).
      double d2 = 0.0;
      if (!(f.value == 0.0 && r_ > 1 && r_ < 2 && f.grad.isZero(0.0)))
        d2 = r_ * (r_ - 1) * std::pow(f.value, r_ - 2);
      out.hess = d1 * f.hess + d2 * (f.grad * f.grad.transpose());
    }
  }

  std::string describe() const override { return "(" + f_->describe() + ")^" + fmt(r_); }

 private:
  NodePtr f_;
  double r_;
};

class PolynomialNode final : public Node {
 public:
  explicit PolynomialNode(const Polynomial& p) : text_(p.to_string()), n_(p.nvars()) {
    for (const auto& [e, c] : p.terms()) {
      exps_.push_back(e);
      coef_.push_back(c.get_d());
    }
  }

  void eval(const Eigen::VectorXd& y, int order, Jet& out) const override {
    reset(out, y.size(), order);
    auto mono = [&](const Polynomial::Exponents& e, std::size_t skip_a, std::size_t skip_b) {
      double v = 1.0;
      for (std::size_t i = 0; i < n_; ++i) {
        int k = static_cast<int>(e[i]) - (i == skip_a) - (i == skip_b);
        if (k < 0) return 0.0;
        v *= std::pow(y[i], k);
      }
      return v;
    };
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    for (std::size_t t = 0; t < exps_.size(); ++t) {
      const auto& e = exps_[t];
      const double c = coef_[t];
      out.value += c * mono(e, none, none);
      if (order >= 1)
        for (std::size_t i = 0; i < n_; ++i)
          if (e[i] > 0) out.grad[i] += c * static_cast<double>(e[i]) * mono(e, i, none);
      if (order >= 2)
        for (std::size_t i = 0; i < n_; ++i)
          for (std::size_t j = 0; j < n_; ++j) {
            const double ei = e[i], ej = e[j];
            const double f = i == j ? ei * (ei - 1) : ei * ej;
            if (f != 0) out.hess(i, j) += c * f * mono(e, i, j);
          }
    }
  }

  std::string describe() const override { return text_; }

 private:
  std::string text_;
  std::size_t n_;
  std::vector<Polynomial::Exponents> exps_;
  std::vector<double> coef_;
};

class LinearSubstitution final : public Node {
 public:
  LinearSubstitution(NodePtr f, Eigen::MatrixXd m) : f_(std::move(f)), m_(std::move(m)) {}

  void eval(const Eigen::VectorXd& y, int order, Jet& out) const override {
    Jet f;
    f_->eval(m_ * y, order, f);
    out.value = f.value;
    if (order >= 1) out.grad = m_.transpose() * f.grad;
    if (order >= 2) out.hess = m_.transpose() * f.hess * m_;
  }

  std::string describe() const override { return f_->describe() + "(M y)"; }

 private:
  NodePtr f_;
  Eigen::MatrixXd m_;
};

}  // namespace

NodePtr linear_power_sum(Eigen::MatrixXd rows, Eigen::VectorXd weights, int m, std::string label) {
  if (m < 0) throw Error(ErrorCode::kBadParams, "negative power-sum degree");
  if (rows.rows() != weights.size()) throw Error(ErrorCode::kInternal, "power-sum weight count mismatch");
  return std::make_shared<LinearPowerSum>(std::move(rows), std::move(weights), m, std::move(label));
}

NodePtr squared_norm(std::size_t dim, std::vector<std::size_t> idx) {
  for (std::size_t i : idx)
    if (i >= dim) throw Error(ErrorCode::kBadParams, "block index out of range");
  return std::make_shared<SquaredNorm>(dim, std::move(idx));
}

NodePtr weighted_sum(std::vector<NodePtr> terms, std::vector<double> coefficients) {
  return std::make_shared<WeightedSum>(std::move(terms), std::move(coefficients));
}

NodePtr product(NodePtr a, NodePtr b) { return std::make_shared<Product>(std::move(a), std::move(b)); }

NodePtr power(NodePtr f, double r) { return std::make_shared<Power>(std::move(f), r); }

NodePtr polynomial_node(const Polynomial& p) { return std::make_shared<PolynomialNode>(p); }

NodePtr linear_substitution(NodePtr f, Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kBadParams, "substitution matrix must be square");
  return std::make_shared<LinearSubstitution>(std::move(f), std::move(m));
}

}  // namespace weylforge
