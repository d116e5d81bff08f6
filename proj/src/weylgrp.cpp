#include "weylforge/weylgrp.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <unordered_set>

#include "json.hpp"
#include "weylforge/error.hpp"

namespace weylforge {

namespace {

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::kInternal, "integer coordinate overflow");
  return z.get_si();
}

// Root scaled by its common denominator: alpha = a / scale.
std::pair<std::vector<std::int64_t>, std::int64_t> integer_root(const RVec& alpha) {
  Integer den = common_denominator(alpha);
  std::vector<std::int64_t> a(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Rational q = alpha[i] * Rational(den);
    a[i] = to_i64(q.get_num());
  }
  return {a, to_i64(den)};
}

// Fixed-width rows in a flat buffer, deduplicated by content.
template <class T>
class RowSet {
 public:
  explicit RowSet(std::size_t width)
      : width_(width), set_(64, Hash{this}, Eq{this}) {}

  // Returns true when the row was new.
  bool insert(const T* row) {
    const auto idx = static_cast<std::uint32_t>(data_.size() / width_);
    data_.insert(data_.end(), row, row + width_);
    if (set_.insert(idx).second) return true;
    data_.resize(data_.size() - width_);
    return false;
  }
  std::size_t size() const { return set_.size(); }
  const T* row(std::size_t i) const { return data_.data() + i * width_; }
  std::vector<T> release() { return std::move(data_); }

 private:
  struct Hash {
    const RowSet* self;
    std::size_t operator()(std::uint32_t i) const {
      const T* r = self->row(i);
      std::size_t h = 1469598103934665603ULL;
      for (std::size_t k = 0; k < self->width_; ++k) {
        h ^= static_cast<std::size_t>(static_cast<std::int64_t>(r[k]));
        h *= 1099511628211ULL;
      }
      return h;
    }
  };
  struct Eq {
    const RowSet* self;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return std::memcmp(self->row(a), self->row(b), self->width_ * sizeof(T)) == 0;
    }
  };

  std::size_t width_;
  std::vector<T> data_;
  std::unordered_set<std::uint32_t, Hash, Eq> set_;
};

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

RMatrix identity(std::size_t n) {
  RMatrix m(n, RVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RVec mat_vec(const RMatrix& m, const RVec& v) {
  RVec out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

}  // namespace

std::string WeylLabel::name() const {
  switch (type) {
    case RootType::kA:
    case RootType::kB:
    case RootType::kD: return to_string(type) + std::to_string(rank);
    default: return to_string(type);
  }
}

WeylLabel weyl_label_of(RootType system_type, int rank) {
  switch (system_type) {
    case RootType::kB:
    case RootType::kC:
    case RootType::kBC: return {RootType::kB, rank};
    case RootType::kCustom: throw Error(ErrorCode::kUnknownType, "custom systems have no Weyl label");
    default: return {system_type, rank};
  }
}

Integer weyl_order(const WeylLabel& label) {
  const int l = label.rank;
  switch (label.type) {
    case RootType::kA: return factorial(l + 1);
    case RootType::kB: return (Integer(1) << l) * factorial(l);
    case RootType::kD: return (Integer(1) << (l - 1)) * factorial(l);
    case RootType::kE6: return 51840;
    case RootType::kE7: return 2903040;
    case RootType::kE8: return 696729600;
    case RootType::kF4: return 1152;
    case RootType::kG2: return 12;
    default: throw Error(ErrorCode::kUnknownType, "not an abstract Weyl label: " + label.name());
  }
}

bool minus_id_rule(const WeylLabel& label) {
  switch (label.type) {
    case RootType::kA: return label.rank == 1;
    case RootType::kD: return label.rank % 2 == 0;
    case RootType::kE6: return false;
    default: return true;
  }
}

RootSystem system_for_label(const WeylLabel& label) {
  if (label.type == RootType::kB && label.rank == 1) return build_root_system(RootType::kBC, 1);
  if (label.type == RootType::kD && label.rank == 3) return build_root_system(RootType::kA, 3);
  if (label.type == RootType::kD && label.rank == 2)
    throw Error(ErrorCode::kRankOutOfRange, "D2 is reducible (A1 x A1)");
  return build_root_system(label.type, label.rank);
}

// ---------------------------------------------------------------- Orbit

Orbit::Orbit(RVec seed, std::size_t dim, Integer denominator)
    : seed_(std::move(seed)), dim_(dim), denominator_(std::move(denominator)) {}

RVec Orbit::point(std::size_t i) const {
  RVec p(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    p[k] = Rational(Integer(static_cast<long>(numerators(i)[k])), denominator_);
    p[k].canonicalize();
  }
  return p;
}

std::vector<double> Orbit::point_double(std::size_t i) const {
  std::vector<double> p(dim_);
  const double d = denominator_.get_d();
  for (std::size_t k = 0; k < dim_; ++k) p[k] = static_cast<double>(numerators(i)[k]) / d;
  return p;
}

bool Orbit::contains(const RVec& v) const {
  if (v.size() != dim_) return false;
  std::vector<std::int64_t> key(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    Rational s = v[k] * Rational(denominator_);
    if (s.get_den() != 1) return false;
    key[k] = to_i64(s.get_num());
  }
  for (std::size_t i = 0; i < size(); ++i)
    if (std::equal(key.begin(), key.end(), numerators(i))) return true;
  return false;
}

// ---------------------------------------------------------------- WeylGroup

WeylGroup WeylGroup::from_system(const RootSystem& system, std::uint64_t enumeration_cap) {
  if (system.type == RootType::kCustom) throw Error(ErrorCode::kInvalidSystem, "custom system");
  if (system.simple_roots.empty()) throw Error(ErrorCode::kInvalidSystem, "system has no simple roots");
  const WeylLabel label = weyl_label_of(system.type, system.rank);
  WeylGroup g = from_parts(system.ambient_dim, system.simple_roots, system.roots, {{label, 0}}, 0,
                           weyl_order(label), enumeration_cap);
  g.system_ = std::make_shared<const RootSystem>(system);
  return g;
}

WeylGroup WeylGroup::from_parts(std::size_t dim, std::vector<RVec> simple_roots, std::vector<RVec> roots,
                                std::vector<Component> components, std::size_t euclidean_dim, Integer order,
                                std::uint64_t enumeration_cap) {
  if (enumeration_cap < 1) throw Error(ErrorCode::kBadParams, "enumeration cap must be >= 1");
  for (const auto& r : simple_roots)
    if (r.size() != dim || is_zero(r)) throw Error(ErrorCode::kInvalidSystem, "bad simple root");
  WeylGroup g;
  g.dim_ = dim;
  g.rank_ = simple_roots.size();
  g.euclidean_dim_ = euclidean_dim;
  g.simple_roots_ = std::move(simple_roots);
  g.roots_ = std::move(roots);
  g.components_ = std::move(components);
  g.order_ = std::move(order);
  if (rank_of(g.simple_roots_) != g.rank_) throw Error(ErrorCode::kInvalidSystem, "dependent simple roots");
  g.weights_ = fundamental_weights_of(g.simple_roots_);
  if (g.rank_ > 0) {
    std::vector<RVec> gram(g.rank_, RVec(g.rank_));
    for (std::size_t i = 0; i < g.rank_; ++i)
      for (std::size_t j = 0; j < g.rank_; ++j) gram[i][j] = dot(g.simple_roots_[i], g.simple_roots_[j]);
    for (const auto& r : g.roots_) {
      RVec rhs(g.rank_);
      for (std::size_t i = 0; i < g.rank_; ++i) rhs[i] = dot(g.simple_roots_[i], r);
      RVec c = solve(gram, rhs);
      auto first = std::find_if(c.begin(), c.end(), [](const Rational& q) { return sgn(q) != 0; });
      if (first != c.end() && sgn(*first) > 0) g.positive_roots_.push_back(r);
    }
  }
  g.build_generators();
  g.enumerate(enumeration_cap);
  g.certify_minus_id();
  return g;
}

void WeylGroup::build_generators() {
  Integer den = 1;
  for (const auto& alpha : simple_roots_) {
    auto [a, s] = integer_root(alpha);
    (void)s;
    int_roots_.push_back(a);
    const Rational n2 = dot(alpha, alpha);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        Rational e = Rational(i == j ? 1 : 0) - 2 * alpha[i] * alpha[j] / n2;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
      }
  }
  denominator_ = to_i64(den);
  if (denominator_ > 127) throw Error(ErrorCode::kInternal, "matrix denominator too large");
}

RMatrix WeylGroup::generator(std::size_t i) const {
  RMatrix m = identity(dim_);
  const RVec& a = simple_roots_.at(i);
  const Rational n2 = dot(a, a);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m[r][c] -= 2 * a[r] * a[c] / n2;
  return m;
}

void WeylGroup::enumerate(std::uint64_t cap) {
  // The order is known from the labels, so a closure that must overflow the
  // cap is skipped instead of being run to the limit.
  if (order_ > Integer(static_cast<unsigned long>(cap))) {
    enumerated_ = false;
    return;
  }
  const std::size_t n = dim_;
  const std::size_t width = n * n;
  RowSet<std::int8_t> set(width);
  std::vector<std::int8_t> current(width, 0);
  for (std::size_t i = 0; i < n; ++i) current[i * n + i] = static_cast<std::int8_t>(denominator_);
  set.insert(current.data());
  std::vector<std::int64_t> t(n);
  std::vector<std::int8_t> next(width);
  // Breadth-first closure; set rows are appended in discovery order, so the
  // row index doubles as the queue position.
  for (std::size_t head = 0; head < set.size(); ++head) {
    for (std::size_t gi = 0; gi < rank_; ++gi) {
      const std::int8_t* g = set.row(head);
      const auto& a = int_roots_[gi];
      std::int64_t norm = 0;
      for (auto x : a) norm += x * x;
      // D(s g) = D g - 2 a (a^T D g) / |a|^2
      for (std::size_t c = 0; c < n; ++c) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < n; ++k) s += a[k] * g[k * n + c];
        t[c] = s;
      }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          const std::int64_t num = 2 * a[r] * t[c];
          if (num % norm != 0) throw Error(ErrorCode::kInternal, "non-integral group element");
          next[r * n + c] = static_cast<std::int8_t>(g[r * n + c] - num / norm);
        }
      set.insert(next.data());
      if (set.size() > cap) {
        enumerated_ = false;
        elements_.clear();
        return;
      }
    }
  }
  enumerated_ = true;
  const Integer count = static_cast<unsigned long>(set.size());
  elements_ = set.release();
  if (count != order_)
    throw Error(ErrorCode::kInternal, "enumerated order " + count.get_str() + " differs from expected " +
                                          order_.get_str());
  order_ = count;
}

std::size_t WeylGroup::element_count() const { return enumerated_ ? elements_.size() / (dim_ * dim_) : 0; }

RMatrix WeylGroup::element(std::size_t i) const {
  if (!enumerated_ || i >= element_count()) throw Error(ErrorCode::kBadParams, "element index out of range");
  RMatrix m(dim_, RVec(dim_));
  const std::int8_t* e = elements_.data() + i * dim_ * dim_;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) {
      m[r][c] = Rational(e[r * dim_ + c], static_cast<unsigned long>(denominator_));
      m[r][c].canonicalize();
    }
  return m;
}

RVec WeylGroup::apply_element(std::size_t i, const RVec& v) const { return mat_vec(element(i), v); }

RVec WeylGroup::apply_word(const std::vector<std::size_t>& word, RVec v) const {
  for (auto i : word) v = reflect(v, simple_roots_.at(i));
  return v;
}

RMatrix WeylGroup::word_matrix(const std::vector<std::size_t>& word) const {
  RMatrix m = identity(dim_);
  // Columns are images of the basis vectors.
  RMatrix cols(dim_);
  for (std::size_t c = 0; c < dim_; ++c) cols[c] = apply_word(word, m[c]);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m[r][c] = cols[c][r];
  return m;
}

void WeylGroup::certify_minus_id() {
  minus_id_ = false;
  minus_id_word_.clear();
  if (euclidean_dim_ > 0 || rank_ == 0) return;
  // A regular dominant vector with distinct weight coefficients is moved by
  // every non-trivial diagram symmetry; descending it to the antidominant
  // chamber applies the longest element w0, and -id is in W iff w0 = -id.
  RVec rho(dim_, Rational(0));
  for (std::size_t i = 0; i < rank_; ++i) rho = add(rho, scale(Rational(static_cast<long>(i + 1)), weights_[i]));
  RVec v = rho;
  std::vector<std::size_t> word;
  for (;;) {
    std::size_t i = 0;
    while (i < rank_ && sgn(dot(v, simple_roots_[i])) <= 0) ++i;
    if (i == rank_) break;
    v = reflect(v, simple_roots_[i]);
    word.push_back(i);
  }
  if (v != negate(rho)) return;
  const RMatrix w = word_matrix(word);
  for (const auto& a : simple_roots_)
    if (mat_vec(w, a) != negate(a)) throw Error(ErrorCode::kInternal, "-id certificate failed");
  minus_id_ = true;
  minus_id_word_ = std::move(word);
}

Orbit WeylGroup::orbit(const RVec& v, std::size_t cap) const {
  if (v.size() != dim_) throw Error(ErrorCode::kBadParams, "orbit seed has wrong dimension");
  // Orbit points are v minus integer combinations of <v, a_i^vee> a_i, so
  // this common denominator keeps every point integral.
  Integer pair_den = 1;
  Integer root_den = 1;
  for (const auto& a : simple_roots_) {
    Rational c = 2 * dot(v, a) / dot(a, a);
    mpz_lcm(pair_den.get_mpz_t(), pair_den.get_mpz_t(), c.get_den_mpz_t());
    Integer rd = common_denominator(a);
    mpz_lcm(root_den.get_mpz_t(), root_den.get_mpz_t(), rd.get_mpz_t());
  }
  Integer den = common_denominator(v);
  Integer prod = pair_den * root_den;
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), prod.get_mpz_t());

  Orbit out(v, dim_, den);
  RowSet<std::int64_t> set(dim_);
  std::vector<std::int64_t> p(dim_);
  for (std::size_t k = 0; k < dim_; ++k) p[k] = to_i64(Rational(v[k] * Rational(den)).get_num());
  set.insert(p.data());
  std::vector<std::int64_t> q(dim_);
  for (std::size_t head = 0; head < set.size(); ++head) {
    for (std::size_t gi = 0; gi < rank_; ++gi) {
      const std::int64_t* w = set.row(head);
      const auto& a = int_roots_[gi];
      std::int64_t norm = 0;
      std::int64_t pairing = 0;
      for (std::size_t k = 0; k < dim_; ++k) {
        norm += a[k] * a[k];
        pairing += w[k] * a[k];
      }
      if (pairing == 0) continue;
      const std::int64_t divisor = norm;
      for (std::size_t k = 0; k < dim_; ++k) {
        const std::int64_t num = 2 * pairing * a[k];
        if (num % divisor != 0) throw Error(ErrorCode::kInternal, "non-integral orbit point");
        q[k] = w[k] - num / divisor;
      }
      set.insert(q.data());
      if (set.size() > cap)
        throw Error(ErrorCode::kOrbitCapExceeded,
                    "orbit of " + to_string(v) + " exceeds " + std::to_string(cap) + " points");
    }
  }
  const Integer size = static_cast<unsigned long>(set.size());
  out.coords_ = set.release();
  if (order_ % size != 0) throw Error(ErrorCode::kInternal, "orbit size does not divide the group order");
  out.stabilizer_order_ = order_ / size;
  return out;
}

RVec WeylGroup::chamber_representative(const RVec& v) const {
  if (v.size() != dim_) throw Error(ErrorCode::kBadParams, "vector has wrong dimension");
  RVec w = v;
  constexpr std::size_t kMaxSteps = 10'000'000;
  for (std::size_t step = 0; step < kMaxSteps; ++step) {
    std::size_t i = 0;
    while (i < rank_ && sgn(dot(w, simple_roots_[i])) >= 0) ++i;
    if (i == rank_) return w;
    w = reflect(w, simple_roots_[i]);
  }
  throw Error(ErrorCode::kOrbitCapExceeded, "chamber descent did not terminate");
}

std::string WeylGroup::label() const {
  std::string out;
  for (const auto& c : components_) out += (out.empty() ? "" : " x ") + c.label.name();
  if (euclidean_dim_ > 0) out += (out.empty() ? "" : " x ") + std::string("1^") + std::to_string(euclidean_dim_);
  return out.empty() ? "trivial" : out;
}

std::string WeylGroup::to_json() const {
  nlohmann::ordered_json j;
  if (components_.size() == 1 && euclidean_dim_ == 0) {
    j["type"] = to_string(components_.front().label.type);
  } else {
    j["type"] = "product";
  }
  j["label"] = label();
  j["rank"] = cartan_dim();
  if (order_.fits_ulong_p()) {
    j["order"] = order_.get_ui();
  } else {
    j["order"] = order_.get_str();
  }
  j["contains_minus_id"] = minus_id_;
  j["enumerated"] = enumerated_;
  return j.dump();
}

WeylGroup generate_weyl_group(const RootSystem& system, std::uint64_t enumeration_cap) {
  const auto report = validate(system);
  if (!report.passed()) throw Error(ErrorCode::kInvalidSystem, "root system failed validation");
  return WeylGroup::from_system(system, enumeration_cap);
}

Orbit orbit(const WeylGroup& group, const RVec& v, std::size_t cap) { return group.orbit(v, cap); }

bool contains_minus_id(const WeylGroup& group) { return group.contains_minus_id(); }

RVec weyl_chamber_representative(const WeylGroup& group, const RVec& v) {
  return group.chamber_representative(v);
}

}  // namespace weylforge
