#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weylforge/rational.hpp"
#include "weylforge/rootsys.hpp"

namespace weylforge {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
inline constexpr std::size_t kDefaultOrbitCap = 2'000'000;

/// Abstract irreducible Weyl group label: A_l, B_l, D_l, E6, E7, E8, F4, G2.
/// B, C and BC root systems all carry the label B_l.
struct WeylLabel {
  RootType type = RootType::kA;
  int rank = 1;

  std::string name() const;  // "A2", "B3", "E6"
  bool operator==(const WeylLabel&) const = default;
};

WeylLabel weyl_label_of(RootType system_type, int rank);
/// Order from the classical formulas.
Integer weyl_order(const WeylLabel& label);
/// Whether -id lies in the group, by the classification rule
/// (false exactly for A_{l>=2}, D_{odd}, E6).
bool minus_id_rule(const WeylLabel& label);
/// A canonical root system realizing the label. Low-rank coincidences are
/// mapped onto their canonical systems (B1 -> BC1, D3 -> A3).
RootSystem system_for_label(const WeylLabel& label);

using RMatrix = std::vector<RVec>;  // row-major rational matrix

/// Point set of a group orbit, stored as integer coordinates over a common
/// denominator.
class Orbit {
 public:
  Orbit(RVec seed, std::size_t dim, Integer denominator);

  const RVec& seed() const { return seed_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / (dim_ == 0 ? 1 : dim_); }
  const Integer& denominator() const { return denominator_; }
  RVec point(std::size_t i) const;
  std::vector<double> point_double(std::size_t i) const;
  /// Integer numerators of point i (coordinates are numerator / denominator()).
  const std::int64_t* numerators(std::size_t i) const { return coords_.data() + i * dim_; }
  bool contains(const RVec& v) const;
  /// |W| / |orbit| (orbit-stabilizer).
  const Integer& stabilizer_order() const { return stabilizer_order_; }

 private:
  friend class WeylGroup;
  RVec seed_;
  std::size_t dim_;
  Integer denominator_;
  std::vector<std::int64_t> coords_;
  Integer stabilizer_order_ = 0;
};

/// Finite reflection group generated by the reflections in a list of simple
/// roots, acting on an ambient rational space. Elements are exact matrices.
class WeylGroup {
 public:
  struct Component {
    WeylLabel label;
    std::size_t offset = 0;  // first ambient coordinate of the block
  };

  /// Irreducible group of a canonical root system.
  static WeylGroup from_system(const RootSystem& system, std::uint64_t enumeration_cap);

  /// General constructor: `simple_roots` and `roots` live in an ambient space
  /// of dimension `dim`; `euclidean_dim` counts trailing coordinates acted on
  /// trivially (a flat factor). `order` is the known group order.
  static WeylGroup from_parts(std::size_t dim, std::vector<RVec> simple_roots, std::vector<RVec> roots,
                              std::vector<Component> components, std::size_t euclidean_dim,
                              Integer order, std::uint64_t enumeration_cap);

  std::size_t dim() const { return dim_; }
  /// Dimension of the Cartan space the group acts on (root span plus flat block).
  std::size_t cartan_dim() const { return rank_ + euclidean_dim_; }
  std::size_t rank() const { return rank_; }
  std::size_t euclidean_dim() const { return euclidean_dim_; }
  const RootSystem* system() const { return system_.get(); }
  const std::vector<Component>& components() const { return components_; }
  std::string label() const;

  const std::vector<RVec>& simple_roots() const { return simple_roots_; }
  const std::vector<RVec>& roots() const { return roots_; }
  /// Roots whose first non-zero simple-root coordinate is positive.
  const std::vector<RVec>& positive_roots() const { return positive_roots_; }
  std::size_t generator_count() const { return simple_roots_.size(); }
  RMatrix generator(std::size_t i) const;

  const Integer& order() const { return order_; }
  bool enumerated() const { return enumerated_; }
  std::size_t element_count() const;
  RMatrix element(std::size_t i) const;
  RVec apply_element(std::size_t i, const RVec& v) const;
  /// Common denominator of every enumerated matrix entry.
  std::int64_t denominator() const { return denominator_; }

  bool contains_minus_id() const { return minus_id_; }
  /// Word in the generators (indices) equal to -id, when it is an element.
  const std::vector<std::size_t>& minus_id_word() const { return minus_id_word_; }

  RVec apply_word(const std::vector<std::size_t>& word, RVec v) const;
  RMatrix word_matrix(const std::vector<std::size_t>& word) const;

  /// Orbit of v under the group, computed from the generators.
  Orbit orbit(const RVec& v, std::size_t cap = kDefaultOrbitCap) const;
  /// Unique orbit point in the closed dominant chamber (all simple pairings >= 0).
  RVec chamber_representative(const RVec& v) const;
  /// Fundamental weights of the simple system (inside the root span).
  const std::vector<RVec>& fundamental_weights() const { return weights_; }

  /// CLI-facing record: {type, rank, order, contains_minus_id, enumerated}.
  std::string to_json() const;

 private:
  WeylGroup() = default;
  void build_generators();
  void enumerate(std::uint64_t cap);
  void certify_minus_id();

  std::size_t dim_ = 0;
  std::size_t rank_ = 0;
  std::size_t euclidean_dim_ = 0;
  std::shared_ptr<const RootSystem> system_;
  std::vector<Component> components_;
  std::vector<RVec> simple_roots_;
  std::vector<RVec> roots_;
  std::vector<RVec> positive_roots_;
  std::vector<RVec> weights_;
  std::int64_t denominator_ = 1;
  std::vector<std::vector<std::int64_t>> int_roots_;  // simple roots scaled to integers
  Integer order_ = 1;
  bool enumerated_ = false;
  std::vector<std::int8_t> elements_;  // dim*dim numerators per element
  bool minus_id_ = false;
  std::vector<std::size_t> minus_id_word_;
};

WeylGroup generate_weyl_group(const RootSystem& system,
                              std::uint64_t enumeration_cap = kDefaultEnumerationCap);
Orbit orbit(const WeylGroup& group, const RVec& v, std::size_t cap = kDefaultOrbitCap);
bool contains_minus_id(const WeylGroup& group);
RVec weyl_chamber_representative(const WeylGroup& group, const RVec& v);

}  // namespace weylforge
