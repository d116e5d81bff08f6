#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weylforge/rational.hpp"

namespace weylforge {

enum class RootType { kA, kB, kC, kBC, kD, kE6, kE7, kE8, kF4, kG2, kCustom };

std::string to_string(RootType type);
/// Accepts "A", "B", "C", "BC", "D", "E6".."E8", "F4", "G2"; the bare
/// letters "E", "F", "G" are resolved against `rank` (e.g. "E" + 7 -> E7).
RootType parse_root_type(std::string_view text, int rank);

/// Throws UnknownType / RankOutOfRange when (type, rank) is not one of the
/// canonical irreducible labels.
void check_admissible(RootType type, int rank);

/// Irreducible (possibly non-reduced) root system in exact rational
/// coordinates. Simple roots follow Bourbaki's numbering of the Dynkin
/// diagram; see README.md for the realizations.
struct RootSystem {
  RootType type = RootType::kCustom;
  int rank = 0;
  std::size_t ambient_dim = 0;
  std::vector<RVec> roots;  // sorted lexicographically
  std::vector<std::size_t> simple_root_indices;
  std::vector<RVec> simple_roots;
  std::vector<RVec> positive_roots;
  std::vector<RVec> fundamental_weights;

  std::string label() const;  // e.g. "A2", "BC1", "E6"
  bool reduced() const { return type != RootType::kBC; }

  /// Coefficients of `v` in the simple-root basis. `v` must lie in their span.
  RVec simple_coordinates(const RVec& v) const;
};

RootSystem build_root_system(RootType type, int rank);

/// Hand-built system for validation experiments. `simple_roots` may be
/// empty, in which case the basis-dependent checks are skipped.
RootSystem custom_root_system(std::vector<RVec> roots, std::vector<RVec> simple_roots = {});

/// Dual basis to the simple coroots, inside the span of `simple_roots`.
std::vector<RVec> fundamental_weights_of(const std::vector<RVec>& simple_roots);

/// Closed-form root count of a canonical system.
std::size_t expected_root_count(RootType type, int rank);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string detail;  // counterexample on failure
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
  const ValidationCheck* find(std::string_view name) const;
};

/// Exact check of the root-system axioms and the derived data.
ValidationReport validate(const RootSystem& system);

/// JSON export with rationals as "p/q" strings; exact round trip.
std::string to_json(const RootSystem& system);
RootSystem root_system_from_json(std::string_view text);

}  // namespace weylforge
