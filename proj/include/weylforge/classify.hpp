#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "weylforge/normforge.hpp"
#include "weylforge/weylgrp.hpp"

namespace weylforge {

/// One row of the symmetric-space table as stored (name templates use
/// {expr} placeholders over the row parameters).
struct SpaceRow {
  int id = 0;
  std::string noncompact;
  std::string compact;
  std::vector<std::string> params;
  std::string weyl;  // A, B, D, E6, E7, E8, F4, G2
  std::string rank;  // expression in the parameters
  std::string dim;   // expression in the parameters
  std::vector<std::string> constraints;
  std::string note;
};

/// A table row with parameters bound.
struct SpaceRecord {
  int row = 0;
  std::string noncompact;
  std::string compact;
  std::string matched;  // noncompact, compact or alias
  WeylLabel weyl;
  long long dim = 0;
  std::map<std::string, long long> params;
  std::string note;

  int rank() const { return weyl.rank; }
};

/// Euclidean factor, bound symmetric factors and a count of non-symmetric
/// irreducible factors (each with a one-dimensional Cartan piece).
struct DeRhamDecomposition {
  std::size_t euclidean_dim = 0;
  std::vector<SpaceRecord> symmetric;
  std::size_t nonsymmetric = 0;
};

const std::vector<SpaceRow>& table_rows();
/// The embedded dataset, verbatim.
const char* table_json();

/// Canonical form of a space name: drops blanks, underscores, braces and
/// TeX markup, maps the product sign to x and expands x2G to GxG.
std::string normalize_space_name(std::string_view name);

/// Throws UnknownSpace or ParamsViolateConstraints.
SpaceRecord lookup(std::string_view name);

/// Families whose restricted Weyl group has rank one, both columns, rendered
/// with the rank parameter set to 1.
std::vector<std::string> rank_one_list();
/// Concrete rank-one names that arise from a small value of a row parameter.
std::vector<std::string> rank_one_isolated();
struct RankOneIsomorphism {
  std::string name;
  std::string same_as;
};
const std::vector<RankOneIsomorphism>& rank_one_isomorphisms();

struct SkewEntry {
  int row = 0;
  std::string noncompact;
  std::string compact;
  std::string condition;  // e.g. "n>=3", "p=2k+1", empty when unconditional
};
/// Rows whose Weyl group can be A_{l>=2}, D_{odd} or E6, with the parameter condition.
std::vector<SkewEntry> irreversible_list();

/// A_{l>=2}, D_{odd}, E6: the irreducible Weyl groups without -id.
bool skew_label(const WeylLabel& label);

int rank(const DeRhamDecomposition& d);
bool nonriemannian_berwald_metrizable(const DeRhamDecomposition& d);
bool irreversible_metrizable(const DeRhamDecomposition& d);
/// Throws NotAffineSymmetric when a non-symmetric factor is present.
bool cartan_symmetric(const DeRhamDecomposition& d, NormMode mode);
/// Block-diagonal product: full Weyl group per symmetric block, {+-1} per
/// non-symmetric line, identity on the Euclidean block (trailing coordinates).
WeylGroup product_weyl_group(const DeRhamDecomposition& d, std::uint64_t enumeration_cap = kDefaultEnumerationCap);

}  // namespace weylforge
