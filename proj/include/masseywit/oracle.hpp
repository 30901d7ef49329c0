#pragma once

#include <optional>
#include <string>
#include <vector>

#include "masseywit/fp.hpp"
#include "masseywit/homsearch.hpp"

namespace masseywit {

/// Finite group given by its multiplication table, with an attached
/// presentation for homomorphism enumeration. Group axioms and the
/// table/presentation consistency are validated on construction.
struct FiniteGroupTable {
  std::string name;
  u32 order = 1;
  std::vector<u32> mul;      // order x order, row-major: mul[g*order + h] = g*h
  u32 identity = 0;
  std::vector<u32> inverse;  // computed during validation
  std::vector<u32> generators;                // element indices
  std::vector<std::vector<int>> relators;     // signed 1-based generator refs

  u32 prod(u32 g, u32 h) const { return mul[g * order + h]; }
};

/// Validates group axioms, that the relators evaluate to the identity, and
/// that the generators generate. Throws input_error on any failure.
FiniteGroupTable validate_table(FiniteGroupTable t);

/// Table-group JSON: {"name":.., "order":N, "mul":[[..]..], "identity":..,
/// "generators":[..], "relators":[[signed refs]..]}.
FiniteGroupTable parse_table_group(const std::string& json_text);
std::string table_group_to_json(const FiniteGroupTable& t);

/// The ready-made corpus: Z/p, Z/p^2, (Z/p)^2 and the order-p^3 Heisenberg
/// group U_3(F_p), for p in {2, 3}.
FiniteGroupTable builtin_table_group(const std::string& name);
std::vector<std::string> builtin_table_group_names();

using Cochain1 = std::vector<u32>;  // G -> F_p, size N
using Cochain2 = std::vector<u32>;  // G x G -> F_p, size N^2, index g1*N+g2

/// Cochain-level mod-p cohomology of one table group. Construction builds the
/// coboundary matrix of degree one and an echelon basis of its image, which
/// back every class comparison.
class TableCohomology {
 public:
  TableCohomology(const FiniteGroupTable& t, u32 p, u32 size_bound = 64);

  const FiniteGroupTable& table() const { return t_; }
  u32 p() const { return p_; }

  Cochain2 d1(const Cochain1& c) const;
  std::vector<u32> d2(const Cochain2& c) const;  // size N^3

  static Cochain2 cup_cochain(const Cochain1& a, const Cochain1& b, u32 p);

  /// Basis of H^1 = Hom(G, F_p) = Ker d1.
  const std::vector<Cochain1>& h1_basis() const { return h1_; }

  /// Basis of H^2 = Ker d2 / Im d1, as canonically reduced cocycles.
  std::vector<Cochain2> h2_basis() const;

  bool is_coboundary(const Cochain2& z) const;
  /// Canonical representative of the class of z (reduction mod Im d1).
  Cochain2 class_rep(const Cochain2& z) const;
  /// Canonical representative of the cup class of a and b.
  Cochain2 cup_class(const Cochain1& a, const Cochain1& b) const;

  /// Some c with d1(c) = z, when one exists.
  std::optional<Cochain1> d1_preimage(const Cochain2& z) const;

  /// Matrix of d1 on the unit cochains, N^2 x N.
  const FpMat& d1_matrix() const { return d1_mat_; }

 private:
  FiniteGroupTable t_;
  u32 p_;
  FpMat d1_mat_;                      // N^2 x N
  std::vector<Cochain1> h1_;
  std::vector<Cochain2> im_d1_rref_;  // echelon basis of Im d1
  std::vector<std::size_t> im_d1_pivots_;
};

/// Verify the coboundary equations of a defining collection c (indexed
/// c[i][j], 0-based, with c[i][i] = alpha_i) and return the canonical class
/// of its value, or the first violated index pair.
struct DefiningSetReport {
  bool ok = false;
  std::size_t bad_i = 0, bad_j = 0;  // 0-based, valid when !ok
  Cochain2 value_class;              // canonical rep, valid when ok
};
DefiningSetReport defining_set_verify(const TableCohomology& coh,
                                      const std::vector<Cochain1>& alphas,
                                      const std::vector<std::vector<Cochain1>>& c);

/// Triple Massey value set as exact coset data: base value plus the spans
/// alpha_1 cup H^1 and H^1 cup alpha_3. Empty (not defined) when a cup
/// condition fails.
struct Massey3ValueSet {
  bool defined = false;
  Cochain2 base;                      // a value of one defining set (cochain)
  std::vector<Cochain2> spanning;     // spanning cochains of the coset
  bool contains_zero = false;
};

Massey3ValueSet massey3_value_set(const TableCohomology& coh, const Cochain1& a1,
                                  const Cochain1& a2, const Cochain1& a3);

/// All distinct canonical class representatives in the value set,
/// materialized from the coset data (small groups only).
std::vector<Cochain2> materialize_value_set(const TableCohomology& coh,
                                            const Massey3ValueSet& vs);

/// All distinct values over every defining set, by direct enumeration of the
/// defining cochains; the independent route against the coset description.
std::vector<Cochain2> enumerate_defining_set_values(const TableCohomology& coh, const Cochain1& a1,
                                                    const Cochain1& a2, const Cochain1& a3);

/// Hom search parameters for a table group's presentation: assignments of
/// the presented generators into U_{n+1}(F_p) with prescribed superdiagonal.
HomSearch table_hom_search(const FiniteGroupTable& t, u32 p, u32 n,
                           const std::vector<std::vector<u32>>& superdiag, bool quotient_center,
                           std::vector<Word>& relator_storage);

}  // namespace masseywit
