#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "masseywit/fp.hpp"

namespace masseywit {

/// Element of U_{n+1}(F_p): a unipotent upper-triangular (n+1)x(n+1) matrix.
/// Only the strictly upper entries are stored (row-major packed); the
/// diagonal is implicitly 1, below-diagonal implicitly 0. Indices are
/// 0-based, so the matrix has rows/columns 0..n and entry(i, j) requires
/// i < j. Values are immutable in spirit: operations return fresh elements.
class UniTriangular {
 public:
  static constexpr u32 kInfiniteLevel = 0xffffffffu;

  UniTriangular(u32 n, u32 p);  // identity

  static UniTriangular identity(u32 n, u32 p) { return UniTriangular(n, p); }

  struct Entry {
    u32 i, j, v;
  };
  /// I + sum of v*E_{i,j} over the given entries.
  static UniTriangular from_entries(u32 n, u32 p, std::initializer_list<Entry> entries);
  /// A = I + E_{0,1} + E_{1,2} + ... + E_{n-1,n}, the full-superdiagonal matrix.
  static UniTriangular full_superdiagonal(u32 n, u32 p);

  u32 n() const { return n_; }
  u32 p() const { return p_; }
  u32 dim() const { return n_ + 1; }

  u32 entry(u32 i, u32 j) const { return e_[idx(i, j)]; }
  void set_entry(u32 i, u32 j, u32 v) { e_[idx(i, j)] = v % p_; }

  bool is_identity() const;
  bool operator==(const UniTriangular&) const = default;

  /// Strictly upper entries by (i, j) ascending row-major: the certificate
  /// wire order.
  const std::vector<u32>& packed() const { return e_; }
  static UniTriangular from_packed(u32 n, u32 p, std::span<const u32> entries);

 private:
  u32 idx(u32 i, u32 j) const;
  u32 n_, p_;
  std::vector<u32> e_;
};

/// Element of the graded piece L(U)_k in the basis e_{1,1+k},...,e_{n+1-k,n+1}.
/// coeffs has length n+1-k; levels above n are the zero space (empty coeffs).
struct GradedLieElement {
  u32 n = 0, p = 2;
  u32 level = 1;
  std::vector<u32> coeffs;

  bool is_zero() const {
    for (u32 c : coeffs)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const GradedLieElement&) const = default;
};

/// U_{n+1} mod its centre Z = {I + a*E_{0,n}}: equality ignores the corner.
struct CenterQuotientElement {
  UniTriangular rep;
  friend bool operator==(const CenterQuotientElement& x, const CenterQuotientElement& y);
};

bool is_central(const UniTriangular& g);  // g in Z, i.e. all entries off (0,n) vanish

UniTriangular mul(const UniTriangular& g, const UniTriangular& h);
UniTriangular inverse(const UniTriangular& g);
inline UniTriangular operator*(const UniTriangular& g, const UniTriangular& h) { return mul(g, h); }

/// Exponent of U_{n+1}(F_p): the least M with p^M >= n+1. power() reduces its
/// exponent mod p^M, so arguments given modulo p^K are fine whenever K >= M.
u32 group_exponent_log(u32 n, u32 p);

UniTriangular power(const UniTriangular& g, i64 m);
UniTriangular power_res(const UniTriangular& g, u64 m);  // m a residue mod p^K, K >= M

/// [g, h] = g h g^-1 h^-1.
UniTriangular commutator(const UniTriangular& g, const UniTriangular& h);

/// Largest k with g in U_{(k)}: the minimum of j-i over nonzero entries.
/// Identity reports kInfiniteLevel.
u32 filtration_level(const UniTriangular& g);

/// Coset of g in U_{(k)}/U_{(k+1)} at k = filtration_level(g).
GradedLieElement graded_image(const UniTriangular& g);

GradedLieElement lie_bracket(const GradedLieElement& x, const GradedLieElement& y);

/// Conjugation by diag(d_0,...,d_n): entry (i,j) scales by d_i/d_j.
UniTriangular conj_by_diagonal(const UniTriangular& g, std::span<const u32> d);

/// Solve [B, A] = C with C in U_{(k)}, 2 <= k <= n, returning B in U_{(k-1)}.
/// Layered scheme: peel the lowest level of the remaining defect
/// [B_l...B_1, A]^-1 * C, solve the banded bracket system there, lift, repeat.
/// Throws no_solution_error when a level's system is inconsistent (the
/// superdiagonal of A violates the solvability condition).
UniTriangular solve_commutator_equation(const UniTriangular& A, const UniTriangular& C, u32 k);

}  // namespace masseywit
