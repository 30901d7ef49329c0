#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "masseywit/errors.hpp"

namespace masseywit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Arithmetic context for the prime field F_p. Values are plain u32 residues
/// in [0, p); the context is passed wherever arithmetic happens, so there is
/// no global modulus state.
class Fp {
 public:
  explicit Fp(u32 p);

  u32 p() const { return p_; }

  u32 add(u32 a, u32 b) const { return (a + b) % p_; }
  u32 sub(u32 a, u32 b) const { return (a + p_ - b) % p_; }
  u32 neg(u32 a) const { return (p_ - a) % p_; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(u64(a) * b % p_); }
  u32 inv(u32 a) const;                 // a != 0
  u32 pow(u32 a, u64 e) const;
  u32 reduce(i64 v) const;              // signed integer -> residue

 private:
  u32 p_;
};

bool is_prime(u32 m);

/// Dense row-major matrix over F_p. Everything in this artifact is tiny
/// (a few dozen columns at most), so no sparsity games.
struct FpMat {
  u32 p = 2;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u32> a;  // rows*cols entries, reduced mod p

  FpMat() = default;
  FpMat(u32 modulus, std::size_t r, std::size_t c)
      : p(modulus), rows(r), cols(c), a(r * c, 0) {}

  u32& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  u32 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  bool operator==(const FpMat&) const = default;
};

struct LinearSolution {
  std::vector<u32> particular;             // one x with A*x = b
  std::vector<std::vector<u32>> nullspace; // basis of {v : A*v = 0}
};

/// Gaussian elimination with first-nonzero pivoting and left-to-right column
/// order. Free variables are zero in the particular solution and the
/// nullspace basis is listed by ascending free column, so results are
/// reproducible across runs. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> gauss_solve(const FpMat& A, std::span<const u32> b);

std::size_t rank(const FpMat& A);

/// Coefficient matrix of the level-k bracket system for a superdiagonal
/// vector a of length n: shape (n+1-k) x (n+2-k), row j carrying a_{k+j-1}
/// in column j and -a_j in column j+1 (1-based), zeros elsewhere.
FpMat banded_commutator_matrix(const Fp& fp, std::span<const u32> a, std::size_t k);

}  // namespace masseywit
