#include "masseywit/fp.hpp"

#include <string>

namespace masseywit {

bool is_prime(u32 m) {
  if (m < 2) return false;
  for (u64 q = 2; q * q <= m; ++q)
    if (m % q == 0) return false;
  return true;
}

Fp::Fp(u32 p) : p_(p) {
  if (!is_prime(p)) throw input_error("modulus " + std::to_string(p) + " is not prime");
}

u32 Fp::pow(u32 a, u64 e) const {
  u64 r = 1, base = a % p_;
  while (e) {
    if (e & 1) r = r * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 Fp::inv(u32 a) const {
  if (a % p_ == 0) throw input_error("division by zero in F_" + std::to_string(p_));
  return pow(a % p_, p_ - 2);
}

u32 Fp::reduce(i64 v) const {
  i64 r = v % static_cast<i64>(p_);
  if (r < 0) r += p_;
  return static_cast<u32>(r);
}

std::optional<LinearSolution> gauss_solve(const FpMat& A, std::span<const u32> b) {
  if (A.rows != b.size())
    throw input_error("gauss_solve: rhs length " + std::to_string(b.size()) +
                      " does not match " + std::to_string(A.rows) + " rows");
  const Fp fp(A.p);
  const std::size_t m = A.rows, nc = A.cols;

  // Work on the augmented matrix [A | b].
  FpMat w(A.p, m, nc + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nc; ++j) w.at(i, j) = A.at(i, j) % A.p;
    w.at(i, nc) = b[i] % A.p;
  }

  std::vector<std::size_t> pivot_col;  // pivot column of each echelon row
  std::size_t row = 0;
  for (std::size_t col = 0; col < nc && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && w.at(piv, col) == 0) ++piv;
    if (piv == m) continue;
    if (piv != row)
      for (std::size_t j = col; j <= nc; ++j) std::swap(w.at(piv, j), w.at(row, j));
    const u32 s = fp.inv(w.at(row, col));
    for (std::size_t j = col; j <= nc; ++j) w.at(row, j) = fp.mul(w.at(row, j), s);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || w.at(i, col) == 0) continue;
      const u32 f = w.at(i, col);
      for (std::size_t j = col; j <= nc; ++j)
        w.at(i, j) = fp.sub(w.at(i, j), fp.mul(f, w.at(row, j)));
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (w.at(i, nc) != 0) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(nc, 0);
  for (std::size_t r = 0; r < pivot_col.size(); ++r)
    sol.particular[pivot_col[r]] = w.at(r, nc);

  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  for (std::size_t freec = 0; freec < nc; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<u32> v(nc, 0);
    v[freec] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      v[pivot_col[r]] = fp.neg(w.at(r, freec));
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

std::size_t rank(const FpMat& A) {
  std::vector<u32> zero(A.rows, 0);
  auto sol = gauss_solve(A, zero);
  return A.cols - sol->nullspace.size();
}

FpMat banded_commutator_matrix(const Fp& fp, std::span<const u32> a, std::size_t k) {
  const std::size_t n = a.size();
  if (k < 2 || k > n)
    throw input_error("banded_commutator_matrix: level " + std::to_string(k) +
                      " out of range [2, " + std::to_string(n) + "]");
  FpMat m(fp.p(), n + 1 - k, n + 2 - k);
  for (std::size_t j = 0; j < n + 1 - k; ++j) {
    m.at(j, j) = a[k - 1 + j] % fp.p();
    m.at(j, j + 1) = fp.neg(a[j] % fp.p());
  }
  return m;
}

}  // namespace masseywit
