#include "masseywit/unitriangular.hpp"

#include <array>
#include <string>

namespace masseywit {

UniTriangular::UniTriangular(u32 n, u32 p) : n_(n), p_(p), e_(std::size_t(n) * (n + 1) / 2, 0) {
  if (n == 0) throw input_error("UniTriangular: size parameter n must be >= 1");
  if (!is_prime(p)) throw input_error("UniTriangular: modulus must be prime");
}

u32 UniTriangular::idx(u32 i, u32 j) const {
  if (i >= j || j > n_)
    throw input_error("UniTriangular: entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") is not strictly upper in dimension " + std::to_string(n_ + 1));
  // row i holds columns i+1..n at offset i*n - i(i-1)/2
  return i * n_ - i * (i - 1) / 2 + (j - i - 1);
}

UniTriangular UniTriangular::from_entries(u32 n, u32 p, std::initializer_list<Entry> entries) {
  UniTriangular g(n, p);
  for (const Entry& e : entries) g.set_entry(e.i, e.j, e.v);
  return g;
}

UniTriangular UniTriangular::full_superdiagonal(u32 n, u32 p) {
  UniTriangular g(n, p);
  for (u32 i = 0; i < n; ++i) g.set_entry(i, i + 1, 1);
  return g;
}

UniTriangular UniTriangular::from_packed(u32 n, u32 p, std::span<const u32> entries) {
  UniTriangular g(n, p);
  if (entries.size() != g.e_.size())
    throw input_error("from_packed: expected " + std::to_string(g.e_.size()) + " entries, got " +
                      std::to_string(entries.size()));
  for (std::size_t t = 0; t < entries.size(); ++t) {
    if (entries[t] >= p) throw input_error("from_packed: entry out of range [0, p)");
    g.e_[t] = entries[t];
  }
  return g;
}

bool UniTriangular::is_identity() const {
  for (u32 v : e_)
    if (v != 0) return false;
  return true;
}

bool operator==(const CenterQuotientElement& x, const CenterQuotientElement& y) {
  const UniTriangular &g = x.rep, &h = y.rep;
  if (g.n() != h.n() || g.p() != h.p()) return false;
  for (u32 i = 0; i + 1 <= g.n(); ++i)
    for (u32 j = i + 1; j <= g.n(); ++j) {
      if (i == 0 && j == g.n()) continue;
      if (g.entry(i, j) != h.entry(i, j)) return false;
    }
  return true;
}

bool is_central(const UniTriangular& g) {
  for (u32 i = 0; i <= g.n() - 1; ++i)
    for (u32 j = i + 1; j <= g.n(); ++j)
      if (!(i == 0 && j == g.n()) && g.entry(i, j) != 0) return false;
  return true;
}

static void check_compatible(const UniTriangular& g, const UniTriangular& h, const char* op) {
  if (g.n() != h.n() || g.p() != h.p())
    throw input_error(std::string(op) + ": operands live in different groups");
}

UniTriangular mul(const UniTriangular& g, const UniTriangular& h) {
  check_compatible(g, h, "mul");
  const u32 n = g.n(), p = g.p();
  UniTriangular r(n, p);
  for (u32 i = 0; i < n; ++i)
    for (u32 j = i + 1; j <= n; ++j) {
      u64 acc = g.entry(i, j) + h.entry(i, j);
      for (u32 l = i + 1; l < j; ++l) acc += u64(g.entry(i, l)) * h.entry(l, j);
      r.set_entry(i, j, static_cast<u32>(acc % p));
    }
  return r;
}

UniTriangular inverse(const UniTriangular& g) {
  const u32 n = g.n(), p = g.p();
  const Fp fp(p);
  UniTriangular x(n, p);
  // Solve g*x = I by increasing depth; x entries of lower depth are known
  // when needed.
  for (u32 depth = 1; depth <= n; ++depth)
    for (u32 i = 0; i + depth <= n; ++i) {
      const u32 j = i + depth;
      u64 acc = g.entry(i, j);
      for (u32 l = i + 1; l < j; ++l) acc += u64(g.entry(i, l)) * x.entry(l, j);
      x.set_entry(i, j, fp.neg(static_cast<u32>(acc % p)));
    }
  return x;
}

u32 group_exponent_log(u32 n, u32 p) {
  u32 m = 0;
  u64 q = 1;
  while (q < u64(n) + 1) {
    q *= p;
    ++m;
  }
  return m;
}

UniTriangular power_res(const UniTriangular& g, u64 m) {
  const u32 M = group_exponent_log(g.n(), g.p());
  u64 pm = 1;
  for (u32 t = 0; t < M; ++t) pm *= g.p();
  u64 e = m % pm;
  UniTriangular r = UniTriangular::identity(g.n(), g.p());
  UniTriangular base = g;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

UniTriangular power(const UniTriangular& g, i64 m) {
  if (m >= 0) return power_res(g, static_cast<u64>(m));
  return power_res(inverse(g), static_cast<u64>(-m));
}

UniTriangular commutator(const UniTriangular& g, const UniTriangular& h) {
  check_compatible(g, h, "commutator");
  return mul(mul(g, h), mul(inverse(g), inverse(h)));
}

u32 filtration_level(const UniTriangular& g) {
  u32 best = UniTriangular::kInfiniteLevel;
  for (u32 i = 0; i < g.n(); ++i)
    for (u32 j = i + 1; j <= g.n(); ++j)
      if (g.entry(i, j) != 0 && j - i < best) best = j - i;
  return best;
}

GradedLieElement graded_image(const UniTriangular& g) {
  const u32 k = filtration_level(g);
  if (k == UniTriangular::kInfiniteLevel)
    throw input_error("graded_image: the identity has no graded image");
  GradedLieElement x{g.n(), g.p(), k, std::vector<u32>(g.n() + 1 - k, 0)};
  for (u32 i = 0; i + k <= g.n(); ++i) x.coeffs[i] = g.entry(i, i + k);
  return x;
}

GradedLieElement lie_bracket(const GradedLieElement& x, const GradedLieElement& y) {
  if (x.n != y.n || x.p != y.p) throw input_error("lie_bracket: mismatched algebras");
  const u32 n = x.n, k = x.level + y.level;
  GradedLieElement r{n, x.p, k, {}};
  if (k > n) return r;  // zero space
  const Fp fp(x.p);
  r.coeffs.assign(n + 1 - k, 0);
  // [e_{i,i+kx}, e_{j,j+ky}] telescopes to two shifted products.
  for (u32 m = 0; m + k <= n; ++m) {
    const u32 lhs = fp.mul(x.coeffs[m], y.coeffs[m + x.level]);
    const u32 rhs = fp.mul(x.coeffs[m + y.level], y.coeffs[m]);
    r.coeffs[m] = fp.sub(lhs, rhs);
  }
  return r;
}

UniTriangular conj_by_diagonal(const UniTriangular& g, std::span<const u32> d) {
  if (d.size() != g.dim())
    throw input_error("conj_by_diagonal: need " + std::to_string(g.dim()) + " diagonal entries");
  const Fp fp(g.p());
  for (u32 v : d)
    if (v % g.p() == 0) throw input_error("conj_by_diagonal: zero diagonal entry");
  UniTriangular r(g.n(), g.p());
  for (u32 i = 0; i < g.n(); ++i)
    for (u32 j = i + 1; j <= g.n(); ++j)
      r.set_entry(i, j, fp.mul(g.entry(i, j), fp.mul(d[i], fp.inv(d[j]))));
  return r;
}

UniTriangular solve_commutator_equation(const UniTriangular& A, const UniTriangular& C, u32 k) {
  check_compatible(A, C, "solve_commutator_equation");
  const u32 n = A.n();
  if (k < 2 || k > n)
    throw input_error("solve_commutator_equation: level k=" + std::to_string(k) +
                      " out of range [2, " + std::to_string(n) + "]");
  if (filtration_level(C) < k)
    throw input_error("solve_commutator_equation: C is not in U_(" + std::to_string(k) + ")");

  const Fp fp(A.p());
  std::vector<u32> a(n);
  for (u32 i = 0; i < n; ++i) a[i] = A.entry(i, i + 1);

  UniTriangular B = UniTriangular::identity(n, A.p());
  u32 prev_level = 0;
  for (u32 iter = 0; iter <= n + 1; ++iter) {
    const UniTriangular defect = mul(inverse(commutator(B, A)), C);
    if (defect.is_identity()) return B;
    const u32 m = filtration_level(defect);
    if (m <= prev_level)
      throw internal_error("solve_commutator_equation: defect level did not increase");
    prev_level = m;
    const GradedLieElement c = graded_image(defect);
    const FpMat sys = banded_commutator_matrix(fp, a, m);
    auto sol = gauss_solve(sys, c.coeffs);
    if (!sol)
      throw no_solution_error("no solution at level " + std::to_string(m), m);
    UniTriangular lift(n, A.p());
    for (u32 j = 0; j + (m - 1) <= n; ++j) lift.set_entry(j, j + m - 1, sol->particular[j]);
    B = mul(lift, B);
  }
  throw internal_error("solve_commutator_equation: failed to terminate");
}

}  // namespace masseywit
