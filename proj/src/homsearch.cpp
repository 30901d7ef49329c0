#include "masseywit/homsearch.hpp"

#include <atomic>
#include <cmath>

#include "masseywit/parallel.hpp"

namespace masseywit {

namespace {

struct FreeEntry {
  u32 gen, i, j;
};

struct Scan {
  std::vector<FreeEntry> free_entries;
  std::vector<UniTriangular> base;  // superdiagonal fixed, free entries zero
  u64 total = 1;
};

Scan prepare(const HomSearch& q) {
  if (q.n < 1) throw input_error("hom search: n must be >= 1");
  if (!q.relators) throw input_error("hom search: relator list missing");
  if (q.superdiag.size() != q.n)
    throw input_error("hom search: need one superdiagonal class per level");
  for (const auto& cls : q.superdiag)
    if (cls.size() != q.d) throw input_error("hom search: class length != generator count");
  if (q.quotient_center && q.n < 2)
    throw input_error("hom search: central quotient needs n >= 2");

  Scan s;
  for (u32 g = 0; g < q.d; ++g)
    for (u32 i = 0; i < q.n; ++i)
      for (u32 j = i + 2; j <= q.n; ++j) {
        if (q.quotient_center && i == 0 && j == q.n) continue;  // coset representative
        s.free_entries.push_back(FreeEntry{g, i, j});
      }

  const double bits = hom_search_bits(q);
  if (bits > q.budget_bits || bits > 62)
    throw resource_error("hom search needs " + std::to_string(bits) + " bits, budget is " +
                             std::to_string(q.budget_bits),
                         static_cast<u64>(bits) + 1, static_cast<u64>(q.budget_bits));

  for (u32 g = 0; g < q.d; ++g) {
    UniTriangular m(q.n, q.p);
    for (u32 i = 0; i < q.n; ++i) m.set_entry(i, i + 1, q.superdiag[i][g] % q.p);
    s.base.push_back(std::move(m));
  }
  for (std::size_t e = 0; e < s.free_entries.size(); ++e) s.total *= q.p;
  return s;
}

std::vector<UniTriangular> decode(const Scan& s, const HomSearch& q, u64 t) {
  std::vector<UniTriangular> images = s.base;
  // big-endian digits: the first free entry is the most significant, so
  // ascending t is ascending lexicographic order of the entry tuple
  for (std::size_t e = s.free_entries.size(); e-- > 0;) {
    const FreeEntry& fe = s.free_entries[e];
    images[fe.gen].set_entry(fe.i, fe.j, static_cast<u32>(t % q.p));
    t /= q.p;
  }
  return images;
}

bool satisfies(const HomSearch& q, const std::vector<UniTriangular>& images) {
  for (const Word& w : *q.relators) {
    const UniTriangular v = evaluate_word(w, images, q.p, q.precision);
    if (q.quotient_center ? !is_central(v) : !v.is_identity()) return false;
  }
  return true;
}

}  // namespace

double hom_search_bits(const HomSearch& q) {
  const u64 per_gen = u64(q.n) * (q.n - 1) / 2 - (q.quotient_center && q.n >= 2 ? 1 : 0);
  return static_cast<double>(q.d * per_gen) * std::log2(static_cast<double>(q.p));
}

bool for_each_hom(const HomSearch& q,
                  const std::function<bool(const std::vector<UniTriangular>&)>& visit) {
  const Scan s = prepare(q);
  for (u64 t = 0; t < s.total; ++t) {
    const auto images = decode(s, q, t);
    if (satisfies(q, images) && !visit(images)) return false;
  }
  return true;
}

std::optional<std::vector<UniTriangular>> first_hom(const HomSearch& q) {
  const Scan s = prepare(q);
  std::atomic<u64> best{s.total};
  parallel_ranges(s.total, q.jobs, [&](u64 lo, u64 hi) {
    for (u64 t = lo; t < hi; ++t) {
      if (t >= best.load(std::memory_order_relaxed)) return;  // someone earlier already won
      if (satisfies(q, decode(s, q, t))) {
        u64 cur = best.load(std::memory_order_relaxed);
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
        return;
      }
    }
  });
  const u64 win = best.load();
  if (win == s.total) return std::nullopt;
  return decode(s, q, win);
}

bool exists_hom(const HomSearch& q) {
  const Scan s = prepare(q);
  std::atomic<bool> found{false};
  parallel_ranges(s.total, q.jobs, [&](u64 lo, u64 hi) {
    for (u64 t = lo; t < hi; ++t) {
      if (found.load(std::memory_order_relaxed)) return;
      if (satisfies(q, decode(s, q, t))) {
        found.store(true);
        return;
      }
    }
  });
  return found.load();
}

u64 count_homs(const HomSearch& q) {
  const Scan s = prepare(q);
  std::atomic<u64> total{0};
  parallel_ranges(s.total, q.jobs, [&](u64 lo, u64 hi) {
    u64 local = 0;
    for (u64 t = lo; t < hi; ++t)
      if (satisfies(q, decode(s, q, t))) ++local;
    total.fetch_add(local);
  });
  return total.load();
}

}  // namespace masseywit
