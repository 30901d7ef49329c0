#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "masseywit/presentation.hpp"

namespace masseywit {

/// Exhaustive enumeration of generator assignments into U_{n+1}(F_p) (or its
/// central quotient) with prescribed superdiagonal entries. The deeper
/// strictly-upper entries are free and scanned generator-major,
/// entry-lexicographic, value-ascending, so the stream order is canonical.
struct HomSearch {
  u32 p = 2;
  u32 n = 2;
  u32 precision = kDefaultPrecision;
  u32 d = 1;
  const std::vector<Word>* relators = nullptr;
  /// n vectors of length d: superdiag[i][g] lands at entry (i, i+1) of x_g.
  std::vector<std::vector<u32>> superdiag;
  /// Enumerate homs to U_{n+1}/Z instead: the (0, n) corner of every image is
  /// pinned to 0 (coset representatives) and relators only need to land in Z.
  bool quotient_center = false;
  /// Enumeration size guard: free entries * log2(p) must stay below this.
  double budget_bits = 34;
  unsigned jobs = 1;
};

/// Visit assignments satisfying all relators, in canonical order (when
/// jobs > 1 the index space is partitioned and results are merged back into
/// canonical order). The visitor returns false to stop early; the function
/// returns false iff a visitor stopped the scan.
bool for_each_hom(const HomSearch& q,
                  const std::function<bool(const std::vector<UniTriangular>&)>& visit);

std::optional<std::vector<UniTriangular>> first_hom(const HomSearch& q);
bool exists_hom(const HomSearch& q);
u64 count_homs(const HomSearch& q);

/// Required entropy in bits for the scan, used in resource errors.
double hom_search_bits(const HomSearch& q);

}  // namespace masseywit
