#include "masseywit/oracle.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

namespace masseywit {

using ordered_json = nlohmann::ordered_json;

namespace {

u32 table_eval(const FiniteGroupTable& t, const std::vector<int>& word) {
  u32 acc = t.identity;
  for (int ref : word) {
    if (ref == 0) throw input_error("table relator: generator references are 1-based, nonzero");
    const std::size_t gi = static_cast<std::size_t>(ref > 0 ? ref : -ref) - 1;
    if (gi >= t.generators.size())
      throw input_error("table relator references generator " + std::to_string(gi + 1) +
                        " beyond the generator list");
    const u32 el = ref > 0 ? t.generators[gi] : t.inverse[t.generators[gi]];
    acc = t.prod(acc, el);
  }
  return acc;
}

std::vector<int> invert_refs(const std::vector<int>& w) {
  std::vector<int> r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

std::vector<int> concat_refs(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> r;
  for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
  return r;
}

std::vector<int> comm_refs(const std::vector<int>& a, const std::vector<int>& b) {
  return concat_refs({a, b, invert_refs(a), invert_refs(b)});
}

std::vector<int> pow_refs(const std::vector<int>& a, u32 e) {
  std::vector<int> r;
  for (u32 t = 0; t < e; ++t) r.insert(r.end(), a.begin(), a.end());
  return r;
}

}  // namespace

FiniteGroupTable validate_table(FiniteGroupTable t) {
  const u32 N = t.order;
  if (N == 0 || t.mul.size() != std::size_t(N) * N)
    throw input_error("table group: multiplication table must be order x order");
  for (u32 v : t.mul)
    if (v >= N) throw input_error("table group: entry out of range");

  // identity (recompute rather than trust the field)
  std::optional<u32> e;
  for (u32 g = 0; g < N && !e; ++g) {
    bool ok = true;
    for (u32 h = 0; h < N && ok; ++h) ok = t.prod(g, h) == h && t.prod(h, g) == h;
    if (ok) e = g;
  }
  if (!e) throw input_error("table group: no identity element");
  t.identity = *e;

  for (u32 a = 0; a < N; ++a)
    for (u32 b = 0; b < N; ++b)
      for (u32 c = 0; c < N; ++c)
        if (t.prod(t.prod(a, b), c) != t.prod(a, t.prod(b, c)))
          throw input_error("table group: multiplication is not associative");

  t.inverse.assign(N, 0);
  for (u32 g = 0; g < N; ++g) {
    std::optional<u32> inv;
    for (u32 h = 0; h < N && !inv; ++h)
      if (t.prod(g, h) == t.identity && t.prod(h, g) == t.identity) inv = h;
    if (!inv) throw input_error("table group: element without inverse");
    t.inverse[g] = *inv;
  }

  for (u32 g : t.generators)
    if (g >= N) throw input_error("table group: generator index out of range");

  // generators generate (finite, so monoid closure is enough)
  {
    std::vector<bool> seen(N, false);
    std::vector<u32> frontier{t.identity};
    seen[t.identity] = true;
    while (!frontier.empty()) {
      const u32 g = frontier.back();
      frontier.pop_back();
      for (u32 x : t.generators) {
        const u32 h = t.prod(g, x);
        if (!seen[h]) {
          seen[h] = true;
          frontier.push_back(h);
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), true) != static_cast<long>(N))
      throw input_error("table group: listed generators do not generate");
  }

  for (const auto& w : t.relators)
    if (table_eval(t, w) != t.identity)
      throw input_error("table group: a relator does not evaluate to the identity");

  return t;
}

FiniteGroupTable parse_table_group(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("table group: invalid JSON: ") + e.what());
  }
  FiniteGroupTable t;
  try {
    t.name = j.contains("name") ? j.at("name").get<std::string>() : "";
    t.order = j.at("order").get<u32>();
    const auto rows = j.at("mul").get<std::vector<std::vector<u32>>>();
    if (rows.size() != t.order) throw input_error("table group: wrong number of rows");
    for (const auto& r : rows) {
      if (r.size() != t.order) throw input_error("table group: ragged multiplication table");
      t.mul.insert(t.mul.end(), r.begin(), r.end());
    }
    t.generators = j.at("generators").get<std::vector<u32>>();
    t.relators = j.at("relators").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("table group: ") + e.what());
  }
  return validate_table(std::move(t));
}

std::string table_group_to_json(const FiniteGroupTable& t) {
  ordered_json j;
  j["name"] = t.name;
  j["order"] = t.order;
  ordered_json rows = ordered_json::array();
  for (u32 g = 0; g < t.order; ++g) {
    ordered_json row = ordered_json::array();
    for (u32 h = 0; h < t.order; ++h) row.push_back(t.prod(g, h));
    rows.push_back(std::move(row));
  }
  j["mul"] = std::move(rows);
  j["identity"] = t.identity;
  j["generators"] = t.generators;
  j["relators"] = t.relators;
  return j.dump();
}

namespace {

FiniteGroupTable make_cyclic(const std::string& name, u32 m) {
  FiniteGroupTable t;
  t.name = name;
  t.order = m;
  t.mul.resize(std::size_t(m) * m);
  for (u32 a = 0; a < m; ++a)
    for (u32 b = 0; b < m; ++b) t.mul[a * m + b] = (a + b) % m;
  t.generators = {1 % m};
  t.relators = {pow_refs({1}, m)};
  return validate_table(std::move(t));
}

FiniteGroupTable make_elem_abelian2(const std::string& name, u32 p) {
  FiniteGroupTable t;
  t.name = name;
  t.order = p * p;
  t.mul.resize(std::size_t(t.order) * t.order);
  auto idx = [p](u32 a, u32 b) { return a * p + b; };
  for (u32 a = 0; a < p; ++a)
    for (u32 b = 0; b < p; ++b)
      for (u32 c = 0; c < p; ++c)
        for (u32 d = 0; d < p; ++d)
          t.mul[idx(a, b) * t.order + idx(c, d)] = idx((a + c) % p, (b + d) % p);
  t.generators = {idx(1, 0), idx(0, 1)};
  t.relators = {pow_refs({1}, p), pow_refs({2}, p), comm_refs({1}, {2})};
  return validate_table(std::move(t));
}

FiniteGroupTable make_heisenberg(const std::string& name, u32 p) {
  // (a,b,c) <-> I + a E12 + b E23 + c E13 in U_3(F_p)
  FiniteGroupTable t;
  t.name = name;
  t.order = p * p * p;
  t.mul.resize(std::size_t(t.order) * t.order);
  auto idx = [p](u32 a, u32 b, u32 c) { return (a * p + b) * p + c; };
  for (u32 a = 0; a < p; ++a)
    for (u32 b = 0; b < p; ++b)
      for (u32 c = 0; c < p; ++c)
        for (u32 a2 = 0; a2 < p; ++a2)
          for (u32 b2 = 0; b2 < p; ++b2)
            for (u32 c2 = 0; c2 < p; ++c2)
              t.mul[idx(a, b, c) * t.order + idx(a2, b2, c2)] =
                  idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
  t.generators = {idx(1, 0, 0), idx(0, 1, 0)};
  const std::vector<int> x{1}, y{2};
  const auto z = comm_refs(x, y);
  t.relators = {pow_refs(x, p), pow_refs(y, p), pow_refs(z, p), comm_refs(z, x), comm_refs(z, y)};
  return validate_table(std::move(t));
}

}  // namespace

std::vector<std::string> builtin_table_group_names() {
  return {"z2", "z3", "z4", "z9", "z2xz2", "z3xz3", "u3f2", "u3f3"};
}

FiniteGroupTable builtin_table_group(const std::string& name) {
  if (name == "z2") return make_cyclic(name, 2);
  if (name == "z3") return make_cyclic(name, 3);
  if (name == "z4") return make_cyclic(name, 4);
  if (name == "z9") return make_cyclic(name, 9);
  if (name == "z2xz2") return make_elem_abelian2(name, 2);
  if (name == "z3xz3") return make_elem_abelian2(name, 3);
  if (name == "u3f2") return make_heisenberg(name, 2);
  if (name == "u3f3") return make_heisenberg(name, 3);
  throw input_error("unknown builtin table group '" + name + "'");
}

namespace {

/// Incremental reduced row echelon basis over F_p with deterministic pivots.
class Rref {
 public:
  Rref(u32 p, std::size_t width) : fp_(p), width_(width) {}

  void reduce(std::vector<u32>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const u32 c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t j = pivots_[r]; j < width_; ++j)
        v[j] = fp_.sub(v[j], fp_.mul(c, rows_[r][j]));
    }
  }

  /// Reduce and insert if independent; returns true when the rank grew.
  bool add(std::vector<u32> v) {
    reduce(v);
    std::size_t piv = 0;
    while (piv < width_ && v[piv] == 0) ++piv;
    if (piv == width_) return false;
    const u32 s = fp_.inv(v[piv]);
    for (std::size_t j = piv; j < width_; ++j) v[j] = fp_.mul(v[j], s);
    // keep the basis fully reduced
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const u32 c = rows_[r][piv];
      if (c == 0) continue;
      for (std::size_t j = piv; j < width_; ++j)
        rows_[r][j] = fp_.sub(rows_[r][j], fp_.mul(c, v[j]));
    }
    // insert keeping pivots ascending
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
  }

  const std::vector<std::vector<u32>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  Fp fp_;
  std::size_t width_;
  std::vector<std::vector<u32>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

TableCohomology::TableCohomology(const FiniteGroupTable& t, u32 p, u32 size_bound)
    : t_(t), p_(p) {
  if (t.order > size_bound)
    throw resource_error("table cohomology: group order " + std::to_string(t.order) +
                             " exceeds the bound " + std::to_string(size_bound),
                         t.order, size_bound);
  const u32 N = t.order;
  const Fp fp(p);
  d1_mat_ = FpMat(p, std::size_t(N) * N, N);
  for (u32 g1 = 0; g1 < N; ++g1)
    for (u32 g2 = 0; g2 < N; ++g2) {
      const std::size_t row = std::size_t(g1) * N + g2;
      d1_mat_.at(row, g1) = fp.add(d1_mat_.at(row, g1), 1);
      d1_mat_.at(row, t.prod(g1, g2)) = fp.sub(d1_mat_.at(row, t.prod(g1, g2)), 1);
      d1_mat_.at(row, g2) = fp.add(d1_mat_.at(row, g2), 1);
    }

  std::vector<u32> zero(d1_mat_.rows, 0);
  h1_ = gauss_solve(d1_mat_, zero)->nullspace;

  Rref rref(p, d1_mat_.rows);
  for (u32 g = 0; g < N; ++g) {
    std::vector<u32> col(d1_mat_.rows);
    for (std::size_t r = 0; r < d1_mat_.rows; ++r) col[r] = d1_mat_.at(r, g);
    rref.add(std::move(col));
  }
  im_d1_rref_ = rref.rows();
  im_d1_pivots_ = rref.pivots();
}

Cochain2 TableCohomology::d1(const Cochain1& c) const {
  const u32 N = t_.order;
  if (c.size() != N) throw input_error("d1: cochain has wrong size");
  const Fp fp(p_);
  Cochain2 out(std::size_t(N) * N);
  for (u32 g1 = 0; g1 < N; ++g1)
    for (u32 g2 = 0; g2 < N; ++g2)
      out[std::size_t(g1) * N + g2] =
          fp.sub(fp.add(c[g1], c[g2]), c[t_.prod(g1, g2)]);
  return out;
}

std::vector<u32> TableCohomology::d2(const Cochain2& c) const {
  const u32 N = t_.order;
  if (c.size() != std::size_t(N) * N) throw input_error("d2: cochain has wrong size");
  const Fp fp(p_);
  std::vector<u32> out(std::size_t(N) * N * N);
  auto at = [&](u32 a, u32 b) { return c[std::size_t(a) * N + b]; };
  for (u32 g1 = 0; g1 < N; ++g1)
    for (u32 g2 = 0; g2 < N; ++g2)
      for (u32 g3 = 0; g3 < N; ++g3) {
        u32 v = at(g1, g2);
        v = fp.sub(v, at(g1, t_.prod(g2, g3)));
        v = fp.add(v, at(t_.prod(g1, g2), g3));
        v = fp.sub(v, at(g2, g3));
        out[(std::size_t(g1) * N + g2) * N + g3] = v;
      }
  return out;
}

Cochain2 TableCohomology::cup_cochain(const Cochain1& a, const Cochain1& b, u32 p) {
  const Fp fp(p);
  const std::size_t N = a.size();
  if (b.size() != N) throw input_error("cup_cochain: size mismatch");
  Cochain2 out(N * N);
  for (std::size_t g1 = 0; g1 < N; ++g1)
    for (std::size_t g2 = 0; g2 < N; ++g2) out[g1 * N + g2] = fp.mul(a[g1], b[g2]);
  return out;
}

bool TableCohomology::is_coboundary(const Cochain2& z) const {
  Cochain2 r = z;
  for (u32& v : r) v %= p_;
  // reduce against the echelon basis of Im d1
  const Fp fp(p_);
  for (std::size_t t = 0; t < im_d1_rref_.size(); ++t) {
    const u32 c = r[im_d1_pivots_[t]];
    if (c == 0) continue;
    for (std::size_t j = im_d1_pivots_[t]; j < r.size(); ++j)
      r[j] = fp.sub(r[j], fp.mul(c, im_d1_rref_[t][j]));
  }
  return std::all_of(r.begin(), r.end(), [](u32 v) { return v == 0; });
}

Cochain2 TableCohomology::class_rep(const Cochain2& z) const {
  const Fp fp(p_);
  Cochain2 r = z;
  for (u32& v : r) v %= p_;
  for (std::size_t t = 0; t < im_d1_rref_.size(); ++t) {
    const u32 c = r[im_d1_pivots_[t]];
    if (c == 0) continue;
    for (std::size_t j = im_d1_pivots_[t]; j < r.size(); ++j)
      r[j] = fp.sub(r[j], fp.mul(c, im_d1_rref_[t][j]));
  }
  return r;
}

Cochain2 TableCohomology::cup_class(const Cochain1& a, const Cochain1& b) const {
  return class_rep(cup_cochain(a, b, p_));
}

std::optional<Cochain1> TableCohomology::d1_preimage(const Cochain2& z) const {
  Cochain2 r = z;
  for (u32& v : r) v %= p_;
  auto sol = gauss_solve(d1_mat_, r);
  if (!sol) return std::nullopt;
  return sol->particular;
}

std::vector<Cochain2> TableCohomology::h2_basis() const {
  const u32 N = t_.order;
  const Fp fp(p_);
  const std::size_t width = std::size_t(N) * N;
  // stream the 2-cocycle constraints into an echelon basis of the row space
  Rref constraints(p_, width);
  std::vector<u32> row(width);
  for (u32 g1 = 0; g1 < N; ++g1)
    for (u32 g2 = 0; g2 < N; ++g2)
      for (u32 g3 = 0; g3 < N; ++g3) {
        std::fill(row.begin(), row.end(), 0);
        auto bump = [&](u32 a, u32 b, bool plus) {
          const std::size_t c = std::size_t(a) * N + b;
          row[c] = plus ? fp.add(row[c], 1) : fp.sub(row[c], 1);
        };
        bump(g1, g2, true);
        bump(g1, t_.prod(g2, g3), false);
        bump(t_.prod(g1, g2), g3, true);
        bump(g2, g3, false);
        constraints.add(row);
      }
  // kernel basis from the echelon structure, one vector per free column
  std::vector<bool> is_pivot(width, false);
  for (std::size_t c : constraints.pivots()) is_pivot[c] = true;
  Rref image_and_more(p_, width);
  for (const auto& r : im_d1_rref_) image_and_more.add(r);
  std::vector<Cochain2> basis;
  for (std::size_t freec = 0; freec < width; ++freec) {
    if (is_pivot[freec]) continue;
    Cochain2 v(width, 0);
    v[freec] = 1;
    for (std::size_t r = 0; r < constraints.pivots().size(); ++r)
      v[constraints.pivots()[r]] = fp.neg(constraints.rows()[r][freec]);
    if (image_and_more.add(v)) basis.push_back(class_rep(v));
  }
  return basis;
}

DefiningSetReport defining_set_verify(const TableCohomology& coh,
                                      const std::vector<Cochain1>& alphas,
                                      const std::vector<std::vector<Cochain1>>& c) {
  const std::size_t n = alphas.size();
  const u32 p = coh.p();
  if (n < 2) throw input_error("defining_set_verify: need n >= 2");
  if (c.size() != n) throw input_error("defining_set_verify: collection must be n x n");
  const Fp fp(p);
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].size() != n) throw input_error("defining_set_verify: collection must be n x n");
    if (c[i][i] != alphas[i])
      throw input_error("defining_set_verify: c[i][i] must equal alpha_i");
  }
  for (std::size_t span = 1; span + 1 < n; ++span)
    for (std::size_t i = 0; i + span < n; ++i) {
      const std::size_t j = i + span;
      if (i == 0 && j == n - 1) continue;
      Cochain2 rhs(std::size_t(coh.table().order) * coh.table().order, 0);
      for (std::size_t h = i; h < j; ++h) {
        const Cochain2 term = TableCohomology::cup_cochain(c[i][h], c[h + 1][j], p);
        for (std::size_t e = 0; e < rhs.size(); ++e) rhs[e] = fp.add(rhs[e], term[e]);
      }
      if (coh.d1(c[i][j]) != rhs) return DefiningSetReport{false, i, j, {}};
    }
  Cochain2 value(std::size_t(coh.table().order) * coh.table().order, 0);
  for (std::size_t h = 0; h + 1 < n; ++h) {
    const Cochain2 term = TableCohomology::cup_cochain(c[0][h], c[h + 1][n - 1], p);
    for (std::size_t e = 0; e < value.size(); ++e) value[e] = fp.add(value[e], term[e]);
  }
  return DefiningSetReport{true, 0, 0, coh.class_rep(value)};
}

Massey3ValueSet massey3_value_set(const TableCohomology& coh, const Cochain1& a1,
                                  const Cochain1& a2, const Cochain1& a3) {
  const u32 p = coh.p();
  const Fp fp(p);
  Massey3ValueSet vs;
  const auto c12 = coh.d1_preimage(TableCohomology::cup_cochain(a1, a2, p));
  const auto c23 = coh.d1_preimage(TableCohomology::cup_cochain(a2, a3, p));
  if (!c12 || !c23) return vs;  // a cup condition fails: not defined
  vs.defined = true;

  const std::size_t N2 = std::size_t(coh.table().order) * coh.table().order;
  vs.base.assign(N2, 0);
  const Cochain2 t1 = TableCohomology::cup_cochain(a1, *c23, p);
  const Cochain2 t2 = TableCohomology::cup_cochain(*c12, a3, p);
  for (std::size_t e = 0; e < N2; ++e) vs.base[e] = fp.add(t1[e], t2[e]);

  for (const Cochain1& chi : coh.h1_basis()) {
    vs.spanning.push_back(TableCohomology::cup_cochain(a1, chi, p));
    vs.spanning.push_back(TableCohomology::cup_cochain(chi, a3, p));
  }

  // 0 in the set iff base + some span combination is a coboundary
  const FpMat& d1m = coh.d1_matrix();
  FpMat m(p, N2, d1m.cols + vs.spanning.size());
  for (std::size_t r = 0; r < N2; ++r) {
    for (std::size_t g = 0; g < d1m.cols; ++g) m.at(r, g) = d1m.at(r, g);
    for (std::size_t s = 0; s < vs.spanning.size(); ++s)
      m.at(r, d1m.cols + s) = vs.spanning[s][r];
  }
  std::vector<u32> rhs(N2);
  for (std::size_t r = 0; r < N2; ++r) rhs[r] = fp.neg(vs.base[r] % p);
  vs.contains_zero = gauss_solve(m, rhs).has_value();
  return vs;
}

std::vector<Cochain2> materialize_value_set(const TableCohomology& coh,
                                            const Massey3ValueSet& vs) {
  if (!vs.defined) return {};
  const Fp fp(coh.p());
  std::set<Cochain2> classes;
  u64 combos = 1;
  for (std::size_t t = 0; t < vs.spanning.size(); ++t) combos *= coh.p();
  for (u64 c = 0; c < combos; ++c) {
    Cochain2 v = vs.base;
    u64 rest = c;
    for (const Cochain2& s : vs.spanning) {
      const u32 t = static_cast<u32>(rest % coh.p());
      rest /= coh.p();
      if (t)
        for (std::size_t e = 0; e < v.size(); ++e) v[e] = fp.add(v[e], fp.mul(t, s[e]));
    }
    classes.insert(coh.class_rep(v));
  }
  return std::vector<Cochain2>(classes.begin(), classes.end());
}

std::vector<Cochain2> enumerate_defining_set_values(const TableCohomology& coh, const Cochain1& a1,
                                                    const Cochain1& a2, const Cochain1& a3) {
  const u32 p = coh.p();
  const Fp fp(p);
  const auto c12 = coh.d1_preimage(TableCohomology::cup_cochain(a1, a2, p));
  const auto c23 = coh.d1_preimage(TableCohomology::cup_cochain(a2, a3, p));
  if (!c12 || !c23) return {};
  const auto& homs = coh.h1_basis();
  u64 combos = 1;
  for (std::size_t t = 0; t < homs.size(); ++t) combos *= p;

  std::set<Cochain2> classes;
  const std::size_t N = coh.table().order;
  for (u64 s12 = 0; s12 < combos; ++s12)
    for (u64 s23 = 0; s23 < combos; ++s23) {
      Cochain1 v12 = *c12, v23 = *c23;
      u64 r12 = s12, r23 = s23;
      for (const Cochain1& chi : homs) {
        const u32 t12 = static_cast<u32>(r12 % p), t23 = static_cast<u32>(r23 % p);
        r12 /= p;
        r23 /= p;
        for (std::size_t e = 0; e < N; ++e) {
          if (t12) v12[e] = fp.add(v12[e], fp.mul(t12, chi[e]));
          if (t23) v23[e] = fp.add(v23[e], fp.mul(t23, chi[e]));
        }
      }
      const Cochain2 t1 = TableCohomology::cup_cochain(a1, v23, p);
      const Cochain2 t2 = TableCohomology::cup_cochain(v12, a3, p);
      Cochain2 val(N * N);
      for (std::size_t e = 0; e < val.size(); ++e) val[e] = fp.add(t1[e], t2[e]);
      classes.insert(coh.class_rep(val));
    }
  return std::vector<Cochain2>(classes.begin(), classes.end());
}

HomSearch table_hom_search(const FiniteGroupTable& t, u32 p, u32 n,
                           const std::vector<std::vector<u32>>& superdiag, bool quotient_center,
                           std::vector<Word>& relator_storage) {
  const u64 exp_mod = Word::exponent_modulus(p, kDefaultPrecision);
  relator_storage.clear();
  for (const auto& refs : t.relators) {
    Word w;
    for (int r : refs) w.push(static_cast<u32>(r > 0 ? r : -r) - 1, r > 0 ? 1 : -1, exp_mod);
    relator_storage.push_back(std::move(w));
  }
  HomSearch q;
  q.p = p;
  q.n = n;
  q.precision = kDefaultPrecision;
  q.d = static_cast<u32>(t.generators.size());
  q.relators = &relator_storage;
  q.superdiag = superdiag;
  q.quotient_center = quotient_center;
  return q;
}

}  // namespace masseywit
