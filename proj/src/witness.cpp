#include "masseywit/witness.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "masseywit/homsearch.hpp"

namespace masseywit {

using ordered_json = nlohmann::ordered_json;

std::vector<CohClass1> superdiagonal(const WitnessAssignment& w) {
  std::vector<CohClass1> out(w.n, CohClass1(w.images.size(), 0));
  for (u32 i = 0; i < w.n; ++i)
    for (std::size_t g = 0; g < w.images.size(); ++g) out[i][g] = w.images[g].entry(i, i + 1);
  return out;
}

std::vector<Run> nonzero_runs(const std::vector<CohClass1>& alphas) {
  auto is_zero = [](const CohClass1& a) {
    return std::all_of(a.begin(), a.end(), [](u32 v) { return v == 0; });
  };
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < alphas.size()) {
    if (is_zero(alphas[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < alphas.size() && !is_zero(alphas[j])) ++j;
    runs.push_back(Run{i, j - i});
    i = j;
  }
  return runs;
}

namespace {

void check_alphas(const EtypePresentation& G, const std::vector<CohClass1>& alphas) {
  for (const CohClass1& a : alphas)
    if (a.size() != G.generator_count())
      throw input_error("class length " + std::to_string(a.size()) +
                        " does not match the generator count " +
                        std::to_string(G.generator_count()));
}

std::vector<CohClass1> reduce_mod_p(const std::vector<CohClass1>& alphas, u32 p) {
  std::vector<CohClass1> out = alphas;
  for (auto& a : out)
    for (u32& v : a) v %= p;
  return out;
}

/// Both mandatory exit checks; the engine never trusts its own construction.
WitnessAssignment finalize(const EtypePresentation& G, const std::vector<CohClass1>& alphas,
                           WitnessAssignment w, const char* who) {
  if (w.images.size() != G.generator_count() || w.n != alphas.size() || w.p != G.p())
    throw internal_error(std::string(who) + ": assignment shape mismatch");
  const HomCheck check = verify_hom(G, w);
  if (!check)
    throw internal_error(std::string(who) + ": emitted assignment violates relator " +
                         std::to_string(check.failing_relator + 1));
  if (superdiagonal(w) != reduce_mod_p(alphas, G.p()))
    throw internal_error(std::string(who) + ": emitted assignment has wrong superdiagonal");
  return w;
}

std::vector<CohClass1> slice_classes(const std::vector<CohClass1>& alphas, u32 offset, u32 len) {
  std::vector<CohClass1> out;
  out.reserve(alphas.size());
  for (const CohClass1& a : alphas)
    out.emplace_back(a.begin() + offset, a.begin() + offset + len);
  return out;
}

/// lambdas with alphas[i] = lambda_i * alphas[0], all classes nonzero;
/// nullopt when the run is not proportional.
std::optional<std::vector<u32>> proportionality(const Fp& fp, const std::vector<CohClass1>& rs) {
  std::vector<u32> lambdas(rs.size(), 1);
  std::size_t pivot = 0;
  while (pivot < rs[0].size() && rs[0][pivot] % fp.p() == 0) ++pivot;
  if (pivot == rs[0].size()) return std::nullopt;  // zero class, not a run entry
  const u32 inv0 = fp.inv(rs[0][pivot]);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const u32 lam = fp.mul(rs[i][pivot] % fp.p(), inv0);
    if (lam == 0) return std::nullopt;
    for (std::size_t g = 0; g < rs[0].size(); ++g)
      if (rs[i][g] % fp.p() != fp.mul(lam, rs[0][g] % fp.p())) return std::nullopt;
    lambdas[i] = lam;
  }
  return lambdas;
}

WitnessAssignment dispatch_run(const EtypePresentation& G, const std::vector<CohClass1>& alphas,
                               u64 budget);

/// Sequences that may contain zero classes: split into maximal nonzero runs,
/// witness each run, assemble blockwise.
WitnessAssignment witness_with_zeros(const EtypePresentation& G,
                                     const std::vector<CohClass1>& alphas, u64 budget) {
  const std::vector<Run> runs = nonzero_runs(reduce_mod_p(alphas, G.p()));
  std::vector<WitnessAssignment> per_run;
  per_run.reserve(runs.size());
  for (const Run& r : runs) {
    std::vector<CohClass1> sub(alphas.begin() + r.start, alphas.begin() + r.start + r.len);
    per_run.push_back(dispatch_run(G, sub, budget));
  }
  return blockwise_assemble(G, alphas, per_run);
}

WitnessAssignment dispatch_run(const EtypePresentation& G, const std::vector<CohClass1>& alphas,
                               u64 budget) {
  const Fp fp(G.p());
  const u32 n = static_cast<u32>(alphas.size());

  // A single class is itself a homomorphism G -> F_p = U_2.
  if (n == 1) {
    WitnessAssignment w{1, G.p(), {}};
    for (u32 g = 0; g < G.generator_count(); ++g) {
      UniTriangular m(1, G.p());
      m.set_entry(0, 1, alphas[0][g] % G.p());
      w.images.push_back(std::move(m));
    }
    return finalize(G, alphas, std::move(w), "witness_single");
  }

  switch (G.tree()->kind) {
    case TreeNode::Kind::Free:
      return witness_free(G, alphas);
    case TreeNode::Kind::Demushkin:
    case TreeNode::Kind::ThetaAbelian: {
      if (auto lambdas = proportionality(fp, reduce_mod_p(alphas, G.p()))) {
        WitnessAssignment w = witness_cyclic(G, alphas[0], n);
        if (std::any_of(lambdas->begin(), lambdas->end(), [](u32 l) { return l != 1; }))
          w = scale_witness(G, w, *lambdas);
        return finalize(G, alphas, std::move(w), "witness_cyclic(run)");
      }
      return witness_layered_search(G, alphas, budget);
    }
    case TreeNode::Kind::FreeProduct: {
      const TreePtr& node = G.tree();
      const u32 dl = node->left->d, dr = node->right->d;
      const EtypePresentation gl = presentation_from_tree(G.p(), G.precision(), node->left);
      const EtypePresentation gr = presentation_from_tree(G.p(), G.precision(), node->right);
      const WitnessAssignment wl = witness_with_zeros(gl, slice_classes(alphas, 0, dl), budget);
      const WitnessAssignment wr = witness_with_zeros(gr, slice_classes(alphas, dl, dr), budget);
      return witness_free_product(G, alphas, wl, wr);
    }
    case TreeNode::Kind::SemidirectZp:
      return witness_semidirect(G, alphas, budget);
  }
  throw internal_error("dispatch_run: unhandled tree node");
}

}  // namespace

WitnessAssignment witness_free(const EtypePresentation& G, const std::vector<CohClass1>& alphas) {
  check_alphas(G, alphas);
  if (!G.relators().empty()) throw input_error("witness_free: presentation has relators");
  const u32 n = static_cast<u32>(alphas.size());
  WitnessAssignment w{n, G.p(), {}};
  for (u32 g = 0; g < G.generator_count(); ++g) {
    UniTriangular m(n, G.p());
    for (u32 i = 0; i < n; ++i) m.set_entry(i, i + 1, alphas[i][g] % G.p());
    w.images.push_back(std::move(m));
  }
  return finalize(G, alphas, std::move(w), "witness_free");
}

WitnessAssignment witness_cyclic(const EtypePresentation& G, const CohClass1& alpha, u32 n) {
  check_alphas(G, {alpha});
  if (n < 1) throw input_error("witness_cyclic: n must be >= 1");
  const UniTriangular A = UniTriangular::full_superdiagonal(n, G.p());
  WitnessAssignment w{n, G.p(), {}};
  for (u32 g = 0; g < G.generator_count(); ++g) {
    UniTriangular img = power_res(A, alpha[g] % G.p());
    const u64 theta = G.orientation().values[g];
    if (theta != 1) {
      const UniTriangular step = power_res(A, theta - 1);  // A^{theta(x)-1}
      if (!step.is_identity()) {
        const u32 k = filtration_level(step);
        const UniTriangular B = solve_commutator_equation(A, step, k);
        img = mul(B, img);
      }
    }
    w.images.push_back(std::move(img));
  }
  try {
    const std::vector<CohClass1> target(n, alpha);
    return finalize(G, target, std::move(w), "witness_cyclic");
  } catch (const internal_error& e) {
    throw non_kummerian_error(std::string("non-Kummerian input: ") + e.what());
  }
}

WitnessAssignment scale_witness(const EtypePresentation& G, const WitnessAssignment& w,
                                const std::vector<u32>& lambdas) {
  if (lambdas.size() != w.n) throw input_error("scale_witness: need one scalar per level");
  const Fp fp(G.p());
  for (u32 l : lambdas)
    if (l % G.p() == 0) throw input_error("scale_witness: scalars must be nonzero");

  std::vector<u32> diag(w.n + 1, 1);
  for (u32 i = 0; i < w.n; ++i) diag[i + 1] = fp.mul(diag[i], fp.inv(lambdas[i] % G.p()));

  WitnessAssignment out{w.n, w.p, {}};
  for (const UniTriangular& m : w.images) out.images.push_back(conj_by_diagonal(m, diag));

  std::vector<CohClass1> target = superdiagonal(w);
  for (u32 i = 0; i < w.n; ++i)
    for (u32& v : target[i]) v = fp.mul(v, lambdas[i] % G.p());
  return finalize(G, target, std::move(out), "scale_witness");
}

WitnessAssignment blockwise_assemble(const EtypePresentation& G,
                                     const std::vector<CohClass1>& alphas,
                                     const std::vector<WitnessAssignment>& run_witnesses) {
  check_alphas(G, alphas);
  const u32 m = static_cast<u32>(alphas.size());
  if (m == 0) throw input_error("blockwise_assemble: empty sequence");
  const std::vector<Run> runs = nonzero_runs(reduce_mod_p(alphas, G.p()));
  if (runs.size() != run_witnesses.size())
    throw input_error("blockwise_assemble: " + std::to_string(runs.size()) + " runs but " +
                      std::to_string(run_witnesses.size()) + " witnesses");
  for (std::size_t j = 0; j < runs.size(); ++j) {
    const WitnessAssignment& rw = run_witnesses[j];
    if (rw.p != G.p() || rw.n != runs[j].len || rw.images.size() != G.generator_count())
      throw input_error("blockwise_assemble: witness " + std::to_string(j + 1) +
                        " does not match its run");
    const auto want = reduce_mod_p(
        std::vector<CohClass1>(alphas.begin() + runs[j].start,
                               alphas.begin() + runs[j].start + runs[j].len),
        G.p());
    if (superdiagonal(rw) != want)
      throw input_error("blockwise_assemble: witness " + std::to_string(j + 1) +
                        " has the wrong superdiagonal for its run");
  }

  WitnessAssignment w{m, G.p(), {}};
  for (u32 g = 0; g < G.generator_count(); ++g) {
    UniTriangular big(m, G.p());
    for (std::size_t j = 0; j < runs.size(); ++j) {
      const u32 s = static_cast<u32>(runs[j].start), L = static_cast<u32>(runs[j].len);
      const UniTriangular& block = run_witnesses[j].images[g];
      for (u32 a = 0; a <= L; ++a)
        for (u32 b = a + 1; b <= L; ++b) big.set_entry(s + a, s + b, block.entry(a, b));
    }
    w.images.push_back(std::move(big));
  }
  return finalize(G, alphas, std::move(w), "blockwise_assemble");
}

WitnessAssignment witness_free_product(const EtypePresentation& G,
                                       const std::vector<CohClass1>& alphas,
                                       const WitnessAssignment& left_witness,
                                       const WitnessAssignment& right_witness) {
  if (G.tree()->kind != TreeNode::Kind::FreeProduct)
    throw input_error("witness_free_product: presentation is not a free product");
  if (left_witness.n != right_witness.n || left_witness.p != right_witness.p)
    throw input_error("witness_free_product: factor witnesses live in different groups");
  if (left_witness.images.size() != G.tree()->left->d ||
      right_witness.images.size() != G.tree()->right->d)
    throw input_error("witness_free_product: factor witness does not match the factor");
  WitnessAssignment w{left_witness.n, left_witness.p, left_witness.images};
  w.images.insert(w.images.end(), right_witness.images.begin(), right_witness.images.end());
  return finalize(G, alphas, std::move(w), "witness_free_product");
}

WitnessAssignment witness_semidirect(const EtypePresentation& G,
                                     const std::vector<CohClass1>& alphas, u64 budget) {
  if (G.tree()->kind != TreeNode::Kind::SemidirectZp)
    throw input_error("witness_semidirect: presentation is not a semidirect product with Z_p");
  check_alphas(G, alphas);
  const Fp fp(G.p());
  const u32 n = static_cast<u32>(alphas.size());

  std::vector<SemidirectH1Split> splits;
  splits.reserve(n);
  for (const CohClass1& a : alphas) splits.push_back(semidirect_split(G, a));

  const bool all_zero =
      std::all_of(splits.begin(), splits.end(), [](const auto& s) { return s.psi_coeff == 0; });
  const bool none_zero =
      std::all_of(splits.begin(), splits.end(), [](const auto& s) { return s.psi_coeff != 0; });

  if (all_zero) {
    // classes factor through the projection onto the base
    const EtypePresentation base = presentation_from_tree(G.p(), G.precision(), G.tree()->base);
    std::vector<CohClass1> restricted;
    restricted.reserve(n);
    for (const auto& s : splits) restricted.push_back(s.restriction);
    const WitnessAssignment wb = dispatch_run(base, restricted, budget);
    WitnessAssignment w{n, G.p(), wb.images};
    w.images.push_back(UniTriangular::identity(n, G.p()));  // z acts through pi
    return finalize(G, alphas, std::move(w), "witness_semidirect(a)");
  }

  if (none_zero) {
    // triviality forces alpha_i = (b_i/b_1) alpha_1; anything else is a bug
    std::vector<u32> lambdas(n, 1);
    const u32 inv0 = fp.inv(splits[0].psi_coeff);
    const auto reduced = reduce_mod_p(alphas, G.p());
    for (u32 i = 1; i < n; ++i) {
      lambdas[i] = fp.mul(splits[i].psi_coeff, inv0);
      for (u32 g = 0; g < G.generator_count(); ++g)
        if (reduced[i][g] != fp.mul(lambdas[i], reduced[0][g]))
          throw internal_error(
              "witness_semidirect: non-proportional classes under the triviality condition "
              "(cup formula bug)");
    }
    WitnessAssignment w = witness_cyclic(G, alphas[0], n);
    if (std::any_of(lambdas.begin(), lambdas.end(), [](u32 l) { return l != 1; }))
      w = scale_witness(G, w, lambdas);
    return finalize(G, alphas, std::move(w), "witness_semidirect(b)");
  }

  throw internal_error(
      "witness_semidirect: mixed case under the triviality condition (cup formula bug)");
}

WitnessAssignment witness_layered_search(const EtypePresentation& G,
                                         const std::vector<CohClass1>& alphas, u64 budget) {
  check_alphas(G, alphas);
  const u32 n = static_cast<u32>(alphas.size());
  const u32 d = G.generator_count(), p = G.p();
  const Fp fp(p);
  const auto reduced = reduce_mod_p(alphas, p);

  WitnessAssignment w{n, p, {}};
  for (u32 g = 0; g < d; ++g) {
    UniTriangular m(n, p);
    for (u32 i = 0; i < n; ++i) m.set_entry(i, i + 1, reduced[i][g]);
    w.images.push_back(std::move(m));
  }

  const std::size_t nrel = G.relators().size();

  // level-k defect: the (i, i+k) entries of every relator image, stacked;
  // entries below level k must already vanish
  auto defect = [&](u32 k) {
    std::vector<u32> out;
    out.reserve(nrel * (n + 1 - k));
    for (const Word& r : G.relators()) {
      const UniTriangular v = evaluate_word(G, r, w);
      for (u32 depth = 1; depth < k; ++depth)
        for (u32 i = 0; i + depth <= n; ++i)
          if (v.entry(i, i + depth) != 0)
            throw internal_error("layered search: relator defect below the active level");
      for (u32 i = 0; i + k <= n; ++i) out.push_back(v.entry(i, i + k));
    }
    return out;
  };

  struct LevelState {
    std::vector<u32> particular;
    std::vector<std::vector<u32>> nullspace;
    u64 choice = 0;
    u64 choices = 1;  // p^nullspace.size()
  };

  auto apply = [&](u32 k, const LevelState& st) {
    std::vector<u32> x = st.particular;
    u64 c = st.choice;
    for (const auto& v : st.nullspace) {
      const u32 t = static_cast<u32>(c % p);
      c /= p;
      if (t)
        for (std::size_t e = 0; e < x.size(); ++e) x[e] = fp.add(x[e], fp.mul(t, v[e]));
    }
    std::size_t e = 0;
    for (u32 g = 0; g < d; ++g)
      for (u32 i = 0; i + k <= n; ++i) w.images[g].set_entry(i, i + k, x[e++]);
  };

  // The level-k slice of each relator image is affine in the level-k entries
  // of the generator images, so probing the basis directions recovers the
  // exact linear map.
  auto solve_level = [&](u32 k) -> std::optional<LevelState> {
    const u32 width = n + 1 - k;
    for (u32 g = 0; g < d; ++g)
      for (u32 i = 0; i + k <= n; ++i) w.images[g].set_entry(i, i + k, 0);
    const std::vector<u32> b0 = defect(k);
    const std::size_t unknowns = std::size_t(d) * width;
    FpMat M(p, b0.size(), unknowns);
    std::size_t col = 0;
    for (u32 g = 0; g < d; ++g)
      for (u32 i = 0; i + k <= n; ++i) {
        w.images[g].set_entry(i, i + k, 1);
        const std::vector<u32> be = defect(k);
        for (std::size_t r = 0; r < b0.size(); ++r) M.at(r, col) = fp.sub(be[r], b0[r]);
        w.images[g].set_entry(i, i + k, 0);
        ++col;
      }
    std::vector<u32> rhs(b0.size());
    for (std::size_t r = 0; r < b0.size(); ++r) rhs[r] = fp.neg(b0[r]);
    auto sol = gauss_solve(M, rhs);
    if (!sol) return std::nullopt;
    LevelState st;
    st.particular = std::move(sol->particular);
    st.nullspace = std::move(sol->nullspace);
    for (std::size_t t = 0; t < st.nullspace.size(); ++t) {
      if (st.choices > (u64(1) << 62) / p)
        throw search_exhausted("layered search: level solution space too large", 0, budget);
      st.choices *= p;
    }
    return st;
  };

  u64 nodes = 0;
  std::vector<LevelState> stack;  // stack[t] holds level k = t + 2
  u32 k = 2;
  while (k <= n) {
    if (stack.size() < k - 1) {
      auto st = solve_level(k);
      if (st) {
        stack.push_back(std::move(*st));
        if (++nodes > budget)
          throw search_exhausted("layered search: budget exceeded", nodes, budget);
        apply(k, stack.back());
        ++k;
        continue;
      }
    }
    // backtrack: advance the deepest level with remaining choices
    while (!stack.empty() && stack.back().choice + 1 >= stack.back().choices) stack.pop_back();
    if (stack.empty())
      throw search_exhausted("layered search: no witness found in the full space", nodes, budget);
    ++stack.back().choice;
    if (++nodes > budget) throw search_exhausted("layered search: budget exceeded", nodes, budget);
    k = static_cast<u32>(stack.size()) + 1;  // level of the advanced state
    apply(k, stack.back());
    // deeper levels must be recomputed
    ++k;
  }
  return finalize(G, alphas, std::move(w), "witness_layered_search");
}

WitnessAssignment strong_vanishing_witness(const EtypePresentation& G,
                                           const std::vector<CohClass1>& alphas, u64 budget) {
  check_alphas(G, alphas);
  if (alphas.size() < 3)
    throw input_error("strong_vanishing_witness: n >= 3 required (n = 2 is the cup product)");
  if (const auto bad = first_nontrivial_cup(G, alphas))
    throw triviality_error("triviality fails at i=" + std::to_string(*bad + 1),
                           *bad);
  return witness_with_zeros(G, alphas, budget);
}

WitnessAssignment massey_witness(const EtypePresentation& G, const std::vector<CohClass1>& alphas,
                                 u64 budget, unsigned jobs) {
  check_alphas(G, alphas);
  if (alphas.size() < 2) throw input_error("massey_witness: need at least two classes");
  if (alphas.size() > 2) return strong_vanishing_witness(G, alphas, budget);

  // n = 2: the product is the singleton {cup}; certificate via direct search
  if (const auto bad = first_nontrivial_cup(G, alphas))
    throw triviality_error("triviality fails at i=" + std::to_string(*bad + 1),
                           *bad);
  HomSearch q;
  q.p = G.p();
  q.n = 2;
  q.precision = G.precision();
  q.d = G.generator_count();
  q.relators = &G.relators();
  q.superdiag = reduce_mod_p(alphas, G.p());
  q.budget_bits = 40;
  q.jobs = jobs;
  auto hom = first_hom(q);
  if (!hom)
    throw internal_error("massey_witness: cup vanishes but no U_3 assignment exists "
                         "(correspondence bug)");
  return finalize(G, alphas, WitnessAssignment{2, G.p(), std::move(*hom)}, "massey_witness(n=2)");
}

std::string certificate_to_json(const EtypePresentation& G, const std::vector<CohClass1>& alphas,
                                const WitnessAssignment& w) {
  // never emit an unchecked certificate
  finalize(G, alphas, w, "certificate_to_json");
  ordered_json j;
  j["group"] = ordered_json::parse(group_spec_to_json(G));
  j["p"] = G.p();
  j["n"] = w.n;
  ordered_json ja = ordered_json::array();
  for (const CohClass1& a : alphas) {
    ordered_json row = ordered_json::array();
    for (u32 v : a) row.push_back(v % G.p());
    ja.push_back(std::move(row));
  }
  j["alphas"] = std::move(ja);
  ordered_json imgs = ordered_json::object();
  for (u32 g = 0; g < G.generator_count(); ++g) imgs[G.generator_label(g)] = w.images[g].packed();
  j["images"] = std::move(imgs);
  j["checks"] = {{"relators", "pass"}, {"superdiagonal", "pass"}};
  return j.dump();
}

VerifyReport verify_certificate_json(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("certificate: invalid JSON: ") + e.what());
  }
  EtypePresentation G = parse_group_spec(j.at("group").dump());
  const u32 p = j.at("p").get<u32>();
  const u32 n = j.at("n").get<u32>();
  if (p != G.p()) throw input_error("certificate: p does not match the group spec");
  const auto alphas = j.at("alphas").get<std::vector<CohClass1>>();
  if (alphas.size() != n) throw input_error("certificate: n does not match the class count");
  for (const auto& a : alphas)
    if (a.size() != G.generator_count())
      throw input_error("certificate: class length does not match the generator count");

  WitnessAssignment w{n, p, {}};
  for (u32 g = 0; g < G.generator_count(); ++g) {
    const auto key = G.generator_label(g);
    if (!j.at("images").contains(key))
      throw input_error("certificate: missing image for " + key);
    const auto packed = j.at("images").at(key).get<std::vector<u32>>();
    w.images.push_back(UniTriangular::from_packed(n, p, packed));
  }

  const HomCheck check = verify_hom(G, w);
  if (!check) {
    const Word& r = G.relators()[check.failing_relator];
    return VerifyReport{false, "relator " + std::to_string(check.failing_relator + 1) + " (" +
                                   r.pretty(G.exponent_modulus()) +
                                   ") does not evaluate to the identity"};
  }
  const auto sd = superdiagonal(w);
  for (u32 i = 0; i < n; ++i)
    for (u32 g = 0; g < G.generator_count(); ++g)
      if (sd[i][g] != alphas[i][g] % p)
        return VerifyReport{false, "superdiagonal mismatch at (i=" + std::to_string(i + 1) +
                                       ", generator " + G.generator_label(g) + ")"};
  return VerifyReport{true, "ok"};
}

}  // namespace masseywit
