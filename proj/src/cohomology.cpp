#include "masseywit/cohomology.hpp"

#include <nlohmann/json.hpp>

#include "masseywit/homsearch.hpp"

namespace masseywit {

u32 h1_dim(const EtypePresentation& G) { return G.generator_count(); }

u32 h1_eval(const EtypePresentation& G, const CohClass1& a, const Word& w) {
  if (a.size() != G.generator_count()) throw input_error("h1_eval: class has wrong length");
  const Fp fp(G.p());
  u32 s = 0;
  for (const Letter& l : w.letters())
    s = fp.add(s, fp.mul(a[l.gen] % G.p(), static_cast<u32>(l.exp % G.p())));
  return s;
}

bool H2Element::is_zero() const {
  switch (kind) {
    case TreeNode::Kind::Free:
      return true;
    case TreeNode::Kind::Demushkin:
      return demushkin_value == 0;
    case TreeNode::Kind::ThetaAbelian:
      return !theta_abelian_nonzero;
    case TreeNode::Kind::FreeProduct:
      return left->is_zero() && right->is_zero();
    case TreeNode::Kind::SemidirectZp: {
      if (!base->is_zero()) return false;
      for (u32 c : psi_component)
        if (c != 0) return false;
      return true;
    }
  }
  return true;
}

namespace {

CohClass1 slice(const CohClass1& a, u32 offset, u32 len) {
  return CohClass1(a.begin() + offset, a.begin() + offset + len);
}

/// Vanishing of a cup product decided by exhaustive search for a U_3
/// homomorphism with the two classes on the superdiagonal.
bool cup_vanishes_by_search(const EtypePresentation& G, const CohClass1& a, const CohClass1& b) {
  HomSearch q;
  q.p = G.p();
  q.n = 2;
  q.precision = G.precision();
  q.d = G.generator_count();
  q.relators = &G.relators();
  q.superdiag = {a, b};
  q.budget_bits = 40;
  return exists_hom(q);
}

H2Element cup_node(u32 p, u32 precision, const TreePtr& node, const CohClass1& a,
                   const CohClass1& b) {
  const Fp fp(p);
  H2Element out;
  out.kind = node->kind;
  switch (node->kind) {
    case TreeNode::Kind::Free:
      break;  // H^2 of a free pro-p group is zero
    case TreeNode::Kind::Demushkin: {
      // Symplectic pairing sum over the generator pairs (x1,x2), (x3,x4), ...
      // The x1^{p^f} head contributes nothing mod p since f >= 1.
      u32 s = 0;
      for (u32 i = 0; i + 1 < node->d; i += 2)
        s = fp.add(s, fp.sub(fp.mul(a[i], b[i + 1]), fp.mul(a[i + 1], b[i])));
      out.demushkin_value = s;
      break;
    }
    case TreeNode::Kind::ThetaAbelian: {
      const EtypePresentation sub = presentation_from_tree(p, precision, node);
      out.theta_abelian_nonzero = !cup_vanishes_by_search(sub, a, b);
      break;
    }
    case TreeNode::Kind::FreeProduct: {
      const u32 dl = node->left->d;
      out.left = std::make_unique<H2Element>(
          cup_node(p, precision, node->left, slice(a, 0, dl), slice(b, 0, dl)));
      out.right = std::make_unique<H2Element>(cup_node(p, precision, node->right,
                                                       slice(a, dl, node->right->d),
                                                       slice(b, dl, node->right->d)));
      break;
    }
    case TreeNode::Kind::SemidirectZp: {
      const u32 d0 = node->base->d;
      const CohClass1 ra = slice(a, 0, d0), rb = slice(b, 0, d0);
      const u32 ba = a[d0], bb = b[d0];
      out.base = std::make_unique<H2Element>(cup_node(p, precision, node->base, ra, rb));
      // (b_beta * alpha| - b_alpha * beta|) cup psi
      out.psi_component.resize(d0);
      for (u32 g = 0; g < d0; ++g)
        out.psi_component[g] = fp.sub(fp.mul(bb, ra[g]), fp.mul(ba, rb[g]));
      break;
    }
  }
  return out;
}

}  // namespace

H2Element cup(const EtypePresentation& G, const CohClass1& a, const CohClass1& b) {
  if (a.size() != G.generator_count() || b.size() != G.generator_count())
    throw input_error("cup: class length does not match the generator count");
  return cup_node(G.p(), G.precision(), G.tree(), a, b);
}

bool cup_vanishes(const EtypePresentation& G, const CohClass1& a, const CohClass1& b) {
  return cup(G, a, b).is_zero();
}

std::optional<std::size_t> first_nontrivial_cup(const EtypePresentation& G,
                                                const std::vector<CohClass1>& alphas) {
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i)
    if (!cup_vanishes(G, alphas[i], alphas[i + 1])) return i;
  return std::nullopt;
}

bool triviality_condition(const EtypePresentation& G, const std::vector<CohClass1>& alphas) {
  if (alphas.size() < 2) throw input_error("triviality_condition: need at least two classes");
  return !first_nontrivial_cup(G, alphas).has_value();
}

SemidirectH1Split semidirect_split(const EtypePresentation& G, const CohClass1& a) {
  if (G.tree()->kind != TreeNode::Kind::SemidirectZp)
    throw input_error("semidirect_split: presentation is not a semidirect product with Z_p");
  if (a.size() != G.generator_count()) throw input_error("semidirect_split: class length mismatch");
  const u32 d0 = G.tree()->base->d;
  return SemidirectH1Split{slice(a, 0, d0), a[d0] % G.p()};
}

std::string presentation_summary_json(const EtypePresentation& G) {
  nlohmann::ordered_json j;
  j["p"] = G.p();
  j["generators"] = G.generator_count();
  j["precision"] = G.precision();
  nlohmann::ordered_json rels = nlohmann::ordered_json::array();
  for (const Word& w : G.relators()) rels.push_back(w.pretty(G.exponent_modulus()));
  j["relators"] = std::move(rels);
  j["orientation"] = G.orientation().values;
  j["h1_dim"] = h1_dim(G);
  j["spec"] = nlohmann::ordered_json::parse(group_spec_to_json(G));
  return j.dump(2);
}

}  // namespace masseywit
