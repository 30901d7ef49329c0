#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "masseywit/presentation.hpp"

namespace masseywit {

/// Degree-1 class as its vector of values on the generators; well defined
/// because every relator has zero exponent sum mod p.
using CohClass1 = std::vector<u32>;

u32 h1_dim(const EtypePresentation& G);

/// Weighted mod-p exponent sum of w: the value of the class on the word.
u32 h1_eval(const EtypePresentation& G, const CohClass1& a, const Word& w);

/// Degree-2 class, shaped like the presentation's construction tree. Only
/// vanishing is contractually meaningful; theta-abelian nodes carry the
/// oracle's verdict rather than a structural value.
struct H2Element {
  TreeNode::Kind kind = TreeNode::Kind::Free;
  u32 demushkin_value = 0;                 // Demushkin: H^2 = F_p
  std::unique_ptr<H2Element> left, right;  // FreeProduct components
  std::unique_ptr<H2Element> base;         // SemidirectZp base component
  std::vector<u32> psi_component;          // SemidirectZp: H^1(G_0) cup psi part
  bool theta_abelian_nonzero = false;

  bool is_zero() const;
};

/// Structural cup product over the tree: zero on free nodes, the symplectic
/// pairing on Demushkin nodes, componentwise on free products, and the
/// two-component formula on semidirect nodes. Theta-abelian nodes delegate
/// to the brute-force U_3 search.
H2Element cup(const EtypePresentation& G, const CohClass1& a, const CohClass1& b);

bool cup_vanishes(const EtypePresentation& G, const CohClass1& a, const CohClass1& b);

/// First index i (0-based) with cup(alpha_i, alpha_{i+1}) != 0, if any.
std::optional<std::size_t> first_nontrivial_cup(const EtypePresentation& G,
                                                const std::vector<CohClass1>& alphas);

bool triviality_condition(const EtypePresentation& G, const std::vector<CohClass1>& alphas);

/// alpha = restriction + psi_coeff * psi on a semidirect presentation, where
/// psi is the class dual to the kernel generator z.
struct SemidirectH1Split {
  CohClass1 restriction;
  u32 psi_coeff = 0;
};

SemidirectH1Split semidirect_split(const EtypePresentation& G, const CohClass1& a);

/// Human- and machine-readable summary: p, generator count, relators in
/// display form, orientation values, H^1 dimension and the spec tree.
std::string presentation_summary_json(const EtypePresentation& G);

}  // namespace masseywit
