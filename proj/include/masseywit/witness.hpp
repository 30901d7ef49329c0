#pragma once

#include "masseywit/cohomology.hpp"

namespace masseywit {

inline constexpr u64 kDefaultSearchBudget = 1'000'000;

/// The sequence of degree-1 classes carried by the superdiagonal of an
/// assignment: class i sends x_g to entry (i, i+1) of its image.
std::vector<CohClass1> superdiagonal(const WitnessAssignment& w);

struct Run {
  std::size_t start = 0, len = 0;
};

/// Maximal runs of consecutive nonzero classes.
std::vector<Run> nonzero_runs(const std::vector<CohClass1>& alphas);

/// Free presentations: x_g maps to I + sum_i alphas[i](x_g) E_{i,i+1}.
WitnessAssignment witness_free(const EtypePresentation& G, const std::vector<CohClass1>& alphas);

/// The theta-abelian matrix recipe: every generator maps to A^{alpha(x)},
/// premultiplied by a solution B_x of [B_x, A] = A^{theta(x)-1} when the
/// orientation is nontrivial on x. Gives superdiagonal (alpha,...,alpha).
/// Verification failure means the input is outside the Kummerian family.
WitnessAssignment witness_cyclic(const EtypePresentation& G, const CohClass1& alpha, u32 n);

/// Conjugate by a diagonal so the superdiagonal rescales to
/// (lambda_1 alpha_1, ..., lambda_n alpha_n); homomorphisms stay
/// homomorphisms.
WitnessAssignment scale_witness(const EtypePresentation& G, const WitnessAssignment& w,
                                const std::vector<u32>& lambdas);

/// Assemble per-run witnesses into one block-diagonal assignment whose
/// superdiagonal is the full sequence (zeros at the gaps).
WitnessAssignment blockwise_assemble(const EtypePresentation& G,
                                     const std::vector<CohClass1>& alphas,
                                     const std::vector<WitnessAssignment>& run_witnesses);

/// Union of factor witnesses on a free product: relator sets are disjoint,
/// so the combined map is a homomorphism.
WitnessAssignment witness_free_product(const EtypePresentation& G,
                                       const std::vector<CohClass1>& alphas,
                                       const WitnessAssignment& left_witness,
                                       const WitnessAssignment& right_witness);

/// Semidirect case split: classes trivial on the kernel factor descend to the
/// base and pull back along the projection; otherwise all classes are
/// mutually proportional and the cyclic recipe plus rescaling applies. Mixed
/// shapes cannot pass the triviality condition; hitting one raises
/// internal_error.
WitnessAssignment witness_semidirect(const EtypePresentation& G,
                                     const std::vector<CohClass1>& alphas,
                                     u64 budget = kDefaultSearchBudget);

/// Layered affine lifting with backtracking: superdiagonals are pinned by
/// alphas, each deeper level of the generator images is an affine-linear
/// system given the shallower ones; level solution spaces are scanned in a
/// fixed order. Budget counts applied level solutions.
WitnessAssignment witness_layered_search(const EtypePresentation& G,
                                         const std::vector<CohClass1>& alphas,
                                         u64 budget = kDefaultSearchBudget);

/// Main engine: requires the triviality condition and n >= 3, splits the
/// sequence into nonzero runs, dispatches each run over the construction
/// tree, and assembles blockwise. The returned witness always re-verifies
/// (relators + superdiagonal) before being emitted.
WitnessAssignment strong_vanishing_witness(const EtypePresentation& G,
                                           const std::vector<CohClass1>& alphas,
                                           u64 budget = kDefaultSearchBudget);

/// Dispatch used for n = 2 as well: the pair is answered by the cup product
/// and a direct U_3 enumeration instead of the witness machinery.
WitnessAssignment massey_witness(const EtypePresentation& G, const std::vector<CohClass1>& alphas,
                                 u64 budget = kDefaultSearchBudget, unsigned jobs = 1);

/// Certificate JSON: {"group":.., "p":.., "n":.., "alphas":.., "images":..,
/// "checks":..}. Emission re-runs both checks; parsing + re-verification is
/// independent of the construction path.
std::string certificate_to_json(const EtypePresentation& G, const std::vector<CohClass1>& alphas,
                                const WitnessAssignment& w);

struct VerifyReport {
  bool pass = false;
  std::string detail;
};

VerifyReport verify_certificate_json(const std::string& json_text);

}  // namespace masseywit
