#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "masseywit/words.hpp"

namespace masseywit {

/// Orientation values theta(x_j), elements of 1 + pZ_p stored mod p^K.
struct Orientation {
  std::vector<u64> values;

  bool torsion_free(u32 p) const {
    if (p != 2) return true;
    for (u64 v : values)
      if (v % 4 != 1) return false;
    return true;
  }
  bool operator==(const Orientation&) const = default;
};

struct TreeNode;
using TreePtr = std::shared_ptr<const TreeNode>;

/// Construction tree of an elementary-type presentation. Leaves are free and
/// one-relator (Demushkin) nodes plus the theta-abelian recipe; inner nodes
/// are free products and Z_p-semidirect extensions.
struct TreeNode {
  enum class Kind { Free, Demushkin, ThetaAbelian, FreeProduct, SemidirectZp };
  Kind kind = Kind::Free;
  u32 d = 0;                   // generator count of the subtree
  std::optional<u32> f;        // Demushkin always, ThetaAbelian when oriented
  std::vector<u64> theta;      // Free leaves: per-generator orientation values
  TreePtr left, right;         // FreeProduct
  TreePtr base;                // SemidirectZp
};

class EtypePresentation {
 public:
  u32 p() const { return p_; }
  u32 precision() const { return precision_; }
  u64 exponent_modulus() const { return exp_mod_; }
  u32 generator_count() const { return d_; }
  const std::vector<Word>& relators() const { return relators_; }
  const Orientation& orientation() const { return theta_; }
  const TreePtr& tree() const { return tree_; }

  /// Positional display name, "x1".."xd".
  std::string generator_label(u32 g) const { return "x" + std::to_string(g + 1); }

  friend EtypePresentation presentation_from_tree(u32 p, u32 precision, const TreePtr& node);

 private:
  EtypePresentation() = default;
  u32 p_ = 2, precision_ = 8, d_ = 0;
  u64 exp_mod_ = 256;
  std::vector<Word> relators_;
  Orientation theta_;
  TreePtr tree_;
};

inline constexpr u32 kDefaultPrecision = 8;

EtypePresentation free_group(u32 p, u32 d, Orientation theta, u32 precision = kDefaultPrecision);
EtypePresentation demushkin(u32 p, u32 d, u32 f, u32 precision = kDefaultPrecision);
EtypePresentation theta_abelian(u32 p, u32 d, std::optional<u32> f,
                                u32 precision = kDefaultPrecision);
EtypePresentation free_product(const EtypePresentation& a, const EtypePresentation& b);
EtypePresentation semidirect_zp(const EtypePresentation& base);

/// Rebuild the presentation of any construction (sub)tree; the same builder
/// backs all public constructors, so rebuilds are bit-identical.
EtypePresentation presentation_from_tree(u32 p, u32 precision, const TreePtr& node);

/// Group-spec JSON: {"p":.., "precision":.., "tree": node} with node one of
///   {"free":{"d":..,"theta":[..]}}, {"demushkin":{"d":..,"f":..}},
///   {"theta_abelian":{"d":..,"f":..|null}},
///   {"free_product":{"left":..,"right":..}}, {"semidirect_zp":{"base":..}}.
EtypePresentation parse_group_spec(const std::string& json_text);
std::string group_spec_to_json(const EtypePresentation& G);

/// Generator images in U_{n+1}(F_p), the certificate currency.
struct WitnessAssignment {
  u32 n = 0, p = 2;
  std::vector<UniTriangular> images;  // indexed by generator
  bool operator==(const WitnessAssignment&) const = default;
};

struct HomCheck {
  bool ok = true;
  std::size_t failing_relator = 0;  // valid when !ok
  explicit operator bool() const { return ok; }
};

UniTriangular evaluate_word(const EtypePresentation& G, const Word& w,
                            const WitnessAssignment& assign);

/// True iff every relator evaluates to the identity.
HomCheck verify_hom(const EtypePresentation& G, const WitnessAssignment& assign);

}  // namespace masseywit
