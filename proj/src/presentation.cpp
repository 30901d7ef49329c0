#include "masseywit/presentation.hpp"

#include <nlohmann/json.hpp>

namespace masseywit {

using ordered_json = nlohmann::ordered_json;

namespace {

u64 pow_u64(u64 b, u32 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

Word shift_word(const Word& w, u32 offset, u64 exp_mod) {
  Word r;
  for (const Letter& l : w.letters()) r.push_residue(l.gen + offset, l.exp, exp_mod);
  return r;
}

Word generator_word(u32 g, i64 exp, u64 exp_mod) {
  Word w;
  w.push(g, exp, exp_mod);
  return w;
}

void validate_orientation(u32 p, u64 exp_mod, const Orientation& theta, u32 d) {
  if (theta.values.size() != d)
    throw input_error("orientation must assign a value to each of the " + std::to_string(d) +
                      " generators");
  for (u64 v : theta.values) {
    if (v >= exp_mod) throw input_error("orientation value exceeds the p-adic precision modulus");
    if (v % p != 1) throw input_error("orientation value is not congruent to 1 mod p");
  }
  if (!theta.torsion_free(p))
    throw input_error("orientation is not torsion-free: for p=2 every value must be 1 mod 4");
}

// Every relator of a minimal elementary-type presentation has zero exponent
// sum mod p in each generator; anything else is a construction bug.
void check_frattini_relators(u32 p, u32 d, const std::vector<Word>& relators, u64 exp_mod) {
  for (const Word& w : relators)
    for (u32 g = 0; g < d; ++g)
      if (w.exponent_sum(g, exp_mod) % p != 0)
        throw internal_error("relator with nonzero exponent sum mod p in generator " +
                             std::to_string(g + 1));
}

}  // namespace

EtypePresentation presentation_from_tree(u32 p, u32 precision, const TreePtr& node) {
  if (!is_prime(p)) throw input_error("p must be prime");
  if (precision == 0) throw input_error("precision must be positive");
  if (!node) throw input_error("empty construction tree");
  const u64 exp_mod = Word::exponent_modulus(p, precision);

  EtypePresentation G;
  G.p_ = p;
  G.precision_ = precision;
  G.exp_mod_ = exp_mod;
  G.tree_ = node;

  switch (node->kind) {
    case TreeNode::Kind::Free: {
      if (node->d < 1) throw input_error("free group needs at least one generator");
      G.d_ = node->d;
      G.theta_.values = node->theta;
      validate_orientation(p, exp_mod, G.theta_, G.d_);
      break;
    }
    case TreeNode::Kind::Demushkin: {
      const u32 d = node->d;
      if (!node->f) throw input_error("Demushkin node needs an orientation level f");
      const u32 f = *node->f;
      if (d < 2 || d % 2 != 0) throw input_error("Demushkin generator count must be even and >= 2");
      if (f < 1) throw input_error("Demushkin orientation level f must be >= 1");
      if (p == 2 && f < 2)
        throw input_error("Demushkin with p=2 needs f >= 2 (torsion-free orientation)");
      if (f >= precision)
        throw input_error("Demushkin level f=" + std::to_string(f) +
                          " needs exponent precision > f");
      G.d_ = d;
      // x1^{p^f} [x1,x2][x3,x4]...[x_{d-1},x_d]
      Word r = generator_word(0, static_cast<i64>(pow_u64(p, f)), exp_mod);
      for (u32 t = 0; t + 1 < d; t += 2)
        r.append(Word::commutator(generator_word(t, 1, exp_mod),
                                  generator_word(t + 1, 1, exp_mod), exp_mod),
                 exp_mod);
      G.relators_.push_back(std::move(r));
      G.theta_.values.assign(d, 1);
      G.theta_.values[1] = 1 + pow_u64(p, f);
      break;
    }
    case TreeNode::Kind::ThetaAbelian: {
      const u32 d = node->d;
      if (d < 1) throw input_error("theta-abelian node needs at least one generator");
      G.d_ = d;
      if (node->f) {
        const u32 f = *node->f;
        if (f < 1) throw input_error("theta-abelian orientation level f must be >= 1");
        if (p == 2 && f < 2)
          throw input_error("theta-abelian with p=2 needs f >= 2 (torsion-free orientation)");
        if (f >= precision)
          throw input_error("theta-abelian level f=" + std::to_string(f) +
                            " needs exponent precision > f");
        const u64 q = pow_u64(p, f);
        // [x0, xh] xh^{-q} for h >= 1, plus [xh, xl] for 1 <= h < l
        for (u32 h = 1; h < d; ++h) {
          Word r = Word::commutator(generator_word(0, 1, exp_mod), generator_word(h, 1, exp_mod),
                                    exp_mod);
          r.push(h, -static_cast<i64>(q), exp_mod);
          G.relators_.push_back(std::move(r));
        }
        for (u32 h = 1; h < d; ++h)
          for (u32 l = h + 1; l < d; ++l)
            G.relators_.push_back(Word::commutator(generator_word(h, 1, exp_mod),
                                                   generator_word(l, 1, exp_mod), exp_mod));
        G.theta_.values.assign(d, 1);
        G.theta_.values[0] = 1 + q;
      } else {
        // trivial orientation: free abelian, all pairwise commutators
        for (u32 h = 0; h < d; ++h)
          for (u32 l = h + 1; l < d; ++l)
            G.relators_.push_back(Word::commutator(generator_word(h, 1, exp_mod),
                                                   generator_word(l, 1, exp_mod), exp_mod));
        G.theta_.values.assign(d, 1);
      }
      break;
    }
    case TreeNode::Kind::FreeProduct: {
      if (!node->left || !node->right) throw input_error("free product node needs two factors");
      EtypePresentation a = presentation_from_tree(p, precision, node->left);
      EtypePresentation b = presentation_from_tree(p, precision, node->right);
      G.d_ = a.d_ + b.d_;
      G.relators_ = std::move(a.relators_);
      for (const Word& w : b.relators_) G.relators_.push_back(shift_word(w, a.d_, exp_mod));
      G.theta_.values = std::move(a.theta_.values);
      G.theta_.values.insert(G.theta_.values.end(), b.theta_.values.begin(),
                             b.theta_.values.end());
      break;
    }
    case TreeNode::Kind::SemidirectZp: {
      if (!node->base) throw input_error("semidirect node needs a base");
      EtypePresentation base = presentation_from_tree(p, precision, node->base);
      const u32 z = base.d_;  // index of the new kernel generator
      G.d_ = base.d_ + 1;
      G.relators_ = std::move(base.relators_);
      // x z x^-1 z^{-theta(x)} for every base generator x
      for (u32 g = 0; g < base.d_; ++g) {
        Word r;
        r.push(g, 1, exp_mod);
        r.push(z, 1, exp_mod);
        r.push(g, -1, exp_mod);
        r.push_residue(z, exp_mod - base.theta_.values[g] % exp_mod, exp_mod);
        G.relators_.push_back(std::move(r));
      }
      G.theta_.values = std::move(base.theta_.values);
      G.theta_.values.push_back(1);
      break;
    }
  }
  if (node->d != G.d_) throw internal_error("construction tree generator count mismatch");
  check_frattini_relators(p, G.d_, G.relators_, exp_mod);
  return G;
}

EtypePresentation free_group(u32 p, u32 d, Orientation theta, u32 precision) {
  auto node = std::make_shared<TreeNode>();
  node->kind = TreeNode::Kind::Free;
  node->d = d;
  node->theta = std::move(theta.values);
  return presentation_from_tree(p, precision, node);
}

EtypePresentation demushkin(u32 p, u32 d, u32 f, u32 precision) {
  auto node = std::make_shared<TreeNode>();
  node->kind = TreeNode::Kind::Demushkin;
  node->d = d;
  node->f = f;
  return presentation_from_tree(p, precision, node);
}

EtypePresentation theta_abelian(u32 p, u32 d, std::optional<u32> f, u32 precision) {
  auto node = std::make_shared<TreeNode>();
  node->kind = TreeNode::Kind::ThetaAbelian;
  node->d = d;
  node->f = f;
  return presentation_from_tree(p, precision, node);
}

EtypePresentation free_product(const EtypePresentation& a, const EtypePresentation& b) {
  if (a.p() != b.p()) throw input_error("free_product: factors have different primes");
  if (a.precision() != b.precision())
    throw input_error("free_product: factors have different exponent precision");
  auto node = std::make_shared<TreeNode>();
  node->kind = TreeNode::Kind::FreeProduct;
  node->d = a.generator_count() + b.generator_count();
  node->left = a.tree();
  node->right = b.tree();
  return presentation_from_tree(a.p(), a.precision(), node);
}

EtypePresentation semidirect_zp(const EtypePresentation& base) {
  auto node = std::make_shared<TreeNode>();
  node->kind = TreeNode::Kind::SemidirectZp;
  node->d = base.generator_count() + 1;
  node->base = base.tree();
  return presentation_from_tree(base.p(), base.precision(), node);
}

namespace {

ordered_json tree_to_json(const TreePtr& node) {
  ordered_json j;
  switch (node->kind) {
    case TreeNode::Kind::Free:
      j["free"] = {{"d", node->d}, {"theta", node->theta}};
      break;
    case TreeNode::Kind::Demushkin:
      j["demushkin"] = {{"d", node->d}, {"f", *node->f}};
      break;
    case TreeNode::Kind::ThetaAbelian: {
      ordered_json body;
      body["d"] = node->d;
      body["f"] = node->f ? ordered_json(*node->f) : ordered_json(nullptr);
      j["theta_abelian"] = std::move(body);
      break;
    }
    case TreeNode::Kind::FreeProduct:
      j["free_product"] = {{"left", tree_to_json(node->left)},
                           {"right", tree_to_json(node->right)}};
      break;
    case TreeNode::Kind::SemidirectZp:
      j["semidirect_zp"] = {{"base", tree_to_json(node->base)}};
      break;
  }
  return j;
}

TreePtr tree_from_json(const ordered_json& j) {
  if (!j.is_object() || j.size() != 1)
    throw input_error("group spec: each tree node must be an object with exactly one key");
  auto node = std::make_shared<TreeNode>();
  const auto it = j.begin();
  const std::string key = it.key();
  const ordered_json& body = it.value();
  if (key == "free") {
    node->kind = TreeNode::Kind::Free;
    node->d = body.at("d").get<u32>();
    node->theta = body.at("theta").get<std::vector<u64>>();
  } else if (key == "demushkin") {
    node->kind = TreeNode::Kind::Demushkin;
    node->d = body.at("d").get<u32>();
    node->f = body.at("f").get<u32>();
  } else if (key == "theta_abelian") {
    node->kind = TreeNode::Kind::ThetaAbelian;
    node->d = body.at("d").get<u32>();
    if (body.contains("f") && !body.at("f").is_null()) node->f = body.at("f").get<u32>();
  } else if (key == "free_product") {
    node->kind = TreeNode::Kind::FreeProduct;
    node->left = tree_from_json(body.at("left"));
    node->right = tree_from_json(body.at("right"));
    node->d = node->left->d + node->right->d;
  } else if (key == "semidirect_zp") {
    node->kind = TreeNode::Kind::SemidirectZp;
    node->base = tree_from_json(body.at("base"));
    node->d = node->base->d + 1;
  } else {
    throw input_error("group spec: unknown tree node kind '" + key + "'");
  }
  return node;
}

}  // namespace

EtypePresentation parse_group_spec(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("group spec: invalid JSON: ") + e.what());
  }
  try {
    const u32 p = j.at("p").get<u32>();
    const u32 precision =
        j.contains("precision") ? j.at("precision").get<u32>() : kDefaultPrecision;
    return presentation_from_tree(p, precision, tree_from_json(j.at("tree")));
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("group spec: ") + e.what());
  }
}

std::string group_spec_to_json(const EtypePresentation& G) {
  ordered_json j;
  j["p"] = G.p();
  j["precision"] = G.precision();
  j["tree"] = tree_to_json(G.tree());
  return j.dump();
}

UniTriangular evaluate_word(const EtypePresentation& G, const Word& w,
                            const WitnessAssignment& assign) {
  if (assign.images.size() != G.generator_count())
    throw input_error("assignment covers " + std::to_string(assign.images.size()) +
                      " generators, presentation has " + std::to_string(G.generator_count()));
  return evaluate_word(w, assign.images, G.p(), G.precision());
}

HomCheck verify_hom(const EtypePresentation& G, const WitnessAssignment& assign) {
  if (assign.p != G.p()) throw input_error("verify_hom: assignment modulus differs from group's");
  for (std::size_t r = 0; r < G.relators().size(); ++r)
    if (!evaluate_word(G, G.relators()[r], assign).is_identity())
      return HomCheck{false, r};
  return HomCheck{true, 0};
}

}  // namespace masseywit
