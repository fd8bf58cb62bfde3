#include "support.hpp"

using namespace fx;

namespace {

struct T2Modules : ::testing::Test {
  GF f{2};
  AlgebraRef<GF> r = t2(f);
  LeftModule<GF> reg = regular_left(r);
};

TEST_F(T2Modules, Validation) {
  EXPECT_TRUE(validate_module(reg).ok());
  EXPECT_TRUE(validate_module(p2(r)).ok());
  EXPECT_TRUE(validate_module(s1(r)).ok());
  EXPECT_TRUE(validate_module(s2(r)).ok());

  LeftModule<GF> swapped = reg;
  std::swap(swapped.action[0], swapped.action[1]);
  ValidationReport v = validate_module(swapped);
  ASSERT_FALSE(v.ok());
  EXPECT_TRUE(std::any_of(v.failures.begin(), v.failures.end(),
                          [](const std::string& s) { return s.find("left action law (") == 0; }));
  EXPECT_THROW(validate_module(LeftModule<GF>{r, 2, {Matrix<GF>(f, 2, 2)}}), invalid_input);
}

TEST_F(T2Modules, HomExamples) {
  EXPECT_EQ(hom_space(s1(r), s2(r)).dim(), 0u);
  EXPECT_EQ(hom_space(p2(r), s2(r)).dim(), 1u);
  EXPECT_EQ(oracle::hom_dim(s1(r), s2(r)), 0u);
  EXPECT_EQ(oracle::hom_dim(p2(r), s2(r)), 1u);
}

TEST_F(T2Modules, TensorExample) {
  auto g = t2_corner(r);
  // eR ⊗_R Re with e = e22
  TensorSpace<GF> t = tensor_space(f, g.n.dim, g.n.right_action, g.m.dim, g.m.left_action);
  EXPECT_EQ(t.dim(), 1u);
  EXPECT_EQ(oracle::tensor_dim(g.n.dim, g.n.right_action, g.m.dim, g.m.left_action, 2), 1u);
}

TEST_F(T2Modules, AnnihilatorAndImage) {
  Ideal<GF> i = t2_ideal(r);
  Submodule<GF> ann = annihilator(reg, i);
  EXPECT_EQ(ann.basis, Basis<GF>::span(f, 3, {vec(f, {1, 0, 0}), vec(f, {0, 1, 0})}));
  EXPECT_EQ(annihilator(reg, zero_ideal(r)).dim(), 3u);
  EXPECT_EQ(annihilator(reg, unit_ideal(r)).dim(), 0u);
  EXPECT_EQ(ideal_action_image(i, reg).basis, i.basis);
  EXPECT_EQ(ideal_action_image(unit_ideal(r), reg).dim(), 3u);
  EXPECT_EQ(ideal_action_image(zero_ideal(r), reg).dim(), 0u);
}

TEST_F(T2Modules, SubmoduleCounts) {
  // 0, e12, e11, e11+e12, {e11,e12}, {e12,e22} and the whole module
  EXPECT_EQ(enumerate_submodules(reg).size(), oracle::submodule_count_gf2(reg));
  EXPECT_EQ(enumerate_submodules(reg).size(), 7u);
  EXPECT_EQ(enumerate_submodules(s1(r)).size(), 2u);
  LeftModule<GF> s1s1 = direct_sum(s1(r), s1(r));
  auto subs = enumerate_submodules(s1s1);
  EXPECT_EQ(subs.size(), oracle::submodule_count_gf2(s1s1));
  Basis<GF> diagonal = Basis<GF>::span(f, 2, {vec(f, {1, 1})});
  EXPECT_TRUE(std::any_of(subs.begin(), subs.end(), [&](const auto& s) { return s.basis == diagonal; }));
}

TEST_F(T2Modules, Isomorphism) {
  EXPECT_TRUE(is_isomorphic(reg, reg).found());
  auto diff = is_isomorphic(s1(r), reg);
  EXPECT_FALSE(diff.found());
  EXPECT_TRUE(diff.exhaustive);
  auto split = is_isomorphic(p2(r), direct_sum(s1(r), s2(r)));
  EXPECT_FALSE(split.found());
  EXPECT_STREQ(split.verdict(), "none");
}

TEST(Modules, FreeModuleAdjunctionAndUnitor) {
  GF f(2);
  for (auto r : {t2(f), m2(f), dual_numbers(f)}) {
    Catalog<GF> cat = build_catalog(r, 3);
    for (const auto& n : cat.modules) {
      EXPECT_EQ(hom_space(regular_left(r), n).dim(), n.dim);
      TensorModule<GF> t = tensor_over(regular_bimodule(r), n);
      EXPECT_TRUE(is_isomorphic(t.module, n).found());
    }
  }
}

// Every Hom, tensor, annihilator and image dimension among small T2, M2 and
// k[t]/t² modules, against the counting oracles.
TEST(ModuleOracles, AgreeOnSmallCatalogs) {
  GF f(2);
  for (auto r : {t2(f), m2(f), dual_numbers(f)}) {
    Catalog<GF> cat = build_catalog(r, 2);
    auto ideals = std::vector<Ideal<GF>>{zero_ideal(r), unit_ideal(r)};
    for (std::size_t i = 0; i < r->dim(); ++i) ideals.push_back(two_sided_ideal_closure(r, {r->basis_vector(i)}));
    for (const auto& x : cat.modules) {
      for (const auto& y : cat.modules) {
        EXPECT_EQ(hom_space(x, y).dim(), oracle::hom_dim(x, y));
      }
      for (const auto& i : ideals) {
        EXPECT_EQ(annihilator(x, i).dim(), oracle::annihilator_dim(x, i.basis.vectors()));
        EXPECT_EQ(ideal_action_image(i, x).dim(), oracle::image_dim(x, i.basis.vectors()));
      }
      if (x.dim <= 3) EXPECT_EQ(enumerate_submodules(x).size(), oracle::submodule_count_gf2(x));
    }
    // R ⊗_R X and the right regular module against left catalog members
    RightModule<GF> rr = regular_right(r);
    for (const auto& x : cat.modules)
      EXPECT_EQ(tensor_space(f, rr.dim, rr.action, x.dim, x.action).dim(),
                oracle::tensor_dim(rr.dim, rr.action, x.dim, x.action, 2));
  }
}

TEST(ModuleOracles, SubmodulesUpToDimFour) {
  GF f(2);
  auto r = t2(f);
  Catalog<GF> cat = build_catalog(r, 4);
  for (const auto& x : cat.modules)
    if (x.dim == 4) EXPECT_EQ(enumerate_submodules(x).size(), oracle::submodule_count_gf2(x));
}

// ---- properties ----

TEST(ModuleProperties, HomAndTensorLaws) {
  GF f(2);
  std::vector<Catalog<GF>> cats{build_catalog(t2(f), 2), build_catalog(m2(f), 2), build_catalog(dual_numbers(f), 2)};
  for_all_seeds(60, 2000, [&](Rng& rng) {
    const Catalog<GF>& cat = cats[draw(rng, cats.size())];
    LeftModule<GF> x = random_module(cat, rng), y = random_module(cat, rng), z = random_module(cat, rng);
    HomSpace<GF> h = hom_space(x, y);
    for (const auto& g : h.elements())
      for (std::size_t i = 0; i < x.action.size(); ++i) EXPECT_EQ(g * x.action[i], y.action[i] * g);
    EXPECT_EQ(hom_space(direct_sum(x, y), z).dim(), hom_space(x, z).dim() + hom_space(y, z).dim());

    // submodule outputs are stable
    Ideal<GF> i = two_sided_ideal_closure(cat.algebra, {random_matrix(f, cat.algebra->dim(), 1, rng).col(0)});
    EXPECT_TRUE(is_submodule(x, annihilator(x, i).basis));
    EXPECT_TRUE(is_submodule(x, ideal_action_image(i, x).basis));

    // dim M ⊗ N = dim M · dim N − rank(relations), and is basis independent
    RightModule<GF> rr = regular_right(cat.algebra);
    TensorSpace<GF> t = tensor_space(f, rr.dim, rr.action, x.dim, x.action);
    EXPECT_EQ(t.dim(), rr.dim * x.dim - t.relations().dim());
    if (x.dim > 0) {
      LeftModule<GF> moved = change_basis(x, random_invertible(f, x.dim, rng));
      EXPECT_EQ(tensor_space(f, rr.dim, rr.action, moved.dim, moved.action).dim(), t.dim());
      EXPECT_TRUE(is_isomorphic(moved, x).found());
    }
  });
}

TEST(ModuleProperties, RationalHomLaws) {
  QF q;
  auto r = t2(q);
  std::vector<LeftModule<QF>> mods{s1(r), s2(r), p2(r), regular_left(r)};
  for_all_seeds(30, 2100, [&](Rng& rng) {
    LeftModule<QF> x = mods[draw(rng, mods.size())], y = mods[draw(rng, mods.size())];
    x = change_basis(x, random_invertible(q, x.dim, rng));
    HomSpace<QF> h = hom_space(x, y);
    for (const auto& g : h.elements())
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(g * x.action[i], y.action[i] * g);
    EXPECT_EQ(hom_space(regular_left(r), y).dim(), y.dim);
  });
}

}  // namespace
