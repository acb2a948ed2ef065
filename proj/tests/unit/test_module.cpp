#include <gtest/gtest.h>

#include "oracle.hpp"
#include "schunck/error.hpp"
#include "schunck/groups.hpp"
#include "schunck/module.hpp"

using namespace schunck;

namespace {

LiePtr load(const std::string& name) { return share(parse_lie_algebra(oracle::read_file("data/algebras/" + name))); }

Matrix m1(Field f, int x) { return Matrix::from_rows(f, {{x}}, 1); }

/// 1-dim module of the affine line with e1 acting by `a`.
Module s_weight(const LiePtr& laff, int a) {
  return Module::lie(laff, {m1(laff->field(), a), m1(laff->field(), 0)});
}

/// Invariant subspace generated by v, computed on explicit vector sets.
oracle::VecSet naive_spin(const std::vector<Matrix>& gens, int p, std::size_t n, const Vector& v) {
  oracle::VecSet s = oracle::span_set(p, n, {v});
  while (true) {
    std::vector<oracle::Vec> all(s.begin(), s.end());
    for (const Matrix& g : gens)
      for (const auto& x : s) all.push_back(g.apply(x));
    oracle::VecSet next = oracle::span_set(p, n, all);
    if (next == s) return s;
    s = std::move(next);
  }
}

bool irreducible_by_oracle(const Module& m) {
  const int p = m.field().p();
  std::size_t full = 1;
  for (std::size_t i = 0; i < m.dim(); ++i) full *= static_cast<std::size_t>(p);
  for (const auto& v : oracle::all_vectors(p, m.dim())) {
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
    if (naive_spin(m.actions(), p, m.dim(), v).size() != full) return false;
  }
  return true;
}

std::vector<int> transpositions(const FiniteGroup& g) {
  std::vector<int> out;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (g.order_of(static_cast<int>(x)) == 2) out.push_back(static_cast<int>(x));
  return out;
}

Module s3_sign(const GroupPtr& s3) {
  const auto a3 = minimal_ideals(*s3).front();
  return chief_factor_module(s3, a3, trivial_subgroup(*s3));
}

std::vector<Module> sample_modules() {
  std::vector<Module> out;
  const LiePtr laff = load("l_aff_3.lie");
  out.push_back(s_weight(laff, 1));
  out.push_back(s_weight(laff, 2));
  out.push_back(Module::trivial(laff, 2));
  out.push_back(Module::lie(laff, {Matrix::from_rows(Field(3), {{1, 1}, {0, 1}}, 2), Matrix(Field(3), 2, 2)}));
  const LiePtr h3 = load("h3_3.lie");
  out.push_back(Module::lie(h3, {h3->ad(h3->unit(0)), h3->ad(h3->unit(1)), h3->ad(h3->unit(2))}));
  const GroupPtr s3 = share(symmetric_group(3));
  out.push_back(regular_module(Field(3), s3));
  out.push_back(regular_module(Field(2), s3));
  out.push_back(s3_sign(s3));
  const GroupPtr a4 = share(alternating_group_4());
  out.push_back(chief_factor_module(a4, minimal_ideals(*a4).front(), trivial_subgroup(*a4)));
  return out;
}

}  // namespace

TEST(ChiefFactorModule, AffineLine) {
  const LiePtr laff = load("l_aff_3.lie");
  const Module m = chief_factor_module(laff, Subspace::span(Field(3), 2, {{0, 1}}), zero_ideal(*laff));
  ASSERT_EQ(m.dim(), 1U);
  EXPECT_EQ(m.action(0).at(0, 0), 1);
  EXPECT_EQ(m.action(1).at(0, 0), 0);
}

TEST(ChiefFactorModule, HeisenbergTopIsTrivial) {
  const LiePtr h3 = load("h3_3.lie");
  const Module m = chief_factor_module(h3, whole(*h3), Subspace::span(Field(3), 3, {{0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(m.dim(), 1U);
  EXPECT_TRUE(m.is_trivial());
}

TEST(ChiefFactorModule, SymmetricThreeSign) {
  const GroupPtr s3 = share(symmetric_group(3));
  const Module m = s3_sign(s3);
  ASSERT_EQ(m.dim(), 1U);
  EXPECT_EQ(m.field().p(), 3);
  for (int t : transpositions(*s3)) EXPECT_EQ(m.action(t).at(0, 0), 2);
}

TEST(ChiefFactorModule, RejectsNonChiefSection) {
  const LiePtr h3 = load("h3_3.lie");
  EXPECT_THROW(chief_factor_module(h3, whole(*h3), Subspace::span(Field(3), 3, {{0, 0, 1}})), InputError);
  EXPECT_THROW(chief_factor_module(h3, whole(*h3), Subspace::span(Field(3), 3, {{1, 0, 0}})), InputError);
}

TEST(ChiefFactorModule, AllCatalogFactorsIrreducibleByOracle) {
  for (const char* name : {"l_aff_3.lie", "h3_3.lie", "r3_3.lie", "l_aff_2.lie"}) {
    const LiePtr l = load(name);
    const auto cs = chief_series(*l);
    for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k)
      EXPECT_TRUE(irreducible_by_oracle(chief_factor_module(l, cs.terms[k + 1], cs.terms[k])));
  }
  for (const char* name : {"S3", "A4", "S4", "D4", "C3:C4"}) {
    const GroupPtr g = share(builtin_group(name));
    const auto cs = chief_series(*g);
    for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k)
      EXPECT_TRUE(irreducible_by_oracle(chief_factor_module(g, cs.terms[k + 1], cs.terms[k]))) << name;
  }
}

TEST(Dual, SpecExamples) {
  const LiePtr laff = load("l_aff_3.lie");
  EXPECT_TRUE(dual(Module::trivial(laff)).is_trivial());
  EXPECT_EQ(dual(s_weight(laff, 1)).action(0).at(0, 0), 2);
  const GroupPtr s3 = share(symmetric_group(3));
  const Module d = dual(s3_sign(s3));
  for (int t : transpositions(*s3)) EXPECT_EQ(d.action(t).at(0, 0), 2);
}

TEST(Tensor, SpecExamples) {
  const LiePtr laff = load("l_aff_3.lie");
  const Module s1 = s_weight(laff, 1);
  EXPECT_TRUE(is_isomorphic(tensor(Module::trivial(laff), s1), s1));
  EXPECT_EQ(tensor(s1, s1).action(0).at(0, 0), 2);
  const GroupPtr s3 = share(symmetric_group(3));
  EXPECT_TRUE(tensor(s3_sign(s3), s3_sign(s3)).is_trivial());
  EXPECT_THROW(tensor(s1, Module::trivial(load("h3_3.lie"))), InputError);
}

TEST(CompositionFactors, SpecExamples) {
  const LiePtr laff = load("l_aff_3.lie");
  const Module s1 = s_weight(laff, 1);
  auto cf = composition_factors(s1);
  ASSERT_EQ(cf.size(), 1U);
  EXPECT_EQ(cf[0].multiplicity, 1);

  const GroupPtr c2 = share(cyclic_group(2));
  cf = composition_factors(regular_module(Field(2), c2));
  ASSERT_EQ(cf.size(), 1U);
  EXPECT_TRUE(cf[0].module.is_trivial());
  EXPECT_EQ(cf[0].multiplicity, 2);

  const Module jordan =
      Module::lie(laff, {Matrix::from_rows(Field(3), {{1, 1}, {0, 1}}, 2), Matrix(Field(3), 2, 2)});
  cf = composition_factors(jordan);
  ASSERT_EQ(cf.size(), 1U);
  EXPECT_EQ(cf[0].multiplicity, 2);
  EXPECT_TRUE(is_isomorphic(cf[0].module, s1));
  // non-split: the eigenvector line is the only submodule
  EXPECT_EQ(spin(jordan, {{0, 1}}).dim(), 2U);
  EXPECT_EQ(spin(jordan, {{1, 0}}).dim(), 1U);
}

TEST(CompositionFactors, IndependentOfSeed) {
  for (const auto& m : sample_modules()) {
    const auto base = composition_factors(m, 0);
    int total = 0;
    for (const auto& f : base) total += f.multiplicity * static_cast<int>(f.module.dim());
    EXPECT_EQ(total, static_cast<int>(m.dim()));
    for (std::uint64_t seed : {1ULL, 7ULL, 12345ULL}) {
      const auto other = composition_factors(m, seed);
      ASSERT_EQ(other.size(), base.size());
      for (std::size_t i = 0; i < base.size(); ++i) {
        EXPECT_EQ(other[i].multiplicity, base[i].multiplicity);
        EXPECT_TRUE(is_isomorphic(other[i].module, base[i].module));
      }
    }
  }
}

TEST(CompositionFactors, RegularModulesOfSymmetricThree) {
  const GroupPtr s3 = share(symmetric_group(3));
  // F_3: trivial x3, sign x3.  F_2: trivial x2, 2-dim x2.
  auto f3 = composition_factors(regular_module(Field(3), s3));
  ASSERT_EQ(f3.size(), 2U);
  EXPECT_EQ(f3[0].multiplicity, 3);
  EXPECT_EQ(f3[1].multiplicity, 3);
  auto f2 = composition_factors(regular_module(Field(2), s3));
  ASSERT_EQ(f2.size(), 2U);
  EXPECT_EQ(f2[0].module.dim(), 1U);
  EXPECT_EQ(f2[0].multiplicity, 2);
  EXPECT_EQ(f2[1].module.dim(), 2U);
  EXPECT_EQ(f2[1].multiplicity, 2);
}

TEST(IsIsomorphic, SpecExamples) {
  const LiePtr laff = load("l_aff_3.lie");
  EXPECT_TRUE(is_isomorphic(s_weight(laff, 1), s_weight(laff, 1)));
  EXPECT_FALSE(is_isomorphic(s_weight(laff, 1), Module::trivial(laff)));
  const LiePtr line = share(LieAlgebra::abelian(Field(3), 1));
  EXPECT_FALSE(is_isomorphic(Module::lie(line, {m1(Field(3), 1)}), Module::lie(line, {m1(Field(3), 2)})));
}

TEST(HomModule, SpecExamples) {
  const LiePtr laff = load("l_aff_3.lie");
  const Module s1 = s_weight(laff, 1);
  const Module triv = Module::trivial(laff);
  EXPECT_TRUE(is_isomorphic(hom_module(triv, s1), s1));
  EXPECT_TRUE(hom_module(s1, s1).is_trivial());
}

TEST(HomModule, InvariantsAreHomomorphisms) {
  for (const auto& m : sample_modules()) {
    const Module h = hom_module(m, m);
    // The identity map is fixed and the fixed space is exactly End_G(m).
    const Vector id = hom_to_vector(Matrix::identity(m.field(), m.dim()));
    for (const Matrix& g : h.generator_actions())
      EXPECT_EQ(g.apply(id), m.is_lie() ? Vector(id.size(), 0) : id);
    EXPECT_EQ(vector_to_hom(id, m.dim(), m.dim(), m.field()), Matrix::identity(m.field(), m.dim()));
  }
}

TEST(Evaluation, SpecExamples) {
  const LiePtr laff = load("l_aff_3.lie");
  const Module s1 = s_weight(laff, 1);
  const Module triv = Module::trivial(laff);
  EXPECT_TRUE(evaluation_image(s1, s1, Subspace(Field(3), 1)).is_zero());
  EXPECT_TRUE(evaluation_image(s1, s1, Subspace::whole(Field(3), 1)).is_whole());
  EXPECT_TRUE(evaluation_image(triv, s1, Subspace::whole(Field(3), 1)).is_whole());
}

TEST(Evaluation, CommutesWithActionOnAllSubmodules) {
  const GroupPtr s3 = share(symmetric_group(3));
  const Module v = regular_module(Field(2), s3);
  const Module w = s3_sign(share(symmetric_group(3)));
  (void)w;
  const Module hom = hom_module(v, v);
  // all 1-dim submodules of Hom(V, V): spin each fixed vector
  for (const Matrix& t : intertwiners(v, v)) {
    const Subspace a = spin(hom, {hom_to_vector(t)});
    const Matrix e = evaluation_map(v, v, a);
    EXPECT_TRUE(is_module_hom(tensor(v, submodule(hom, a)), v, e));
  }
  EXPECT_THROW(evaluation_image(v, v, Subspace::span(Field(2), 36, {hom_to_vector(Matrix::from_rows(
                                                                    Field(2), std::vector<Vector>(6, Vector{1, 0, 0, 0, 0, 0}), 6))})),
               InputError);
}

TEST(Restrict, SpecExamples) {
  const LiePtr laff = load("l_aff_3.lie");
  EXPECT_TRUE(restrict(s_weight(laff, 1), Subspace::span(Field(3), 2, {{0, 1}})).is_trivial());
  EXPECT_TRUE(restrict(s_weight(laff, 1), zero_ideal(*laff)).is_trivial());

  const GroupPtr s3 = share(symmetric_group(3));
  const Subgroup h = subgroup_closure(*s3, {transpositions(*s3).front()});
  const Module perm = permutation_module(Field(3), s3, h);
  const Subspace sum_zero = Subspace::span(Field(3), 3, {{1, 2, 0}, {0, 1, 2}});
  ASSERT_TRUE(is_submodule(perm, sum_zero));
  const Module standard = submodule(perm, sum_zero);
  const Module on_a3 = restrict(standard, minimal_ideals(*s3).front());
  EXPECT_FALSE(on_a3.is_trivial());
  for (std::size_t x = 0; x < on_a3.group_owner()->order(); ++x)
    if (on_a3.group_owner()->order_of(static_cast<int>(x)) == 3) EXPECT_FALSE(on_a3.action(x).is_identity());
}

TEST(Properties, DoubleDualAndTensorDual) {
  const auto mods = sample_modules();
  for (const auto& m : mods) EXPECT_TRUE(is_isomorphic(dual(dual(m)), m));
  for (const auto& m : mods)
    for (const auto& n : mods) {
      if (!m.same_owner(n) || m.dim() * n.dim() > 12) continue;
      EXPECT_TRUE(is_isomorphic(dual(tensor(m, n)), tensor(dual(m), dual(n))));
    }
}

TEST(SplitExtension, SpecExamples) {
  const LiePtr zero = share(LieAlgebra::abelian(Field(5), 0));
  const auto e0 = split_extension(zero, Module::trivial(zero, 1));
  EXPECT_EQ(e0.algebra.dim(), 1U);
  EXPECT_TRUE(e0.algebra.bracket_table().empty());

  const LiePtr line = share(LieAlgebra::abelian(Field(3), 1));
  const auto e1 = split_extension(line, Module::lie(line, {m1(Field(3), 1)}));
  EXPECT_TRUE(are_isomorphic(e1.algebra, *load("l_aff_3.lie")));

  const GroupPtr c2 = share(cyclic_group(2));
  std::vector<Matrix> acts(2, m1(Field(3), 1));
  acts[1 - c2->identity()] = m1(Field(3), 2);
  const auto e2 = split_extension(c2, Module::group(Field(3), c2, acts));
  EXPECT_TRUE(are_isomorphic(e2.group, symmetric_group(3)));
  EXPECT_TRUE(is_normal(e2.group, e2.module_subgroup));
}

TEST(SplitExtension, QuotientRoundTrip) {
  for (const auto& m : sample_modules()) {
    if (m.is_lie()) {
      const auto ext = split_extension(m.lie_owner(), m);
      EXPECT_TRUE(is_ideal(ext.algebra, ext.module_ideal));
      EXPECT_TRUE(are_isomorphic(quotient(ext.algebra, ext.module_ideal).algebra, *m.lie_owner()));
    } else if (m.dim() <= 3) {
      const auto ext = split_extension(m.group_owner(), m);
      EXPECT_TRUE(are_isomorphic(quotient(ext.group, ext.module_subgroup).group, *m.group_owner()));
    }
  }
}

TEST(DescendPullback, RoundTrip) {
  const GroupPtr s4 = share(symmetric_group(4));
  const auto v4 = minimal_ideals(*s4).front();
  const Module m = chief_factor_module(s4, v4, trivial_subgroup(*s4));
  const GroupQuotient q = quotient(*s4, centralizer(*s4, v4, trivial_subgroup(*s4)));
  const GroupPtr qp = share(q.group);
  const Module down = descend(m, q, qp);
  EXPECT_EQ(qp->order(), 6U);
  EXPECT_TRUE(is_irreducible(down));
  const Module up = pullback(down, q, s4);
  EXPECT_EQ(up.actions(), m.actions());
}
