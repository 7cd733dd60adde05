#include <gtest/gtest.h>

#include "support.hpp"

using namespace lpd;
using namespace lpd::testing;

class FieldAxioms : public ::testing::TestWithParam<std::uint32_t>
{};

TEST_P(FieldAxioms, Hold)
{
  FiniteField f(GetParam());
  std::uint32_t q = f.q();
  for (std::uint32_t a = 0; a < q; ++a) {
    EXPECT_EQ(f.add(a, 0), a);
    EXPECT_EQ(f.mul(a, 1), a);
    EXPECT_EQ(f.mul(a, 0), 0u);
    EXPECT_EQ(f.add(a, f.neg(a)), 0u);
    if (a) {
      EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    }
    for (std::uint32_t b = 0; b < q; ++b) {
      EXPECT_EQ(f.add(a, b), f.add(b, a));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      if (a && b) {
        EXPECT_NE(f.mul(a, b), 0u);
      }
      for (std::uint32_t c = 0; c < q; c += 1 + q / 5)
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    }
  }
  EXPECT_EQ(f.multiplicative_order(f.primitive_element()), q - 1);
  EXPECT_EQ(f.additive_basis().size(), f.e());
}

INSTANTIATE_TEST_SUITE_P(SupportedOrders, FieldAxioms,
                         ::testing::Values(2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u));

TEST(FiniteField, UnsupportedOrders)
{
  EXPECT_THROW(FiniteField(6), Error);
  EXPECT_THROW(FiniteField(32), Error);
  EXPECT_THROW(FiniteField(1), Error);
  EXPECT_THROW((void)FiniteField(5).inv(0), Error);
}

TEST(Gaussian, FrozenValues)
{
  EXPECT_EQ(gaussian_coefficient(4, 2, 2), 35);
  EXPECT_EQ(gaussian_coefficient(3, 1, 2), 7);
  EXPECT_EQ(gaussian_coefficient(3, 2, 2), 7);
  EXPECT_EQ(gaussian_coefficient(4, 2, 3), 130);
  EXPECT_EQ(gaussian_coefficient(5, 0, 4), 1);
  EXPECT_EQ(gaussian_coefficient(2, 3, 2), 0);
  EXPECT_EQ(gaussian_coefficient(6, 3, 2), 1395);
}

TEST(Subspaces, CountsMatchGaussianCoefficients)
{
  for (std::uint32_t q : {2u, 3u, 4u})
    for (std::size_t d = 1; d <= 4; ++d) {
      VectorSpace space(FiniteField(q), d);
      if (space.size() > 300)
        continue;
      for (std::size_t i = 1; i <= d; ++i) {
        auto list = enumerate_subspaces(space, i);
        EXPECT_EQ(list.canonical_matrices.size(), gaussian_coefficient(d, i, q));
        std::set<std::vector<std::size_t>> spans;
        for (auto const &m : list.canonical_matrices) {
          auto s = space.span(m);
          EXPECT_EQ(BigInt(s.size()), ipow(q, i));
          spans.insert(s);
        }
        EXPECT_EQ(spans.size(), list.canonical_matrices.size());
      }
    }
}

TEST(ClassicalGroups, Orders)
{
  EXPECT_EQ(classical_group(ClassicalFamily::GL, 3, 2).order(), 168);
  EXPECT_EQ(classical_group(ClassicalFamily::PGL, 3, 2).order(), 168);
  EXPECT_EQ(classical_group(ClassicalFamily::PGL, 3, 3).order(), 5616);
  EXPECT_EQ(classical_group(ClassicalFamily::PGL, 2, 4).order(), 60);
  EXPECT_EQ(classical_group(ClassicalFamily::GL, 2, 9).order(), 5760);
  EXPECT_EQ(classical_group(ClassicalFamily::AGL, 2, 3).order(), 432);
  EXPECT_EQ(classical_group(ClassicalFamily::Sp, 4, 2).order(), 720);
  EXPECT_EQ(classical_group(ClassicalFamily::Sp, 4, 3).order(), 51840);
  EXPECT_EQ(classical_group(ClassicalFamily::Sp, 2, 5).order(), 120);
  EXPECT_EQ(affine_symplectic_group(2, 2).order(), 11520);
}

TEST(ClassicalGroups, SymplecticGeneratorsPreserveForm)
{
  VectorSpace space(FiniteField(3), 4);
  for (auto const &m : sp_generators(space))
    for (std::size_t x = 0; x < space.size(); x += 7)
      for (std::size_t y = 0; y < space.size(); y += 5) {
        auto u = space.decode(x), v = space.decode(y);
        EXPECT_EQ(symplectic_form(space.field(), space.apply(u, m), space.apply(v, m)),
                  symplectic_form(space.field(), u, v));
      }
}

TEST(Builders, ProjectivePlanes)
{
  auto fano = build_pg(2, 2, 1);
  EXPECT_EQ(verify_design(fano.design), (DesignParameters{7, 7, 3, 3, 1, true}));
  EXPECT_EQ(fano.group.order(), 168);

  auto pg31 = build_pg(3, 2, 1);
  EXPECT_EQ(verify_design(pg31.design), (DesignParameters{15, 35, 7, 3, 1, false}));
  EXPECT_EQ(pg31.group.order(), 20160);

  auto pg32 = build_pg(3, 2, 2);
  EXPECT_EQ(verify_design(pg32.design), (DesignParameters{15, 15, 7, 7, 3, true}));

  auto pg23 = build_pg(2, 3, 1);
  EXPECT_EQ(verify_design(pg23.design), (DesignParameters{13, 13, 4, 4, 1, true}));

  auto pg24 = build_pg(2, 4, 1);
  EXPECT_EQ(verify_design(pg24.design), (DesignParameters{21, 21, 5, 5, 1, true}));

  EXPECT_THROW((void)build_pg(2, 2, 2), Error);
  EXPECT_THROW((void)build_pg(1, 2, 1), Error);
  EXPECT_THROW((void)build_pg(2, 6, 1), Error);
}

TEST(Builders, AffineSpaces)
{
  auto ag = build_ag(3, 2, 2);
  EXPECT_EQ(verify_design(ag.design), (DesignParameters{8, 14, 7, 4, 3, false}));
  EXPECT_EQ(ag.group.order(), 1344);

  auto plane = build_ag(2, 3, 1);
  EXPECT_EQ(verify_design(plane.design), (DesignParameters{9, 12, 4, 3, 1, false}));

  auto lines = build_ag(3, 3, 1);
  EXPECT_EQ(verify_design(lines.design).lambda, 1u);

  auto ag4 = build_ag(2, 4, 1);
  EXPECT_EQ(verify_design(ag4.design), (DesignParameters{16, 20, 5, 4, 1, false}));
}

TEST(Builders, ParallelClassesPartitionPoints)
{
  for (auto const &built : {build_ag(3, 2, 2), build_ag(2, 3, 1), build_symplectic_subdesign(2, 2)}) {
    std::set<std::size_t> all;
    for (auto const &cls : built.parallel_classes) {
      std::vector<int> cover(built.design.v(), 0);
      for (auto j : cls) {
        all.insert(j);
        for (Point x : built.design.block(j))
          ++cover[x];
      }
      for (int c : cover)
        EXPECT_EQ(c, 1);
    }
    EXPECT_EQ(all.size(), built.design.b());
  }
}

TEST(Builders, SymplecticSubdesign)
{
  auto s = build_symplectic_subdesign(2, 2);
  EXPECT_EQ(verify_design(s.design), (DesignParameters{16, 80, 20, 4, 4, false}));
  EXPECT_EQ(s.group.order(), 11520);

  // a proper subset of the blocks of AG_2(4,2)
  auto ag = build_ag(4, 2, 2);
  std::set<Block> ag_blocks(ag.design.blocks().begin(), ag.design.blocks().end());
  for (auto const &b : s.design.blocks())
    EXPECT_TRUE(ag_blocks.count(b));
  EXPECT_LT(s.design.b(), ag.design.b());

  auto s3 = build_symplectic_subdesign(2, 3);
  EXPECT_EQ(verify_design(s3.design), (DesignParameters{81, 810, 90, 9, 9, false}));

  EXPECT_THROW((void)build_symplectic_subdesign(1, 2), Error);
}

// With m = 2 the perpendicular of a non-degenerate plane is again one, so
// G_0 permutes the pairs {U, U^perp} of blocks through 0.
TEST(Builders, SymplecticPointStabilizerPairsPerpendicularPlanes)
{
  auto s = build_symplectic_subdesign(2, 2);
  DesignAction action(s.group, s.design);
  auto local = action.local_action_at_point(0);
  auto result = primitivity(local.image);
  ASSERT_EQ(result.reason, PrimitivityReason::Imprimitive);

  VectorSpace space(FiniteField(2), 4);
  auto const &through = s.design.blocks_through(0);
  for (Point x = 1; x < local.image.degree(); ++x) {
    auto sys = minimal_block_system(local.image, 0, x);
    if (sys.is_trivial(local.image.degree()))
      continue;
    EXPECT_EQ(sys.cell_size, 2u);
    for (auto const &cell : sys.cells) {
      auto const &u = s.design.block(through[cell[0]]);
      auto const &w = s.design.block(through[cell[1]]);
      for (Point a : u)
        for (Point b : w)
          EXPECT_EQ(symplectic_form(space.field(), space.decode(a), space.decode(b)), 0u);
    }
  }
}
