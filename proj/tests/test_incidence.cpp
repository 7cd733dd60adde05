#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace lpd;
using namespace lpd::testing;

namespace
{

ErrorCode verify_error(IncidenceStructure const &s)
{
  try {
    (void)verify_design(s);
  } catch (Error const &e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

} // namespace

TEST(IncidenceStructure, Canonicalization)
{
  IncidenceStructure s(4, {{3, 1}, {0, 2}, {2, 1}});
  EXPECT_EQ(s.blocks(), (std::vector<Block>{{0, 2}, {1, 2}, {1, 3}}));
  EXPECT_EQ(s.flag_count(), 6u);
  EXPECT_EQ(s.blocks_through(1), (std::vector<Point>{1, 2}));
  EXPECT_TRUE(s.incident(3, 2));
  EXPECT_FALSE(s.incident(0, 1));
  EXPECT_EQ(s, IncidenceStructure(4, {{1, 2}, {1, 3}, {2, 0}}));
}

TEST(IncidenceStructure, Validation)
{
  EXPECT_THROW(IncidenceStructure(3, {{0, 3}}), Error);
  EXPECT_THROW(IncidenceStructure(3, {{}}), Error);
  EXPECT_THROW(IncidenceStructure(3, {{0, 0}}), Error);
}

TEST(IncidenceStructure, RepeatedBlocks)
{
  IncidenceStructure s(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(s.has_repeated_blocks());
  EXPECT_EQ(s.b(), 4u);
}

TEST(VerifyDesign, Fano)
{
  auto p = verify_design(cyclic_fano());
  EXPECT_EQ(p, (DesignParameters{7, 7, 3, 3, 1, true}));
  EXPECT_TRUE(p.satisfies_identities());
}

TEST(VerifyDesign, Errors)
{
  EXPECT_EQ(verify_error(IncidenceStructure(2, {{0, 1}})), ErrorCode::Degenerate);
  EXPECT_EQ(verify_error(IncidenceStructure(4, {})), ErrorCode::Degenerate);
  EXPECT_EQ(verify_error(IncidenceStructure(4, {{0}, {1}, {2}, {3}})), ErrorCode::Degenerate);
  EXPECT_EQ(verify_error(IncidenceStructure(3, {{0, 1, 2}})), ErrorCode::TrivialDesign);
  EXPECT_EQ(verify_error(IncidenceStructure(4, {{0, 1}, {2, 3, 1}})),
            ErrorCode::NonConstantBlockSize);
  EXPECT_EQ(verify_error(IncidenceStructure(4, {{0, 1}, {2, 3}})), ErrorCode::UncoveredPair);

  // every pair covered, lambda varies
  std::vector<Block> blocks = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1}};
  EXPECT_EQ(verify_error(IncidenceStructure(4, blocks)), ErrorCode::NonConstantLambda);
}

TEST(VerifyDesign, AgreesWithPairCountOracle)
{
  std::mt19937_64 rng(2024);
  std::size_t accepted = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t v = 3 + rng() % 6;
    std::vector<Block> blocks;
    if (trial % 4 == 0) {
      // all k-subsets, sometimes with a block removed or duplicated
      std::size_t k = 2 + rng() % (v - 2);
      std::vector<bool> pick(v, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        Block b;
        for (Point x = 0; x < v; ++x)
          if (pick[x])
            b.push_back(x);
        blocks.push_back(b);
      } while (std::prev_permutation(pick.begin(), pick.end()));
      if (rng() % 3 == 0)
        blocks.pop_back();
      else if (rng() % 3 == 0)
        blocks.push_back(blocks.front());
    } else {
      std::size_t b = 1 + rng() % 12;
      std::size_t k = 1 + rng() % v;
      for (std::size_t j = 0; j < b; ++j) {
        std::vector<Point> pts(v);
        std::iota(pts.begin(), pts.end(), Point{0});
        std::shuffle(pts.begin(), pts.end(), rng);
        std::size_t size = (rng() % 5 == 0) ? 1 + rng() % v : k;
        blocks.emplace_back(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(size));
      }
    }

    auto oracle = brute_force_design(v, blocks);
    IncidenceStructure s(v, blocks);
    std::optional<DesignParameters> params;
    try {
      params = verify_design(s);
    } catch (Error const &e) {
      ASSERT_NE(e.code(), ErrorCode::Internal) << e.what();
    }
    ASSERT_EQ(params.has_value(), oracle.has_value()) << "trial " << trial;
    if (params) {
      ++accepted;
      EXPECT_EQ(params->v, (*oracle)[0]);
      EXPECT_EQ(params->k, (*oracle)[1]);
      EXPECT_EQ(params->lambda, (*oracle)[2]);
      EXPECT_TRUE(params->satisfies_identities());
    }
  }
  EXPECT_GT(accepted, 50u);
}

TEST(TDesign, Strength)
{
  auto fano = t_design_strength(cyclic_fano(), 100000);
  EXPECT_EQ(fano.t_max, 2u);

  auto ag = t_design_strength(build_ag(3, 2, 2).design, 100000);
  EXPECT_GE(ag.t_max, 3u);
  ASSERT_GE(ag.lambdas.size(), 3u);
  EXPECT_EQ(ag.lambdas[2], 1u); // lambda_3

  auto symp = t_design_strength(build_symplectic_subdesign(2, 2).design, 100000);
  EXPECT_EQ(symp.t_max, 2u);

  // all 3-subsets of 6 points: a 3-(6,3,1) design
  std::vector<Block> triples;
  for (Point a = 0; a < 6; ++a)
    for (Point b = a + 1; b < 6; ++b)
      for (Point c = b + 1; c < 6; ++c)
        triples.push_back({a, b, c});
  EXPECT_EQ(t_design_strength(IncidenceStructure(6, triples), 100000).t_max, 3u);
}

TEST(DualComplement, Fano)
{
  auto fano = cyclic_fano();
  auto comp = complement(fano);
  EXPECT_EQ(verify_design(comp), (DesignParameters{7, 7, 4, 4, 2, true}));
  EXPECT_EQ(complement(comp), fano);

  auto d = dual(fano);
  EXPECT_FALSE(d.source_had_repeated_blocks);
  EXPECT_EQ(verify_design(d.structure), verify_design(fano));
  EXPECT_THROW((void)complement(IncidenceStructure(3, {{0, 1, 2}})), Error);
}

TEST(DualComplement, SymmetricDualHasSameParameters)
{
  auto pg = build_pg(3, 2, 2).design;
  EXPECT_EQ(verify_design(dual(pg).structure), (DesignParameters{15, 15, 7, 7, 3, true}));
  EXPECT_TRUE(dual(IncidenceStructure(3, {{0, 1}, {0, 1}, {1, 2}})).source_had_repeated_blocks);
}

TEST(Diameter, Examples)
{
  EXPECT_EQ(incidence_graph_diameter(cyclic_fano()), 3u);
  EXPECT_EQ(incidence_graph_diameter(build_pg(3, 2, 1).design), 4u);
  EXPECT_EQ(incidence_graph_diameter(build_pg(3, 2, 2).design), 3u);
  EXPECT_EQ(incidence_graph_diameter(IncidenceStructure(3, {{0, 1, 2}, {0, 1, 2}})), 2u);
  EXPECT_THROW((void)incidence_graph_diameter(IncidenceStructure(4, {{0, 1}, {2, 3}})), Error);
}

TEST(BlockStabilizer, Orders)
{
  auto pg = build_pg(2, 2, 1);
  for (std::size_t j = 0; j < 7; ++j)
    EXPECT_EQ(block_stabilizer(pg.group, pg.design, j).order(), 24);
  auto h = block_stabilizer(frobenius21(), cyclic_fano(), 0);
  EXPECT_EQ(h.order(), 3);
  auto local = point_block_actions(frobenius21(), cyclic_fano(), 0, 0);
  EXPECT_EQ(local.at_block.object_count, 3u);
  EXPECT_EQ(local.at_point.object_count, 3u);
}

TEST(BlockStabilizer, NonPreservingGroup)
{
  try {
    (void)block_stabilizer(symmetric_group(3), IncidenceStructure(3, {{0, 1}}), 0);
    FAIL();
  } catch (Error const &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPreserved);
  }
}

TEST(FlagTransitivity, Examples)
{
  EXPECT_TRUE(is_flag_transitive(frobenius21(), cyclic_fano()));
  EXPECT_TRUE(is_flag_transitive(build_pg(2, 2, 1).group, build_pg(2, 2, 1).design));
  EXPECT_FALSE(is_flag_transitive(cyclic_group(7), cyclic_fano()));
  EXPECT_FALSE(is_flag_transitive(frobenius21(), complement(cyclic_fano())));
}

TEST(LocalPrimitivity, Fano)
{
  auto pg = build_pg(2, 2, 1);
  auto r = is_locally_primitive(pg.group, pg.design);
  EXPECT_TRUE(r.locally_primitive());
  EXPECT_TRUE(r.flag_transitive);
  EXPECT_TRUE(r.point_primitive);
  EXPECT_EQ(r.block_quasiprimitive, true);
  EXPECT_EQ(r.stabilizer_bound_ok, true);

  auto f = is_locally_primitive(frobenius21(), cyclic_fano());
  EXPECT_TRUE(f.locally_primitive());

  auto c = is_locally_primitive(frobenius21(), complement(cyclic_fano()));
  EXPECT_FALSE(c.locally_primitive());
  EXPECT_FALSE(c.flag_transitive);
}

TEST(LocalPrimitivity, CyclicGroupShortCircuits)
{
  auto r = is_locally_primitive(cyclic_group(7), cyclic_fano());
  EXPECT_FALSE(r.flag_transitive);
  EXPECT_EQ(r.reason, "not flag-transitive");
  EXPECT_FALSE(r.block_quasiprimitive.has_value());
  EXPECT_TRUE(r.flag_consistency_ok);
}

TEST(LocalPrimitivity, AffinePlanes)
{
  auto ag = build_ag(3, 2, 2);
  auto r = is_locally_primitive(ag.group, ag.design);
  EXPECT_TRUE(r.locally_primitive());
  EXPECT_TRUE(r.point_primitive);
  EXPECT_EQ(r.block_quasiprimitive, false);
}

TEST(LocalPrimitivity, TrivialDesignReportedFirst)
{
  auto r = is_locally_primitive(symmetric_group(3), IncidenceStructure(3, {{0, 1, 2}}));
  EXPECT_TRUE(r.trivial_design);
  EXPECT_FALSE(r.locally_primitive());
}
