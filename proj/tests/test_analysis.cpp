#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "corpus.hpp"

using namespace lpd;
using namespace lpd::testing;
namespace fs = std::filesystem;

namespace
{

fs::path scratch_dir(std::string const &name)
{
  auto dir = fs::temp_directory_path() / ("lpd_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CheckStatus status(AnalysisReport const &r, std::string const &name)
{ return r.lemma_checks.at(name).status; }

} // namespace

TEST(GroupFile, RoundTrip)
{
  auto g = build_pg(2, 2, 1).group;
  auto text = format_group(g, "Fano");
  auto parsed = parse_group_text(text);
  EXPECT_EQ(parsed.degree, 7u);
  EXPECT_EQ(parsed.generators, g.generators());
  EXPECT_EQ(format_group(parsed.generators, "Fano"), text);
}

TEST(GroupFile, CommentsAndErrors)
{
  auto parsed = parse_group_text("# c\n\ndegree 4\n# x\n(1,2)\n (3,4) \n");
  EXPECT_EQ(parsed.generators.size(), 2u);
  EXPECT_THROW((void)parse_group_text(""), Error);
  EXPECT_THROW((void)parse_group_text("degree\n"), Error);
  EXPECT_THROW((void)parse_group_text("degree 0\n"), Error);
  EXPECT_THROW((void)parse_group_text("points 3\n"), Error);
  EXPECT_THROW((void)parse_group_text("degree 3\n(1,4)\n"), Error);
  EXPECT_THROW((void)parse_group_text("degree 3 extra\n"), Error);
  // identity only
  EXPECT_EQ(parse_group_text("degree 3\n").generators.size(), 1u);
}

TEST(DesignFile, RoundTripAnyOrder)
{
  auto d = parse_design_text("points 7\n# lines\n3 2 1\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n");
  EXPECT_EQ(verify_design(d).lambda, 1u);
  EXPECT_EQ(parse_design_text(format_design(d)), d);
  EXPECT_EQ(d.block(0), (Block{0, 1, 2}));
}

TEST(DesignFile, Errors)
{
  EXPECT_THROW((void)parse_design_text("points 3\n1 4\n"), Error);
  EXPECT_THROW((void)parse_design_text("points 3\n0 1\n"), Error);
  EXPECT_THROW((void)parse_design_text("points 3\n1 a\n"), Error);
  EXPECT_THROW((void)parse_design_text("1 2\n"), Error);
}

TEST(Analyze, FanoWithPgl)
{
  auto fano = build_pg(2, 2, 1);
  auto r = analyze(fano.group, fano.design, "fano");
  ASSERT_TRUE(r.parameters);
  EXPECT_TRUE(r.local_primitivity->locally_primitive());
  EXPECT_EQ(r.point_type.tag, "AS");
  EXPECT_EQ(r.block_type.tag, "AS");
  EXPECT_EQ(r.point_type.witness_order, 168u);
  EXPECT_FALSE(r.theorem_violation);
  for (auto const *name : {"lemma_2_2", "prop_2_3", "lemma_3_3", "lemma_3_4", "lemma_5_1"})
    EXPECT_EQ(status(r, name), CheckStatus::Pass) << name;
  for (auto const *name : {"lemma_5_2", "lemma_6_1", "lemma_7_1"})
    EXPECT_EQ(status(r, name), CheckStatus::NotApplicable) << name;
  EXPECT_EQ(r.verdict(), Verdict::Pass);
}

TEST(Analyze, FanoWithFrobenius)
{
  auto r = analyze(frobenius21(), cyclic_fano());
  EXPECT_TRUE(r.local_primitivity->locally_primitive());
  EXPECT_EQ(r.point_type.tag, "HA");
  EXPECT_EQ(r.block_type.tag, "HA");
  EXPECT_EQ(r.verdict(), Verdict::Pass);
}

TEST(Analyze, AffineSpace)
{
  auto ag = build_ag(3, 2, 2);
  auto r = analyze(ag.group, ag.design);
  EXPECT_EQ(r.point_type.tag, "HA");
  EXPECT_EQ(r.block_type.tag, non_quasiprimitive);
  for (auto const *name : check_names)
    EXPECT_EQ(status(r, name), CheckStatus::Pass) << name;
  EXPECT_EQ(r.lemma_checks.at("lemma_6_1").detail, "orbit size 2, v/k = 2");
}

TEST(Analyze, ComplementNotFlagTransitive)
{
  auto r = analyze(frobenius21(), complement(cyclic_fano()));
  ASSERT_TRUE(r.parameters);
  EXPECT_FALSE(r.local_primitivity->flag_transitive);
  EXPECT_FALSE(r.theorem_applicable);
  EXPECT_EQ(status(r, "lemma_2_2"), CheckStatus::NotApplicable);
  EXPECT_EQ(status(r, "lemma_3_3"), CheckStatus::NotApplicable);
  EXPECT_EQ(status(r, "prop_2_3"), CheckStatus::Pass);
  EXPECT_EQ(r.verdict(), Verdict::Pass);
}

TEST(Analyze, NotADesign)
{
  auto r = analyze(cyclic_group(4), IncidenceStructure(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  EXPECT_FALSE(r.parameters);
  EXPECT_FALSE(r.design_error.empty());
  EXPECT_EQ(r.verdict(), Verdict::Fail);
}

TEST(Analyze, LimitsGiveUnknown)
{
  auto fano = build_pg(2, 2, 1);
  AnalyzeOptions options;
  options.limits.element_limit = 10;
  auto r = analyze(fano.group, fano.design, "", options);
  EXPECT_EQ(r.point_type.tag, "unknown");
  EXPECT_EQ(r.verdict(), Verdict::Unknown);
  EXPECT_FALSE(r.theorem_violation);
}

TEST(Analyze, RejectsNonPreservingGroup)
{
  EXPECT_THROW((void)analyze(symmetric_group(7), cyclic_fano()), Error);
}

TEST(Analyze, JsonIsByteStable)
{
  auto ag = build_ag(2, 3, 1);
  auto a = to_json(analyze(ag.group, ag.design, "x")).dump(2);
  auto b = to_json(analyze(ag.group, ag.design, "x")).dump(2);
  EXPECT_EQ(a, b);
  auto j = nlohmann::json::parse(a);
  for (auto const *key : {"instance_id", "parameters", "local_primitivity", "point_type",
                          "block_type", "lemma_checks", "theorem_1_2", "verdict"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_FALSE(j.contains("timings_ms"));
  for (auto const *key : {"tag", "witness_order", "witness_generators",
                          "minimal_normal_subgroup_orders"})
    EXPECT_TRUE(j["point_type"].contains(key)) << key;
  EXPECT_EQ(j["lemma_checks"].size(), 8u);
}

TEST(TheoremPairs, AllowedSet)
{
  EXPECT_TRUE(allowed_type_pair("AS", "AS"));
  EXPECT_TRUE(allowed_type_pair("AS", "OTHER"));
  EXPECT_TRUE(allowed_type_pair("HA", "HA"));
  EXPECT_TRUE(allowed_type_pair("HA", non_quasiprimitive));
  EXPECT_FALSE(allowed_type_pair("AS", non_quasiprimitive));
  EXPECT_FALSE(allowed_type_pair("HA", "AS"));
  EXPECT_FALSE(allowed_type_pair("OTHER", "OTHER"));
}

TEST(Census, EmptyDirectory)
{
  auto dir = scratch_dir("empty");
  auto result = census(dir);
  EXPECT_TRUE(result.entries.empty());
  EXPECT_TRUE(result.table.empty());
  EXPECT_EQ(result.exit_code(), 0);
}

TEST(Census, FaultIsolation)
{
  auto dir = scratch_dir("faulty");
  auto fano = build_pg(2, 2, 1);
  write_text((dir / "good.group").string(), format_group(fano.group));
  write_text((dir / "good.design").string(), format_design(fano.design));
  write_text((dir / "bad.group").string(), "degree 7\n(1,2,x)\n");
  write_text((dir / "bad.design").string(), format_design(fano.design));
  write_text((dir / "orphan.design").string(), format_design(fano.design));

  auto result = census(dir);
  ASSERT_EQ(result.entries.size(), 3u);
  EXPECT_EQ(result.errors, 2u);
  EXPECT_FALSE(result.entries[0].error.empty()); // bad
  EXPECT_TRUE(result.entries[1].report.has_value()); // good
  EXPECT_EQ(result.entries[1].report->verdict(), Verdict::Pass);
  EXPECT_FALSE(result.entries[2].error.empty()); // orphan
  EXPECT_EQ(result.exit_code(), exit_input_error);
}

TEST(Corpus, FilesMatchGenerator)
{
  fs::path dir = LPD_CORPUS_DIR;
  for (auto const &inst : corpus::instances()) {
    std::ifstream g(dir / (inst.name + ".group")), d(dir / (inst.name + ".design"));
    ASSERT_TRUE(g && d) << inst.name;
    std::stringstream gs, ds;
    gs << g.rdbuf();
    ds << d.rdbuf();
    EXPECT_EQ(gs.str(), format_group(inst.group, inst.comment)) << inst.name;
    EXPECT_EQ(ds.str(), format_design(inst.design, inst.comment)) << inst.name;
  }
}

TEST(Corpus, A7Discovery)
{
  auto a7 = corpus::discover_a7_designs();
  EXPECT_EQ(a7.left.order(), 168);
  EXPECT_EQ(a7.right.order(), 72);
  EXPECT_EQ(a7.other.order(), 168);
  EXPECT_FALSE(are_conjugate(corpus::a7(), a7.left, a7.other));
  EXPECT_EQ(verify_design(a7.lines.design), (DesignParameters{15, 35, 7, 3, 1, false}));
  EXPECT_EQ(verify_design(a7.planes.design), (DesignParameters{15, 15, 7, 7, 3, true}));
  EXPECT_TRUE(a7.lines.faithful);
  EXPECT_EQ(a7.lines.point_group.order(), 2520);
}
