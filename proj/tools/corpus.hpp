#pragma once

// The bundled instance corpus: every (group, design) pair shipped in corpus/.

#include <random>
#include <string>
#include <vector>

#include "lpd/lpd.hpp"

namespace lpd::corpus
{

struct Instance
{
  std::string name;
  std::string comment;
  PermGroup group;
  IncidenceStructure design;
};

inline PermGroup a7()
{ return PermGroup({parse_permutation("(1 2 3)", 7), parse_permutation("(1 2 3 4 5 6 7)", 7)}); }

struct A7Designs
{
  PermGroup left;          // order 168
  PermGroup right;         // order 72, Cos(A7, L, R) is 2-(15,3,1)
  PermGroup other;         // order 168, not conjugate to L
  CosetDesign lines;       // Cos(A7, L, R)
  CosetDesign planes;      // Cos(A7, L, other)
};

/// Randomized subgroup discovery in A7, deterministic for a fixed seed.
inline A7Designs discover_a7_designs(std::uint64_t seed = 1)
{
  PermGroup g = a7();
  std::mt19937_64 rng(seed);
  auto left = find_subgroup_of_order(g, 168, rng);
  ensure(bool(left), ErrorCode::Internal, "no subgroup of order 168 found");
  auto r72 = find_subgroup_of_order(g, 72, rng);
  ensure(bool(r72), ErrorCode::Internal, "no subgroup of order 72 found");
  auto right = find_design_partner(g, *left, *r72, 3);
  ensure(bool(right), ErrorCode::Internal, "no conjugate of R gives a 2-design");

  auto l2 = find_subgroup_of_order_avoiding(g, 168, {*left}, rng);
  ensure(bool(l2), ErrorCode::Internal, "no second class of order 168 subgroups found");
  auto other = find_design_partner(g, *left, *l2, 7);
  ensure(bool(other), ErrorCode::Internal, "no conjugate of L' gives a 2-design");

  auto lines = coset_graph_design(g, *left, *right);
  auto planes = coset_graph_design(g, *left, *other);
  return {*left, *right, *other, std::move(lines), std::move(planes)};
}

inline PermGroup frobenius21()
{
  std::vector<Point> shift(7), dbl(7);
  for (Point i = 0; i < 7; ++i) {
    shift[i] = (i + 1) % 7;
    dbl[i] = (2 * i) % 7;
  }
  return PermGroup({Permutation(shift), Permutation(dbl)});
}

inline IncidenceStructure cyclic_fano()
{
  std::vector<Block> blocks;
  for (Point i = 0; i < 7; ++i)
    blocks.push_back({i, static_cast<Point>((i + 1) % 7), static_cast<Point>((i + 3) % 7)});
  return IncidenceStructure(7, blocks);
}

inline std::vector<Instance> instances()
{
  std::vector<Instance> result;
  auto add = [&](std::string name, std::string comment, PermGroup g, IncidenceStructure d) {
    result.push_back({std::move(name), std::move(comment), std::move(g), std::move(d)});
  };

  auto fano = build_pg(2, 2, 1);
  add("fano_pgl3_2", "Fano plane PG_1(2,2) with PGL(3,2)", fano.group, fano.design);
  add("fano_complement_pgl3_2", "complement of the Fano plane, 2-(7,4,2), with PGL(3,2)",
      fano.group, complement(fano.design));
  add("fano_frobenius21", "Fano plane {i,i+1,i+3} mod 7 with Z7:Z3", frobenius21(),
      cyclic_fano());
  add("fano_complement_frobenius21", "complement of the Fano plane with Z7:Z3", frobenius21(),
      complement(cyclic_fano()));

  auto pg31 = build_pg(3, 2, 1);
  add("pg1_3_2_pgl4_2", "PG_1(3,2), 2-(15,3,1), with PGL(4,2)", pg31.group, pg31.design);
  auto pg32 = build_pg(3, 2, 2);
  add("pg2_3_2_pgl4_2", "PG_2(3,2), 2-(15,7,3), with PGL(4,2)", pg32.group, pg32.design);

  auto a7d = discover_a7_designs();
  add("pg1_3_2_a7", "Cos(A7, L, R), |L| = 168, |R| = 72: a 2-(15,3,1) design",
      a7d.lines.point_group, a7d.lines.design);
  add("pg2_3_2_a7", "Cos(A7, L, L'), non-conjugate L, L' of order 168: a 2-(15,7,3) design",
      a7d.planes.point_group, a7d.planes.design);

  auto pg23 = build_pg(2, 3, 1);
  add("pg1_2_3_pgl3_3", "PG_1(2,3), 2-(13,4,1), with PGL(3,3)", pg23.group, pg23.design);

  auto ag322 = build_ag(3, 2, 2);
  add("ag2_3_2_agl3_2", "AG_2(3,2), 2-(8,4,3), with AGL(3,2)", ag322.group, ag322.design);
  auto ag231 = build_ag(2, 3, 1);
  add("ag1_2_3_agl2_3", "AG_1(2,3), 2-(9,3,1), with AGL(2,3)", ag231.group, ag231.design);
  auto ag421 = build_ag(2, 4, 1);
  add("ag1_2_4_agl2_4", "AG_1(2,4), 2-(16,4,1), with AGL(2,4)", ag421.group, ag421.design);

  auto symp = build_symplectic_subdesign(2, 2);
  add("symplectic_2_2", "non-degenerate planes of GF(2)^4 and their cosets, with 2^4:Sp(4,2)",
      symp.group, symp.design);
  return result;
}

} // namespace lpd::corpus
