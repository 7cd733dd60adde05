#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "structure.hpp"

namespace lpd
{

using Block = std::vector<Point>;

/// Points 0..v-1 and a list of blocks, each a set of points. Blocks are kept
/// sorted and the block list is sorted lexicographically; repeated blocks are
/// allowed.
class IncidenceStructure
{
public:
  IncidenceStructure(std::size_t v, std::vector<Block> blocks)
  : _v(v), _blocks(std::move(blocks))
  {
    ensure(v > 0, ErrorCode::Degenerate, "incidence structure without points");
    for (auto &block : _blocks) {
      ensure(!block.empty(), ErrorCode::InvalidArgument, "empty block");
      std::sort(block.begin(), block.end());
      ensure(std::adjacent_find(block.begin(), block.end()) == block.end(),
             ErrorCode::InvalidArgument, "repeated point inside a block");
      ensure(block.back() < v, ErrorCode::OutOfRange,
             "block point " + std::to_string(block.back()) + " >= v");
    }
    std::sort(_blocks.begin(), _blocks.end());

    _through.resize(v);
    for (std::size_t j = 0; j < _blocks.size(); ++j)
      for (Point x : _blocks[j])
        _through[x].push_back(static_cast<Point>(j));
  }

  std::size_t v() const noexcept
  { return _v; }

  std::size_t b() const noexcept
  { return _blocks.size(); }

  std::vector<Block> const &blocks() const noexcept
  { return _blocks; }

  Block const &block(std::size_t j) const
  { return _blocks.at(j); }

  // Indices of the blocks incident with x.
  std::vector<Point> const &blocks_through(Point x) const
  { return _through.at(x); }

  bool incident(Point x, std::size_t j) const
  { return std::binary_search(_blocks[j].begin(), _blocks[j].end(), x); }

  std::size_t flag_count() const
  {
    std::size_t total = 0;
    for (auto const &block : _blocks)
      total += block.size();
    return total;
  }

  bool has_repeated_blocks() const
  { return std::adjacent_find(_blocks.begin(), _blocks.end()) != _blocks.end(); }

  // Every block is incident with every point.
  bool is_trivial() const
  {
    for (auto const &block : _blocks)
      if (block.size() != _v)
        return false;
    return true;
  }

  friend bool operator==(IncidenceStructure const &lhs, IncidenceStructure const &rhs)
  { return lhs._v == rhs._v && lhs._blocks == rhs._blocks; }

private:
  std::size_t _v;
  std::vector<Block> _blocks;
  std::vector<std::vector<Point>> _through;
};

struct DesignParameters
{
  std::uint64_t v = 0;
  std::uint64_t b = 0;
  std::uint64_t r = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;
  bool symmetric = false;

  friend bool operator==(DesignParameters const &, DesignParameters const &) = default;

  bool satisfies_identities() const
  {
    return v * r == b * k && lambda * (v - 1) == r * (k - 1) && b >= v && r >= k &&
           lambda < r && symmetric == (b == v);
  }
};

/// Checks the 2-design axioms and returns (v, b, r, k, lambda). Trivial
/// structures (k = v) and degenerate ones (v <= 2, k = 1) are rejected.
inline DesignParameters verify_design(IncidenceStructure const &s)
{
  std::size_t v = s.v();
  ensure(v > 2, ErrorCode::Degenerate, "need at least 3 points, got " + std::to_string(v));
  ensure(s.b() > 0, ErrorCode::Degenerate, "no blocks");

  std::size_t k = s.block(0).size();
  for (auto const &block : s.blocks())
    ensure(block.size() == k, ErrorCode::NonConstantBlockSize,
           "blocks of size " + std::to_string(k) + " and " + std::to_string(block.size()));
  ensure(k > 1, ErrorCode::Degenerate, "blocks of size 1");
  ensure(k < v, ErrorCode::TrivialDesign, "every block contains every point");

  std::vector<std::uint64_t> pairs(v * v, 0);
  for (auto const &block : s.blocks())
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        ++pairs[block[i] * v + block[j]];

  std::uint64_t lambda = pairs[0 * v + 1];
  for (Point x = 0; x < v; ++x) {
    for (Point y = x + 1; y < v; ++y) {
      std::uint64_t c = pairs[x * v + y];
      if (c == 0)
        fail(ErrorCode::UncoveredPair, "pair {" + std::to_string(x) + "," +
                                         std::to_string(y) + "} lies in no block");
      if (c != lambda)
        fail(ErrorCode::NonConstantLambda,
             "pair counts " + std::to_string(lambda) + " and " + std::to_string(c));
    }
  }

  std::uint64_t r = s.blocks_through(0).size();
  for (Point x = 0; x < v; ++x)
    ensure(s.blocks_through(x).size() == r, ErrorCode::NonConstantReplication,
           "replication number varies");

  DesignParameters params{v, s.b(), r, k, lambda, s.b() == v};
  ensure(params.satisfies_identities(), ErrorCode::Internal,
         "design parameters violate vr=bk, lambda(v-1)=r(k-1) or Fisher");
  return params;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k)
{
  if (k > n)
    return 0;
  BigInt result = 1;
  for (std::uint64_t i = 0; i < k; ++i)
    result = result * (n - i) / (i + 1);
  return result;
}

struct TDesignStrength
{
  std::size_t t_max = 0;
  std::vector<std::uint64_t> lambdas; // lambdas[s-1] = lambda_s
};

/// Largest t <= k for which every t-subset of points lies in the same number
/// of blocks, with lambda_1..lambda_t.
inline TDesignStrength t_design_strength(IncidenceStructure const &s,
                                         std::size_t subset_limit = 5000000)
{
  std::size_t v = s.v();
  std::size_t k = s.block(0).size();
  for (auto const &block : s.blocks())
    ensure(block.size() == k, ErrorCode::NotOneDesign, "block sizes differ");
  std::size_t r = s.blocks_through(0).size();
  for (Point x = 0; x < v; ++x)
    ensure(s.blocks_through(x).size() == r && r > 0, ErrorCode::NotOneDesign,
           "replication number not constant");

  TDesignStrength result;
  result.t_max = 1;
  result.lambdas.push_back(r);

  for (std::size_t t = 2; t <= k; ++t) {
    BigInt total = binomial(v, t);
    ensure(total <= subset_limit, ErrorCode::LimitExceeded,
           "too many " + std::to_string(t) + "-subsets to count");

    std::map<std::vector<Point>, std::uint64_t> counts;
    for (auto const &block : s.blocks()) {
      // all t-subsets of the block, via index combinations
      std::vector<std::size_t> idx(t);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      while (true) {
        std::vector<Point> subset(t);
        for (std::size_t i = 0; i < t; ++i)
          subset[i] = block[idx[i]];
        ++counts[subset];

        std::size_t i = t;
        while (i > 0 && idx[i - 1] == k - t + i - 1)
          --i;
        if (i == 0)
          break;
        ++idx[i - 1];
        for (std::size_t j = i; j < t; ++j)
          idx[j] = idx[j - 1] + 1;
      }
    }

    if (BigInt(counts.size()) != total)
      break;
    std::uint64_t lambda_t = counts.begin()->second;
    bool constant = std::all_of(counts.begin(), counts.end(),
                                [&](auto const &kv) { return kv.second == lambda_t; });
    if (!constant)
      break;
    result.t_max = t;
    result.lambdas.push_back(lambda_t);
  }

  // lambda_s * C(k-s, t-s) = lambda_t * C(v-s, t-s)
  std::size_t t = result.t_max;
  for (std::size_t s_ = 1; s_ < t; ++s_) {
    BigInt lhs = BigInt(result.lambdas[s_ - 1]) * binomial(k - s_, t - s_);
    BigInt rhs = BigInt(result.lambdas[t - 1]) * binomial(v - s_, t - s_);
    ensure(lhs == rhs, ErrorCode::Internal, "lambda_s relation violated");
  }
  return result;
}

struct DualResult
{
  IncidenceStructure structure;
  bool source_had_repeated_blocks = false;
};

/// Points become blocks: point j of the dual is block j of `s`, and the dual
/// has one block per original point.
inline DualResult dual(IncidenceStructure const &s)
{
  std::vector<Block> blocks;
  for (Point x = 0; x < s.v(); ++x) {
    ensure(!s.blocks_through(x).empty(), ErrorCode::InvalidArgument,
           "point " + std::to_string(x) + " lies in no block; dual undefined");
    blocks.push_back(s.blocks_through(x));
  }
  return {IncidenceStructure(s.b(), std::move(blocks)), s.has_repeated_blocks()};
}

inline IncidenceStructure complement(IncidenceStructure const &s)
{
  std::vector<Block> blocks;
  for (auto const &block : s.blocks()) {
    ensure(block.size() < s.v(), ErrorCode::InvalidArgument,
           "complement of a block containing every point");
    Block c;
    for (Point x = 0; x < s.v(); ++x)
      if (!std::binary_search(block.begin(), block.end(), x))
        c.push_back(x);
    blocks.push_back(std::move(c));
  }
  return IncidenceStructure(s.v(), std::move(blocks));
}

/// Diameter of the bipartite point-block incidence graph.
inline std::size_t incidence_graph_diameter(IncidenceStructure const &s)
{
  std::size_t v = s.v(), n = v + s.b();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t j = 0; j < s.b(); ++j)
    for (Point x : s.block(j)) {
      adj[x].push_back(v + j);
      adj[v + j].push_back(x);
    }

  std::size_t diameter = 0;
  std::vector<std::size_t> dist(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[start] = 0;
    std::queue<std::size_t> q;
    q.push(start);
    std::size_t reached = 1;
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      for (std::size_t y : adj[x]) {
        if (dist[y] == SIZE_MAX) {
          dist[y] = dist[x] + 1;
          diameter = std::max(diameter, dist[y]);
          ++reached;
          q.push(y);
        }
      }
    }
    ensure(reached == n, ErrorCode::Disconnected, "incidence graph is disconnected");
  }
  return diameter;
}

/// A group on the points of a design together with its action on blocks.
/// The combined action lives on v + b points: 0..v-1 are the points and
/// v + j is block j. Block stabilizers are point stabilizers there.
class DesignAction
{
public:
  DesignAction(PermGroup group, IncidenceStructure design)
  : _group(std::move(group)), _design(std::move(design)),
    _combined(build_combined(_group, _design)),
    _blocks(build_block_action(_group, _combined, _design))
  {}

  PermGroup const &group() const noexcept
  { return _group; }

  IncidenceStructure const &design() const noexcept
  { return _design; }

  PermGroup const &combined() const noexcept
  { return _combined; }

  ActionImage const &block_action() const noexcept
  { return _blocks; }

  Point block_vertex(std::size_t j) const
  { return static_cast<Point>(_design.v() + j); }

  bool point_transitive() const
  { return _group.is_transitive(); }

  bool block_transitive() const
  { return _blocks.image.is_transitive(); }

  // The stabilizers below act on the combined domain.
  PermGroup point_stabilizer(Point alpha) const
  { return _combined.stabilizer(alpha); }

  PermGroup block_stabilizer(std::size_t beta) const
  { return _combined.stabilizer(block_vertex(beta)); }

  PermGroup flag_stabilizer(Point alpha, std::size_t beta) const
  { return _combined.pointwise_stabilizer({alpha, block_vertex(beta)}); }

  // G_alpha on the blocks through alpha (indexed as in blocks_through).
  ActionImage local_action_at_point(Point alpha) const
  {
    std::vector<Point> domain;
    for (Point j : _design.blocks_through(alpha))
      domain.push_back(block_vertex(j));
    ensure(!domain.empty(), ErrorCode::InvalidArgument, "point lies in no block");
    return restrict_to(point_stabilizer(alpha), domain);
  }

  // G_beta on the points of block beta.
  ActionImage local_action_at_block(std::size_t beta) const
  { return restrict_to(block_stabilizer(beta), _design.block(beta)); }

  // Restricts a subgroup of the combined action to the point set.
  PermGroup on_points(PermGroup const &combined_subgroup) const
  {
    std::vector<Point> points(_design.v());
    std::iota(points.begin(), points.end(), Point{0});
    return restrict_to(combined_subgroup, points).image;
  }

private:
  static PermGroup build_combined(PermGroup const &group, IncidenceStructure const &design)
  {
    ensure(group.degree() == design.v(), ErrorCode::DegreeMismatch,
           "group degree " + std::to_string(group.degree()) + " differs from v = " +
           std::to_string(design.v()));
    std::size_t v = design.v(), b = design.b();

    std::map<Block, std::vector<Point>> occurrences;
    for (std::size_t j = 0; j < b; ++j)
      occurrences[design.block(j)].push_back(static_cast<Point>(j));

    std::vector<Permutation> gens;
    for (auto const &g : group.generators()) {
      std::vector<Point> img(v + b);
      for (Point x = 0; x < v; ++x)
        img[x] = g[x];

      std::map<Block, std::size_t> used;
      for (std::size_t j = 0; j < b; ++j) {
        Block image;
        for (Point x : design.block(j))
          image.push_back(g[x]);
        std::sort(image.begin(), image.end());
        auto it = occurrences.find(image);
        std::size_t &n = used[image];
        ensure(it != occurrences.end() && n < it->second.size(), ErrorCode::NotPreserved,
               "generator " + g.to_string() + " does not preserve the block set");
        img[v + j] = static_cast<Point>(v + it->second[n++]);
      }
      gens.emplace_back(std::move(img));
    }
    return PermGroup(std::move(gens));
  }

  static ActionImage build_block_action(PermGroup const &group, PermGroup const &combined,
                                        IncidenceStructure const &design)
  {
    std::size_t v = design.v(), b = design.b();
    std::vector<Permutation> images;
    for (auto const &g : combined.generators()) {
      std::vector<Point> img(b);
      for (std::size_t j = 0; j < b; ++j)
        img[j] = g[static_cast<Point>(v + j)] - static_cast<Point>(v);
      images.emplace_back(std::move(img));
    }
    auto result = action_from_images(group, std::move(images));
    return result;
  }

  PermGroup _group;
  IncidenceStructure _design;
  PermGroup _combined;
  ActionImage _blocks;
};

inline PermGroup block_stabilizer(PermGroup const &group, IncidenceStructure const &design,
                                  std::size_t beta)
{
  ensure(beta < design.b(), ErrorCode::OutOfRange, "block index out of range");
  DesignAction action(group, design);
  return action.on_points(action.block_stabilizer(beta));
}

struct LocalActions
{
  ActionImage at_point; // G_alpha on D(alpha)
  ActionImage at_block; // G_beta on D(beta)
};

inline LocalActions point_block_actions(PermGroup const &group,
                                        IncidenceStructure const &design, Point alpha,
                                        std::size_t beta)
{
  ensure(alpha < design.v() && beta < design.b(), ErrorCode::OutOfRange,
         "flag out of range");
  DesignAction action(group, design);
  return {action.local_action_at_point(alpha), action.local_action_at_block(beta)};
}

/// Flag-transitivity, computed from both sides: block-transitive with G_beta
/// transitive on the points of beta, and point-transitive with G_alpha
/// transitive on the blocks through alpha.
inline bool is_flag_transitive(DesignAction const &action)
{
  auto const &design = action.design();
  if (design.b() == 0)
    return false;

  bool via_blocks = action.block_transitive() &&
                    action.local_action_at_block(0).image.is_transitive();

  bool via_points = false;
  if (action.point_transitive() && !design.blocks_through(0).empty())
    via_points = action.local_action_at_point(0).image.is_transitive();

  ensure(via_blocks == via_points, ErrorCode::Internal,
         "flag-transitivity routes disagree");
  return via_blocks;
}

inline bool is_flag_transitive(PermGroup const &group, IncidenceStructure const &design)
{ return is_flag_transitive(DesignAction(group, design)); }

struct LocalPrimitivityReport
{
  bool trivial_design = false;
  bool point_transitive = false;
  bool block_transitive = false;
  bool flag_transitive = false;
  bool point_local_primitive = false; // G_alpha primitive on D(alpha)
  bool block_local_primitive = false; // G_beta primitive on D(beta)
  bool point_primitive = false;
  std::optional<bool> block_quasiprimitive; // empty: not computed or unknown
  std::optional<bool> stabilizer_bound_ok;  // |G| |G_ab|^2 < |G_a|^3 on a fixed flag
  bool flag_consistency_ok = true;          // locally primitive => flag-transitive, point-primitive
  std::string reason;

  bool locally_primitive() const
  { return point_local_primitive && block_local_primitive; }
};

inline LocalPrimitivityReport is_locally_primitive(DesignAction const &action,
                                                   Limits const &limits = default_limits())
{
  LocalPrimitivityReport report;
  auto const &design = action.design();

  if (design.is_trivial()) {
    report.trivial_design = true;
    report.reason = "trivial design: every block contains every point";
    return report;
  }

  report.point_transitive = action.point_transitive();
  report.block_transitive = action.block_transitive();
  report.point_primitive = is_primitive(action.group());

  // one representative per orbit; conjugate stabilizers act equivalently
  report.point_local_primitive = true;
  for (auto const &orbit : action.group().orbits()) {
    Point alpha = orbit.front();
    if (design.blocks_through(alpha).empty()) {
      report.point_local_primitive = false;
      continue;
    }
    if (!is_primitive(action.local_action_at_point(alpha).image))
      report.point_local_primitive = false;
  }
  report.block_local_primitive = true;
  for (auto const &orbit : action.block_action().image.orbits())
    if (!is_primitive(action.local_action_at_block(orbit.front()).image))
      report.block_local_primitive = false;

  report.flag_transitive = is_flag_transitive(action);
  if (report.locally_primitive())
    report.flag_consistency_ok = report.flag_transitive && report.point_primitive;

  if (!report.flag_transitive) {
    report.reason = "not flag-transitive";
    return report;
  }

  Point alpha = 0;
  std::size_t beta = design.blocks_through(alpha).front();
  BigInt g = action.group().order();
  BigInt ga = action.point_stabilizer(alpha).order();
  BigInt gab = action.flag_stabilizer(alpha, beta).order();
  report.stabilizer_bound_ok = g * gab * gab < ga * ga * ga;

  try {
    report.block_quasiprimitive = is_quasiprimitive(action.block_action().image, limits);
  } catch (Error const &e) {
    if (e.code() != ErrorCode::LimitExceeded)
      throw;
    report.reason = "block quasiprimitivity unknown: enumeration limit";
  }
  return report;
}

inline LocalPrimitivityReport is_locally_primitive(PermGroup const &group,
                                                   IncidenceStructure const &design,
                                                   Limits const &limits = default_limits())
{ return is_locally_primitive(DesignAction(group, design), limits); }

} // namespace lpd
