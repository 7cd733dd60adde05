#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace lpd
{

/// A partition of {0..degree-1} into cells of equal size, cells sorted by
/// their smallest element.
struct BlockSystem
{
  std::vector<std::vector<Point>> cells;
  std::size_t cell_size = 0;

  bool is_trivial(std::size_t degree) const
  { return cell_size == 1 || cell_size == degree; }

  // Every generator maps cells onto cells.
  bool is_invariant_under(PermGroup const &group) const
  {
    std::size_t degree = group.degree();
    std::vector<std::size_t> cell_of(degree, cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (Point x : cells[c])
        cell_of[x] = c;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].size() != cell_size)
        return false;
    for (std::size_t x = 0; x < degree; ++x)
      if (cell_of[x] == cells.size())
        return false;

    for (auto const &g : group.generators()) {
      for (auto const &cell : cells) {
        std::size_t target = cell_of[g[cell.front()]];
        for (Point x : cell)
          if (cell_of[g[x]] != target)
            return false;
      }
    }
    return true;
  }
};

namespace detail
{

class UnionFind
{
public:
  explicit UnionFind(std::size_t n)
  : _parent(n)
  { std::iota(_parent.begin(), _parent.end(), std::size_t{0}); }

  std::size_t find(std::size_t x)
  {
    while (_parent[x] != x) {
      _parent[x] = _parent[_parent[x]];
      x = _parent[x];
    }
    return x;
  }

  // Returns false if already joined. The smaller root survives.
  bool unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (b < a)
      std::swap(a, b);
    _parent[b] = a;
    return true;
  }

private:
  std::vector<std::size_t> _parent;
};

} // namespace detail

/// Finest G-invariant partition in which `a` and `b` share a cell
/// (Atkinson's algorithm).
inline BlockSystem minimal_block_system(PermGroup const &group, Point a, Point b)
{
  std::size_t n = group.degree();
  ensure(a < n && b < n, ErrorCode::OutOfRange, "seed point out of range");
  ensure(a != b, ErrorCode::InvalidArgument, "seed points must be distinct");
  ensure(group.is_transitive(), ErrorCode::Intransitive,
         "minimal block system needs a transitive group");

  detail::UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  uf.unite(a, b);
  queue.emplace_back(a, b);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    for (auto const &g : group.generators()) {
      Point u = static_cast<Point>(uf.find(g[x]));
      Point w = static_cast<Point>(uf.find(g[y]));
      if (uf.unite(u, w))
        queue.emplace_back(u, w);
    }
  }

  std::vector<std::vector<Point>> by_root(n);
  for (Point x = 0; x < n; ++x)
    by_root[uf.find(x)].push_back(x);

  BlockSystem result;
  for (auto &cell : by_root)
    if (!cell.empty())
      result.cells.push_back(std::move(cell));
  std::sort(result.cells.begin(), result.cells.end());
  result.cell_size = result.cells.front().size();

  if (!result.is_invariant_under(group))
    fail(ErrorCode::Internal, "minimal block system is not invariant");
  return result;
}

enum class PrimitivityReason
{
  Primitive,
  Intransitive,
  Imprimitive
};

struct PrimitivityResult
{
  PrimitivityReason reason = PrimitivityReason::Primitive;
  std::optional<BlockSystem> witness; // a nontrivial block system if imprimitive

  bool primitive() const
  { return reason == PrimitivityReason::Primitive; }
};

inline PrimitivityResult primitivity(PermGroup const &group)
{
  if (!group.is_transitive())
    return {PrimitivityReason::Intransitive, std::nullopt};
  for (Point x = 1; x < group.degree(); ++x) {
    auto system = minimal_block_system(group, 0, x);
    if (!system.is_trivial(group.degree()))
      return {PrimitivityReason::Imprimitive, std::move(system)};
  }
  return {PrimitivityReason::Primitive, std::nullopt};
}

inline bool is_primitive(PermGroup const &group)
{ return primitivity(group).primitive(); }

inline bool is_regular(PermGroup const &group)
{ return group.is_transitive() && group.order() == group.degree(); }

inline bool is_semiregular(PermGroup const &group)
{
  for (auto const &orbit : group.orbits())
    if (group.order() != orbit.size())
      return false;
  return true;
}

// Generated by pairwise commuting elements of one common prime order.
inline bool is_elementary_abelian(PermGroup const &group)
{
  if (group.is_trivial())
    return false;
  std::uint64_t prime = 0;
  std::vector<Permutation> gens;
  for (auto const &g : group.generators()) {
    if (g.is_identity())
      continue;
    std::uint64_t o = g.order();
    if (!is_prime(o) || (prime != 0 && o != prime))
      return false;
    prime = o;
    gens.push_back(g);
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i])
        return false;
  return true;
}

struct Quasiprimitivity
{
  bool quasiprimitive = false;
  // A nontrivial intransitive normal subgroup when not quasiprimitive.
  std::optional<PermGroup> intransitive_normal;
};

/// Every nontrivial normal subgroup contains an element of prime order, and
/// the normal closure of that element lies inside it. So it suffices to test
/// the normal closures of prime-order class representatives.
inline Quasiprimitivity quasiprimitivity(PermGroup const &group,
                                         std::vector<Permutation> const &class_reps)
{
  if (group.is_trivial())
    return {group.degree() == 1, std::nullopt};
  if (!group.is_transitive())
    return {false, group};
  for (auto const &h : class_reps) {
    PermGroup closure = group.normal_closure({h});
    if (!closure.is_transitive())
      return {false, std::move(closure)};
  }
  return {true, std::nullopt};
}

inline Quasiprimitivity quasiprimitivity(PermGroup const &group, Limits const &limits = default_limits())
{
  if (group.is_trivial() || !group.is_transitive())
    return quasiprimitivity(group, std::vector<Permutation>{});
  return quasiprimitivity(group, prime_order_class_representatives(group, limits.element_limit));
}

inline bool is_quasiprimitive(PermGroup const &group, Limits const &limits = default_limits())
{ return quasiprimitivity(group, limits).quasiprimitive; }

/// Inclusion-minimal normal closures of prime-order class representatives.
inline std::vector<PermGroup> minimal_normal_subgroups(PermGroup const &group,
                                                       std::vector<Permutation> const &class_reps)
{
  std::vector<PermGroup> closures;
  for (auto const &h : class_reps) {
    PermGroup c = group.normal_closure({h});
    bool duplicate = false;
    for (auto const &other : closures)
      if (other == c)
        duplicate = true;
    if (!duplicate)
      closures.push_back(std::move(c));
  }

  std::vector<PermGroup> result;
  for (std::size_t i = 0; i < closures.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < closures.size() && minimal; ++j)
      if (j != i && closures[j].order() < closures[i].order() &&
          closures[j].is_subgroup_of(closures[i]))
        minimal = false;
    if (minimal) {
      if (!closures[i].is_normal_in(group))
        fail(ErrorCode::Internal, "normal closure is not normal");
      result.push_back(closures[i]);
    }
  }
  return result;
}

inline std::vector<PermGroup> minimal_normal_subgroups(PermGroup const &group,
                                                       Limits const &limits = default_limits())
{
  if (group.is_trivial())
    return {};
  return minimal_normal_subgroups(
    group, prime_order_class_representatives(group, limits.element_limit));
}

/// No proper nontrivial normal subgroup. Abelian simple groups are the
/// groups of prime order.
inline bool is_simple(PermGroup const &group, Limits const &limits = default_limits())
{
  if (group.is_trivial())
    return false;
  for (auto const &h : prime_order_class_representatives(group, limits.element_limit))
    if (group.normal_closure({h}).order() != group.order())
      return false;
  return true;
}

enum class ActionType
{
  HA,
  AS,
  Other
};

inline char const *to_string(ActionType type)
{
  switch (type) {
  case ActionType::HA: return "HA";
  case ActionType::AS: return "AS";
  case ActionType::Other: return "OTHER";
  }
  return "OTHER";
}

struct TypeReport
{
  ActionType tag = ActionType::Other;
  std::optional<PermGroup> witness;
  std::vector<PermGroup> minimal_normal_subgroups;
};

/// HA: some minimal normal subgroup is elementary abelian and regular.
/// AS: the unique minimal normal subgroup is nonabelian simple.
inline TypeReport classify_action(PermGroup const &group,
                                  std::vector<Permutation> const &class_reps,
                                  Limits const &limits = default_limits())
{
  ensure(group.is_transitive(), ErrorCode::Intransitive,
         "type classification needs a transitive group");

  TypeReport report;
  report.minimal_normal_subgroups = minimal_normal_subgroups(group, class_reps);

  for (auto const &n : report.minimal_normal_subgroups) {
    if (is_elementary_abelian(n) && is_regular(n)) {
      report.tag = ActionType::HA;
      report.witness = n;
      return report;
    }
  }

  if (report.minimal_normal_subgroups.size() == 1) {
    auto const &n = report.minimal_normal_subgroups.front();
    if (!is_prime(to_u64(n.order())) && is_simple(n, limits)) {
      report.tag = ActionType::AS;
      report.witness = n;
    }
  }
  return report;
}

inline TypeReport classify_point_action(PermGroup const &group,
                                        Limits const &limits = default_limits())
{
  ensure(group.is_transitive(), ErrorCode::Intransitive,
         "type classification needs a transitive group");
  if (group.is_trivial())
    return {};
  return classify_action(group, prime_order_class_representatives(group, limits.element_limit),
                         limits);
}

} // namespace lpd
