#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "incidence.hpp"

namespace lpd
{

/// The right cosets [G:L], each named by its lexicographically smallest
/// element. Coset 0 is L itself. G acts by right multiplication.
class CosetSpace
{
public:
  CosetSpace(PermGroup group, PermGroup subgroup, Limits const &limits = default_limits())
  : _group(std::move(group)), _subgroup(std::move(subgroup)),
    _canonical(_subgroup.with_full_base())
  {
    ensure(_subgroup.degree() == _group.degree(), ErrorCode::DegreeMismatch,
           "subgroup degree differs from group degree");
    for (auto const &l : _subgroup.generators())
      ensure(_group.contains(l), ErrorCode::NotInGroup,
             "subgroup generator " + l.to_string() + " is not in the group");

    BigInt index = _group.order() / _subgroup.order();
    ensure(index * _subgroup.order() == _group.order(), ErrorCode::Internal,
           "subgroup order does not divide group order");
    ensure(index <= limits.index_limit, ErrorCode::LimitExceeded,
           "coset index " + index.str() + " exceeds limit " +
           std::to_string(limits.index_limit));

    add(Permutation::identity(_group.degree()));
    std::vector<std::vector<Point>> images(_group.generators().size());
    for (std::size_t i = 0; i < _reps.size(); ++i) {
      for (std::size_t g = 0; g < _group.generators().size(); ++g)
        images[g].push_back(add(_reps[i] * _group.generators()[g]));
    }

    if (BigInt(_reps.size()) != index)
      fail(ErrorCode::Internal, "coset enumeration found " + std::to_string(_reps.size()) +
                                " cosets, expected " + index.str());

    std::vector<Permutation> perms;
    for (auto &img : images)
      perms.emplace_back(std::move(img));
    _action = action_from_images(_group, std::move(perms));

    for (auto const &l : _subgroup.generators())
      if (index_of(l) != 0)
        fail(ErrorCode::Internal, "subgroup does not fix its own coset");
  }

  PermGroup const &group() const noexcept
  { return _group; }

  PermGroup const &subgroup() const noexcept
  { return _subgroup; }

  std::size_t index() const noexcept
  { return _reps.size(); }

  std::vector<Permutation> const &representatives() const noexcept
  { return _reps; }

  // Index of the coset L*x.
  std::size_t index_of(Permutation const &x) const
  {
    auto it = _index.find(_canonical.coset_minimum(x));
    ensure(it != _index.end(), ErrorCode::NotInGroup, "element outside the group");
    return it->second;
  }

  ActionImage const &action() const
  { return *_action; }

private:
  Point add(Permutation const &x)
  {
    Permutation rep = _canonical.coset_minimum(x);
    auto [it, inserted] = _index.emplace(rep, _reps.size());
    if (inserted)
      _reps.push_back(std::move(rep));
    return static_cast<Point>(it->second);
  }

  PermGroup _group;
  PermGroup _subgroup;
  PermGroup _canonical;
  std::vector<Permutation> _reps;
  std::unordered_map<Permutation, std::size_t, PermutationHash> _index;
  std::optional<ActionImage> _action;
};

inline CosetSpace coset_action(PermGroup const &group, PermGroup const &subgroup,
                               Limits const &limits = default_limits())
{ return CosetSpace(group, subgroup, limits); }

/// Membership test for the product set L*R.
class ProductSet
{
public:
  ProductSet(CosetSpace const &left_cosets, PermGroup const &right, Limits const &limits)
  : _cosets(&left_cosets)
  {
    auto const &left = left_cosets.subgroup();
    if (left_cosets.group().order() <= limits.element_limit) {
      auto ls = left.elements(limits.element_limit);
      auto rs = right.elements(limits.element_limit);
      _elements.emplace();
      _elements->reserve(ls.size() * rs.size());
      for (auto const &l : ls)
        for (auto const &r : rs)
          _elements->insert(l * r);
    } else {
      // g in LR  <=>  Lg meets R  <=>  coset Lg lies in the R-orbit of L
      std::vector<bool> in_orbit(left_cosets.index(), false);
      std::vector<std::size_t> queue{0};
      in_orbit[0] = true;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (auto const &r : right.generators()) {
          std::size_t j =
            left_cosets.index_of(left_cosets.representatives()[queue[i]] * r);
          if (!in_orbit[j]) {
            in_orbit[j] = true;
            queue.push_back(j);
          }
        }
      }
      _orbit = std::move(in_orbit);
    }
  }

  bool contains(Permutation const &g) const
  {
    if (_elements)
      return _elements->count(g) != 0;
    return _orbit[_cosets->index_of(g)];
  }

  bool materialized() const
  { return _elements.has_value(); }

private:
  CosetSpace const *_cosets;
  std::optional<std::unordered_set<Permutation, PermutationHash>> _elements;
  std::vector<bool> _orbit;
};

struct CosetDesign
{
  IncidenceStructure design;
  PermGroup point_group;          // G acting on [G:L]
  std::size_t index_left = 0;     // |G:L|, number of points
  std::size_t index_right = 0;    // |G:R|, number of blocks
  bool faithful = false;          // L cap R core-free in G
  std::vector<std::size_t> block_of_right_coset; // R-coset index -> design block index
};

/// The bipartite coset graph Cos(G, L, R) read as an incidence structure:
/// points are the cosets Lx, blocks are the cosets Ry, and Lx ~ Ry iff the
/// cosets meet, i.e. x y^-1 lies in LR.
inline CosetDesign coset_graph_design(PermGroup const &group, PermGroup const &left,
                                      PermGroup const &right,
                                      Limits const &limits = default_limits())
{
  CosetSpace points(group, left, limits);
  CosetSpace blocks(group, right, limits);
  ProductSet lr(points, right, limits);

  ensure(lr.contains(Permutation::identity(group.degree())), ErrorCode::Internal,
         "vertex L is not adjacent to vertex R");

  std::vector<Block> block_sets;
  for (auto const &y : blocks.representatives()) {
    Permutation y_inv = y.inverse();
    Block block;
    for (std::size_t i = 0; i < points.index(); ++i)
      if (lr.contains(points.representatives()[i] * y_inv))
        block.push_back(static_cast<Point>(i));
    block_sets.push_back(std::move(block));
  }

  // faithful on both parts iff the combined action has full order
  std::vector<Permutation> combined;
  std::size_t nl = points.index(), nr = blocks.index();
  for (std::size_t g = 0; g < group.generators().size(); ++g) {
    std::vector<Point> img(nl + nr);
    auto const &pl = points.action().generator_images[g];
    auto const &pr = blocks.action().generator_images[g];
    for (Point x = 0; x < nl; ++x)
      img[x] = pl[x];
    for (Point x = 0; x < nr; ++x)
      img[nl + x] = static_cast<Point>(nl + pr[x]);
    combined.emplace_back(std::move(img));
  }
  bool faithful = PermGroup(combined).order() == group.order();

  std::vector<Block> sorted = block_sets;
  IncidenceStructure design(nl, std::move(block_sets));
  std::vector<std::size_t> block_of(nr);
  {
    std::map<Block, std::vector<std::size_t>> slots;
    for (std::size_t j = 0; j < design.b(); ++j)
      slots[design.block(j)].push_back(j);
    std::map<Block, std::size_t> used;
    for (std::size_t y = 0; y < nr; ++y) {
      Block key = sorted[y];
      std::sort(key.begin(), key.end());
      block_of[y] = slots[key][used[key]++];
    }
  }

  return CosetDesign{std::move(design), points.action().image, nl, nr, faithful,
                     std::move(block_of)};
}

/// Counts |RL cap RLg| for varying g; RL is enumerated once.
class DoubleCosetCounter
{
public:
  DoubleCosetCounter(PermGroup const &left, PermGroup const &right, Limits const &limits)
  : _right_order(right.order())
  {
    auto ls = left.elements(limits.element_limit);
    auto rs = right.elements(limits.element_limit);
    for (auto const &r : rs)
      for (auto const &l : ls)
        _rl.insert(r * l);
    _list.assign(_rl.begin(), _rl.end());
  }

  std::size_t product_size() const
  { return _rl.size(); }

  // |RL cap RLg|; y lies in RLg iff y g^-1 lies in RL
  std::uint64_t intersection(Permutation const &g) const
  {
    Permutation g_inv = g.inverse();
    std::uint64_t count = 0;
    for (auto const &y : _list)
      if (_rl.count(y * g_inv))
        ++count;
    return count;
  }

  std::uint64_t ratio(Permutation const &g) const
  {
    std::uint64_t count = intersection(g);
    ensure(count % to_u64(_right_order) == 0, ErrorCode::Internal,
           "RL cap RLg is not a union of R-cosets");
    return count / to_u64(_right_order);
  }

private:
  BigInt _right_order;
  std::unordered_set<Permutation, PermutationHash> _rl;
  std::vector<Permutation> _list;
};

/// |RL cap RLg| / |R|. For g in L this is |L : L cap R|, the replication number.
inline std::uint64_t double_coset_lambda(PermGroup const &group, PermGroup const &left,
                                         PermGroup const &right, Permutation const &g,
                                         Limits const &limits = default_limits())
{
  ensure(group.order() <= limits.element_limit, ErrorCode::LimitExceeded,
         "group too large for double coset enumeration");
  ensure(group.contains(g), ErrorCode::NotInGroup, "g is not in the group");
  return DoubleCosetCounter(left, right, limits).ratio(g);
}

enum class CrosscheckMode
{
  Auto,        // exhaustive when |G| is within the element limit, else sampled
  Exhaustive,  // every g in G \ L
  Sampled,
  CosetRepresentatives // one g per nontrivial right coset of L
};

struct CrosscheckResult
{
  bool constant = false;
  bool graph_agrees = true;
  std::vector<std::uint64_t> ratios; // distinct values seen, ascending
  std::optional<std::uint64_t> lambda;
  std::size_t checked = 0;
  bool exhaustive = false;

  bool passed() const
  { return constant && graph_agrees; }
};

/// Checks that |RL cap RLg| / |R| is the same for the sampled g outside L and
/// equals the number of blocks shared by the points L and Lg in the coset
/// graph design.
inline CrosscheckResult crosscheck_double_cosets(PermGroup const &group, PermGroup const &left,
                                                 PermGroup const &right,
                                                 CrosscheckMode mode = CrosscheckMode::Auto,
                                                 std::size_t samples = 20,
                                                 std::uint64_t seed = 1,
                                                 Limits const &limits = default_limits())
{
  auto built = coset_graph_design(group, left, right, limits);
  CosetSpace points(group, left, limits);
  DoubleCosetCounter counter(left, right, limits);

  if (mode == CrosscheckMode::Auto)
    mode = group.order() <= limits.element_limit ? CrosscheckMode::Exhaustive
                                                 : CrosscheckMode::Sampled;

  CrosscheckResult result;
  result.exhaustive = mode == CrosscheckMode::Exhaustive ||
                      mode == CrosscheckMode::CosetRepresentatives;
  std::set<std::uint64_t> seen;

  auto const &through0 = built.design.blocks_through(0);
  auto check = [&](Permutation const &g) {
    if (left.contains(g))
      return;
    std::uint64_t ratio = counter.ratio(g);
    seen.insert(ratio);
    std::size_t j = points.index_of(g);
    auto const &through = built.design.blocks_through(static_cast<Point>(j));
    std::vector<Point> common;
    std::set_intersection(through0.begin(), through0.end(), through.begin(), through.end(),
                          std::back_inserter(common));
    if (common.size() != ratio)
      result.graph_agrees = false;
    ++result.checked;
  };

  switch (mode) {
  case CrosscheckMode::Exhaustive:
    ensure(group.order() <= limits.element_limit, ErrorCode::LimitExceeded,
           "exhaustive crosscheck exceeds the element limit");
    group.for_each_element([&](Permutation const &g) {
      check(g);
      return true;
    });
    break;
  case CrosscheckMode::CosetRepresentatives:
    for (auto const &g : points.representatives())
      check(g);
    break;
  case CrosscheckMode::Sampled:
  case CrosscheckMode::Auto: {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i)
      check(group.random_element(rng));
    break;
  }
  }

  result.ratios.assign(seen.begin(), seen.end());
  result.constant = result.ratios.size() <= 1;
  if (result.ratios.size() == 1)
    result.lambda = result.ratios.front();
  return result;
}

/// G = LR, i.e. |L| |R| = |G| |L cap R|.
inline bool is_trivial_factorization(PermGroup const &group, PermGroup const &left,
                                     PermGroup const &right,
                                     Limits const &limits = default_limits())
{
  std::uint64_t meet = 0;
  ensure(right.order() <= limits.element_limit, ErrorCode::LimitExceeded,
         "subgroup too large to enumerate");
  right.for_each_element([&](Permutation const &r) {
    if (left.contains(r))
      ++meet;
    return true;
  });
  return left.order() * right.order() == group.order() * meet;
}

inline PermGroup conjugate(PermGroup const &subgroup, Permutation const &g)
{
  std::vector<Permutation> gens;
  for (auto const &h : subgroup.generators())
    gens.push_back(h.conjugate_by(g));
  return PermGroup(std::move(gens));
}

/// Whether K = H^g for some g in G, by enumerating G.
inline bool are_conjugate(PermGroup const &group, PermGroup const &h, PermGroup const &k,
                          Limits const &limits = default_limits())
{
  if (h.order() != k.order())
    return false;
  ensure(group.order() <= limits.element_limit, ErrorCode::LimitExceeded,
         "group too large for conjugacy test");
  bool found = false;
  group.for_each_element([&](Permutation const &g) {
    Permutation g_inv = g.inverse();
    // K = g^-1 H g  <=>  g k g^-1 in H for all generators k
    bool all = true;
    for (auto const &kk : k.generators())
      if (!h.contains(g * kk * g_inv)) {
        all = false;
        break;
      }
    found = all;
    return !found;
  });
  return found;
}

/// Randomized search for a subgroup of the given order.
inline std::optional<PermGroup> find_subgroup_of_order(PermGroup const &group, BigInt const &order,
                                                       std::mt19937_64 &rng,
                                                       std::size_t max_tries = 200000)
{
  // grow from a random element, keeping only extensions whose order divides
  // the target; restart after a run of rejected candidates
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    Permutation a = group.random_element(rng);
    if (order % a.order() != 0)
      continue;
    PermGroup current({a});
    for (int misses = 0; misses < 40 && current.order() != order;) {
      Permutation b = group.random_element(rng);
      if (order % b.order() != 0 || current.contains(b)) {
        ++misses;
        continue;
      }
      std::vector<Permutation> gens = current.generators();
      gens.push_back(b);
      PermGroup extended(gens);
      if (order % extended.order() == 0)
        current = std::move(extended);
      else
        ++misses;
    }
    if (current.order() == order)
      return current;
  }
  return std::nullopt;
}

/// As above, skipping subgroups conjugate to any in `avoid`.
inline std::optional<PermGroup> find_subgroup_of_order_avoiding(
  PermGroup const &group, BigInt const &order, std::vector<PermGroup> const &avoid,
  std::mt19937_64 &rng, std::size_t max_tries = 200000,
  Limits const &limits = default_limits())
{
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    auto candidate = find_subgroup_of_order(group, order, rng, 1);
    if (!candidate)
      continue;
    bool conj = false;
    for (auto const &a : avoid)
      if (are_conjugate(group, a, *candidate, limits)) {
        conj = true;
        break;
      }
    if (!conj)
      return candidate;
  }
  return std::nullopt;
}

/// The first conjugate R^x (x over a transversal of [G:R]) for which
/// Cos(G, L, R^x) is a nontrivial 2-design, optionally with block size k.
inline std::optional<PermGroup> find_design_partner(PermGroup const &group,
                                                    PermGroup const &left,
                                                    PermGroup const &right,
                                                    std::optional<std::size_t> k = std::nullopt,
                                                    Limits const &limits = default_limits())
{
  CosetSpace transversal(group, right, limits);
  for (auto const &x : transversal.representatives()) {
    PermGroup candidate = conjugate(right, x);
    auto built = coset_graph_design(group, left, candidate, limits);
    try {
      auto params = verify_design(built.design);
      if (!k || params.k == *k)
        return candidate;
    } catch (Error const &e) {
      if (e.code() == ErrorCode::Internal)
        throw;
    }
  }
  return std::nullopt;
}

} // namespace lpd
