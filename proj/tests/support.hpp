#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "lpd/lpd.hpp"

namespace lpd::testing
{

inline Permutation perm(std::string const &cycles, std::size_t degree)
{ return parse_permutation(cycles, degree); }

inline PermGroup group(std::initializer_list<char const *> cycles, std::size_t degree)
{
  std::vector<Permutation> gens;
  for (auto const *c : cycles)
    gens.push_back(perm(c, degree));
  return PermGroup(gens);
}

inline PermGroup symmetric_group(std::size_t n)
{
  std::vector<Point> cycle(n), swap(n);
  for (Point i = 0; i < n; ++i) {
    cycle[i] = static_cast<Point>((i + 1) % n);
    swap[i] = i;
  }
  if (n > 1)
    std::swap(swap[0], swap[1]);
  return PermGroup({Permutation(cycle), Permutation(swap)});
}

inline PermGroup alternating_group(std::size_t n)
{
  std::vector<Permutation> gens;
  for (Point i = 2; i < n; ++i) {
    std::vector<Point> img(n);
    for (Point x = 0; x < n; ++x)
      img[x] = x;
    img[0] = 1;
    img[1] = i;
    img[i] = 0;
    gens.emplace_back(img);
  }
  return PermGroup(gens);
}

inline PermGroup cyclic_group(std::size_t n)
{
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i)
    img[i] = static_cast<Point>((i + 1) % n);
  return PermGroup({Permutation(img)});
}

inline PermGroup dihedral_group(std::size_t n)
{
  std::vector<Point> rot(n), ref(n);
  for (Point i = 0; i < n; ++i) {
    rot[i] = static_cast<Point>((i + 1) % n);
    ref[i] = static_cast<Point>((n - i) % n);
  }
  return PermGroup({Permutation(rot), Permutation(ref)});
}

// Fano plane with lines {i, i+1, i+3} mod 7.
inline IncidenceStructure cyclic_fano()
{
  std::vector<Block> blocks;
  for (Point i = 0; i < 7; ++i)
    blocks.push_back({i, static_cast<Point>((i + 1) % 7), static_cast<Point>((i + 3) % 7)});
  return IncidenceStructure(7, blocks);
}

// Z7 : Z3 = <x -> x+1, x -> 2x> on the cyclic Fano plane.
inline PermGroup frobenius21()
{
  std::vector<Point> shift(7), dbl(7);
  for (Point i = 0; i < 7; ++i) {
    shift[i] = (i + 1) % 7;
    dbl[i] = (2 * i) % 7;
  }
  return PermGroup({Permutation(shift), Permutation(dbl)});
}

inline PermGroup a7()
{ return group({"(1 2 3)", "(1 2 3 4 5 6 7)"}, 7); }

/// Element set closure by repeated multiplication with the generators.
inline std::unordered_set<Permutation, PermutationHash> closure(
  std::vector<Permutation> const &generators)
{
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue{Permutation::identity(generators.front().degree())};
  seen.insert(queue.front());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &g : generators) {
      Permutation h = queue[i] * g;
      if (seen.insert(h).second)
        queue.push_back(h);
    }
  return seen;
}

/// All partitions of {0..n-1} into equal nontrivial cells invariant under
/// the generators, by exhaustive search.
inline bool brute_force_imprimitive(PermGroup const &g)
{
  std::size_t n = g.degree();
  for (std::size_t size = 2; size < n; ++size) {
    if (n % size)
      continue;
    // cell containing 0: choose size-1 further points
    std::vector<Point> others;
    for (Point x = 1; x < n; ++x)
      others.push_back(x);
    std::vector<bool> pick(others.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size - 1), true);
    do {
      std::vector<Point> cell{0};
      for (std::size_t i = 0; i < others.size(); ++i)
        if (pick[i])
          cell.push_back(others[i]);
      // a block of imprimitivity: every image equals or misses the cell
      bool ok = true;
      std::set<Point> cs(cell.begin(), cell.end());
      for (auto const &h : closure(g.generators())) {
        std::size_t meet = 0;
        for (Point x : cell)
          meet += cs.count(h[x]);
        if (meet != 0 && meet != cell.size()) {
          ok = false;
          break;
        }
      }
      if (ok)
        return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return false;
}

/// Every normal subgroup, as element sets, built from unions of conjugacy
/// classes by closing under multiplication.
inline std::vector<std::set<Permutation>> brute_force_normal_subgroups(PermGroup const &g)
{
  auto all = closure(g.generators());
  std::vector<Permutation> elements(all.begin(), all.end());

  std::vector<std::set<Permutation>> classes;
  std::set<Permutation> done;
  for (auto const &x : elements) {
    if (done.count(x))
      continue;
    std::set<Permutation> cls;
    for (auto const &y : elements)
      cls.insert(x.conjugate_by(y));
    done.insert(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }

  auto close = [](std::set<Permutation> s) {
    std::vector<Permutation> queue(s.begin(), s.end());
    std::vector<Permutation> gens = queue;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto const &h : gens) {
        Permutation p = queue[i] * h;
        if (s.insert(p).second)
          queue.push_back(p);
      }
    return s;
  };

  std::set<std::set<Permutation>> found;
  std::vector<std::set<Permutation>> queue{{Permutation::identity(g.degree())}};
  found.insert(queue.front());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &cls : classes) {
      std::set<Permutation> s = queue[i];
      s.insert(cls.begin(), cls.end());
      s = close(s);
      if (found.insert(s).second)
        queue.push_back(s);
    }
  return queue;
}

inline bool brute_force_quasiprimitive(PermGroup const &g)
{
  for (auto const &n : brute_force_normal_subgroups(g)) {
    if (n.size() == 1)
      continue;
    std::set<Point> orbit;
    for (auto const &x : n)
      orbit.insert(x[0]);
    if (orbit.size() != g.degree())
      return false;
  }
  return true;
}

/// Pair-count oracle: (v, k, lambda) if a nontrivial 2-design, else nothing.
inline std::optional<std::array<std::size_t, 3>> brute_force_design(std::size_t v,
                                                                    std::vector<Block> const &blocks)
{
  if (v <= 2 || blocks.empty())
    return std::nullopt;
  std::size_t k = blocks.front().size();
  for (auto const &b : blocks)
    if (b.size() != k)
      return std::nullopt;
  if (k <= 1 || k >= v)
    return std::nullopt;
  std::optional<std::size_t> lambda;
  for (Point x = 0; x < v; ++x)
    for (Point y = x + 1; y < v; ++y) {
      std::size_t count = 0;
      for (auto const &b : blocks)
        if (std::count(b.begin(), b.end(), x) && std::count(b.begin(), b.end(), y))
          ++count;
      if (count == 0 || (lambda && *lambda != count))
        return std::nullopt;
      lambda = count;
    }
  return std::array<std::size_t, 3>{v, k, *lambda};
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64 &rng)
{
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i)
    img[i] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

} // namespace lpd::testing
