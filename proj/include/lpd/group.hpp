#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "permutation.hpp"

namespace lpd
{

using BigInt = boost::multiprecision::cpp_int;

inline std::uint64_t to_u64(BigInt const &value)
{
  ensure(value >= 0 && value <= std::numeric_limits<std::uint64_t>::max(),
         ErrorCode::LimitExceeded, "integer does not fit in 64 bits");
  return value.convert_to<std::uint64_t>();
}

/// A permutation group together with a base and strong generating set.
///
/// The chain is built by deterministic Schreier-Sims: base points are taken
/// from an optional prefix and then as the smallest point moved by each
/// generator that fixes the current base. Instances are immutable once
/// constructed.
class PermGroup
{
  struct Level
  {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<std::int32_t> orbit_pos;   // indexed by point, -1 if absent
    std::vector<Permutation> transversal;  // transversal[i] maps base to orbit[i]
    std::vector<Permutation> inv_transversal;
    std::vector<std::vector<bool>> checked; // [orbit index][gen index]
  };

public:
  explicit PermGroup(std::vector<Permutation> generators,
                     std::vector<Point> const &base_prefix = {})
  : _generators(std::move(generators))
  {
    ensure(!_generators.empty(), ErrorCode::EmptyGenerators,
           "a group needs at least one generator");
    _degree = _generators.front().degree();
    ensure(_degree > 0, ErrorCode::InvalidArgument, "degree must be positive");
    for (auto const &g : _generators)
      ensure(g.degree() == _degree, ErrorCode::DegreeMismatch,
             "generators of differing degree");

    for (Point b : base_prefix) {
      ensure(b < _degree, ErrorCode::OutOfRange, "base point out of range");
      add_level(b);
    }
    for (auto const &g : _generators)
      if (!g.is_identity())
        add_strong_generator(g);
    schreier_sims();
  }

  static PermGroup trivial(std::size_t degree)
  { return PermGroup({Permutation::identity(degree)}); }

  std::size_t degree() const noexcept
  { return _degree; }

  std::vector<Permutation> const &generators() const noexcept
  { return _generators; }

  std::vector<Point> base() const
  {
    std::vector<Point> result;
    for (auto const &level : _levels)
      result.push_back(level.base);
    return result;
  }

  std::vector<Permutation> strong_generators() const
  {
    std::vector<Permutation> result;
    std::unordered_set<Permutation, PermutationHash> seen;
    for (auto const &level : _levels)
      for (auto const &g : level.gens)
        if (seen.insert(g).second)
          result.push_back(g);
    return result;
  }

  std::vector<std::size_t> fundamental_orbit_sizes() const
  {
    std::vector<std::size_t> result;
    for (auto const &level : _levels)
      result.push_back(level.orbit.size());
    return result;
  }

  BigInt order() const
  {
    BigInt result = 1;
    for (auto const &level : _levels)
      result *= level.orbit.size();
    return result;
  }

  std::uint64_t order_u64() const
  { return to_u64(order()); }

  bool is_trivial() const
  { return order() == 1; }

  bool contains(Permutation const &p) const
  {
    ensure(p.degree() == _degree, ErrorCode::DegreeMismatch,
           "membership test with permutation of wrong degree");
    auto [residue, level] = sift(p, 0);
    (void)level;
    return residue.is_identity();
  }

  bool is_subgroup_of(PermGroup const &other) const
  {
    if (other.degree() != _degree)
      return false;
    for (auto const &g : _generators)
      if (!other.contains(g))
        return false;
    return true;
  }

  friend bool operator==(PermGroup const &lhs, PermGroup const &rhs)
  {
    return lhs.degree() == rhs.degree() && lhs.order() == rhs.order() &&
           lhs.is_subgroup_of(rhs);
  }

  std::vector<Point> orbit(Point x) const
  {
    ensure(x < _degree, ErrorCode::OutOfRange, "point out of range");
    std::vector<bool> seen(_degree, false);
    std::vector<Point> result{x};
    seen[x] = true;
    for (std::size_t i = 0; i < result.size(); ++i) {
      for (auto const &g : _generators) {
        Point y = g[result[i]];
        if (!seen[y]) {
          seen[y] = true;
          result.push_back(y);
        }
      }
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  std::vector<std::vector<Point>> orbits() const
  {
    std::vector<std::vector<Point>> result;
    std::vector<bool> seen(_degree, false);
    for (Point x = 0; x < _degree; ++x) {
      if (seen[x])
        continue;
      auto o = orbit(x);
      for (Point y : o)
        seen[y] = true;
      result.push_back(std::move(o));
    }
    return result;
  }

  bool is_transitive() const
  { return orbit(0).size() == _degree; }

  /// The stabilizer of `x`, reusing the strong generating set.
  PermGroup stabilizer(Point x) const
  {
    ensure(x < _degree, ErrorCode::OutOfRange, "point out of range");
    PermGroup rebased(strong_generators(), {x});
    PermGroup result = rebased.tail();

    if (result.order() * rebased._levels.front().orbit.size() != order())
      fail(ErrorCode::Internal, "orbit-stabilizer identity violated");
    return result;
  }

  /// Pointwise stabilizer of a sequence of points.
  PermGroup pointwise_stabilizer(std::vector<Point> const &points) const
  {
    if (points.empty())
      return *this;
    PermGroup rebased(strong_generators(), points);
    PermGroup result = rebased;
    for (std::size_t i = 0; i < points.size(); ++i)
      result = result.tail();
    return result;
  }

  /// The same group with the given base prefix.
  PermGroup with_base(std::vector<Point> const &prefix) const
  {
    PermGroup result(strong_generators(), prefix);
    result._generators = _generators;
    return result;
  }

  /// Visits every element; `f` may return false to stop early.
  template<typename F>
  void for_each_element(F &&f) const
  {
    Permutation id = Permutation::identity(_degree);
    visit_elements(static_cast<std::ptrdiff_t>(_levels.size()) - 1, id, f);
  }

  std::vector<Permutation> elements(std::size_t limit) const
  {
    ensure(order() <= limit, ErrorCode::LimitExceeded,
           "group of order " + order().str() + " exceeds enumeration limit " +
           std::to_string(limit));
    std::vector<Permutation> result;
    result.reserve(static_cast<std::size_t>(order_u64()));
    for_each_element([&](Permutation const &p) {
      result.push_back(p);
      return true;
    });
    return result;
  }

  Permutation random_element(std::mt19937_64 &rng) const
  {
    Permutation result = Permutation::identity(_degree);
    for (auto it = _levels.rbegin(); it != _levels.rend(); ++it) {
      std::uniform_int_distribution<std::size_t> dist(0, it->orbit.size() - 1);
      result = result * it->transversal[dist(rng)];
    }
    return result;
  }

  /// Lexicographically smallest element of the right coset `*this * x`,
  /// comparing image sequences. Requires a complete base prefix 0..n-1 (see
  /// `with_full_base`).
  Permutation coset_minimum(Permutation x) const
  {
    ensure(x.degree() == _degree, ErrorCode::DegreeMismatch,
           "coset representative of wrong degree");
    for (auto const &level : _levels) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < level.orbit.size(); ++i)
        if (x[level.orbit[i]] < x[level.orbit[best]])
          best = i;
      x = level.transversal[best] * x;
    }
    return x;
  }

  PermGroup with_full_base() const
  {
    std::vector<Point> all(_degree);
    for (Point i = 0; i < _degree; ++i)
      all[i] = i;
    return with_base(all);
  }

  bool has_full_ordered_base() const
  {
    if (_levels.size() != _degree)
      return false;
    for (Point i = 0; i < _degree; ++i)
      if (_levels[i].base != i)
        return false;
    return true;
  }

  /// Smallest normal subgroup of this group containing `seeds`.
  PermGroup normal_closure(std::vector<Permutation> const &seeds) const
  {
    for (auto const &s : seeds)
      ensure(contains(s), ErrorCode::NotInGroup,
             "normal closure seed " + s.to_string() + " is not in the group");

    PermGroup result = trivial(_degree);
    std::vector<Permutation> queue;
    for (auto const &s : seeds) {
      if (!result.contains(s)) {
        result.extend(s);
        queue.push_back(s);
      }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto const &g : _generators) {
        Permutation c = queue[i].conjugate_by(g);
        if (!result.contains(c)) {
          result.extend(c);
          queue.push_back(c);
        }
      }
    }
    return result;
  }

  bool is_normal_in(PermGroup const &overgroup) const
  {
    for (auto const &n : _generators)
      for (auto const &g : overgroup.generators())
        if (!contains(n.conjugate_by(g)))
          return false;
    return true;
  }

private:
  PermGroup() = default;

  // The subgroup described by levels 1.. of this chain.
  PermGroup tail() const
  {
    if (_levels.empty())
      return *this;
    PermGroup result;
    result._degree = _degree;
    result._levels.assign(_levels.begin() + 1, _levels.end());
    if (result._levels.empty() || result._levels.front().gens.empty()) {
      result._generators = {Permutation::identity(_degree)};
      result._levels.clear();
    } else {
      result._generators = result._levels.front().gens;
    }
    return result;
  }

  template<typename F>
  bool visit_elements(std::ptrdiff_t level, Permutation const &acc, F &f) const
  {
    if (level < 0)
      return f(acc);
    for (auto const &t : _levels[static_cast<std::size_t>(level)].transversal)
      if (!visit_elements(level - 1, acc * t, f))
        return false;
    return true;
  }

  void add_level(Point b)
  {
    Level level;
    level.base = b;
    level.orbit = {b};
    level.orbit_pos.assign(_degree, -1);
    level.orbit_pos[b] = 0;
    level.transversal = {Permutation::identity(_degree)};
    level.inv_transversal = {Permutation::identity(_degree)};
    _levels.push_back(std::move(level));
  }

  void extend_orbit(Level &level)
  {
    for (std::size_t i = 0; i < level.orbit.size(); ++i) {
      for (auto const &g : level.gens) {
        Point y = g[level.orbit[i]];
        if (level.orbit_pos[y] < 0) {
          level.orbit_pos[y] = static_cast<std::int32_t>(level.orbit.size());
          level.orbit.push_back(y);
          Permutation t = level.transversal[i] * g;
          level.inv_transversal.push_back(t.inverse());
          level.transversal.push_back(std::move(t));
        }
      }
    }
  }

  std::pair<Permutation, std::size_t> sift(Permutation h, std::size_t start) const
  {
    for (std::size_t l = start; l < _levels.size(); ++l) {
      auto const &level = _levels[l];
      std::int32_t pos = level.orbit_pos[h[level.base]];
      if (pos < 0)
        return {std::move(h), l};
      h = h * level.inv_transversal[static_cast<std::size_t>(pos)];
    }
    return {std::move(h), _levels.size()};
  }

  void add_to_levels(Permutation const &g, std::size_t first, std::size_t last)
  {
    for (std::size_t l = first; l <= last; ++l) {
      _levels[l].gens.push_back(g);
      extend_orbit(_levels[l]);
    }
  }

  // Adds a non-identity element to S_0..S_j, where j is the first level
  // whose base point it moves.
  void add_strong_generator(Permutation const &g)
  {
    std::size_t j = 0;
    while (j < _levels.size() && g[_levels[j].base] == _levels[j].base)
      ++j;
    if (j == _levels.size())
      add_level(g.smallest_moved_point());
    add_to_levels(g, 0, j);
  }

  void schreier_sims()
  {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(_levels.size()) - 1;
    while (i >= 0) {
      auto &level = _levels[static_cast<std::size_t>(i)];
      bool changed = false;

      for (std::size_t a = 0; !changed && a < level.orbit.size(); ++a) {
        if (level.checked.size() <= a)
          level.checked.resize(a + 1);
        auto &row = level.checked[a];
        if (row.size() < level.gens.size())
          row.resize(level.gens.size(), false);

        for (std::size_t s = 0; s < level.gens.size(); ++s) {
          if (row[s])
            continue;
          row[s] = true;

          auto const &gen = level.gens[s];
          Point image = gen[level.orbit[a]];
          auto pos = static_cast<std::size_t>(level.orbit_pos[image]);
          Permutation schreier =
            level.transversal[a] * gen * level.inv_transversal[pos];

          auto [residue, fail_level] =
            sift(std::move(schreier), static_cast<std::size_t>(i) + 1);
          if (residue.is_identity())
            continue;

          if (fail_level == _levels.size())
            add_level(residue.smallest_moved_point());
          add_to_levels(residue, static_cast<std::size_t>(i) + 1, fail_level);
          i = static_cast<std::ptrdiff_t>(fail_level);
          changed = true;
          break;
        }
      }

      if (!changed)
        --i;
    }
  }

  void extend(Permutation const &g)
  {
    if (_levels.empty() && _generators.size() == 1 && _generators[0].is_identity())
      _generators.clear();
    _generators.push_back(g);
    if (!g.is_identity()) {
      add_strong_generator(g);
      schreier_sims();
    }
  }

  std::size_t _degree = 0;
  std::vector<Permutation> _generators;
  std::vector<Level> _levels;
};

/// Image of a group acting on an indexed list of objects.
struct ActionImage
{
  PermGroup image;
  BigInt source_order;
  std::size_t object_count = 0;
  bool faithful = false;
  std::vector<Permutation> generator_images; // aligned with the source generators
};

inline ActionImage action_from_images(PermGroup const &source,
                                      std::vector<Permutation> images)
{
  ensure(!images.empty(), ErrorCode::EmptyGenerators, "no generator images");
  std::size_t n = images.front().degree();
  PermGroup image(images);
  bool faithful = image.order() == source.order();
  return ActionImage{std::move(image), source.order(), n, faithful, std::move(images)};
}

/// Builds the action of `group` on `objects`, where `act(object, generator)`
/// returns the image object. Objects must be ordered (used as map keys).
template<typename Object, typename Act>
ActionImage induced_action(PermGroup const &group, std::vector<Object> const &objects,
                           Act &&act)
{
  ensure(!objects.empty(), ErrorCode::InvalidArgument, "empty object list");
  std::map<Object, Point> index;
  for (std::size_t i = 0; i < objects.size(); ++i)
    index.emplace(objects[i], static_cast<Point>(i));
  ensure(index.size() == objects.size(), ErrorCode::InvalidArgument,
         "repeated objects in action domain");

  std::vector<Permutation> images;
  for (auto const &g : group.generators()) {
    std::vector<Point> img(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
      auto it = index.find(act(objects[i], g));
      ensure(it != index.end(), ErrorCode::NotPreserved,
             "action maps an object outside the domain");
      img[i] = it->second;
    }
    images.emplace_back(std::move(img));
  }
  return action_from_images(group, std::move(images));
}

/// Action of `group` on an invariant subset of its points.
inline ActionImage restrict_to(PermGroup const &group, std::vector<Point> const &domain)
{
  return induced_action(group, domain,
                        [](Point x, Permutation const &g) { return g[x]; });
}

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// One representative of every conjugacy class of prime-order elements,
/// found by enumerating the group. Representatives are listed in
/// element-enumeration order, which is deterministic.
inline std::vector<Permutation> prime_order_class_representatives(PermGroup const &group,
                                                                  std::size_t limit)
{
  auto elements = group.elements(limit);
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  index.reserve(elements.size() * 2);
  for (std::size_t i = 0; i < elements.size(); ++i)
    index.emplace(elements[i], i);

  std::vector<Permutation> inverses;
  for (auto const &g : group.generators())
    inverses.push_back(g.inverse());

  std::vector<bool> done(elements.size(), false);
  std::vector<Permutation> reps;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (done[i] || !is_prime(elements[i].order()))
      continue;
    reps.push_back(elements[i]);
    std::vector<std::size_t> queue{i};
    done[i] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto const &x = elements[queue[q]];
      for (std::size_t g = 0; g < inverses.size(); ++g) {
        std::size_t j = index.at(inverses[g] * x * group.generators()[g]);
        if (!done[j]) {
          done[j] = true;
          queue.push_back(j);
        }
      }
    }
  }
  return reps;
}

} // namespace lpd
