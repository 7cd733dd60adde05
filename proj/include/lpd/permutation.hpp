#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace lpd
{

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}.
///
/// Products follow the right-action convention used everywhere in the
/// library: `(x^p)^q == x^(p*q)`, i.e. `p * q` applies `p` first.
class Permutation
{
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree)
  : _images(degree)
  { std::iota(_images.begin(), _images.end(), Point{0}); }

  explicit Permutation(std::vector<Point> images)
  : _images(std::move(images))
  {
    std::vector<bool> seen(_images.size(), false);
    for (Point x : _images) {
      ensure(x < _images.size(), ErrorCode::InvalidArgument,
             "image out of range in permutation");
      ensure(!seen[x], ErrorCode::InvalidArgument,
             "images do not form a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree)
  { return Permutation(degree); }

  std::size_t degree() const noexcept
  { return _images.size(); }

  Point operator[](Point x) const
  { return _images[x]; }

  Point apply(Point x) const
  {
    ensure(x < _images.size(), ErrorCode::OutOfRange, "point out of range");
    return _images[x];
  }

  std::vector<Point> const &images() const noexcept
  { return _images; }

  bool is_identity() const noexcept
  {
    for (std::size_t i = 0; i < _images.size(); ++i)
      if (_images[i] != i)
        return false;
    return true;
  }

  Permutation inverse() const
  {
    Permutation result;
    result._images.resize(_images.size());
    for (std::size_t i = 0; i < _images.size(); ++i)
      result._images[_images[i]] = static_cast<Point>(i);
    return result;
  }

  // p * q: apply p, then q.
  friend Permutation operator*(Permutation const &lhs, Permutation const &rhs)
  {
    ensure(lhs.degree() == rhs.degree(), ErrorCode::DegreeMismatch,
           "composing permutations of degree " + std::to_string(lhs.degree()) +
           " and " + std::to_string(rhs.degree()));
    Permutation result;
    result._images.resize(lhs._images.size());
    for (std::size_t i = 0; i < lhs._images.size(); ++i)
      result._images[i] = rhs._images[lhs._images[i]];
    return result;
  }

  Permutation &operator*=(Permutation const &rhs)
  { return *this = *this * rhs; }

  // g^-1 * this * g
  Permutation conjugate_by(Permutation const &g) const
  { return g.inverse() * *this * g; }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

  std::vector<std::vector<Point>> cycles(bool include_fixed = false) const
  {
    std::vector<std::vector<Point>> result;
    std::vector<bool> done(_images.size(), false);
    for (Point start = 0; start < _images.size(); ++start) {
      if (done[start])
        continue;
      std::vector<Point> cycle;
      for (Point x = start; !done[x]; x = _images[x]) {
        done[x] = true;
        cycle.push_back(x);
      }
      if (cycle.size() > 1 || include_fixed)
        result.push_back(std::move(cycle));
    }
    return result;
  }

  std::uint64_t order() const
  {
    std::uint64_t result = 1;
    for (auto const &cycle : cycles())
      result = std::lcm(result, static_cast<std::uint64_t>(cycle.size()));
    return result;
  }

  bool is_even() const
  {
    std::size_t transpositions = 0;
    for (auto const &cycle : cycles())
      transpositions += cycle.size() - 1;
    return transpositions % 2 == 0;
  }

  Point smallest_moved_point() const
  {
    for (Point x = 0; x < _images.size(); ++x)
      if (_images[x] != x)
        return x;
    return static_cast<Point>(_images.size());
  }

  // Canonical 1-based cycle notation: cycles ordered by smallest element,
  // smallest element first.
  std::string to_string() const
  {
    auto cs = cycles();
    if (cs.empty())
      return "()";
    std::ostringstream out;
    for (auto const &cycle : cs) {
      out << '(';
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i)
          out << ' ';
        out << cycle[i] + 1;
      }
      out << ')';
    }
    return out.str();
  }

private:
  std::vector<Point> _images;
};

struct PermutationHash
{
  std::size_t operator()(Permutation const &p) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Parses disjoint-cycle notation over 1-based point names, e.g. "(1 2 3)(4 5)".
/// Commas are accepted as separators inside a cycle.
inline Permutation parse_permutation(std::string_view text, std::size_t degree)
{
  ensure(degree > 0, ErrorCode::InvalidArgument, "degree must be positive");

  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  auto error = [&](std::string const &msg) {
    fail(ErrorCode::Parse, msg + " in \"" + std::string(text) + "\"");
  };

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };

  skip_space();
  if (pos == text.size())
    error("empty permutation");

  bool saw_cycle = false;
  while (true) {
    skip_space();
    if (pos == text.size())
      break;
    if (text[pos] != '(')
      error("expected '('");
    ++pos;

    std::vector<Point> cycle;
    while (true) {
      skip_space();
      if (pos == text.size())
        error("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        error("unexpected character '" + std::string(1, text[pos]) + "'");

      std::uint64_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (value > degree)
          fail(ErrorCode::OutOfRange,
               "point exceeds degree " + std::to_string(degree) + " in \"" + std::string(text) + "\"");
        ++pos;
      }
      if (value == 0)
        fail(ErrorCode::OutOfRange, "points are 1-based in \"" + std::string(text) + "\"");

      Point x = static_cast<Point>(value - 1);
      if (used[x])
        error("repeated point " + std::to_string(value));
      used[x] = true;
      cycle.push_back(x);
    }

    if (cycle.empty()) {
      if (saw_cycle)
        error("empty cycle after other cycles");
    } else {
      for (std::size_t i = 0; i < cycle.size(); ++i)
        images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    saw_cycle = true;
  }

  return Permutation(std::move(images));
}

} // namespace lpd
