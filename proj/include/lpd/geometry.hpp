#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "group.hpp"
#include "incidence.hpp"

namespace lpd
{

/// Number of k-subspaces of an n-dimensional space over GF(q); 0 when k > n.
inline BigInt gaussian_coefficient(std::uint64_t n, std::uint64_t k, std::uint64_t q)
{
  ensure(q >= 2, ErrorCode::InvalidArgument, "q must be at least 2");
  if (k > n)
    return 0;
  BigInt num = 1, den = 1;
  for (std::uint64_t j = 0; j < k; ++j) {
    num *= boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n)) -
           boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(j));
    den *= boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(k)) -
           boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(j));
  }
  ensure(num % den == 0, ErrorCode::Internal, "Gaussian coefficient is not integral");
  return num / den;
}

inline BigInt ipow(std::uint64_t base, std::uint64_t exp)
{ return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

using Vec = std::vector<FiniteField::Element>;
using Matrix = std::vector<Vec>; // rows

/// Vectors of GF(q)^dim, indexed in base-q positional order with coordinate 0
/// most significant.
class VectorSpace
{
public:
  VectorSpace(FiniteField field, std::size_t dim, Limits const &limits = default_limits())
  : _field(std::move(field)), _dim(dim)
  {
    ensure(dim >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
    BigInt size = ipow(_field.q(), dim);
    ensure(size <= limits.point_limit, ErrorCode::LimitExceeded,
           "vector space of size " + size.str() + " exceeds point limit");
    _size = static_cast<std::size_t>(size);
  }

  FiniteField const &field() const noexcept { return _field; }
  std::size_t dim() const noexcept { return _dim; }
  std::size_t size() const noexcept { return _size; }

  std::size_t encode(Vec const &x) const
  {
    std::size_t index = 0;
    for (auto c : x)
      index = index * _field.q() + c;
    return index;
  }

  Vec decode(std::size_t index) const
  {
    Vec x(_dim);
    for (std::size_t j = _dim; j-- > 0;) {
      x[j] = static_cast<FiniteField::Element>(index % _field.q());
      index /= _field.q();
    }
    return x;
  }

  Vec add(Vec const &a, Vec const &b) const
  {
    Vec c(_dim);
    for (std::size_t j = 0; j < _dim; ++j)
      c[j] = _field.add(a[j], b[j]);
    return c;
  }

  Vec scale(FiniteField::Element s, Vec const &a) const
  {
    Vec c(_dim);
    for (std::size_t j = 0; j < _dim; ++j)
      c[j] = _field.mul(s, a[j]);
    return c;
  }

  // Row vector times matrix.
  Vec apply(Vec const &x, Matrix const &m) const
  {
    Vec y(_dim, 0);
    for (std::size_t i = 0; i < _dim; ++i) {
      if (x[i] == 0)
        continue;
      for (std::size_t j = 0; j < _dim; ++j)
        y[j] = _field.add(y[j], _field.mul(x[i], m[i][j]));
    }
    return y;
  }

  // Scalar multiple whose first nonzero coordinate is 1.
  Vec normalize(Vec const &x) const
  {
    for (auto c : x)
      if (c != 0)
        return scale(_field.inv(c), x);
    fail(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
  }

  // All vectors in the row space of `rows`, sorted by index.
  std::vector<std::size_t> span(Matrix const &rows) const
  {
    std::vector<std::size_t> result;
    std::size_t q = _field.q(), n = rows.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i)
      combos *= q;
    for (std::size_t c = 0; c < combos; ++c) {
      Vec x(_dim, 0);
      std::size_t code = c;
      for (std::size_t i = 0; i < n; ++i) {
        auto coef = static_cast<FiniteField::Element>(code % q);
        code /= q;
        if (coef)
          x = add(x, scale(coef, rows[i]));
      }
      result.push_back(encode(x));
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }

  Matrix identity_matrix() const
  {
    Matrix m(_dim, Vec(_dim, 0));
    for (std::size_t i = 0; i < _dim; ++i)
      m[i][i] = 1;
    return m;
  }

private:
  FiniteField _field;
  std::size_t _dim;
  std::size_t _size;
};

struct SubspaceList
{
  std::size_t d = 0;
  std::size_t i = 0;
  std::uint32_t q = 0;
  std::vector<Matrix> canonical_matrices; // reduced row echelon bases
};

/// All i-dimensional subspaces of GF(q)^d, one reduced row echelon basis each.
inline SubspaceList enumerate_subspaces(VectorSpace const &space, std::size_t i)
{
  std::size_t d = space.dim();
  ensure(i >= 1 && i <= d, ErrorCode::InvalidArgument, "need 1 <= i <= d");
  auto const &field = space.field();
  std::uint32_t q = field.q();

  SubspaceList result{d, i, q, {}};

  std::vector<std::size_t> pivots(i);
  std::iota(pivots.begin(), pivots.end(), std::size_t{0});
  while (true) {
    // free positions: row r, column c > pivots[r], c not a pivot
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < i; ++r)
      for (std::size_t c = pivots[r] + 1; c < d; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
          free.emplace_back(r, c);

    std::vector<std::uint32_t> values(free.size(), 0);
    while (true) {
      Matrix m(i, Vec(d, 0));
      for (std::size_t r = 0; r < i; ++r)
        m[r][pivots[r]] = 1;
      for (std::size_t f = 0; f < free.size(); ++f)
        m[free[f].first][free[f].second] = values[f];
      result.canonical_matrices.push_back(std::move(m));

      std::size_t f = 0;
      while (f < values.size() && ++values[f] == q)
        values[f++] = 0;
      if (f == values.size())
        break;
    }

    std::size_t r = i;
    while (r > 0 && pivots[r - 1] == d - i + r - 1)
      --r;
    if (r == 0)
      break;
    ++pivots[r - 1];
    for (std::size_t j = r; j < i; ++j)
      pivots[j] = pivots[j - 1] + 1;
  }

  if (gaussian_coefficient(d, i, q) != result.canonical_matrices.size())
    fail(ErrorCode::Internal, "subspace count differs from the Gaussian coefficient");
  return result;
}

/// Projective points of GF(q)^dim: normalized nonzero vectors in index order.
class ProjectiveSpace
{
public:
  explicit ProjectiveSpace(VectorSpace const &space)
  : _space(&space), _point_of(space.size(), -1)
  {
    for (std::size_t x = 1; x < space.size(); ++x) {
      Vec v = space.decode(x);
      if (space.encode(space.normalize(v)) == x) {
        _point_of[x] = static_cast<std::int64_t>(_reps.size());
        _reps.push_back(x);
      }
    }
  }

  std::size_t size() const { return _reps.size(); }

  std::vector<std::size_t> const &representatives() const { return _reps; }

  Point point_of(Vec const &x) const
  {
    std::size_t idx = _space->encode(_space->normalize(x));
    return static_cast<Point>(_point_of[idx]);
  }

private:
  VectorSpace const *_space;
  std::vector<std::int64_t> _point_of;
  std::vector<std::size_t> _reps;
};

enum class ClassicalFamily
{
  GL,
  PGL,
  AGL,
  Sp
};

enum class VectorDomain
{
  Nonzero, // q^d - 1 points, vector index minus one
  All      // q^d points
};

inline BigInt gl_order(std::uint64_t d, std::uint64_t q)
{
  BigInt result = 1;
  for (std::uint64_t i = 0; i < d; ++i)
    result *= ipow(q, d) - ipow(q, i);
  return result;
}

inline BigInt sp_order(std::uint64_t m, std::uint64_t q)
{
  BigInt result = ipow(q, m * m);
  for (std::uint64_t i = 1; i <= m; ++i)
    result *= ipow(q, 2 * i) - 1;
  return result;
}

/// Elementary transvections I + s E_ab (a != b, s in an additive basis) and
/// diag(w, 1, ..., 1) for a primitive element w. These generate GL_d(q).
inline std::vector<Matrix> gl_generators(VectorSpace const &space)
{
  std::size_t d = space.dim();
  auto const &field = space.field();
  std::vector<Matrix> gens;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      if (a == b)
        continue;
      for (auto s : field.additive_basis()) {
        Matrix m = space.identity_matrix();
        m[a][b] = s;
        gens.push_back(std::move(m));
      }
    }
  Matrix diag = space.identity_matrix();
  diag[0][0] = field.primitive_element();
  gens.push_back(std::move(diag));
  return gens;
}

/// The standard alternating form on GF(q)^2m with hyperbolic pairs
/// (e_1, f_1), (e_2, f_2), ... in coordinates (e_1, f_1, e_2, f_2, ...).
inline FiniteField::Element symplectic_form(FiniteField const &field, Vec const &u, Vec const &v)
{
  FiniteField::Element result = 0;
  for (std::size_t j = 0; j + 1 < u.size(); j += 2) {
    result = field.add(result, field.mul(u[j], v[j + 1]));
    result = field.sub(result, field.mul(u[j + 1], v[j]));
  }
  return result;
}

/// Symplectic transvections x -> x + s f(x, v) v for v running over the basis
/// vectors and sums of two basis vectors, s over an additive basis.
inline std::vector<Matrix> sp_generators(VectorSpace const &space)
{
  std::size_t d = space.dim();
  ensure(d % 2 == 0 && d >= 2, ErrorCode::InvalidArgument,
         "symplectic groups need even dimension");
  auto const &field = space.field();

  std::vector<Vec> directions;
  for (std::size_t a = 0; a < d; ++a) {
    Vec e(d, 0);
    e[a] = 1;
    directions.push_back(e);
    for (std::size_t b = a + 1; b < d; ++b) {
      Vec s = e;
      s[b] = 1;
      directions.push_back(s);
    }
  }

  std::vector<Matrix> gens;
  for (auto const &v : directions) {
    for (auto s : field.additive_basis()) {
      Matrix m(d);
      for (std::size_t i = 0; i < d; ++i) {
        Vec e(d, 0);
        e[i] = 1;
        auto coef = field.mul(s, symplectic_form(field, e, v));
        m[i] = space.add(e, space.scale(coef, v));
      }
      gens.push_back(std::move(m));
    }
  }
  return gens;
}

inline Permutation matrix_on_vectors(VectorSpace const &space, Matrix const &m,
                                     VectorDomain domain)
{
  std::size_t offset = domain == VectorDomain::Nonzero ? 1 : 0;
  std::vector<Point> img(space.size() - offset);
  for (std::size_t x = offset; x < space.size(); ++x)
    img[x - offset] = static_cast<Point>(space.encode(space.apply(space.decode(x), m)) - offset);
  return Permutation(std::move(img));
}

inline Permutation matrix_on_projective_points(VectorSpace const &space,
                                               ProjectiveSpace const &pg, Matrix const &m)
{
  std::vector<Point> img(pg.size());
  for (std::size_t i = 0; i < pg.size(); ++i)
    img[i] = pg.point_of(space.apply(space.decode(pg.representatives()[i]), m));
  return Permutation(std::move(img));
}

inline Permutation translation(VectorSpace const &space, Vec const &t)
{
  std::vector<Point> img(space.size());
  for (std::size_t x = 0; x < space.size(); ++x)
    img[x] = static_cast<Point>(space.encode(space.add(space.decode(x), t)));
  return Permutation(std::move(img));
}

// Translations by s e_j for every coordinate j and s in an additive basis.
inline std::vector<Permutation> translation_generators(VectorSpace const &space)
{
  std::vector<Permutation> gens;
  for (std::size_t j = 0; j < space.dim(); ++j)
    for (auto s : space.field().additive_basis()) {
      Vec t(space.dim(), 0);
      t[j] = s;
      gens.push_back(translation(space, t));
    }
  return gens;
}

inline void check_order(PermGroup const &group, BigInt const &expected, std::string const &name)
{
  if (group.order() != expected)
    fail(ErrorCode::Internal, name + " has order " + group.order().str() + ", expected " +
                              expected.str());
}

/// A classical group as a permutation group on its natural domain:
/// GL and Sp on vectors (per `domain`), PGL on projective points and AGL on
/// all vectors. The order is checked against the closed formula.
inline PermGroup classical_group(ClassicalFamily family, std::size_t dim, std::uint32_t q,
                                 VectorDomain domain = VectorDomain::Nonzero,
                                 Limits const &limits = default_limits())
{
  VectorSpace space(FiniteField(q), dim, limits);
  std::vector<Permutation> gens;
  std::string name;
  BigInt expected;

  switch (family) {
  case ClassicalFamily::GL:
    for (auto const &m : gl_generators(space))
      gens.push_back(matrix_on_vectors(space, m, domain));
    expected = gl_order(dim, q);
    name = "GL(" + std::to_string(dim) + "," + std::to_string(q) + ")";
    break;
  case ClassicalFamily::PGL: {
    ProjectiveSpace pg(space);
    for (auto const &m : gl_generators(space))
      gens.push_back(matrix_on_projective_points(space, pg, m));
    expected = gl_order(dim, q) / (q - 1);
    name = "PGL(" + std::to_string(dim) + "," + std::to_string(q) + ")";
    break;
  }
  case ClassicalFamily::AGL:
    for (auto const &m : gl_generators(space))
      gens.push_back(matrix_on_vectors(space, m, VectorDomain::All));
    for (auto &t : translation_generators(space))
      gens.push_back(std::move(t));
    expected = ipow(q, dim) * gl_order(dim, q);
    name = "AGL(" + std::to_string(dim) + "," + std::to_string(q) + ")";
    break;
  case ClassicalFamily::Sp:
    for (auto const &m : sp_generators(space))
      gens.push_back(matrix_on_vectors(space, m, domain));
    expected = sp_order(dim / 2, q);
    name = "Sp(" + std::to_string(dim) + "," + std::to_string(q) + ")";
    break;
  }

  PermGroup group(std::move(gens));
  check_order(group, expected, name);
  return group;
}

struct BuiltDesign
{
  std::string name;
  IncidenceStructure design;
  PermGroup group;
  std::vector<std::vector<std::size_t>> parallel_classes; // affine designs only
};

inline void check_parameters(IncidenceStructure const &design, BigInt v, BigInt k, BigInt lambda,
                             std::string const &name)
{
  auto params = verify_design(design);
  if (params.v != v || params.k != k || params.lambda != lambda)
    fail(ErrorCode::Internal, name + " verified as 2-(" + std::to_string(params.v) + "," +
                              std::to_string(params.k) + "," + std::to_string(params.lambda) +
                              "), expected 2-(" + v.str() + "," + k.str() + "," +
                              lambda.str() + ")");
}

/// Points and (i+1)-subspaces of the projective space PG(d, q), with PGL_{d+1}(q).
inline BuiltDesign build_pg(std::size_t d, std::uint32_t q, std::size_t i,
                            Limits const &limits = default_limits())
{
  ensure(d >= 2 && i >= 1 && i <= d - 1, ErrorCode::InvalidArgument,
         "projective design needs d >= 2 and 1 <= i <= d-1");
  VectorSpace space(FiniteField(q), d + 1, limits);
  ProjectiveSpace pg(space);

  std::vector<Block> blocks;
  for (auto const &m : enumerate_subspaces(space, i + 1).canonical_matrices) {
    Block block;
    for (std::size_t x : space.span(m))
      if (x != 0)
        block.push_back(pg.point_of(space.decode(x)));
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    blocks.push_back(std::move(block));
  }

  std::string name = "PG_" + std::to_string(i) + "(" + std::to_string(d) + "," +
                     std::to_string(q) + ")";
  IncidenceStructure design(pg.size(), std::move(blocks));
  check_parameters(design, (ipow(q, d + 1) - 1) / (q - 1), (ipow(q, i + 1) - 1) / (q - 1),
                   gaussian_coefficient(d - 1, i - 1, q), name);

  return {name, std::move(design), classical_group(ClassicalFamily::PGL, d + 1, q,
                                                   VectorDomain::Nonzero, limits), {}};
}

namespace detail
{

// All cosets U + v of the given subspaces, grouped into parallel classes.
inline std::vector<std::vector<Block>> affine_cosets(VectorSpace const &space,
                                                     std::vector<Matrix> const &subspaces)
{
  std::vector<std::vector<Block>> classes;
  for (auto const &m : subspaces) {
    auto u = space.span(m);
    std::vector<Vec> uvecs;
    for (auto x : u)
      uvecs.push_back(space.decode(x));
    std::vector<bool> covered(space.size(), false);
    std::vector<Block> cls;
    for (std::size_t v = 0; v < space.size(); ++v) {
      if (covered[v])
        continue;
      Vec vv = space.decode(v);
      Block block;
      for (auto const &w : uvecs) {
        std::size_t y = space.encode(space.add(vv, w));
        covered[y] = true;
        block.push_back(static_cast<Point>(y));
      }
      std::sort(block.begin(), block.end());
      cls.push_back(std::move(block));
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline std::vector<std::vector<std::size_t>> class_indices(
  IncidenceStructure const &design, std::vector<std::vector<Block>> const &classes)
{
  std::map<Block, std::size_t> index;
  for (std::size_t j = 0; j < design.b(); ++j)
    index.emplace(design.block(j), j);
  std::vector<std::vector<std::size_t>> result;
  for (auto const &cls : classes) {
    std::vector<std::size_t> ids;
    for (auto const &block : cls)
      ids.push_back(index.at(block));
    std::sort(ids.begin(), ids.end());
    result.push_back(std::move(ids));
  }
  return result;
}

inline std::vector<Block> flatten(std::vector<std::vector<Block>> const &classes)
{
  std::vector<Block> blocks;
  for (auto const &cls : classes)
    blocks.insert(blocks.end(), cls.begin(), cls.end());
  return blocks;
}

} // namespace detail

/// Vectors and cosets of i-subspaces of GF(q)^d, with AGL_d(q).
inline BuiltDesign build_ag(std::size_t d, std::uint32_t q, std::size_t i,
                            Limits const &limits = default_limits())
{
  ensure(d >= 2 && i >= 1 && i <= d - 1, ErrorCode::InvalidArgument,
         "affine design needs d >= 2 and 1 <= i <= d-1");
  VectorSpace space(FiniteField(q), d, limits);
  auto classes = detail::affine_cosets(space, enumerate_subspaces(space, i).canonical_matrices);

  std::string name = "AG_" + std::to_string(i) + "(" + std::to_string(d) + "," +
                     std::to_string(q) + ")";
  IncidenceStructure design(space.size(), detail::flatten(classes));
  check_parameters(design, ipow(q, d), ipow(q, i), gaussian_coefficient(d - 1, i - 1, q), name);
  auto parallel = detail::class_indices(design, classes);

  return {name, std::move(design),
          classical_group(ClassicalFamily::AGL, d, q, VectorDomain::All, limits),
          std::move(parallel)};
}

/// Translations and Sp_2m(q) acting on all vectors of GF(q)^2m.
inline PermGroup affine_symplectic_group(std::size_t m, std::uint32_t q,
                                         Limits const &limits = default_limits())
{
  VectorSpace space(FiniteField(q), 2 * m, limits);
  std::vector<Permutation> gens;
  for (auto const &mat : sp_generators(space))
    gens.push_back(matrix_on_vectors(space, mat, VectorDomain::All));
  for (auto &t : translation_generators(space))
    gens.push_back(std::move(t));
  PermGroup group(std::move(gens));
  check_order(group, ipow(q, 2 * m) * sp_order(m, q), "ASp(" + std::to_string(2 * m) + "," +
                                                        std::to_string(q) + ")");
  return group;
}

/// Cosets of the non-degenerate 2-subspaces of GF(q)^2m under the standard
/// alternating form: a 2-(q^2m, q^2, q^(2m-2)) design inside AG_2(2m, q).
inline BuiltDesign build_symplectic_subdesign(std::size_t m, std::uint32_t q,
                                              Limits const &limits = default_limits())
{
  ensure(m >= 2, ErrorCode::InvalidArgument, "symplectic subdesign needs m >= 2");
  VectorSpace space(FiniteField(q), 2 * m, limits);
  auto const &field = space.field();

  std::vector<Matrix> nondegenerate;
  for (auto const &mat : enumerate_subspaces(space, 2).canonical_matrices)
    if (symplectic_form(field, mat[0], mat[1]) != 0)
      nondegenerate.push_back(mat);

  auto classes = detail::affine_cosets(space, nondegenerate);
  std::string name = "Symp(" + std::to_string(m) + "," + std::to_string(q) + ")";
  IncidenceStructure design(space.size(), detail::flatten(classes));
  check_parameters(design, ipow(q, 2 * m), ipow(q, 2), ipow(q, 2 * m - 2), name);
  auto parallel = detail::class_indices(design, classes);

  return {name, std::move(design), affine_symplectic_group(m, q, limits), std::move(parallel)};
}

} // namespace lpd
