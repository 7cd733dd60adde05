#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace lpd
{

/// GF(q) for a prime q or q in {4, 8, 9, 16, 25, 27}.
///
/// Elements are the integers 0..q-1: sum c_j p^j encodes the polynomial
/// sum c_j x^j, reduced modulo a fixed primitive (Conway) polynomial. So 0 and
/// 1 are the field's zero and one, and p encodes x.
class FiniteField
{
public:
  using Element = std::uint32_t;

  explicit FiniteField(std::uint32_t q)
  : _q(q)
  {
    ensure(q >= 2, ErrorCode::InvalidArgument, "field order must be at least 2");
    if (is_prime(q)) {
      _p = q;
      _e = 1;
      _modulus = {0, 1}; // x, unused for prime fields
    } else {
      switch (q) {
      case 4: _p = 2; _e = 2; _modulus = {1, 1, 1}; break;
      case 8: _p = 2; _e = 3; _modulus = {1, 1, 0, 1}; break;
      case 9: _p = 3; _e = 2; _modulus = {2, 2, 1}; break;
      case 16: _p = 2; _e = 4; _modulus = {1, 1, 0, 0, 1}; break;
      case 25: _p = 5; _e = 2; _modulus = {2, 4, 1}; break;
      case 27: _p = 3; _e = 3; _modulus = {1, 2, 0, 1}; break;
      default:
        fail(ErrorCode::InvalidArgument,
             "no primitive polynomial for q = " + std::to_string(q));
      }
    }
    ensure(q <= 1024, ErrorCode::LimitExceeded, "field too large for table arithmetic");
    build_tables();
  }

  std::uint32_t p() const noexcept { return _p; }
  std::uint32_t e() const noexcept { return _e; }
  std::uint32_t q() const noexcept { return _q; }

  std::vector<std::uint32_t> const &modulus() const noexcept
  { return _modulus; }

  Element add(Element a, Element b) const { return _add[a * _q + b]; }
  Element mul(Element a, Element b) const { return _mul[a * _q + b]; }
  Element neg(Element a) const { return _neg[a]; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element inv(Element a) const
  {
    ensure(a != 0, ErrorCode::InvalidArgument, "inverse of zero");
    return _inv[a];
  }

  // A generator of the multiplicative group.
  Element primitive_element() const noexcept
  { return _primitive; }

  // 1, x, ..., x^(e-1): a basis of GF(q) over GF(p).
  std::vector<Element> additive_basis() const
  {
    std::vector<Element> basis;
    Element power = 1;
    for (std::uint32_t j = 0; j < _e; ++j) {
      basis.push_back(power);
      power *= _p;
    }
    return basis;
  }

  std::uint32_t multiplicative_order(Element a) const
  {
    ensure(a != 0, ErrorCode::InvalidArgument, "zero has no multiplicative order");
    std::uint32_t n = 1;
    for (Element x = a; x != 1; x = mul(x, a))
      ++n;
    return n;
  }

private:
  std::vector<std::uint32_t> digits(Element a) const
  {
    std::vector<std::uint32_t> d(_e);
    for (std::uint32_t j = 0; j < _e; ++j) {
      d[j] = a % _p;
      a /= _p;
    }
    return d;
  }

  Element from_digits(std::vector<std::uint32_t> const &d) const
  {
    Element a = 0;
    for (std::uint32_t j = _e; j-- > 0;)
      a = a * _p + d[j];
    return a;
  }

  Element slow_mul(Element a, Element b) const
  {
    if (_e == 1)
      return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % _p);
    auto da = digits(a), db = digits(b);
    std::vector<std::uint32_t> prod(2 * _e - 1, 0);
    for (std::uint32_t i = 0; i < _e; ++i)
      for (std::uint32_t j = 0; j < _e; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % _p;
    // reduce with the monic modulus of degree e
    for (std::size_t deg = prod.size(); deg-- > _e;) {
      std::uint32_t c = prod[deg];
      if (c == 0)
        continue;
      prod[deg] = 0;
      for (std::uint32_t j = 0; j < _e; ++j)
        prod[deg - _e + j] = (prod[deg - _e + j] + (_p - c) * _modulus[j]) % _p;
    }
    prod.resize(_e);
    return from_digits(prod);
  }

  void build_tables()
  {
    _add.resize(_q * _q);
    _mul.resize(_q * _q);
    _neg.resize(_q);
    _inv.assign(_q, 0);
    for (Element a = 0; a < _q; ++a) {
      auto da = digits(a);
      for (Element b = 0; b < _q; ++b) {
        auto db = digits(b);
        std::vector<std::uint32_t> s(_e);
        for (std::uint32_t j = 0; j < _e; ++j)
          s[j] = (da[j] + db[j]) % _p;
        _add[a * _q + b] = from_digits(s);
        _mul[a * _q + b] = slow_mul(a, b);
      }
      std::vector<std::uint32_t> n(_e);
      for (std::uint32_t j = 0; j < _e; ++j)
        n[j] = (_p - da[j]) % _p;
      _neg[a] = from_digits(n);
    }
    for (Element a = 1; a < _q; ++a)
      for (Element b = 1; b < _q; ++b)
        if (mul(a, b) == 1)
          _inv[a] = b;

    _primitive = 0;
    for (Element a = 1; a < _q && _primitive == 0; ++a)
      if (multiplicative_order(a) == _q - 1)
        _primitive = a;
    ensure(_primitive != 0, ErrorCode::Internal, "multiplicative group is not cyclic");
  }

  std::uint32_t _q = 0, _p = 0, _e = 0;
  std::vector<std::uint32_t> _modulus;
  std::vector<Element> _add, _mul, _neg, _inv;
  Element _primitive = 0;
};

} // namespace lpd
