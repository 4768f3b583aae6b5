#pragma once

// Monic original polynomials, decompositions, collisions, original shifts.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "eqc/poly.hpp"

namespace eqc {

/// A polynomial with leading coefficient 1, constant coefficient 0 and
/// degree at least 1.
class MonicOriginal {
public:
  explicit MonicOriginal(Poly f) : f_(std::move(f))
  {
    if (f_.degree() < 1 || !f_.is_monic())
      throw Error(Errc::NotMonic, "expected a monic polynomial of positive degree, got " + to_string(f_));
    if (f_.coeff(0) != 0)
      throw Error(Errc::NotOriginal, "constant coefficient of " + to_string(f_) + " is nonzero");
  }

  const Poly& poly() const noexcept { return f_; }
  operator const Poly&() const noexcept { return f_; }
  int degree() const noexcept { return f_.degree(); }
  const Field& field() const noexcept { return f_.field(); }
  const FieldPtr& field_ptr() const noexcept { return f_.field_ptr(); }

  friend bool operator==(const MonicOriginal& a, const MonicOriginal& b) { return a.f_ == b.f_; }

private:
  Poly f_;
};

inline MonicOriginal make_monic_original(Poly f) { return MonicOriginal(std::move(f)); }

inline MonicOriginal compose(const MonicOriginal& g, const MonicOriginal& h)
{
  return MonicOriginal(compose(g.poly(), h.poly()));
}

/// Lexicographic order on coefficient codes, lower degree first; polynomials
/// of smaller degree sort first.
inline bool coeff_less(const Poly& a, const Poly& b)
{
  if (a.degree() != b.degree())
    return a.degree() < b.degree();
  return a.coeffs() < b.coeffs();
}

/// An ordered pair (g, h) of nonlinear monic original polynomials.
struct Decomposition {
  MonicOriginal g;
  MonicOriginal h;

  Decomposition(MonicOriginal g_, MonicOriginal h_) : g(std::move(g_)), h(std::move(h_))
  {
    if (g.degree() < 2 || h.degree() < 2)
      throw Error(Errc::DegreeMismatch, "decomposition components must be nonlinear");
    if (!g.field().same_as(h.field()))
      throw Error(Errc::MixedFields, "decomposition components over different fields");
  }

  MonicOriginal composed() const { return compose(g, h); }

  friend bool operator==(const Decomposition& a, const Decomposition& b) { return a.g == b.g && a.h == b.h; }
  friend bool operator<(const Decomposition& a, const Decomposition& b)
  {
    if (!(a.h == b.h))
      return coeff_less(a.h.poly(), b.h.poly());
    return coeff_less(a.g.poly(), b.g.poly());
  }
};

/// A set of distinct decompositions of one polynomial f, all with the same
/// left-component degree. Kept sorted.
class Collision {
public:
  explicit Collision(MonicOriginal f) : f_(std::move(f)) {}

  /// Adds d (if new); throws if it does not compose to f or breaks the
  /// equal-degree condition.
  void insert(Decomposition d)
  {
    if (!(d.composed() == f_))
      throw Error(Errc::InvalidParams, "decomposition does not compose to " + to_string(f_.poly()));
    if (!items_.empty() && items_.front().g.degree() != d.g.degree())
      throw Error(Errc::DegreeMismatch, "collision members need equal left-component degree");
    auto it = std::lower_bound(items_.begin(), items_.end(), d);
    if (it != items_.end() && *it == d)
      return;
    items_.insert(it, std::move(d));
  }

  const MonicOriginal& f() const noexcept { return f_; }
  const std::vector<Decomposition>& decompositions() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }

  friend bool operator==(const Collision& a, const Collision& b) { return a.f_ == b.f_ && a.items_ == b.items_; }

private:
  MonicOriginal f_;
  std::vector<Decomposition> items_;
};

/// The unique g with f = g o h, read off the h-adic expansion of f (every
/// digit must be a constant), or nullopt if h is not a right component.
inline std::optional<MonicOriginal> left_divide(const MonicOriginal& f, const MonicOriginal& h)
{
  if (f.degree() % h.degree() != 0)
    throw Error(Errc::DegreeMismatch, "deg h does not divide deg f");
  const auto digits = taylor_expansion(f.poly(), h.poly());
  std::vector<code_t> g(digits.size(), 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i].degree() > 0)
      return std::nullopt;
    g[i] = digits[i].coeff(0);
  }
  return MonicOriginal(Poly(f.field_ptr(), std::move(g)));
}

/// (x - f(w)) o f o (x + w).
inline MonicOriginal original_shift(const MonicOriginal& f, const FieldElem& w)
{
  if (w.is_zero())
    return f;
  Poly shifted = shift_argument(f.poly(), w);
  shifted.set_coeff(0, 0);
  return MonicOriginal(std::move(shifted));
}

/// (g^(h(w)), h^(w)), a decomposition of f^(w) when (g, h) decomposes f.
inline Decomposition shift_decomposition(const Decomposition& d, const FieldElem& w)
{
  const FieldElem hw = evaluate(d.h.poly(), w);
  return Decomposition(original_shift(d.g, hw), original_shift(d.h, w));
}

inline Collision shift_collision(const Collision& c, const FieldElem& w)
{
  Collision out(original_shift(c.f(), w));
  for (const auto& d : c.decompositions())
    out.insert(shift_decomposition(d, w));
  return out;
}

/// Number of monic original polynomials of degree n over F_q: q^(n-1).
inline std::uint64_t monic_original_count(const Field& f, unsigned n)
{
  std::uint64_t c = 1;
  for (unsigned i = 1; i < n; ++i)
    c *= f.order();
  return c;
}

/// The index-th monic original polynomial of degree n: the base-q digits of
/// index are the coefficients of x^1, ..., x^(n-1).
inline MonicOriginal monic_original_at(const FieldPtr& field, unsigned n, std::uint64_t index)
{
  std::vector<code_t> c(n + 1, 0);
  for (unsigned i = 1; i < n; ++i) {
    c[i] = static_cast<code_t>(index % field->order());
    index /= field->order();
  }
  c[n] = 1;
  return MonicOriginal(Poly(field, std::move(c)));
}

inline std::vector<MonicOriginal> monic_originals(const FieldPtr& field, unsigned n)
{
  std::vector<MonicOriginal> out;
  const std::uint64_t count = monic_original_count(*field, n);
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    out.push_back(monic_original_at(field, n, i));
  return out;
}

} // namespace eqc
