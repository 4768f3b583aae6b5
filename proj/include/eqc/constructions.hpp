#pragma once

// The explicit collision families at degree r^2: Frobenius collisions, the
// simply original family S(u, s, eps, m) and the multiply original family
// M(a, b, m).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqc/decomp.hpp"

namespace eqc {

/// e with r = p^e, or nullopt when r is not a positive power of p.
inline std::optional<unsigned> log_base(std::uint64_t r, std::uint64_t p)
{
  if (r < p || p < 2)
    return std::nullopt;
  unsigned e = 0;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1)
    return std::nullopt;
  return e;
}

namespace detail {

inline Poly cst(const FieldPtr& f, const FieldElem& c) { return Poly::constant(f, c.code()); }
inline Poly xpow(const FieldPtr& f, std::size_t k) { return Poly::monomial(f, 1, k); }
/// x - c
inline Poly x_minus(const FieldPtr& f, const FieldElem& c) { return Poly(f, {f->neg(c.code()), 1}); }

inline void require_power_of_p(const Field& f, std::uint64_t r)
{
  if (!log_base(r, f.characteristic()))
    throw Error(Errc::InvalidParams, "r = " + std::to_string(r) + " is not a power of p = "
                                         + std::to_string(f.characteristic()));
}

} // namespace detail

/// Frobenius collision {(x^r, h), (phi_r(h), x^r)} of x^r o h, where phi_r
/// raises every coefficient to the r-th power.
inline Collision frobenius_collision(const MonicOriginal& h, std::uint64_t r)
{
  const Field& f = h.field();
  detail::require_power_of_p(f, r);
  const unsigned e = *log_base(r, f.characteristic());
  if (h.degree() != static_cast<int>(r))
    throw Error(Errc::DegreeMismatch, "Frobenius collision needs deg h = r");
  const MonicOriginal xr(detail::xpow(h.field_ptr(), r));
  if (h == xr)
    throw Error(Errc::HEqualsXr, "h = x^r gives a single decomposition");
  const MonicOriginal phi_h(frobenius_coeffs(h.poly(), e));
  Collision c(compose(xr, h));
  c.insert(Decomposition(xr, h));
  c.insert(Decomposition(phi_h, xr));
  return c;
}

// Simply original family -----------------------------------------------------

struct SimplyParams {
  FieldPtr field;
  FieldElem u;
  FieldElem s;
  unsigned eps = 0;
  std::uint64_t m = 1;
  std::uint64_t r = 0;

  std::uint64_t ell() const { return (r - 1) / m; }
};

inline void validate(const SimplyParams& sp)
{
  if (!sp.field)
    throw Error(Errc::InvalidParams, "missing field");
  detail::require_power_of_p(*sp.field, sp.r);
  if (!sp.u.has_field() || !sp.s.has_field() || !sp.u.field().same_as(*sp.field) || !sp.s.field().same_as(*sp.field))
    throw Error(Errc::MixedFields, "u and s must lie in the parameter field");
  if (sp.u.is_zero() || sp.s.is_zero())
    throw Error(Errc::InvalidParams, "u and s must be nonzero");
  if (sp.eps > 1)
    throw Error(Errc::InvalidParams, "eps must be 0 or 1");
  if (sp.m == 0 || (sp.r - 1) % sp.m != 0)
    throw Error(Errc::InvalidParams, "m must be a positive divisor of r - 1");
}

/// x (x^(l(r+1)) - eps u s^r x^l + u s^(r+1))^m with l = (r-1)/m.
inline MonicOriginal build_S(const SimplyParams& sp)
{
  validate(sp);
  const FieldPtr& F = sp.field;
  const std::uint64_t l = sp.ell();
  const FieldElem sr = sp.s.pow(sp.r);
  Poly inner = detail::xpow(F, l * (sp.r + 1)) + detail::cst(F, sp.u * sr * sp.s);
  if (sp.eps == 1)
    inner -= Poly::monomial(F, (sp.u * sr).code(), l);
  return MonicOriginal(pow(inner, sp.m).shifted_up(1));
}

/// y^(r+1) - eps u y + u
inline Poly T_polynomial(const SimplyParams& sp)
{
  const FieldPtr& F = sp.field;
  Poly t = detail::xpow(F, sp.r + 1) + detail::cst(F, sp.u);
  if (sp.eps == 1)
    t -= Poly::monomial(F, sp.u.code(), 1);
  return t;
}

/// T = {t in F_q : t^(r+1) - eps u t + u = 0}, by exhaustive evaluation,
/// ascending by code.
inline std::vector<FieldElem> root_set_T(const SimplyParams& sp)
{
  validate(sp);
  const Poly t = T_polynomial(sp);
  std::vector<FieldElem> out;
  for (const auto& y : sp.field->enumerate())
    if (evaluate(t, y).is_zero())
      out.push_back(y);
  return out;
}

/// One decomposition per t in T: g = x (x^l - u s^r / t)^m, h = x (x^l - s t)^m.
inline Collision decompositions_S(const SimplyParams& sp)
{
  const MonicOriginal f = build_S(sp);
  const FieldPtr& F = sp.field;
  const std::uint64_t l = sp.ell();
  const FieldElem usr = sp.u * sp.s.pow(sp.r);
  Collision c(f);
  for (const auto& t : root_set_T(sp)) {
    const Poly g = pow(detail::xpow(F, l) - detail::cst(F, usr / t), sp.m).shifted_up(1);
    const Poly h = pow(detail::xpow(F, l) - detail::cst(F, sp.s * t), sp.m).shifted_up(1);
    c.insert(Decomposition(MonicOriginal(g), MonicOriginal(h)));
  }
  return c;
}

// Multiply original family ---------------------------------------------------

struct MultiplyParams {
  FieldPtr field;
  FieldElem a;
  FieldElem b;
  std::uint64_t m = 0;
  std::uint64_t r = 0;

  FieldElem a_star() const { return b.pow(r) - a; }
  std::uint64_t m_star() const { return r - m; }
};

inline void validate(const MultiplyParams& mp)
{
  if (!mp.field)
    throw Error(Errc::InvalidParams, "missing field");
  detail::require_power_of_p(*mp.field, mp.r);
  if (mp.r <= 4)
    throw Error(Errc::NoValidM, "no admissible m exists for r <= 4");
  if (!mp.a.has_field() || !mp.b.has_field() || !mp.a.field().same_as(*mp.field) || !mp.b.field().same_as(*mp.field))
    throw Error(Errc::MixedFields, "a and b must lie in the parameter field");
  if (mp.b.is_zero())
    throw Error(Errc::InvalidParams, "b must be nonzero");
  if (mp.a.is_zero() || mp.a == mp.b.pow(mp.r))
    throw Error(Errc::InvalidParams, "a must avoid 0 and b^r");
  if (mp.m <= 1 || mp.m + 1 >= mp.r || mp.m % mp.field->characteristic() == 0)
    throw Error(Errc::InvalidParams, "m must satisfy 1 < m < r - 1 and p does not divide m");
}

/// The polynomials of the M construction, with H = h / x^(m*) and H* = h* / x^m.
struct MComponents {
  Poly g, h, g_star, h_star, H, H_star;
};

namespace detail {

// Builds the components for any 1 <= m <= r - 1 and any a, b != 0; callers
// validate.
inline MComponents m_components_unchecked(const FieldPtr& F, const FieldElem& a, const FieldElem& b,
                                          std::uint64_t m, std::uint64_t r)
{
  const FieldElem as = b.pow(r) - a;
  const std::uint64_t ms = r - m;
  const FieldElem binv_r = b.pow(r).inv();
  const Poly xb = x_minus(F, b);
  MComponents c{Poly(F), Poly(F), Poly(F), Poly(F), Poly(F), Poly(F)};
  c.g = xpow(F, m) * pow(x_minus(F, a), ms);
  c.g_star = xpow(F, ms) * pow(x_minus(F, as), m);
  c.h = xpow(F, r) + (xpow(F, ms) * pow(xb, m) - xpow(F, r)).scaled((as * binv_r).code());
  c.h_star = xpow(F, r) + (xpow(F, m) * pow(xb, ms) - xpow(F, r)).scaled((a * binv_r).code());
  c.H = xpow(F, m) + (pow(xb, m) - xpow(F, m)).scaled((as * binv_r).code());
  c.H_star = xpow(F, ms) + (pow(xb, ms) - xpow(F, ms)).scaled((a * binv_r).code());
  return c;
}

} // namespace detail

inline MComponents M_components(const MultiplyParams& mp)
{
  validate(mp);
  return detail::m_components_unchecked(mp.field, mp.a, mp.b, mp.m, mp.r);
}

struct MConstruction {
  MonicOriginal f;
  Collision collision;
};

/// f = x^(m m*) (x - b)^(m m*) H^m (H*)^(m*) = g o h = g* o h*. Both
/// compositions and the factored form are checked against each other.
inline MConstruction build_M(const MultiplyParams& mp)
{
  const MComponents c = M_components(mp);
  const FieldPtr& F = mp.field;
  const std::uint64_t mm = mp.m * mp.m_star();
  const Poly factored = pow(detail::xpow(F, 1) * detail::x_minus(F, mp.b), mm) * pow(c.H, mp.m)
                        * pow(c.H_star, mp.m_star());
  const MonicOriginal f(compose(c.g, c.h));
  if (!(f.poly() == compose(c.g_star, c.h_star)) || !(f.poly() == factored))
    throw std::logic_error("build_M: collision identity failed for valid parameters");
  Collision col(f);
  col.insert(Decomposition(MonicOriginal(c.g), MonicOriginal(c.h)));
  col.insert(Decomposition(MonicOriginal(c.g_star), MonicOriginal(c.h_star)));
  return {f, std::move(col)};
}

/// m m* a a* b^(1-r) (x(x-b))^(m m* - 1) H^(m-1) (H*)^(m*-1), checked
/// against the derivative of f.
inline Poly M_derivative_factored(const MultiplyParams& mp)
{
  const MConstruction built = build_M(mp);
  const MComponents c = M_components(mp);
  const FieldPtr& F = mp.field;
  const std::uint64_t ms = mp.m_star();
  const FieldElem scalar = F->integer(static_cast<std::int64_t>((mp.m * ms) % F->characteristic())) * mp.a
                           * mp.a_star() * mp.b.inv().pow(mp.r - 1);
  const Poly out = detail::cst(F, scalar) * pow(detail::xpow(F, 1) * detail::x_minus(F, mp.b), mp.m * ms - 1)
                   * pow(c.H, mp.m - 1) * pow(c.H_star, ms - 1);
  if (!(out == derivative(built.f.poly())))
    throw std::logic_error("M_derivative_factored: factored form differs from f'");
  return out;
}

/// For m in {1, r - 1} a shift of the M construction lands in the S family.
/// Returns (shift w, S parameters) with M(a, b, m)^(w) = S(u, s, eps, r - 1).
struct MToS {
  FieldElem w;
  SimplyParams params;
};

inline MToS M_to_S_bridge(const FieldPtr& F, FieldElem a, const FieldElem& b, std::uint64_t m, std::uint64_t r)
{
  detail::require_power_of_p(*F, r);
  if (b.is_zero() || a.is_zero() || a == b.pow(r))
    throw Error(Errc::InvalidParams, "bridge needs b != 0 and a not in {0, b^r}");
  if (m == r - 1)
    a = b.pow(r) - a; // M(a, b, r-1) = M(a*, b, 1)
  else if (m != 1)
    throw Error(Errc::InvalidParams, "bridge needs m in {1, r - 1}");
  const FieldElem as = b.pow(r) - a;
  const FieldElem b1r = b.inv().pow(r - 1);
  const FieldElem w = as * b1r;
  const FieldElem c = (a * b1r).pow(r) - as;
  SimplyParams sp{F, F->one(), F->one(), 0, r - 1, r};
  if (c.is_zero()) {
    sp.u = -(a * as * b1r);
  } else {
    sp.eps = 1;
    sp.s = -(a * as * b1r) / c;
    sp.u = c / sp.s.pow(r);
  }
  return {w, sp};
}

/// M(a, b, m) built without the 1 < m < r - 1 restriction (used by the bridge
/// cross-check).
inline MonicOriginal build_M_any_m(const FieldPtr& F, const FieldElem& a, const FieldElem& b, std::uint64_t m,
                                   std::uint64_t r)
{
  detail::require_power_of_p(*F, r);
  if (b.is_zero() || m == 0 || m >= r)
    throw Error(Errc::InvalidParams, "need b != 0 and 1 <= m <= r - 1");
  const MComponents c = detail::m_components_unchecked(F, a, b, m, r);
  return MonicOriginal(compose(c.g, c.h));
}

} // namespace eqc
