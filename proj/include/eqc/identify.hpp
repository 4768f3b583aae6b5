#pragma once

// Parameter recovery for the S and M families and collision classification
// at degree p^2.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "eqc/constructions.hpp"

namespace eqc {

struct SimplyIdentification {
  std::size_t k = 0; // #T
  FieldElem u;
  FieldElem s;
  unsigned eps = 0;
  std::uint64_t m = 0;
  FieldElem w;
};

struct MultiplyIdentification {
  FieldElem a;
  FieldElem b;
  std::uint64_t m = 0;
  FieldElem w;
};

namespace detail {

inline void require_degree_r_squared(const MonicOriginal& f, std::uint64_t r)
{
  require_power_of_p(f.field(), r);
  if (static_cast<std::uint64_t>(f.degree()) != r * r)
    throw Error(Errc::DegreeMismatch, "expected degree r^2 = " + std::to_string(r * r) + ", got "
                                          + std::to_string(f.degree()));
}

} // namespace detail

/// Finds (k, u, s, eps, m, w) with f = S(u, s, eps, m)^(w) and k = #T, or
/// nullopt ("failure"). For eps = 0 the returned pair is normalized to s = 1.
inline std::optional<SimplyIdentification> identify_simply(const MonicOriginal& f, std::uint64_t r)
{
  detail::require_degree_r_squared(f, r);
  const FieldPtr& F = f.field_ptr();
  const auto n = static_cast<std::int64_t>(r * r);
  const auto rr = static_cast<std::int64_t>(r);
  const int deg2 = second_degree(f.poly());
  if (deg2 == kMinusInfinity)
    return std::nullopt;
  auto coeff = [&](std::int64_t i) -> std::optional<FieldElem> {
    if (i < 0)
      return std::nullopt;
    return f.poly().coeff_elem(static_cast<std::size_t>(i));
  };

  SimplyIdentification id;
  std::int64_t l = 0;
  if (deg2 % rr == 0) {
    id.eps = 1;
    l = (n - deg2) / rr;
    if (l == 0 || (rr - 1) % l != 0)
      return std::nullopt;
    id.m = static_cast<std::uint64_t>((rr - 1) / l);
    auto lo = coeff(n - l * rr - l);
    auto hi = coeff(n - l * rr);
    if (!lo || !hi || hi->is_zero())
      return std::nullopt;
    id.s = -*lo / *hi;
    if (id.s.is_zero())
      return std::nullopt;
    id.u = F->integer(l) * *hi / id.s.pow(r);
  } else {
    id.eps = 0;
    if ((n - deg2) % (rr + 1) != 0)
      return std::nullopt;
    l = (n - deg2) / (rr + 1);
    if (l == 0 || (rr - 1) % l != 0)
      return std::nullopt;
    id.m = static_cast<std::uint64_t>((rr - 1) / l);
    auto lo = coeff(n - l * rr - l);
    if (!lo)
      return std::nullopt;
    id.s = F->one();
    id.u = -(F->integer(l) * *lo);
  }
  if ((id.u * id.s).is_zero())
    return std::nullopt;
  if (id.m == 1) {
    id.w = F->zero();
  } else {
    auto den = coeff(n - l * rr - l);
    auto num = coeff(n - l * rr - l - 1);
    if (!den || !num || den->is_zero())
      return std::nullopt;
    id.w = F->integer(static_cast<std::int64_t>(id.m)) * *num / *den;
  }
  const SimplyParams sp{F, id.u, id.s, id.eps, id.m, r};
  if (!(original_shift(build_S(sp), id.w) == f))
    return std::nullopt;
  id.k = count_roots_in_field(T_polynomial(sp));
  return id;
}

/// Finds (a, b, m, w) with f = M(a, b, m)^(w), or nullopt ("failure").
inline std::optional<MultiplyIdentification> identify_multiply(const MonicOriginal& f, std::uint64_t r)
{
  detail::require_degree_r_squared(f, r);
  if (r <= 4)
    return std::nullopt; // no admissible m
  const FieldPtr& F = f.field_ptr();
  const std::uint32_t p = F->characteristic();
  const auto rr = static_cast<std::int64_t>(r);

  const Poly fd = derivative(f.poly());
  if (fd.is_zero())
    return std::nullopt;
  Poly f0 = fd.monic();
  if (p == 2) {
    auto root = poly_pth_root(f0, 1);
    if (!root)
      return std::nullopt;
    f0 = std::move(*root);
  }
  const auto f1_opt = exact_div(f0, gcd(f0, derivative(f0)));
  if (!f1_opt)
    return std::nullopt;
  const Poly& f1 = *f1_opt;
  if (f1.degree() < 4 || f1.degree() > rr + 2)
    return std::nullopt;

  auto k = static_cast<std::int64_t>(max_power_dividing(f0, f1));
  if (p == 2)
    k *= 2;
  const std::int64_t m = std::min(k + 1, rr - k - 1);
  if (m < 2)
    return std::nullopt;

  Poly f2(F);
  if (p == 2 || (m * m + 1) % p != 0) {
    const Poly upper = gcd(pow(f1, static_cast<std::uint64_t>(rr - m)), f0);
    const Poly lower = gcd(pow(f1, static_cast<std::uint64_t>(rr - m - 1)), f0);
    auto q = exact_div(upper, lower);
    if (!q)
      return std::nullopt;
    f2 = std::move(*q);
  } else {
    auto f3 = exact_div(f0, gcd(pow(f1, static_cast<std::uint64_t>(rr - m - 1)), f0));
    if (!f3)
      return std::nullopt;
    // Largest l with p^l dividing every exponent that carries a nonzero coefficient.
    std::uint64_t g = 0;
    const auto& c = f3->coeffs();
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0)
        g = std::gcd(g, static_cast<std::uint64_t>(i));
    if (g == 0)
      return std::nullopt;
    std::uint64_t l = 0;
    while (g % p == 0) {
      g /= p;
      ++l;
    }
    auto root = poly_pth_root(*f3, l);
    if (!root)
      return std::nullopt;
    f2 = *exact_div(*root, gcd(*root, derivative(*root)));
  }
  if (f2.degree() != 2)
    return std::nullopt;

  const auto xs = solve_quadratic(f2.coeff_elem(2), f2.coeff_elem(1), f2.coeff_elem(0));
  if (!xs)
    return std::nullopt;
  const FieldElem b = xs->second - xs->first;
  const FieldElem w = -xs->first;
  const FieldElem mf = F->integer(m);
  const FieldElem c0 = -(mf * mf).inv() * b.pow(r - 1) * fd.coeff_elem(static_cast<std::size_t>(fd.degree()));
  // The roots are a and a* = b^r - a; they coincide when a = b^r / 2.
  std::vector<FieldElem> candidates;
  if (const auto as = solve_quadratic(F->one(), -b.pow(r), c0)) {
    candidates = {as->first, as->second};
  } else if (p != 2 && (b.pow(2 * r) - F->integer(4) * c0).is_zero()) {
    candidates = {b.pow(r) / F->integer(2)};
  } else {
    return std::nullopt;
  }
  for (const FieldElem& a : candidates) {
    const MultiplyParams mp{F, a, b, static_cast<std::uint64_t>(m), r};
    try {
      validate(mp);
    } catch (const Error&) {
      continue;
    }
    if (original_shift(build_M(mp).f, w) == f)
      return MultiplyIdentification{a, b, static_cast<std::uint64_t>(m), w};
  }
  return std::nullopt;
}

enum class CollisionTag { F, S, M, None };

inline std::string_view tag_name(CollisionTag t)
{
  switch (t) {
  case CollisionTag::F: return "F";
  case CollisionTag::S: return "S";
  case CollisionTag::M: return "M";
  case CollisionTag::None: return "None";
  }
  return "None";
}

struct CollisionClass {
  CollisionTag tag = CollisionTag::None;
  std::optional<SimplyIdentification> simply;
  std::optional<MultiplyIdentification> multiply;
};

inline std::string to_string(const CollisionClass& c)
{
  switch (c.tag) {
  case CollisionTag::F: return "F";
  case CollisionTag::S: {
    const auto& s = *c.simply;
    return "S k=" + std::to_string(s.k) + " u=" + s.u.to_string() + " s=" + s.s.to_string()
           + " eps=" + std::to_string(s.eps) + " m=" + std::to_string(s.m) + " w=" + s.w.to_string();
  }
  case CollisionTag::M: {
    const auto& m = *c.multiply;
    return "M a=" + m.a.to_string() + " b=" + m.b.to_string() + " m=" + std::to_string(m.m)
           + " w=" + m.w.to_string();
  }
  case CollisionTag::None: break;
  }
  return "no 2-collision";
}

/// Collision determination at degree p^2: Frobenius test, then the S
/// identification (accepted only with k >= 2), then the M identification.
inline CollisionClass classify(const MonicOriginal& f)
{
  const std::uint32_t p = f.field().characteristic();
  if (static_cast<std::uint64_t>(f.degree()) != std::uint64_t{p} * p)
    throw Error(Errc::DegreeMismatch, "classify needs degree p^2");
  CollisionClass out;
  if (in_power_subring(f.poly(), p) && second_degree(f.poly()) != kMinusInfinity) {
    out.tag = CollisionTag::F;
    return out;
  }
  if (auto s = identify_simply(f, p); s && s->k >= 2) {
    out.tag = CollisionTag::S;
    out.simply = s;
    return out;
  }
  if (auto m = identify_multiply(f, p)) {
    out.tag = CollisionTag::M;
    out.multiply = m;
    return out;
  }
  return out;
}

/// All decompositions (g, h) of f with deg h = deg_h, by trying every monic
/// original h.
inline Collision brute_force_decompositions(const MonicOriginal& f, unsigned deg_h)
{
  Collision out(f);
  const std::uint64_t count = monic_original_count(f.field(), deg_h);
  for (std::uint64_t i = 0; i < count; ++i) {
    const MonicOriginal h = monic_original_at(f.field_ptr(), deg_h, i);
    if (auto g = left_divide(f, h); g && g->degree() >= 2)
      out.insert(Decomposition(*g, h));
  }
  return out;
}

struct DecompositionListing {
  Collision collision;
  CollisionClass cls;
  bool brute_forced = false;
  bool fallback_skipped = false;
};

/// Largest field for the brute-force fallback, and cap on candidate right
/// components it may try.
inline constexpr std::uint32_t kBruteForceMaxQ = 81;
inline constexpr std::uint64_t kBruteForceMaxCandidates = std::uint64_t{1} << 20;

/// Every decomposition of f (degree p^2) into two degree-p components. For
/// classified f they come from the matching construction; otherwise a brute
/// force over all right components reports the zero or one decomposition.
inline DecompositionListing enumerate_decompositions(const MonicOriginal& f)
{
  const FieldPtr& F = f.field_ptr();
  const std::uint32_t p = F->characteristic();
  DecompositionListing out{Collision(f), classify(f)};
  switch (out.cls.tag) {
  case CollisionTag::F: {
    const MonicOriginal xp(Poly::monomial(F, 1, p));
    const MonicOriginal g = *left_divide(f, xp);
    std::vector<code_t> hc(g.poly().coeffs());
    for (auto& c : hc)
      c = F->pth_root(c, 1);
    const MonicOriginal h{Poly(F, std::move(hc))};
    out.collision.insert(Decomposition(xp, h));
    out.collision.insert(Decomposition(g, xp));
    break;
  }
  case CollisionTag::S: {
    const auto& s = *out.cls.simply;
    const SimplyParams sp{F, s.u, s.s, s.eps, s.m, p};
    out.collision = shift_collision(decompositions_S(sp), s.w);
    break;
  }
  case CollisionTag::M: {
    const auto& m = *out.cls.multiply;
    const MultiplyParams mp{F, m.a, m.b, m.m, p};
    out.collision = shift_collision(build_M(mp).collision, m.w);
    break;
  }
  case CollisionTag::None: {
    const std::uint64_t candidates = monic_original_count(*F, p);
    if (F->order() <= kBruteForceMaxQ && candidates <= kBruteForceMaxCandidates) {
      out.collision = brute_force_decompositions(f, p);
      out.brute_forced = true;
    } else {
      out.fallback_skipped = true;
    }
    break;
  }
  }
  return out;
}

} // namespace eqc
