#pragma once

// Closed-form collision and decomposable counts over F_q, in exact
// integer/rational arithmetic.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "eqc/error.hpp"

namespace eqc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline Int exact_div(const Int& num, const Int& den, const char* what)
{
  if (den == 0 || num % den != 0)
    throw Error(Errc::NonIntegerResult, std::string(what) + ": " + num.str() + " / " + den.str() + " is not integral");
  return num / den;
}

inline Int ipow(Int b, unsigned e)
{
  Int r = 1;
  while (e != 0) {
    if (e & 1U)
      r *= b;
    b *= b;
    e >>= 1U;
  }
  return r;
}

} // namespace detail

inline Int kronecker_delta(const Int& a, const Int& b) { return a == b ? 1 : 0; }

/// d with q = base^d (d >= 1), else NotAPower.
inline unsigned power_exponent(const Int& q, const Int& base)
{
  if (base < 2 || q < base)
    throw Error(Errc::NotAPower, q.str() + " is not a positive power of " + base.str());
  Int t = q;
  unsigned d = 0;
  while (t % base == 0) {
    t /= base;
    ++d;
  }
  if (t != 1)
    throw Error(Errc::NotAPower, q.str() + " is not a positive power of " + base.str());
  return d;
}

/// Smallest prime factor; used to recover p from a prime power r.
inline Int smallest_prime_factor(const Int& n)
{
  for (Int k = 2; k * k <= n; ++k)
    if (n % k == 0)
      return k;
  return n;
}

/// Number of positive divisors of r - 1.
inline Int tau(const Int& r)
{
  if (r < 2)
    throw Error(Errc::InvalidParams, "tau needs r >= 2");
  const Int n = r - 1;
  Int count = 0;
  for (Int k = 1; k * k <= n; ++k) {
    if (n % k == 0)
      count += (k * k == n) ? 1 : 2;
  }
  return count;
}

/// gcd(r + 1, q - 1) for q = r^d, cross-checked against the parity rule
/// (1 for d odd and r even, 2 for d and r odd, r + 1 for d even).
inline Int gamma(const Int& r, const Int& q)
{
  const unsigned d = power_exponent(q, r);
  const Int g = boost::multiprecision::gcd(Int(r + 1), Int(q - 1));
  Int expected;
  if (d % 2 == 0)
    expected = r + 1;
  else
    expected = (r % 2 == 0) ? Int(1) : Int(2);
  if (g != expected)
    throw std::logic_error("gamma: gcd and parity rule disagree");
  return g;
}

/// Number of pairs (a, b) in (F_q^x)^2 such that x^(r+1) + a x + b has exactly
/// k roots in F_q.
inline Int c2_pairs(const Int& q, const Int& r, const Int& k)
{
  const unsigned d = power_exponent(q, r);
  if (k == 2) {
    if (q % 2 == 1 && d % 2 == 1)
      return detail::exact_div((q - 1) * (q * r - 2 * q - 2 * r + 3), 2 * (r - 1), "c2_pairs");
    return detail::exact_div((q - 1) * (q - 1) * (r - 2), 2 * (r - 1), "c2_pairs");
  }
  if (k == r + 1) {
    if (d % 2 == 0)
      return detail::exact_div((q - 1) * (q - r * r), r * (r * r - 1), "c2_pairs");
    return detail::exact_div((q - r) * (q - 1), r * (r * r - 1), "c2_pairs");
  }
  return 0;
}

/// Number of polynomials S(u, s, eps, m)^(w) over F_q with #T = k (k >= 2).
/// The closed form is checked against (tau q - q + 1)(c2_pairs + delta(gamma,k) (q-1)/gamma).
inline Int count_simply(const Int& q, const Int& r, const Int& k)
{
  if (k < 2)
    throw Error(Errc::InvalidParams, "count_simply needs k >= 2");
  power_exponent(q, r);
  const Int t = tau(r);
  const Int lead = t * q - q + 1;
  Int closed = 0;
  if (k == 2)
    closed = detail::exact_div(lead * (q - 1) * (q - 1) * (r - 2), 2 * (r - 1), "count_simply");
  else if (k == r + 1)
    closed = detail::exact_div(lead * (q - 1) * (q - r), r * (r * r - 1), "count_simply");
  const Int g = gamma(r, q);
  const Int via_pairs = lead * (c2_pairs(q, r, k) + kronecker_delta(g, k) * detail::exact_div(q - 1, g, "count_simply"));
  if (via_pairs != closed)
    throw std::logic_error("count_simply: closed form and pair count disagree");
  return closed;
}

struct MultiplyCount {
  Int value;
  bool formula_applies = true; // false for r < 3, where the value is 0 by definition
};

/// Number of polynomials M(a, b, m)^(w) over F_q: q(q-1)(q-2)(r - r/p - 2)/4.
inline MultiplyCount count_multiply(const Int& q, const Int& r)
{
  power_exponent(q, r);
  if (r < 3)
    return {0, false};
  const Int p = smallest_prime_factor(r);
  power_exponent(r, p);
  const Int value = detail::exact_div(q * (q - 1) * (q - 2) * (r - r / p - 2), 4, "count_multiply");
  if (value < 0)
    throw std::logic_error("count_multiply: negative count");
  return {value, true};
}

/// Maximal k-collision counts c_k at degree p^2 over F_q, and #D_{p^2}.
struct Spectrum {
  Int p;
  Int q;
  std::map<unsigned, Int> c; // keys 1, 2, p + 1
  Int d_total;

  Int at(unsigned k) const
  {
    auto it = c.find(k);
    return it == c.end() ? Int(0) : it->second;
  }
};

/// The parts of c_2 and c_{p+1} coming from each collision class.
struct ClassBreakdown {
  Int frobenius;  // k = 2
  Int simply_2;   // k = 2
  Int simply_p1;  // k = p + 1
  Int multiply;   // k = 2
};

inline ClassBreakdown class_breakdown(const Int& p, const Int& q)
{
  if (smallest_prime_factor(p) != p || p < 2)
    throw Error(Errc::NotPrime, p.str() + " is not prime");
  const unsigned d = power_exponent(q, p);
  (void)d;
  ClassBreakdown b;
  b.frobenius = detail::ipow(q, static_cast<unsigned>(p - 1)) - 1;
  b.simply_2 = count_simply(q, p, 2);
  b.simply_p1 = count_simply(q, p, p + 1);
  b.multiply = (1 - kronecker_delta(p, 2)) * count_multiply(q, p).value;
  return b;
}

inline Spectrum spectrum(const Int& p, const Int& q)
{
  const ClassBreakdown b = class_breakdown(p, q);
  const auto pu = static_cast<unsigned>(p);
  const Int total = detail::ipow(q, 2 * pu - 2);
  const Int t = tau(p);
  const Int delta = kronecker_delta(p, 2);

  Spectrum s{p, q, {}, 0};
  const Int c2 = b.frobenius + b.simply_2 + b.multiply;
  const Int cp1 = b.simply_p1;
  // Closed forms for c_2 and c_{p+1}, checked against the class sums.
  const Int c2_closed = detail::ipow(q, pu - 1) - 1
                        + detail::exact_div((t * q - q + 1) * (q - 1) * (q - 1) * (p - 2), 2 * (p - 1), "spectrum")
                        + (1 - delta) * detail::exact_div(q * (q - 1) * (q - 2) * (p - 3), 4, "spectrum");
  const Int cp1_closed = detail::exact_div((t * q - q + 1) * (q - 1) * (q - p), p * (p * p - 1), "spectrum");
  if (c2 != c2_closed || cp1 != cp1_closed)
    throw std::logic_error("spectrum: class sums differ from closed forms");

  const Int c1 = total - 2 * c2 - (p + 1) * cp1;
  const Int c1_closed = total - 2 * detail::ipow(q, pu - 1) + 2
                        - detail::exact_div((t * q - q + 1) * (q - 1) * (q * p - q - p), p, "spectrum")
                        - (1 - delta) * detail::exact_div(q * (q - 1) * (q - 2) * (p - 3), 2, "spectrum");
  if (c1 != c1_closed)
    throw std::logic_error("spectrum: c1 differs from its closed form");
  s.c[1] = c1;
  s.c[2] = c2;
  s.c[pu + 1] = cp1;

  Int weighted = 0;
  for (const auto& [k, v] : s.c)
    weighted += Int(k) * v;
  if (weighted != total)
    throw std::logic_error("spectrum: sum k c_k differs from q^(2p-2)");

  s.d_total = total - c2 - p * cp1;
  Int excess = 0;
  for (const auto& [k, v] : s.c)
    if (k >= 2)
      excess += Int(k - 1) * v;
  if (s.d_total != total - excess)
    throw std::logic_error("spectrum: #D differs from q^(2p-2) - sum (k-1) c_k");
  return s;
}

/// #D_{p^2}(F_q) from the closed form, checked against the spectrum.
inline Int count_decomposable(const Int& p, const Int& q)
{
  const Spectrum s = spectrum(p, q);
  const auto pu = static_cast<unsigned>(p);
  const Int t = tau(p);
  const Int closed = detail::ipow(q, 2 * pu - 2) - detail::ipow(q, pu - 1) + 1
                     - detail::exact_div((t * q - q + 1) * (q - 1) * (q * p - p - 2), 2 * (p + 1), "count_decomposable")
                     - (1 - kronecker_delta(p, 2)) * detail::exact_div(q * (q - 1) * (q - 2) * (p - 3), 4, "count_decomposable");
  if (closed != s.d_total)
    throw std::logic_error("count_decomposable: closed form differs from spectrum");
  return closed;
}

/// #D_{p^2} / q^(2p-2) as an exact fraction.
inline Rational nu(const Int& p, const Int& q)
{
  const auto pu = static_cast<unsigned>(p);
  return Rational(count_decomposable(p, q), detail::ipow(q, 2 * pu - 2));
}

inline std::string to_string(const Rational& r)
{
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

} // namespace eqc
