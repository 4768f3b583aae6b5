#pragma once

// Shared helpers for the test suites: seeded generators and small
// independent oracles that do not go through the library's fast paths.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "eqc/eqc.hpp"

namespace eqc::test {

inline std::mt19937_64& rng()
{
  static std::mt19937_64 gen(0x5eed2026ULL);
  return gen;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi)
{
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline FieldElem random_elem(const FieldPtr& F) { return F->elem(static_cast<code_t>(uniform(0, F->order() - 1))); }

inline FieldElem random_nonzero(const FieldPtr& F)
{
  return F->elem(static_cast<code_t>(uniform(1, F->order() - 1)));
}

inline Poly random_poly(const FieldPtr& F, int degree)
{
  if (degree < 0)
    return Poly::zero(F);
  std::vector<code_t> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c)
    x = random_elem(F).code();
  c.back() = random_nonzero(F).code();
  return Poly(F, std::move(c));
}

inline Poly random_monic(const FieldPtr& F, int degree)
{
  Poly f = random_poly(F, degree);
  f.set_coeff(static_cast<std::size_t>(degree), 1);
  return f;
}

inline MonicOriginal random_monic_original(const FieldPtr& F, int degree)
{
  Poly f = random_monic(F, degree);
  f.set_coeff(0, 0);
  return MonicOriginal(std::move(f));
}

/// Multiplication in F_p[z]/(modulus) on digit vectors, by schoolbook
/// product and long division; independent of the field's tables.
inline std::vector<std::uint32_t> digit_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                            const std::vector<std::uint32_t>& modulus, std::uint32_t p)
{
  const std::size_t d = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > d;) {
    const std::uint64_t c = prod[k];
    if (c == 0)
      continue;
    for (std::size_t i = 0; i <= d; ++i)
      prod[k - d + i] = (prod[k - d + i] + (p - c) * modulus[i]) % p;
  }
  return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d)};
}

/// Number of distinct roots by evaluating at every field element, with a
/// plain sum of monomials.
inline std::size_t roots_by_evaluation(const Poly& f)
{
  const Field& F = f.field();
  std::size_t n = 0;
  for (code_t a = 0; a < F.order(); ++a) {
    code_t acc = 0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
      acc = F.add(acc, F.mul(f.coeffs()[i], F.pow(a, i)));
    if (acc == 0)
      ++n;
  }
  return n;
}

/// Composition by expanding g(h) = sum g_i h^i with repeated schoolbook
/// products.
inline Poly compose_oracle(const Poly& g, const Poly& h)
{
  const FieldPtr& F = g.field_ptr();
  Poly acc = Poly::zero(F);
  Poly hp = Poly::constant(F, 1);
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    acc = acc + hp.scaled(g.coeffs()[i]);
    hp = mul_schoolbook(hp, h);
  }
  return acc;
}

} // namespace eqc::test
