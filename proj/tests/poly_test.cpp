#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace eqc;

namespace {

Poly P(const FieldPtr& F, const std::string& s) { return parse_poly(F, s); }

} // namespace

TEST(PolyMul, KnownValues)
{
  auto F2 = Field::create(2, 1);
  EXPECT_EQ(P(F2, "x+1") * P(F2, "x+1"), P(F2, "x^2+1"));
  auto F4 = Field::create(2, 2);
  EXPECT_EQ(P(F4, "x^2+2") * P(F4, "x"), P(F4, "x^3+2*x"));
  auto F3 = Field::create(3, 1);
  const Poly a = P(F3, "x") * pow(P(F3, "x+2"), 2);
  const Poly b = P(F3, "x") * pow(P(F3, "x+1"), 2);
  EXPECT_EQ(a * b, mul_schoolbook(a, b));
  EXPECT_EQ(to_string(a * b), "x^6+x^4+x^2");
}

TEST(PolyMul, KaratsubaMatchesSchoolbook)
{
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 3}, {3, 2}, {5, 1}, {7, 2}}) {
    auto F = Field::create(p, d);
    for (int t = 0; t < 40; ++t) {
      const int da = static_cast<int>(test::uniform(0, 200));
      const int db = static_cast<int>(test::uniform(0, 200));
      const Poly a = test::random_poly(F, da), b = test::random_poly(F, db);
      EXPECT_EQ(a * b, mul_schoolbook(a, b));
    }
    EXPECT_TRUE((Poly::zero(F) * test::random_poly(F, 50)).is_zero());
  }
}

TEST(PolyRing, Laws)
{
  auto F = Field::create(3, 2);
  for (int t = 0; t < 100; ++t) {
    const Poly a = test::random_poly(F, static_cast<int>(test::uniform(0, 40)));
    const Poly b = test::random_poly(F, static_cast<int>(test::uniform(0, 40)));
    const Poly c = test::random_poly(F, static_cast<int>(test::uniform(0, 40)));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Poly::zero(F));
  }
}

TEST(PolyDiv, KnownValues)
{
  auto F2 = Field::create(2, 1);
  auto [q1, r1] = divrem(P(F2, "x^3"), P(F2, "x"));
  EXPECT_EQ(q1, P(F2, "x^2"));
  EXPECT_TRUE(r1.is_zero());
  auto [q2, r2] = divrem(P(F2, "x^3+x+1"), P(F2, "x^2+1"));
  EXPECT_EQ(q2, P(F2, "x"));
  EXPECT_EQ(r2, P(F2, "1"));
  auto [q3, r3] = divrem(P(F2, "x+1"), P(F2, "x^2"));
  EXPECT_TRUE(q3.is_zero());
  EXPECT_EQ(r3, P(F2, "x+1"));
  EXPECT_THROW(divrem(P(F2, "x"), Poly::zero(F2)), Error);

  auto F5 = Field::create(5, 1);
  EXPECT_EQ(*exact_div(P(F5, "x^2+4"), P(F5, "x+4")), P(F5, "x+1"));
  EXPECT_FALSE(exact_div(P(F5, "x^2+1"), P(F5, "x")));
}

TEST(PolyDiv, Properties)
{
  auto F = Field::create(5, 2);
  for (int t = 0; t < 100; ++t) {
    const Poly a = test::random_poly(F, static_cast<int>(test::uniform(0, 60)));
    const Poly b = test::random_poly(F, static_cast<int>(test::uniform(0, 30)));
    auto [q, r] = divrem(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
    EXPECT_EQ(*exact_div(a * b, b), a);
  }
}

TEST(PolyGcd, KnownValues)
{
  auto F5 = Field::create(5, 1);
  EXPECT_TRUE(gcd(Poly::zero(F5), Poly::zero(F5)).is_zero());
  EXPECT_EQ(gcd(P(F5, "x^2+4"), P(F5, "x+4")), P(F5, "x+4"));
  auto F3 = Field::create(3, 1);
  const Poly g = gcd(P(F3, "x^3+2*x"), P(F3, "x^4+2"));
  EXPECT_EQ(g.degree(), 2);
  EXPECT_EQ(g, P(F3, "x^2+2"));
}

TEST(PolyGcd, Properties)
{
  auto F = Field::create(2, 4);
  for (int t = 0; t < 60; ++t) {
    const Poly c = test::random_monic(F, static_cast<int>(test::uniform(1, 8)));
    const Poly a = test::random_poly(F, static_cast<int>(test::uniform(0, 20))) * c;
    const Poly b = test::random_poly(F, static_cast<int>(test::uniform(0, 20))) * c;
    const Poly g = gcd(a, b);
    EXPECT_TRUE(g.is_monic());
    EXPECT_TRUE(rem(a, g).is_zero());
    EXPECT_TRUE(rem(b, g).is_zero());
    EXPECT_TRUE(rem(g, c).is_zero());
  }
}

TEST(PolyCalculus, Derivative)
{
  auto F3 = Field::create(3, 1);
  EXPECT_TRUE(derivative(P(F3, "x^3")).is_zero());
  EXPECT_EQ(derivative(P(F3, "x^9+x^5+x")), P(F3, "2*x^4+1"));
  EXPECT_TRUE(derivative(P(F3, "2")).is_zero());
}

TEST(PolyEval, AgainstMonomialSum)
{
  auto F3 = Field::create(3, 1);
  EXPECT_EQ(evaluate(P(F3, "x^2+1"), F3->elem(1)), F3->elem(2));
  auto F = Field::create(7, 2);
  for (int t = 0; t < 100; ++t) {
    const Poly f = test::random_poly(F, static_cast<int>(test::uniform(0, 30)));
    const FieldElem a = test::random_elem(F);
    FieldElem acc = F->zero();
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
      acc += f.coeff_elem(i) * a.pow(i);
    EXPECT_EQ(evaluate(f, a), acc);
    EXPECT_EQ(evaluate(f, F->zero()).code(), f.coeff(0));
  }
}

TEST(PolyCompose, KnownValues)
{
  auto F2 = Field::create(2, 1);
  const Poly h = P(F2, "x^2+x");
  EXPECT_EQ(compose(P(F2, "x^2"), h), P(F2, "x^4+x^2"));
  EXPECT_EQ(compose(h, P(F2, "x^2")), P(F2, "x^4+x^2"));
  const Poly g = test::random_poly(F2, 9);
  EXPECT_EQ(compose(g, Poly::x(F2)), g);
}

TEST(PolyCompose, AgainstOracleAndLaws)
{
  auto F = Field::create(3, 2);
  for (int t = 0; t < 40; ++t) {
    const Poly a = test::random_monic_original(F, static_cast<int>(test::uniform(1, 5))).poly();
    const Poly b = test::random_monic_original(F, static_cast<int>(test::uniform(1, 5))).poly();
    const Poly c = test::random_monic_original(F, static_cast<int>(test::uniform(1, 4))).poly();
    EXPECT_EQ(compose(a, b), test::compose_oracle(a, b));
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    EXPECT_EQ(compose(a, b).degree(), a.degree() * b.degree());
  }
}

TEST(PolyCompose, ShiftArgument)
{
  auto F = Field::create(5, 2);
  for (int t = 0; t < 30; ++t) {
    const Poly f = test::random_poly(F, static_cast<int>(test::uniform(0, 40)));
    const FieldElem w = test::random_elem(F);
    EXPECT_EQ(shift_argument(f, w), compose(f, Poly(F, {w.code(), 1})));
  }
}

TEST(PolyModexp, KnownValues)
{
  auto F2 = Field::create(2, 1);
  EXPECT_EQ(modexp_x_to_q(P(F2, "x^2+1"), 4), P(F2, "1"));
  auto F7 = Field::create(7, 1);
  EXPECT_EQ(modexp_x_to_q(P(F7, "x+4"), 7), P(F7, "3"));
  auto F3 = Field::create(3, 1);
  EXPECT_EQ(modexp_x(P(F3, "x^4+2*x+1"), 3), P(F3, "x^3"));
  auto F = Field::create(3, 2);
  for (int t = 0; t < 20; ++t) {
    const Poly m = test::random_monic(F, static_cast<int>(test::uniform(1, 10)));
    const std::uint64_t e = test::uniform(0, 500);
    EXPECT_EQ(modexp_x(m, e), rem(pow(Poly::x(F), e), m));
  }
}

TEST(PolyRoots, KnownValues)
{
  auto F2 = Field::create(2, 1);
  EXPECT_EQ(count_roots_in_field(P(F2, "x^3+x+1")), 0U);
  auto F3 = Field::create(3, 1);
  EXPECT_EQ(count_roots_in_field(P(F3, "x^4+2")), 2U);
  auto F4 = Field::create(2, 2);
  EXPECT_EQ(count_roots_in_field(P(F4, "x^3+1")), 3U);
  EXPECT_THROW(count_roots_in_field(Poly::zero(F4)), Error);
}

TEST(PolyRoots, GcdPathMatchesExhaustiveDegreeUpTo6)
{
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {7, 1}}) {
    auto F = Field::create(p, d);
    for (int t = 0; t < 150; ++t) {
      const Poly f = test::random_poly(F, static_cast<int>(test::uniform(0, 6)));
      const std::size_t oracle = test::roots_by_evaluation(f);
      EXPECT_EQ(count_roots_in_field(f, RootCount::Gcd), oracle);
      EXPECT_EQ(count_roots_in_field(f, RootCount::Exhaustive), oracle);
    }
  }
}

TEST(PolyTaylor, KnownValues)
{
  auto F2 = Field::create(2, 1);
  const Poly base = P(F2, "x^2+x+1");
  const auto d1 = taylor_expansion(pow(base, 2), base);
  ASSERT_EQ(d1.size(), 3U);
  EXPECT_TRUE(d1[0].is_zero());
  EXPECT_TRUE(d1[1].is_zero());
  EXPECT_EQ(d1[2], P(F2, "1"));
  const auto d2 = taylor_expansion(P(F2, "x^3+x+1"), P(F2, "x^2"));
  ASSERT_EQ(d2.size(), 2U);
  EXPECT_EQ(d2[0], P(F2, "x+1"));
  EXPECT_EQ(d2[1], P(F2, "x"));
  EXPECT_THROW(taylor_expansion(base, P(F2, "1")), Error);
}

TEST(PolyTaylor, RoundTrip)
{
  auto F = Field::create(3, 2);
  for (int t = 0; t < 60; ++t) {
    const Poly f = test::random_poly(F, static_cast<int>(test::uniform(0, 120)));
    const Poly base = test::random_poly(F, static_cast<int>(test::uniform(1, 9)));
    const auto digits = taylor_expansion(f, base);
    Poly acc = Poly::zero(F);
    for (std::size_t i = digits.size(); i-- > 0;) {
      EXPECT_LT(digits[i].degree(), base.degree());
      acc = acc * base + digits[i];
    }
    EXPECT_EQ(acc, f);
  }
}

TEST(PolyTaylor, MaxPowerDividing)
{
  auto F2 = Field::create(2, 1);
  EXPECT_EQ(max_power_dividing(P(F2, "x^3+x^2"), P(F2, "x")), 2U);
  EXPECT_EQ(max_power_dividing(P(F2, "x+1"), P(F2, "x")), 0U);
  EXPECT_THROW(max_power_dividing(Poly::zero(F2), P(F2, "x")), Error);
  auto F = Field::create(5, 1);
  for (int t = 0; t < 60; ++t) {
    const Poly base = test::random_monic(F, static_cast<int>(test::uniform(1, 5)));
    Poly u = test::random_poly(F, static_cast<int>(test::uniform(0, 10)));
    if (rem(u, base).is_zero())
      u = u + Poly::constant(F, 1);
    const std::size_t k = test::uniform(0, 6);
    EXPECT_EQ(max_power_dividing(pow(base, k) * u, base), k);
  }
}

TEST(PolyRoots, PthRoot)
{
  auto F2 = Field::create(2, 1);
  EXPECT_EQ(*poly_pth_root(P(F2, "x^4+x^2"), 1), P(F2, "x^2+x"));
  EXPECT_FALSE(poly_pth_root(P(F2, "x^2+x"), 1));
  auto F3 = Field::create(3, 1);
  EXPECT_EQ(*poly_pth_root(P(F3, "x^3"), 1), P(F3, "x"));
  auto F = Field::create(3, 3);
  for (int t = 0; t < 30; ++t) {
    const Poly g = test::random_poly(F, static_cast<int>(test::uniform(0, 12)));
    const unsigned l = static_cast<unsigned>(test::uniform(1, 2));
    Poly gpow = g;
    for (unsigned i = 0; i < l; ++i)
      gpow = pow(gpow, 3);
    const auto root = poly_pth_root(gpow, l);
    ASSERT_TRUE(root);
    EXPECT_EQ(*root, g);
  }
}

TEST(PolyMisc, SecondDegreeAndSquarefree)
{
  auto F2 = Field::create(2, 1);
  EXPECT_EQ(second_degree(P(F2, "x^4")), kMinusInfinity);
  auto F3 = Field::create(3, 1);
  EXPECT_EQ(second_degree(P(F3, "x^9+x^5+x")), 5);
  EXPECT_EQ(second_degree(P(F3, "x^9+2*x^3")), 3);
  EXPECT_THROW(second_degree(P(F3, "2*x^2")), Error);
  EXPECT_TRUE(is_squarefree(P(F2, "x^2+x")));
  EXPECT_FALSE(is_squarefree(P(F2, "x^2")));
  EXPECT_FALSE(is_squarefree(P(F3, "x^3+1")));
  EXPECT_THROW(is_squarefree(Poly::zero(F3)), Error);
}

TEST(PolyText, CanonicalPrintingAndParsing)
{
  auto F = Field::create(3, 2);
  EXPECT_EQ(to_string(P(F, "x+x^9+x^5")), "x^9+x^5+x");
  EXPECT_EQ(to_string(P(F, "2*x^2+0*x+4+x^2")), "4");
  EXPECT_EQ(to_string(Poly::zero(F)), "0");
  EXPECT_EQ(to_string(P(F, "5*x^3+1")), "5*x^3+1");
  for (int t = 0; t < 50; ++t) {
    const Poly f = test::random_poly(F, static_cast<int>(test::uniform(0, 20)));
    EXPECT_EQ(P(F, to_string(f)), f);
  }
  EXPECT_THROW(P(F, "x^^2"), Error);
  EXPECT_THROW(P(F, "9*x"), Error);
}
