#pragma once

// Dense univariate polynomials over F_q.

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqc/gf.hpp"

namespace eqc {

/// Degree of the zero polynomial.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

/// Operand size (number of coefficients) at which mul switches from
/// schoolbook to Karatsuba.
inline constexpr std::size_t kKaratsubaThreshold = 32;

/// Polynomial with coefficients in a shared Field; coeffs()[i] is the code of
/// the coefficient of x^i. Always normalized: no trailing zero codes.
class Poly {
public:
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<code_t> coeffs) : field_(std::move(field)), c_(std::move(coeffs))
  {
    normalize();
  }

  static Poly zero(FieldPtr f) { return Poly(std::move(f)); }
  static Poly constant(FieldPtr f, code_t c) { return Poly(std::move(f), {c}); }
  static Poly x(FieldPtr f) { return monomial(std::move(f), 1, 1); }
  static Poly monomial(FieldPtr f, code_t c, std::size_t deg)
  {
    std::vector<code_t> v(deg + 1, 0);
    v[deg] = c;
    return Poly(std::move(f), std::move(v));
  }

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  const std::vector<code_t>& coeffs() const noexcept { return c_; }

  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return c_.empty() ? kMinusInfinity : static_cast<int>(c_.size()) - 1; }
  code_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  FieldElem coeff_elem(std::size_t i) const { return {*field_, coeff(i)}; }
  code_t lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

  void set_coeff(std::size_t i, code_t c)
  {
    if (i >= c_.size())
      c_.resize(i + 1, 0);
    c_[i] = c;
    normalize();
  }

  friend bool operator==(const Poly& a, const Poly& b)
  {
    return a.c_ == b.c_ && a.field_->same_as(*b.field_);
  }

  friend Poly operator+(const Poly& a, const Poly& b)
  {
    const Field& f = common(a, b);
    std::vector<code_t> out(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(a.field_, std::move(out));
  }

  friend Poly operator-(const Poly& a, const Poly& b)
  {
    const Field& f = common(a, b);
    std::vector<code_t> out(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = f.sub(a.coeff(i), b.coeff(i));
    return Poly(a.field_, std::move(out));
  }

  Poly operator-() const
  {
    std::vector<code_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      out[i] = field_->neg(c_[i]);
    return Poly(field_, std::move(out));
  }

  Poly scaled(code_t s) const
  {
    std::vector<code_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      out[i] = field_->mul(c_[i], s);
    return Poly(field_, std::move(out));
  }

  /// Multiplication by x^k.
  Poly shifted_up(std::size_t k) const
  {
    if (c_.empty())
      return *this;
    std::vector<code_t> out(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
    return Poly(field_, std::move(out));
  }

  Poly monic() const
  {
    if (c_.empty())
      return *this;
    return scaled(field_->inv(c_.back()));
  }

  friend Poly operator*(const Poly& a, const Poly& b);

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o);

  static const Field& common(const Poly& a, const Poly& b)
  {
    if (!a.field_->same_as(*b.field_))
      throw Error(Errc::MixedFields, "polynomials over different fields");
    return *a.field_;
  }

private:
  void normalize() noexcept
  {
    while (!c_.empty() && c_.back() == 0)
      c_.pop_back();
  }

  FieldPtr field_;
  std::vector<code_t> c_;
};

namespace detail {

inline void schoolbook_into(const Field& f, std::span<const code_t> a, std::span<const code_t> b,
                            std::span<code_t> out)
{
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
}

// out (size >= 2n-1, zeroed) += a * b with |a| = |b| = n.
inline void karatsuba_into(const Field& f, std::span<const code_t> a, std::span<const code_t> b,
                           std::span<code_t> out)
{
  const std::size_t n = a.size();
  if (n < kKaratsubaThreshold) {
    schoolbook_into(f, a, b, out);
    return;
  }
  const std::size_t lo = n / 2;
  const std::size_t hi = n - lo;
  auto a0 = a.first(lo), a1 = a.subspan(lo);
  auto b0 = b.first(lo), b1 = b.subspan(lo);

  std::vector<code_t> z0(2 * lo - 1, 0), z2(2 * hi - 1, 0), z1(2 * hi - 1, 0);
  karatsuba_into(f, a0, b0, z0);
  karatsuba_into(f, a1, b1, z2);

  std::vector<code_t> sa(a1.begin(), a1.end()), sb(b1.begin(), b1.end());
  for (std::size_t i = 0; i < lo; ++i) {
    sa[i] = f.add(sa[i], a0[i]);
    sb[i] = f.add(sb[i], b0[i]);
  }
  karatsuba_into(f, sa, sb, z1);
  for (std::size_t i = 0; i < z0.size(); ++i)
    z1[i] = f.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i)
    z1[i] = f.sub(z1[i], z2[i]);

  for (std::size_t i = 0; i < z0.size(); ++i)
    out[i] = f.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i)
    out[i + lo] = f.add(out[i + lo], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i)
    out[i + 2 * lo] = f.add(out[i + 2 * lo], z2[i]);
}

} // namespace detail

/// Plain quadratic-time product; kept public as the reference for mul.
inline Poly mul_schoolbook(const Poly& a, const Poly& b)
{
  const Field& f = Poly::common(a, b);
  if (a.is_zero() || b.is_zero())
    return Poly::zero(a.field_ptr());
  std::vector<code_t> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  detail::schoolbook_into(f, a.coeffs(), b.coeffs(), out);
  return Poly(a.field_ptr(), std::move(out));
}

inline Poly mul(const Poly& a, const Poly& b)
{
  const Field& f = Poly::common(a, b);
  if (a.is_zero() || b.is_zero())
    return Poly::zero(a.field_ptr());
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  if (std::min(ac.size(), bc.size()) < kKaratsubaThreshold)
    return mul_schoolbook(a, b);
  std::vector<code_t> out(ac.size() + bc.size() - 1, 0);
  // Split the longer operand into blocks of the shorter operand's length.
  const auto& small = ac.size() <= bc.size() ? ac : bc;
  const auto& big = ac.size() <= bc.size() ? bc : ac;
  const std::size_t n = small.size();
  std::vector<code_t> block(n), partial(2 * n - 1);
  for (std::size_t start = 0; start < big.size(); start += n) {
    const std::size_t len = std::min(n, big.size() - start);
    std::fill(block.begin(), block.end(), 0);
    std::copy_n(big.begin() + static_cast<std::ptrdiff_t>(start), len, block.begin());
    std::fill(partial.begin(), partial.end(), 0);
    detail::karatsuba_into(f, small, block, partial);
    for (std::size_t i = 0; i < partial.size() && start + i < out.size(); ++i)
      out[start + i] = f.add(out[start + i], partial[i]);
  }
  return Poly(a.field_ptr(), std::move(out));
}

inline Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }
inline Poly& Poly::operator*=(const Poly& o) { return *this = mul(*this, o); }

inline Poly pow(const Poly& base, std::uint64_t e)
{
  Poly result = Poly::constant(base.field_ptr(), 1);
  Poly b = base;
  while (e != 0) {
    if (e & 1U)
      result = result * b;
    e >>= 1U;
    if (e != 0)
      b = b * b;
  }
  return result;
}

/// Quotient and remainder: a = q b + r with deg r < deg b.
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b)
{
  const Field& f = Poly::common(a, b);
  if (b.is_zero())
    throw Error(Errc::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree())
    return {Poly::zero(a.field_ptr()), a};
  std::vector<code_t> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<code_t> q(r.size() - db, 0);
  const code_t inv_lead = f.inv(bc.back());
  for (std::size_t i = q.size(); i-- > 0;) {
    const code_t top = r[i + db];
    if (top == 0)
      continue;
    const code_t factor = f.mul(top, inv_lead);
    q[i] = factor;
    for (std::size_t j = 0; j <= db; ++j)
      r[i + j] = f.sub(r[i + j], f.mul(factor, bc[j]));
  }
  r.resize(db);
  return {Poly(a.field_ptr(), std::move(q)), Poly(a.field_ptr(), std::move(r))};
}

inline Poly rem(const Poly& a, const Poly& b) { return divrem(a, b).second; }

/// a / b if b divides a, else nullopt.
inline std::optional<Poly> exact_div(const Poly& a, const Poly& b)
{
  auto [q, r] = divrem(a, b);
  if (!r.is_zero())
    return std::nullopt;
  return std::move(q);
}

/// Monic gcd, with gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b)
{
  Poly::common(a, b);
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly derivative(const Poly& f)
{
  const auto& c = f.coeffs();
  if (c.size() <= 1)
    return Poly::zero(f.field_ptr());
  const Field& fld = f.field();
  std::vector<code_t> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i)
    out[i - 1] = fld.mul(c[i], fld.from_integer(static_cast<std::int64_t>(i % fld.characteristic())));
  return Poly(f.field_ptr(), std::move(out));
}

inline FieldElem evaluate(const Poly& f, const FieldElem& a)
{
  if (!f.field().same_as(a.field()))
    throw Error(Errc::MixedFields, "evaluation point from a different field");
  const Field& fld = f.field();
  code_t acc = 0;
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;)
    acc = fld.add(fld.mul(acc, a.code()), c[i]);
  return {fld, acc};
}

/// g(h), by Horner's rule in h.
inline Poly compose(const Poly& g, const Poly& h)
{
  Poly::common(g, h);
  const auto& gc = g.coeffs();
  Poly acc = Poly::zero(g.field_ptr());
  for (std::size_t i = gc.size(); i-- > 0;)
    acc = acc * h + Poly::constant(g.field_ptr(), gc[i]);
  return acc;
}

/// f(x + w), by repeated synthetic division.
inline Poly shift_argument(const Poly& f, const FieldElem& w)
{
  if (!f.field().same_as(w.field()))
    throw Error(Errc::MixedFields, "shift from a different field");
  if (w.is_zero() || f.degree() < 1)
    return f;
  const Field& fld = f.field();
  std::vector<code_t> a = f.coeffs();
  const std::size_t n = a.size() - 1;
  const code_t wc = w.code();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j-- > i;)
      a[j] = fld.add(a[j], fld.mul(wc, a[j + 1]));
  return Poly(f.field_ptr(), std::move(a));
}

/// x^e mod modulus by square-and-multiply.
inline Poly modexp_x(const Poly& modulus, std::uint64_t e)
{
  if (modulus.degree() < 1)
    throw Error(Errc::ConstantBase, "modulus must have positive degree");
  Poly result = rem(Poly::constant(modulus.field_ptr(), 1), modulus);
  Poly base = rem(Poly::x(modulus.field_ptr()), modulus);
  while (e != 0) {
    if (e & 1U)
      result = rem(result * base, modulus);
    e >>= 1U;
    if (e != 0)
      base = rem(base * base, modulus);
  }
  return result;
}

inline Poly modexp_x_to_q(const Poly& modulus, std::uint64_t q) { return modexp_x(modulus, q); }

enum class RootCount { Auto, Gcd, Exhaustive };

/// Number of distinct roots of f in F_q.
///
/// Gcd computes deg gcd(x^q - x mod f, f); Exhaustive evaluates f at every
/// field element. Auto uses Gcd; when EQC_CHECK_ROOT_PATHS is defined and
/// q <= 256 it also runs Exhaustive and throws std::logic_error on any
/// disagreement.
inline std::size_t count_roots_in_field(const Poly& f, RootCount method = RootCount::Auto)
{
  if (f.is_zero())
    throw Error(Errc::ZeroPolynomial, "root count of the zero polynomial");
  const Field& fld = f.field();
  auto exhaustive = [&] {
    std::size_t n = 0;
    for (code_t a = 0; a < fld.order(); ++a)
      if (evaluate(f, FieldElem(fld, a)).is_zero())
        ++n;
    return n;
  };
  auto via_gcd = [&]() -> std::size_t {
    if (f.degree() < 1)
      return 0;
    const Poly xq = modexp_x_to_q(f, fld.order());
    const Poly g = gcd(xq - Poly::x(f.field_ptr()), f);
    return static_cast<std::size_t>(g.degree());
  };
  switch (method) {
  case RootCount::Gcd: return via_gcd();
  case RootCount::Exhaustive: return exhaustive();
  case RootCount::Auto: break;
  }
  const std::size_t n = via_gcd();
#ifdef EQC_CHECK_ROOT_PATHS
  if (fld.order() <= 256 && exhaustive() != n)
    throw std::logic_error("count_roots_in_field: gcd and exhaustive paths disagree");
#endif
  return n;
}

namespace detail {

// Appends exactly 2^level digits of f in base b, where base_pows[i] = b^(2^i)
// and deg f < 2^level deg b.
inline void taylor_rec(const Poly& f, const std::vector<Poly>& base_pows, std::size_t level,
                       std::vector<Poly>& out)
{
  if (level == 0) {
    out.push_back(f);
    return;
  }
  auto [q, r] = divrem(f, base_pows[level - 1]);
  taylor_rec(r, base_pows, level - 1, out);
  taylor_rec(q, base_pows, level - 1, out);
}

} // namespace detail

/// Digits a_0, a_1, ... with f = sum a_i base^i and deg a_i < deg base,
/// trailing zero digits dropped. Divide-and-conquer on powers base^(2^i).
inline std::vector<Poly> taylor_expansion(const Poly& f, const Poly& base)
{
  Poly::common(f, base);
  if (base.degree() < 1)
    throw Error(Errc::ConstantBase, "Taylor expansion base must be nonconstant");
  std::vector<Poly> base_pows{base};
  std::size_t level = 0;
  // Smallest level with deg f < 2^level deg base.
  while (!f.is_zero() && static_cast<long>(f.degree()) >= (long{1} << level) * base.degree()) {
    ++level;
    if (base_pows.size() < level)
      base_pows.push_back(base_pows.back() * base_pows.back());
  }
  std::vector<Poly> digits;
  digits.reserve(std::size_t{1} << level);
  detail::taylor_rec(f, base_pows, level, digits);
  while (!digits.empty() && digits.back().is_zero())
    digits.pop_back();
  return digits;
}

/// Largest k with base^k | f: the index of the first nonzero Taylor digit.
inline std::size_t max_power_dividing(const Poly& f, const Poly& base)
{
  if (f.is_zero())
    throw Error(Errc::ZeroPolynomial, "max_power_dividing of the zero polynomial");
  const auto digits = taylor_expansion(f, base);
  std::size_t k = 0;
  while (digits[k].is_zero())
    ++k;
  return k;
}

/// g with g^(p^l) = f, if every exponent carrying a nonzero coefficient is
/// divisible by p^l.
inline std::optional<Poly> poly_pth_root(const Poly& f, std::uint64_t l)
{
  const Field& fld = f.field();
  std::uint64_t pl = 1;
  for (std::uint64_t i = 0; i < l; ++i) {
    pl *= fld.characteristic();
    if (pl > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
      break;
  }
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0 && i % pl != 0)
      return std::nullopt;
  if (c.empty())
    return f;
  std::vector<code_t> out(c.size() / pl + 1, 0);
  for (std::size_t i = 0; i < c.size(); i += pl)
    out[i / pl] = fld.pth_root(c[i], l);
  return Poly(f.field_ptr(), std::move(out));
}

/// deg(f - x^n) for monic f of degree n; kMinusInfinity when f = x^n.
inline int second_degree(const Poly& f)
{
  if (!f.is_monic())
    throw Error(Errc::NotMonic, "second degree needs a monic polynomial");
  const auto& c = f.coeffs();
  for (std::size_t i = c.size() - 1; i-- > 0;)
    if (c[i] != 0)
      return static_cast<int>(i);
  return kMinusInfinity;
}

inline bool is_squarefree(const Poly& f)
{
  if (f.is_zero())
    throw Error(Errc::ZeroPolynomial, "squarefree test of the zero polynomial");
  return gcd(f, derivative(f)).degree() == 0;
}

/// True if every exponent carrying a nonzero coefficient is divisible by k.
inline bool in_power_subring(const Poly& f, std::size_t k)
{
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0 && i % k != 0)
      return false;
  return true;
}

/// Applies a -> a^(p^e) to every coefficient.
inline Poly frobenius_coeffs(const Poly& f, std::uint64_t e)
{
  std::vector<code_t> out(f.coeffs());
  for (auto& c : out)
    c = f.field().frobenius(c, e);
  return Poly(f.field_ptr(), std::move(out));
}

// Text form ---------------------------------------------------------------

/// Canonical text: descending terms joined by '+', coefficients as element
/// codes, unit coefficients omitted; "0" for the zero polynomial.
inline std::string to_string(const Poly& f)
{
  if (f.is_zero())
    return "0";
  std::string s;
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0)
      continue;
    if (!s.empty())
      s += '+';
    if (i == 0) {
      s += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1)
      s += std::to_string(c[i]) + "*";
    s += 'x';
    if (i > 1)
      s += "^" + std::to_string(i);
  }
  return s;
}

/// Parses "c*x^i", "x^i", "c*x", "x", "c" terms joined by '+', in any order.
/// Whitespace is ignored; repeated exponents are summed.
inline Poly parse_poly(const FieldPtr& field, std::string_view text)
{
  std::string compact;
  for (char ch : text)
    if (ch != ' ' && ch != '\t')
      compact += ch;
  auto fail = [&](const std::string& why) -> Poly {
    throw Error(Errc::ParseError, "bad polynomial '" + std::string(text) + "': " + why);
  };
  if (compact.empty())
    return fail("empty");
  auto parse_uint = [&](std::string_view s) -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      fail("bad number '" + std::string(s) + "'");
    return v;
  };
  std::vector<code_t> c;
  std::string_view rest = compact;
  while (true) {
    const auto plus = rest.find('+');
    const std::string_view term = rest.substr(0, plus);
    if (term.empty())
      fail("empty term");
    code_t coeff = 1;
    std::uint64_t exp = 0;
    const auto xpos = term.find('x');
    if (xpos == std::string_view::npos) {
      coeff = field->elem(static_cast<code_t>(std::min<std::uint64_t>(parse_uint(term), field->order()))).code();
    } else {
      std::string_view pre = term.substr(0, xpos);
      if (!pre.empty()) {
        if (pre.back() != '*')
          fail("expected '*' before x");
        pre.remove_suffix(1);
        coeff = field->elem(static_cast<code_t>(std::min<std::uint64_t>(parse_uint(pre), field->order()))).code();
      }
      std::string_view post = term.substr(xpos + 1);
      if (post.empty())
        exp = 1;
      else if (post.front() == '^')
        exp = parse_uint(post.substr(1));
      else
        fail("unexpected text after x");
    }
    if (exp > 1'000'000)
      fail("exponent too large");
    if (c.size() <= exp)
      c.resize(exp + 1, 0);
    c[exp] = field->add(c[exp], coeff);
    if (plus == std::string_view::npos)
      break;
    rest = rest.substr(plus + 1);
  }
  return Poly(field, std::move(c));
}

} // namespace eqc
