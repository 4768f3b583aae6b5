#pragma once

// Finite fields F_{p^d} with table-driven arithmetic.
//
// Elements are integer codes c = sum c_i p^i of their coordinate vectors in
// the power basis of the generator z (root of the modulus). The same encoding
// is used for text I/O.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqc/error.hpp"

namespace eqc {

using code_t = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0)
      return false;
  return true;
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
  if (m == 1)
    return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % m;
  while (e != 0) {
    if (e & 1U)
      result = result * b % m;
    b = b * b % m;
    e >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      while (n % k == 0)
        n /= k;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

// Dense polynomials over the prime field Z/p, little-endian, used only while
// building a field (modulus search, irreducibility, table construction).
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline PrimePoly prime_poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p)
{
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t inv_lead = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const std::uint64_t factor = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline bool prime_poly_irreducible(const PrimePoly& m, std::uint32_t p)
{
  const std::size_t d = m.size() - 1;
  if (d <= 1)
    return d == 1;
  // A reducible polynomial has a monic factor of degree at most d/2.
  for (std::size_t k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i)
      count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      PrimePoly f(k + 1, 0);
      std::uint64_t t = n;
      for (std::size_t i = 0; i < k; ++i) {
        f[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      f[k] = 1;
      if (prime_poly_mod(m, f, p).empty())
        return false;
    }
  }
  return true;
}

} // namespace detail

class Field;
class FieldElem;
using FieldPtr = std::shared_ptr<const Field>;

/// A concrete finite field F_q, q = p^d. Immutable once built; share it via
/// FieldPtr. Elements and polynomials refer back to their field, so the
/// field must outlive them.
class Field {
public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  /// Builds F_{p^d}. Without a modulus the lexicographically smallest monic
  /// irreducible of degree d is used (c0 compared first, then c1, ...).
  static FieldPtr create(std::uint32_t p, unsigned d,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt)
  {
    if (!detail::is_prime(p))
      throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (d == 0)
      throw Error(Errc::InvalidModulus, "extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < d; ++i) {
      q *= p;
      if (q > kMaxOrder)
        throw Error(Errc::FieldTooLarge, "field order exceeds 2^20");
    }

    detail::PrimePoly mod;
    if (modulus) {
      mod = *modulus;
      if (mod.size() != d + 1 || mod.back() != 1)
        throw Error(Errc::InvalidModulus, "modulus must be monic of degree " + std::to_string(d));
      for (auto c : mod)
        if (c >= p)
          throw Error(Errc::InvalidModulus, "modulus coefficient out of range");
      if (!detail::prime_poly_irreducible(mod, p))
        throw Error(Errc::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
    } else {
      mod = smallest_irreducible(p, d, q);
    }

    std::shared_ptr<Field> f(new Field(p, d, q, std::move(mod)));
    f->build_tables();
    return f;
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return d_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  bool same_as(const Field& o) const noexcept
  {
    return this == &o || (p_ == o.p_ && d_ == o.d_ && modulus_ == o.modulus_);
  }

  // Arithmetic on codes. Inputs must be valid codes of this field.

  code_t add(code_t a, code_t b) const noexcept
  {
    if (d_ == 1) {
      const code_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2)
      return a ^ b;
    if (!add_.empty())
      return add_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }

  code_t neg(code_t a) const noexcept { return neg_[a]; }
  code_t sub(code_t a, code_t b) const noexcept { return add(a, neg_[b]); }

  code_t mul(code_t a, code_t b) const noexcept
  {
    if (a == 0 || b == 0)
      return 0;
    return exp_[log_[a] + log_[b]];
  }

  code_t inv(code_t a) const
  {
    if (a == 0)
      throw Error(Errc::DivisionByZero, "inverse of zero");
    const code_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1) - l];
  }

  code_t div(code_t a, code_t b) const { return mul(a, inv(b)); }

  code_t pow(code_t a, std::uint64_t e) const noexcept
  {
    if (e == 0)
      return 1;
    if (a == 0)
      return 0;
    const std::uint64_t n = q_ - 1;
    const auto idx = static_cast<unsigned __int128>(log_[a]) * (e % n) % n;
    return exp_[static_cast<std::size_t>(idx)];
  }

  /// a^(p^e)
  code_t frobenius(code_t a, std::uint64_t e) const noexcept
  {
    if (a == 0)
      return 0;
    const std::uint64_t n = q_ - 1;
    const std::uint64_t k = detail::powmod(p_, e, n);
    return exp_[static_cast<std::size_t>(static_cast<std::uint64_t>(log_[a]) * k % n)];
  }

  /// The unique b with b^(p^l) = a, computed as a^(q^c / p^l) for the
  /// smallest c >= 1 with q^c >= p^l.
  code_t pth_root(code_t a, std::uint64_t l) const noexcept
  {
    std::uint64_t c = (l + d_ - 1) / d_;
    if (c == 0)
      c = 1;
    return frobenius(a, c * d_ - l);
  }

  std::optional<code_t> sqrt(code_t a) const
  {
    if (a == 0)
      return code_t{0};
    if (p_ == 2)
      return frobenius(a, d_ - 1);
    const std::uint64_t n = q_ - 1;
    if (pow(a, n / 2) != 1)
      return std::nullopt;
    // Tonelli-Shanks on q - 1 = 2^s t.
    std::uint64_t t = n;
    unsigned s = 0;
    while (t % 2 == 0) {
      t /= 2;
      ++s;
    }
    unsigned big_m = s;
    code_t c = pow(nonresidue_, t);
    code_t tt = pow(a, t);
    code_t root = pow(a, (t + 1) / 2);
    while (tt != 1) {
      unsigned i = 0;
      code_t probe = tt;
      while (probe != 1) {
        probe = mul(probe, probe);
        ++i;
      }
      code_t b = c;
      for (unsigned j = 0; j + i + 1 < big_m; ++j)
        b = mul(b, b);
      big_m = i;
      c = mul(b, b);
      tt = mul(tt, c);
      root = mul(root, b);
    }
    const code_t other = neg(root);
    return std::min(root, other);
  }

  /// Absolute trace to F_p, returned as a code in [0, p).
  code_t trace(code_t a) const noexcept
  {
    code_t s = 0;
    for (unsigned i = 0; i < d_; ++i)
      s = add(s, frobenius(a, i));
    return s;
  }

  /// Some element of absolute trace 1 (smallest code).
  code_t trace_one_element() const noexcept { return trace_one_; }

  /// Image of an integer under Z -> F_p -> F_q.
  code_t from_integer(std::int64_t n) const noexcept
  {
    const auto pp = static_cast<std::int64_t>(p_);
    return static_cast<code_t>(((n % pp) + pp) % pp);
  }

  std::vector<std::uint32_t> digits(code_t a) const
  {
    std::vector<std::uint32_t> out(d_);
    for (unsigned i = 0; i < d_; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  }

  code_t from_digits(std::span<const std::uint32_t> digits) const
  {
    code_t c = 0;
    for (std::size_t i = digits.size(); i-- > 0;)
      c = c * p_ + digits[i] % p_;
    return c;
  }

  FieldElem elem(code_t c) const;
  FieldElem zero() const;
  FieldElem one() const;
  FieldElem integer(std::int64_t n) const;
  std::vector<FieldElem> enumerate() const;

  /// "p^d:c0,...,cd"
  std::string to_string() const
  {
    std::string s = std::to_string(p_) + "^" + std::to_string(d_) + ":";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(modulus_[i]);
    }
    return s;
  }

private:
  Field(std::uint32_t p, unsigned d, std::uint64_t q, std::vector<std::uint32_t> mod)
      : p_(p), d_(d), q_(static_cast<std::uint32_t>(q)), modulus_(std::move(mod))
  {
  }

  static detail::PrimePoly smallest_irreducible(std::uint32_t p, unsigned d, std::uint64_t q)
  {
    if (d == 1)
      return {0, 1};
    // Candidate index n enumerates (c0, ..., c_{d-1}) with c0 most significant.
    for (std::uint64_t n = 0; n < q; ++n) {
      detail::PrimePoly m(d + 1, 0);
      std::uint64_t t = n;
      for (unsigned i = d; i-- > 0;) {
        m[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      m[d] = 1;
      if (detail::prime_poly_irreducible(m, p))
        return m;
    }
    throw Error(Errc::NoModulusFound, "no irreducible polynomial found");
  }

  code_t add_digits(code_t a, code_t b) const noexcept
  {
    code_t out = 0;
    code_t scale = 1;
    for (unsigned i = 0; i < d_; ++i) {
      const code_t s = (a % p_ + b % p_) % p_;
      out += s * scale;
      scale *= p_;
      a /= p_;
      b /= p_;
    }
    return out;
  }

  code_t slow_mul(code_t a, code_t b) const
  {
    if (d_ == 1)
      return static_cast<code_t>(static_cast<std::uint64_t>(a) * b % p_);
    const auto da = digits(a);
    const auto db = digits(b);
    detail::PrimePoly prod(2 * d_ - 1, 0);
    for (unsigned i = 0; i < d_; ++i)
      for (unsigned j = 0; j < d_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
    auto r = detail::prime_poly_mod(std::move(prod), modulus_, p_);
    r.resize(d_, 0);
    return from_digits(r);
  }

  void build_tables()
  {
    const std::uint64_t n = q_ - 1;
    const auto factors = detail::prime_factors(n);
    auto slow_pow = [this](code_t a, std::uint64_t e) {
      code_t r = 1;
      while (e != 0) {
        if (e & 1U)
          r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1U;
      }
      return r;
    };
    code_t gen = 1;
    for (code_t cand = 1; cand < q_; ++cand) {
      bool primitive = true;
      for (auto f : factors)
        if (slow_pow(cand, n / f) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        gen = cand;
        break;
      }
    }
    exp_.assign(2 * n + 1, 0);
    log_.assign(q_, 0);
    code_t x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<code_t>(i);
      x = slow_mul(x, gen);
    }
    for (std::uint64_t i = n; i < exp_.size(); ++i)
      exp_[i] = exp_[i - n];

    neg_.resize(q_);
    for (code_t a = 0; a < q_; ++a) {
      auto dg = digits(a);
      for (auto& v : dg)
        v = (p_ - v) % p_;
      neg_[a] = from_digits(dg);
    }
    if (d_ > 1 && p_ != 2 && q_ <= 1024) {
      add_.resize(static_cast<std::size_t>(q_) * q_);
      for (code_t a = 0; a < q_; ++a)
        for (code_t b = 0; b < q_; ++b)
          add_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
    }
    if (p_ != 2) {
      for (code_t z = 2; z < q_; ++z)
        if (pow(z, n / 2) == neg(1)) {
          nonresidue_ = z;
          break;
        }
    }
    for (code_t c = 1; c < q_; ++c)
      if (trace(c) == 1) {
        trace_one_ = c;
        break;
      }
  }

  std::uint32_t p_;
  unsigned d_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<code_t> exp_;
  std::vector<code_t> log_;
  std::vector<code_t> neg_;
  std::vector<code_t> add_;
  code_t nonresidue_ = 0;
  code_t trace_one_ = 0;
};

/// An element of a Field. A small value type: it holds a non-owning pointer
/// to its field plus the element code.
class FieldElem {
public:
  FieldElem() = default;
  FieldElem(const Field& f, code_t c) : field_(&f), code_(c) {}

  const Field& field() const { return *field_; }
  bool has_field() const noexcept { return field_ != nullptr; }
  code_t code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }
  bool is_one() const noexcept { return code_ == 1; }

  FieldElem inv() const { return {*field_, field_->inv(code_)}; }
  FieldElem pow(std::uint64_t e) const { return {*field_, field_->pow(code_, e)}; }
  FieldElem frobenius(std::uint64_t e) const { return {*field_, field_->frobenius(code_, e)}; }
  FieldElem pth_root(std::uint64_t l) const { return {*field_, field_->pth_root(code_, l)}; }
  std::optional<FieldElem> sqrt() const
  {
    auto r = field_->sqrt(code_);
    if (!r)
      return std::nullopt;
    return FieldElem{*field_, *r};
  }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b)
  {
    const Field& f = common(a, b);
    return {f, f.add(a.code_, b.code_)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b)
  {
    const Field& f = common(a, b);
    return {f, f.sub(a.code_, b.code_)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b)
  {
    const Field& f = common(a, b);
    return {f, f.mul(a.code_, b.code_)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b)
  {
    const Field& f = common(a, b);
    if (b.code_ == 0)
      throw Error(Errc::DivisionByZero, "division by zero");
    return {f, f.div(a.code_, b.code_)};
  }
  FieldElem operator-() const { return {*field_, field_->neg(code_)}; }
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  friend bool operator==(const FieldElem& a, const FieldElem& b)
  {
    if (a.field_ == nullptr || b.field_ == nullptr)
      return a.field_ == b.field_ && a.code_ == b.code_;
    return a.code_ == b.code_ && a.field_->same_as(*b.field_);
  }

  /// Ordering by code; only meaningful within one field.
  friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.code_ < b.code_; }

  std::string to_string() const { return std::to_string(code_); }

private:
  static const Field& common(const FieldElem& a, const FieldElem& b)
  {
    if (a.field_ == nullptr || b.field_ == nullptr || !a.field_->same_as(*b.field_))
      throw Error(Errc::MixedFields, "operands belong to different fields");
    return *a.field_;
  }

  const Field* field_ = nullptr;
  code_t code_ = 0;
};

inline FieldElem Field::elem(code_t c) const
{
  if (c >= q_)
    throw Error(Errc::ParseError, "element code " + std::to_string(c) + " out of range for q = " + std::to_string(q_));
  return {*this, c};
}
inline FieldElem Field::zero() const { return {*this, 0}; }
inline FieldElem Field::one() const { return {*this, 1}; }
inline FieldElem Field::integer(std::int64_t n) const { return {*this, from_integer(n)}; }

inline std::vector<FieldElem> Field::enumerate() const
{
  std::vector<FieldElem> out;
  out.reserve(q_);
  for (code_t c = 0; c < q_; ++c)
    out.emplace_back(*this, c);
  return out;
}

/// The two distinct roots in F_q of c2 y^2 + c1 y + c0, smaller code first,
/// or nullopt when there is no root, a double root, or roots outside F_q.
inline std::optional<std::pair<FieldElem, FieldElem>>
solve_quadratic(const FieldElem& c2, const FieldElem& c1, const FieldElem& c0)
{
  if (c2.is_zero())
    throw Error(Errc::DegenerateLeadingCoefficient, "quadratic with zero leading coefficient");
  const Field& f = c2.field();
  (void)(c2 + c1 + c0); // field compatibility
  auto ordered = [](FieldElem a, FieldElem b) {
    if (b < a)
      std::swap(a, b);
    return std::make_pair(a, b);
  };
  if (f.characteristic() == 2) {
    if (c1.is_zero())
      return std::nullopt; // y^2 = c0/c2 has a double root
    // y = (c1/c2) z turns the equation into z^2 + z + gamma = 0.
    const FieldElem scale = c1 / c2;
    const FieldElem gamma = c0 * c2 / (c1 * c1);
    if (f.trace(gamma.code()) != 0)
      return std::nullopt;
    // z = sum_{i<d-1} (sum_{i<j<d} delta^{2^j}) gamma^{2^i} with Tr(delta) = 1.
    const FieldElem delta = f.elem(f.trace_one_element());
    FieldElem z = f.zero();
    for (unsigned i = 0; i + 1 < f.degree(); ++i) {
      FieldElem inner = f.zero();
      for (unsigned j = i + 1; j < f.degree(); ++j)
        inner += delta.frobenius(j);
      z += inner * gamma.frobenius(i);
    }
    return ordered(scale * z, scale * (z + f.one()));
  }
  const FieldElem disc = c1 * c1 - f.integer(4) * c2 * c0;
  if (disc.is_zero())
    return std::nullopt;
  auto s = disc.sqrt();
  if (!s)
    return std::nullopt;
  const FieldElem denom = (f.integer(2) * c2).inv();
  return ordered((-c1 + *s) * denom, (-c1 - *s) * denom);
}

/// Parses "p^d" or "p^d:c0,c1,...,cd".
inline FieldPtr parse_field(std::string_view text)
{
  auto fail = [&]() -> FieldPtr {
    throw Error(Errc::ParseError, "bad field '" + std::string(text) + "', expected p^d[:c0,...,cd]");
  };
  auto parse_uint = [&](std::string_view s) -> std::uint32_t {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      fail();
    return v;
  };
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const auto caret = head.find('^');
  if (caret == std::string_view::npos)
    return fail();
  const std::uint32_t p = parse_uint(head.substr(0, caret));
  const std::uint32_t d = parse_uint(head.substr(caret + 1));
  if (colon == std::string_view::npos)
    return Field::create(p, d);
  std::vector<std::uint32_t> mod;
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    mod.push_back(parse_uint(rest.substr(0, comma)));
    if (comma == std::string_view::npos)
      break;
    rest = rest.substr(comma + 1);
  }
  return Field::create(p, d, mod);
}

inline FieldElem parse_elem(const Field& f, std::string_view text)
{
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw Error(Errc::ParseError, "bad field element '" + std::string(text) + "'");
  return f.elem(v);
}

} // namespace eqc
