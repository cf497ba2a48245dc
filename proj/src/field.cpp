#include "vmds/field.hpp"

#include <algorithm>
#include <ostream>

#include "vmds/errors.hpp"

namespace vmds {

namespace {

using Poly = std::vector<std::uint32_t>;

Poly digits(std::uint32_t v, std::uint32_t p, std::uint32_t m) {
  Poly out(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    out[i] = v % p;
    v /= p;
  }
  return out;
}

std::uint32_t pack(const Poly& d, std::uint32_t p) {
  std::uint32_t v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
  return v;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    t = std::exchange(new_t, t - quotient * new_t);
    r = std::exchange(new_r, r - quotient * new_r);
  }
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of `a` modulo `b` (b nonzero, trimmed) over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint32_t factor =
        static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = std::uint64_t{factor} * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t m = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= m / 2; ++d) {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t low = 0; low < count; ++low) {
      Poly g = digits(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

} // namespace

std::ostream& operator<<(std::ostream& out, Elem e) { return out << e.value; }

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p, std::uint32_t m) : p_(p), m_(m), q_(1) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (m < 1) throw InvalidParameters("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder)
      throw OrderTooLarge(std::to_string(p) + "^" + std::to_string(m) +
                          " exceeds 2^16");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (m == 1) return;

  for (std::uint32_t low = 0; low < q_; ++low) {
    Poly f = digits(low, p, m);
    f.push_back(1);
    if (f[0] != 0 && irreducible(f, p)) {
      modulus_ = std::move(f);
      return;
    }
  }
  throw InvalidParameters("no irreducible polynomial found"); // unreachable
}

Elem Field::element(std::uint64_t v) const {
  if (v >= q_)
    throw InvalidParameters("element " + std::to_string(v) + " outside " +
                            name());
  return Elem{static_cast<std::uint32_t>(v)};
}

Elem Field::from_int(std::int64_t v) const {
  const std::int64_t p = p_;
  return Elem{static_cast<std::uint32_t>(((v % p) + p) % p)};
}

Elem Field::add(Elem a, Elem b) const noexcept {
  if (m_ == 1) return Elem{(a.value + b.value) % p_};
  std::uint32_t x = a.value, y = b.value, out = 0, place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return Elem{out};
}

Elem Field::neg(Elem a) const noexcept {
  if (m_ == 1) return Elem{(p_ - a.value) % p_};
  std::uint32_t x = a.value, out = 0, place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((p_ - x % p_) % p_) * place;
    x /= p_;
    place *= p_;
  }
  return Elem{out};
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const noexcept {
  if (m_ == 1)
    return Elem{static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value %
                                           p_)};
  const Poly x = digits(a.value, p_, m_);
  const Poly y = digits(b.value, p_, m_);
  Poly prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_);
  Poly rem = poly_mod(std::move(prod), modulus_, p_);
  rem.resize(m_, 0);
  return Elem{pack(rem, p_)};
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Elem Field::inv(Elem a) const {
  if (a.value == 0) throw DivideByZero("inverse of zero in " + name());
  if (m_ == 1) return Elem{inv_mod(a.value, p_)};
  return pow(a, q_ - 2);
}

std::string Field::name() const {
  if (m_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")";
}

} // namespace vmds
