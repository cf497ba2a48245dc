#pragma once

#include <compare>
#include <iosfwd>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vmds {

/// An element of GF(p^m) in its canonical integer encoding: the base-p digits
/// of the polynomial residue, least significant coefficient first.
struct Elem {
  std::uint32_t value = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t v) : value(v) {}

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

std::ostream& operator<<(std::ostream& out, Elem e);

/// Arithmetic context for GF(p^m), q = p^m <= 2^16.
///
/// Prime fields use plain modular integers. Extension fields use polynomial
/// arithmetic modulo the lexicographically smallest monic irreducible of
/// degree m (smallest by canonical encoding of its lower coefficients), so a
/// document only needs `p m` to pin the field down.
class Field {
public:
  using value_type = Elem;

  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// Throws NotPrime or OrderTooLarge.
  Field(std::uint32_t p, std::uint32_t m = 1);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }

  /// Coefficients of the modulus, constant term first, leading 1 included.
  /// Empty for prime fields.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }

  /// Element with canonical encoding `v`; throws InvalidParameters when v >= q.
  Elem element(std::uint64_t v) const;
  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const;
  bool contains(Elem a) const noexcept { return a.value < q_; }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  /// Throws DivideByZero on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

private:
  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
};

bool is_prime(std::uint64_t n) noexcept;

} // namespace vmds

namespace Eigen {

// Storage-only scalar: arithmetic always goes through a vmds::Field.
template <>
struct NumTraits<vmds::Elem> {
  using Real = vmds::Elem;
  using NonInteger = vmds::Elem;
  using Literal = vmds::Elem;
  using Nested = vmds::Elem;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline int digits10() { return 5; }
};

} // namespace Eigen
