#pragma once

// Exact scalar arithmetic over Q, F_p and F_p^2 = F_p[t]/(t^2 - d).
//
// Fields are interned: Field::make returns a reference with static lifetime,
// so a Scalar can carry a plain pointer to its field and copies stay cheap.
// Elements of F_p and its quadratic extension mix freely; the F_p operand is
// promoted.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "twnorm/error.hpp"

namespace twnorm {

enum class FieldKind { Rational, Prime, QuadExt };

struct FieldSpec {
  FieldKind kind = FieldKind::Rational;
  std::int64_t p = 0;  // characteristic for finite fields
  std::int64_t d = 0;  // non-residue for QuadExt

  /// "Q", "F5", "F3^2". The extension picks the least non-residue.
  static FieldSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Scalar;

class Field {
 public:
  /// Validates the spec and returns the interned field.
  static const Field& make(const FieldSpec& spec);
  static const Field& rational();
  static const Field& prime(std::int64_t p);
  static const Field& quadratic(std::int64_t p);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  const FieldSpec& spec() const noexcept { return spec_; }
  FieldKind kind() const noexcept { return spec_.kind; }
  bool is_finite() const noexcept { return spec_.kind != FieldKind::Rational; }
  bool is_rational() const noexcept { return spec_.kind == FieldKind::Rational; }
  std::int64_t characteristic() const noexcept { return spec_.p; }
  /// Number of elements; 0 for Q.
  std::int64_t order() const noexcept { return order_; }
  std::int64_t nonresidue() const noexcept { return spec_.d; }
  std::string name() const { return spec_.to_string(); }

  /// F_p for F_p^2, nullptr otherwise.
  const Field* base() const noexcept { return base_; }
  /// F_p^2 for F_p, nullptr otherwise (Q and F_p^2 have no supported extension).
  const Field* quadratic_extension() const;
  /// True when elements of `other` embed into this field.
  bool contains(const Field& other) const noexcept {
    return &other == this || (base_ != nullptr && base_ == &other);
  }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_rational(const mpq_class& q) const;
  /// a + b t; b must be 0 outside F_p^2.
  Scalar element(std::int64_t a, std::int64_t b = 0) const;
  /// Inverse of Scalar::index() for finite fields.
  Scalar from_index(std::uint64_t index) const;
  /// All elements in canonical order (finite fields only).
  std::vector<Scalar> elements() const;
  std::vector<Scalar> nonzero_elements() const;

  /// Parses "3", "-2", "3/4", "1+2*t", "t", "2-t".
  Scalar parse(std::string_view text) const;

 private:
  explicit Field(const FieldSpec& spec, const Field* base);

  FieldSpec spec_;
  std::int64_t order_ = 0;
  const Field* base_ = nullptr;

  friend class FieldRegistry;
};

class Scalar {
 public:
  struct Finite {
    std::int64_t a;
    std::int64_t b;
  };

  Scalar() = default;
  Scalar(const Field& f, Finite v) : field_(&f), value_(v) {}
  Scalar(const Field& f, mpq_class q) : field_(&f), value_(std::move(q)) {
    std::get<mpq_class>(value_).canonicalize();
  }

  const Field& field() const { return *field_; }
  const Field* field_ptr() const noexcept { return field_; }
  bool valid() const noexcept { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  /// Canonical position in the element enumeration: a*p + b.
  std::uint64_t index() const;
  std::int64_t a() const { return std::get<Finite>(value_).a; }
  std::int64_t b() const { return std::get<Finite>(value_).b; }
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  /// The same element viewed in a larger field of the tower.
  Scalar lift(const Field& target) const;
  /// Whether the value lies in the prime subfield (b == 0).
  bool in_base_field() const;
  /// Drops to the base field when b == 0.
  Scalar lower() const;

  Scalar operator-() const;
  Scalar inv() const;
  Scalar pow(std::int64_t e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y);
  /// Fixed total order: index order on finite fields; on Q by |x|, then
  /// positive before negative.
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::variant<Finite, mpq_class> value_;

  void promote_pair(Scalar& other);
};

/// Square root in the field or its quadratic extension, whichever holds it.
/// Among {s, -s} the smaller in Scalar's total order is returned.
Scalar sqrt_scalar(const Scalar& x);
/// sqrt_scalar restricted to the field of x itself.
std::optional<Scalar> sqrt_in_field(const Scalar& x);
bool is_square(const Scalar& x);

/// Exponent of p in a nonzero rational.
std::int64_t padic_val(const Scalar& x, std::int64_t p);

bool is_prime(std::int64_t n);

}  // namespace twnorm
