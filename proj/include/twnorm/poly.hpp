#pragma once

// Univariate polynomials over a Field, dense, lowest degree first.

#include <string>
#include <vector>

#include "twnorm/field.hpp"

namespace twnorm {

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field& f) : field_(&f) {}
  Poly(const Field& f, std::vector<Scalar> coeffs);

  static Poly constant(const Scalar& c);
  /// x - r
  static Poly linear_root(const Scalar& r);
  static Poly x(const Field& f);

  const Field& field() const { return *field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int k) const;
  Scalar leading() const { return c_.back(); }
  Poly monic() const;
  Poly lift(const Field& target) const;

  Scalar eval(const Scalar& x) const;
  Poly derivative() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);

  /// Quotient and remainder; divisor must be nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  friend Poly operator%(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::vector<Scalar> c_;

  void trim();
};

/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
bool is_squarefree(const Poly& p);
/// base^e mod modulus.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus);

struct Root {
  Scalar value;
  int multiplicity = 0;
  /// Degree over the input field of the field the root lives in (1 or 2).
  int degree = 1;
};

/// Roots of p in its field or the supported quadratic extension. Throws
/// RootsOutsideSupportedExtension when some factor has no root there.
std::vector<Root> poly_roots(const Poly& p);

}  // namespace twnorm
