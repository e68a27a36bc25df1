#include "twnorm/poly.hpp"

#include <algorithm>
#include <sstream>

namespace twnorm {

Poly::Poly(const Field& f, std::vector<Scalar> coeffs) : field_(&f), c_(std::move(coeffs)) {
  for (auto& s : c_)
    if (s.field_ptr() != field_) s = s.lift(f);
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::linear_root(const Scalar& r) { return Poly(r.field(), {-r, r.field().one()}); }

Poly Poly::x(const Field& f) { return Poly(f, {f.zero(), f.one()}); }

Scalar Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return field_->zero();
  return c_[static_cast<std::size_t>(k)];
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Scalar inv = leading().inv();
  return inv * *this;
}

Poly Poly::lift(const Field& target) const {
  std::vector<Scalar> c;
  c.reserve(c_.size());
  for (const auto& s : c_) c.push_back(s.lift(target));
  return Poly(target, std::move(c));
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = x.field().zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(field_->from_int(static_cast<std::int64_t>(k)) * c_[k]);
  return Poly(*field_, std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.field_ != field_ && field_->contains(*o.field_) == false) *this = lift(*o.field_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_->zero());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.field_ != field_ && field_->contains(*o.field_) == false) *this = lift(*o.field_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_->zero());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field& f = a.field_->contains(*b.field_) ? *a.field_ : *b.field_;
  if (a.is_zero() || b.is_zero()) return Poly(f);
  std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(f, std::move(c));
}

Poly operator*(const Scalar& s, const Poly& a) {
  std::vector<Scalar> c = a.c_;
  for (auto& x : c) x = s * x;
  const Field& f = s.field().contains(*a.field_) ? s.field() : *a.field_;
  return Poly(f, std::move(c));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t k = 0; k < a.c_.size(); ++k)
    if (!(a.c_[k] == b.c_[k])) return false;
  return true;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw Error(ErrorKind::Singular, "polynomial division by zero", 0);
  const Field& f = a.field_->contains(*b.field_) ? *a.field_ : *b.field_;
  r = a.lift(f);
  std::vector<Scalar> qc(a.degree() >= b.degree() ? static_cast<std::size_t>(a.degree() - b.degree() + 1) : 0,
                         f.zero());
  Scalar lead_inv = b.leading().inv();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    Scalar factor = r.leading() * lead_inv;
    qc[static_cast<std::size_t>(shift)] = factor;
    for (int k = 0; k <= b.degree(); ++k) {
      r.c_[static_cast<std::size_t>(k + shift)] -= factor * b.c_[static_cast<std::size_t>(k)];
    }
    r.trim();
  }
  q = Poly(f, std::move(qc));
}

Poly operator%(const Poly& a, const Poly& b) {
  Poly q, r;
  Poly::divmod(a, b, q, r);
  return r;
}

Poly operator/(const Poly& a, const Poly& b) {
  Poly q, r;
  Poly::divmod(a, b, q, r);
  return q;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Scalar& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    if (k == 0 || !c.is_one()) out << '(' << c.to_string() << ')';
    if (k >= 1) out << "x";
    if (k >= 2) out << '^' << k;
  }
  return out.str();
}

Poly gcd(const Poly& a_in, const Poly& b_in) {
  Poly a = a_in, b = b_in;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool is_squarefree(const Poly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  Poly result = Poly::constant(modulus.field().one());
  Poly b = base % modulus;
  while (e > 0) {
    if (e & 1) result = (result * b) % modulus;
    b = (b * b) % modulus;
    e >>= 1;
  }
  return result % modulus;
}

namespace {

// Splits a squarefree product of distinct linear factors into its roots.
void split_linear(const Poly& g, std::vector<Scalar>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    Poly m = g.monic();
    out.push_back(-m.coeff(0));
    return;
  }
  const Field& f = g.field();
  auto q = static_cast<std::uint64_t>(f.order());
  for (std::uint64_t k = 0; k < q; ++k) {
    Poly shifted = Poly(f, {f.from_index(k), f.one()});
    Poly h = powmod(shifted, (q - 1) / 2, g) - Poly::constant(f.one());
    Poly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, out);
      split_linear(g / d, out);
      return;
    }
  }
  fail(ErrorKind::RootsOutsideSupportedExtension, "failed to split " + g.to_string());
}

// Distinct roots of p in its (finite) field.
std::vector<Scalar> finite_roots(const Poly& p) {
  const Field& f = p.field();
  auto q = static_cast<std::uint64_t>(f.order());
  Poly xq = powmod(Poly::x(f), q, p);
  Poly g = gcd(p, xq - Poly::x(f));
  std::vector<Scalar> roots;
  split_linear(g, roots);
  return roots;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> factors;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (d > 1000000) fail(ErrorKind::RootsOutsideSupportedExtension, "coefficient too large for rational root search");
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> out{1};
  for (const auto& [prime, e] : factors) {
    std::size_t base = out.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

std::vector<Scalar> rational_roots(const Poly& p) {
  const Field& f = p.field();
  std::vector<Scalar> roots;
  Poly rest = p;
  if (rest.coeff(0).is_zero()) {
    roots.push_back(f.zero());
    while (!rest.is_zero() && rest.coeff(0).is_zero()) rest = rest / Poly::x(f);
  }
  if (rest.degree() <= 0) return roots;
  mpz_class lcm = 1;
  for (const auto& c : rest.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
  mpz_class a0 = mpq_class(rest.coeff(0).rational() * lcm).get_num();
  mpz_class an = mpq_class(rest.leading().rational() * lcm).get_num();
  auto num = divisors(a0);
  auto den = divisors(an);
  std::vector<Scalar> candidates;
  for (const auto& a : num)
    for (const auto& b : den) {
      mpq_class r(a, b);
      r.canonicalize();
      candidates.push_back(Scalar(f, r));
      candidates.push_back(Scalar(f, mpq_class(-r)));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& c : candidates)
    if (rest.eval(c).is_zero()) roots.push_back(c);
  return roots;
}

}  // namespace

std::vector<Root> poly_roots(const Poly& p_in) {
  if (p_in.degree() <= 0) return {};
  const Field& f = p_in.field();
  Poly rest = p_in.monic();
  std::vector<Root> out;
  auto take = [&](const std::vector<Scalar>& roots, int degree) {
    for (const auto& r : roots) {
      Poly lin = Poly::linear_root(r.lift(rest.field()));
      int mult = 0;
      while (rest.degree() >= 1) {
        Poly q, rem;
        Poly::divmod(rest, lin, q, rem);
        if (!rem.is_zero()) break;
        rest = q;
        ++mult;
      }
      if (mult > 0) out.push_back(Root{r, mult, degree});
    }
  };
  if (f.is_rational()) {
    take(rational_roots(rest), 1);
  } else {
    take(finite_roots(rest), 1);
    if (rest.degree() > 0 && f.quadratic_extension() != nullptr) {
      rest = rest.lift(*f.quadratic_extension());
      auto ext = finite_roots(rest);
      std::vector<Scalar> proper;
      for (const auto& r : ext)
        if (!r.in_base_field()) proper.push_back(r);
      take(proper, 2);
    }
  }
  if (rest.degree() > 0) {
    fail(ErrorKind::RootsOutsideSupportedExtension,
         "factor " + rest.to_string() + " has roots outside the supported extension of " + f.name());
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.value < b.value;
  });
  return out;
}

}  // namespace twnorm
