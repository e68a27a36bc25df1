#include "twnorm/field.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace twnorm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotNonResidue: return "NotNonResidue";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::RootsOutsideSupportedExtension: return "RootsOutsideSupportedExtension";
    case ErrorKind::NoSquareRootInSupportedTower: return "NoSquareRootInSupportedTower";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::WrongField: return "WrongField";
    case ErrorKind::NotInSO: return "NotInSO";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::AnisotropicObstruction: return "AnisotropicObstruction";
    case ErrorKind::NotSemisimple: return "NotSemisimple";
    case ErrorKind::NoSuitableFixedVector: return "NoSuitableFixedVector";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::NotInBigCell: return "NotInBigCell";
    case ErrorKind::DeflationFailed: return "DeflationFailed";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

constexpr std::int64_t kMaxCharacteristic = (std::int64_t{1} << 31) - 1;

std::int64_t mod(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t p) {
  std::int64_t result = 1 % p;
  base = mod(base, p);
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return result;
}

std::int64_t invmod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod(a, p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_tuple(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_tuple(new_r, r - q * new_r);
  }
  return mod(t, p);
}

bool is_residue(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  return a == 0 || powmod(a, (p - 1) / 2, p) == 1;
}

std::int64_t least_nonresidue(std::int64_t p) {
  for (std::int64_t d = 2; d < p; ++d) {
    if (!is_residue(d, p)) return d;
  }
  return -1;
}

// Tonelli-Shanks; a must be a nonzero residue.
std::int64_t sqrt_mod(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::int64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = least_nonresidue(p);
  std::int64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- FieldSpec

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "Q") return FieldSpec{FieldKind::Rational, 0, 0};
  if (s.size() < 2 || s[0] != 'F') fail(ErrorKind::ParseError, "bad field spec '" + s + "'");
  std::size_t caret = s.find('^');
  std::string digits = s.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    fail(ErrorKind::ParseError, "bad field spec '" + s + "'");
  }
  std::int64_t p = std::stoll(digits);
  if (caret == std::string::npos) return FieldSpec{FieldKind::Prime, p, 0};
  if (s.substr(caret + 1) != "2") {
    fail(ErrorKind::ParseError, "only quadratic extensions are supported: '" + s + "'");
  }
  return FieldSpec{FieldKind::QuadExt, p, 0};
}

std::string FieldSpec::to_string() const {
  switch (kind) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Prime: return "F" + std::to_string(p);
    case FieldKind::QuadExt: return "F" + std::to_string(p) + "^2";
  }
  return "?";
}

// -------------------------------------------------------------------- Field

class FieldRegistry {
 public:
  static FieldRegistry& instance() {
    static FieldRegistry registry;
    return registry;
  }

  const Field& get(const FieldSpec& spec) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(static_cast<int>(spec.kind), spec.p, spec.d);
    auto it = fields_.find(key);
    if (it != fields_.end()) return *it->second;
    const Field* base = nullptr;
    if (spec.kind == FieldKind::QuadExt) {
      FieldSpec base_spec{FieldKind::Prime, spec.p, 0};
      base = &get_locked(base_spec);
    }
    auto field = std::unique_ptr<Field>(new Field(spec, base));
    const Field& ref = *field;
    fields_.emplace(key, std::move(field));
    return ref;
  }

 private:
  const Field& get_locked(const FieldSpec& spec) {
    auto key = std::make_tuple(static_cast<int>(spec.kind), spec.p, spec.d);
    auto it = fields_.find(key);
    if (it != fields_.end()) return *it->second;
    auto field = std::unique_ptr<Field>(new Field(spec, nullptr));
    const Field& ref = *field;
    fields_.emplace(key, std::move(field));
    return ref;
  }

  std::mutex mutex_;
  std::map<std::tuple<int, std::int64_t, std::int64_t>, std::unique_ptr<Field>> fields_;
};

Field::Field(const FieldSpec& spec, const Field* base) : spec_(spec), base_(base) {
  switch (spec.kind) {
    case FieldKind::Rational: order_ = 0; break;
    case FieldKind::Prime: order_ = spec.p; break;
    case FieldKind::QuadExt: order_ = spec.p * spec.p; break;
  }
}

const Field& Field::make(const FieldSpec& spec_in) {
  FieldSpec spec = spec_in;
  if (spec.kind == FieldKind::Rational) {
    spec.p = 0;
    spec.d = 0;
    return FieldRegistry::instance().get(spec);
  }
  if (spec.p % 2 == 0) fail(ErrorKind::EvenCharacteristic, "characteristic must be odd");
  if (!is_prime(spec.p)) fail(ErrorKind::NotPrime, std::to_string(spec.p) + " is not prime");
  if (spec.p > kMaxCharacteristic) fail(ErrorKind::InvalidArgument, "characteristic too large");
  if (spec.kind == FieldKind::Prime) {
    spec.d = 0;
  } else if (spec.d == 0) {
    spec.d = least_nonresidue(spec.p);
  } else {
    spec.d = mod(spec.d, spec.p);
    if (powmod(spec.d, (spec.p - 1) / 2, spec.p) != spec.p - 1) {
      fail(ErrorKind::NotNonResidue,
           std::to_string(spec.d) + " is not a quadratic non-residue mod " + std::to_string(spec.p));
    }
    // The interned extension always uses the least non-residue.
    if (spec.d != least_nonresidue(spec.p)) {
      fail(ErrorKind::InvalidArgument, "only the least non-residue is supported as modulus");
    }
  }
  return FieldRegistry::instance().get(spec);
}

const Field& Field::rational() { return make(FieldSpec{FieldKind::Rational, 0, 0}); }
const Field& Field::prime(std::int64_t p) { return make(FieldSpec{FieldKind::Prime, p, 0}); }
const Field& Field::quadratic(std::int64_t p) { return make(FieldSpec{FieldKind::QuadExt, p, 0}); }

const Field* Field::quadratic_extension() const {
  if (spec_.kind != FieldKind::Prime) return nullptr;
  return &quadratic(spec_.p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t v) const {
  if (is_rational()) return Scalar(*this, mpq_class(static_cast<long>(v)));
  return Scalar(*this, Scalar::Finite{mod(v, spec_.p), 0});
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (is_rational()) return Scalar(*this, q);
  mpz_class num = q.get_num() % spec_.p;
  mpz_class den = q.get_den() % spec_.p;
  std::int64_t n = mod(num.get_si(), spec_.p);
  std::int64_t d = mod(den.get_si(), spec_.p);
  if (d == 0) fail(ErrorKind::ZeroInput, "denominator vanishes in " + name());
  return Scalar(*this, Scalar::Finite{mulmod(n, invmod(d, spec_.p), spec_.p), 0});
}

Scalar Field::element(std::int64_t a, std::int64_t b) const {
  if (is_rational()) {
    if (b != 0) fail(ErrorKind::WrongField, "Q has no t component");
    return from_int(a);
  }
  if (kind() == FieldKind::Prime && mod(b, spec_.p) != 0) {
    fail(ErrorKind::WrongField, name() + " has no t component");
  }
  return Scalar(*this, Scalar::Finite{mod(a, spec_.p), mod(b, spec_.p)});
}

Scalar Field::from_index(std::uint64_t index) const {
  if (!is_finite()) fail(ErrorKind::WrongField, "from_index on Q");
  auto p = static_cast<std::uint64_t>(spec_.p);
  if (kind() == FieldKind::Prime) return Scalar(*this, Scalar::Finite{static_cast<std::int64_t>(index % p), 0});
  return Scalar(*this, Scalar::Finite{static_cast<std::int64_t>((index / p) % p),
                                      static_cast<std::int64_t>(index % p)});
}

std::vector<Scalar> Field::elements() const {
  if (!is_finite()) fail(ErrorKind::WrongField, "Q is not enumerable");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (std::int64_t i = 0; i < order_; ++i) out.push_back(from_index(static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<Scalar> Field::nonzero_elements() const {
  auto all = elements();
  all.erase(all.begin());
  return all;
}

namespace {

mpq_class parse_rational_literal(const std::string& s) {
  if (s.empty()) fail(ErrorKind::ParseError, "empty number");
  std::size_t slash = s.find('/');
  auto check = [&](const std::string& part) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (part.size() == start || part.find_first_not_of("0123456789", start) != std::string::npos) {
      fail(ErrorKind::ParseError, "bad number '" + s + "'");
    }
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  check(num);
  mpq_class q;
  if (num[0] == '+') num = num.substr(1);
  if (slash == std::string::npos) {
    q = mpq_class(mpz_class(num));
  } else {
    std::string den = s.substr(slash + 1);
    check(den);
    mpz_class d(den);
    if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    q = mpq_class(mpz_class(num), d);
    q.canonicalize();
  }
  return q;
}

}  // namespace

Scalar Field::parse(std::string_view text) const {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) fail(ErrorKind::ParseError, "empty scalar");
  // Split into signed terms.
  std::vector<std::string> terms;
  std::string current;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '+' || c == '-') && i > 0 && s[i - 1] != '/' ) {
      terms.push_back(current);
      current.clear();
    }
    current.push_back(c);
  }
  terms.push_back(current);
  Scalar result = zero();
  for (std::string term : terms) {
    if (term.empty() || term == "+" || term == "-") fail(ErrorKind::ParseError, "bad scalar '" + s + "'");
    bool negative = false;
    if (term[0] == '+' || term[0] == '-') {
      negative = term[0] == '-';
      term = term.substr(1);
    }
    bool has_t = !term.empty() && term.back() == 't';
    Scalar value = one();
    if (has_t) {
      if (kind() != FieldKind::QuadExt) fail(ErrorKind::ParseError, "'t' is only valid in F_p^2: '" + s + "'");
      term.pop_back();
      if (!term.empty()) {
        if (term.back() != '*') fail(ErrorKind::ParseError, "expected '*t' in '" + s + "'");
        term.pop_back();
        value = from_rational(parse_rational_literal(term));
      }
      value *= element(0, 1);
    } else {
      value = from_rational(parse_rational_literal(term));
    }
    result += negative ? -value : value;
  }
  return result;
}

// ------------------------------------------------------------------- Scalar

bool Scalar::is_zero() const {
  if (const auto* f = std::get_if<Finite>(&value_)) return f->a == 0 && f->b == 0;
  return std::get<mpq_class>(value_) == 0;
}

bool Scalar::is_one() const {
  if (const auto* f = std::get_if<Finite>(&value_)) return f->a == 1 && f->b == 0;
  return std::get<mpq_class>(value_) == 1;
}

std::uint64_t Scalar::index() const {
  const auto& f = std::get<Finite>(value_);
  if (field_->kind() == FieldKind::Prime) return static_cast<std::uint64_t>(f.a);
  return static_cast<std::uint64_t>(f.a) * static_cast<std::uint64_t>(field_->characteristic()) +
         static_cast<std::uint64_t>(f.b);
}

Scalar Scalar::lift(const Field& target) const {
  if (&target == field_) return *this;
  if (!target.contains(*field_)) {
    fail(ErrorKind::FieldMismatch, "cannot lift " + field_->name() + " into " + target.name());
  }
  return Scalar(target, std::get<Finite>(value_));
}

bool Scalar::in_base_field() const {
  if (const auto* f = std::get_if<Finite>(&value_)) return f->b == 0;
  return true;
}

Scalar Scalar::lower() const {
  if (field_->base() != nullptr && in_base_field()) return Scalar(*field_->base(), std::get<Finite>(value_));
  return *this;
}

void Scalar::promote_pair(Scalar& other) {
  if (field_ == other.field_) return;
  if (field_ == nullptr || other.field_ == nullptr) fail(ErrorKind::FieldMismatch, "uninitialised scalar");
  if (field_->contains(*other.field_)) {
    other = other.lift(*field_);
  } else if (other.field_->contains(*field_)) {
    *this = lift(*other.field_);
  } else {
    fail(ErrorKind::FieldMismatch, "mixing " + field_->name() + " and " + other.field_->name());
  }
}

Scalar Scalar::operator-() const {
  if (const auto* f = std::get_if<Finite>(&value_)) {
    std::int64_t p = field_->characteristic();
    return Scalar(*field_, Finite{f->a == 0 ? 0 : p - f->a, f->b == 0 ? 0 : p - f->b});
  }
  return Scalar(*field_, mpq_class(-std::get<mpq_class>(value_)));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorKind::Singular, "division by zero", 0);
  if (const auto* f = std::get_if<Finite>(&value_)) {
    std::int64_t p = field_->characteristic();
    if (field_->kind() == FieldKind::Prime) return Scalar(*field_, Finite{invmod(f->a, p), 0});
    std::int64_t d = field_->nonresidue();
    std::int64_t norm = mod(mulmod(f->a, f->a, p) - mulmod(d, mulmod(f->b, f->b, p), p), p);
    std::int64_t ni = invmod(norm, p);
    return Scalar(*field_, Finite{mulmod(f->a, ni, p), mod(-mulmod(f->b, ni, p), p)});
  }
  return Scalar(*field_, mpq_class(1 / std::get<mpq_class>(value_)));
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  Scalar result = field_->one();
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar& Scalar::operator+=(const Scalar& o_in) {
  Scalar o = o_in;
  promote_pair(o);
  if (auto* f = std::get_if<Finite>(&value_)) {
    const auto& g = std::get<Finite>(o.value_);
    std::int64_t p = field_->characteristic();
    f->a = f->a + g.a >= p ? f->a + g.a - p : f->a + g.a;
    f->b = f->b + g.b >= p ? f->b + g.b - p : f->b + g.b;
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o_in) {
  Scalar o = o_in;
  promote_pair(o);
  if (auto* f = std::get_if<Finite>(&value_)) {
    const auto& g = std::get<Finite>(o.value_);
    std::int64_t p = field_->characteristic();
    if (field_->kind() == FieldKind::Prime) {
      f->a = mulmod(f->a, g.a, p);
    } else {
      std::int64_t d = field_->nonresidue();
      std::int64_t a = mod(mulmod(f->a, g.a, p) + mulmod(d, mulmod(f->b, g.b, p), p), p);
      std::int64_t b = mod(mulmod(f->a, g.b, p) + mulmod(f->b, g.a, p), p);
      f->a = a;
      f->b = b;
    }
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.field_ == y.field_) {
    if (const auto* f = std::get_if<Scalar::Finite>(&x.value_)) {
      const auto& g = std::get<Scalar::Finite>(y.value_);
      return f->a == g.a && f->b == g.b;
    }
    return std::get<mpq_class>(x.value_) == std::get<mpq_class>(y.value_);
  }
  Scalar a = x, b = y;
  a.promote_pair(b);
  return a == b;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  if (x.field_ != y.field_) {
    Scalar a = x, b = y;
    a.promote_pair(b);
    return a <=> b;
  }
  if (x.field_->is_finite()) return x.index() <=> y.index();
  const mpq_class& a = std::get<mpq_class>(x.value_);
  const mpq_class& b = std::get<mpq_class>(y.value_);
  int c = cmp(abs(a), abs(b));
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  int sa = sgn(a), sb = sgn(b);
  if (sa == sb) return std::strong_ordering::equal;
  return sa > sb ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Scalar::to_string() const {
  if (const auto* f = std::get_if<Finite>(&value_)) {
    if (f->b == 0) return std::to_string(f->a);
    return std::to_string(f->a) + "+" + std::to_string(f->b) + "*t";
  }
  return std::get<mpq_class>(value_).get_str();
}

// -------------------------------------------------------------- square roots

std::optional<Scalar> sqrt_in_field(const Scalar& x) {
  const Field& f = x.field();
  if (x.is_zero()) return x;
  switch (f.kind()) {
    case FieldKind::Rational: {
      const mpq_class& q = x.rational();
      if (q < 0) return std::nullopt;
      if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t())) {
        return std::nullopt;
      }
      mpz_class n, d;
      mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
      mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
      return Scalar(f, mpq_class(n, d));
    }
    case FieldKind::Prime: {
      std::int64_t p = f.characteristic();
      if (!is_residue(x.a(), p)) return std::nullopt;
      Scalar s = f.element(sqrt_mod(x.a(), p));
      Scalar t = -s;
      return (t < s) ? t : s;
    }
    case FieldKind::QuadExt: {
      std::int64_t p = f.characteristic();
      std::int64_t d = f.nonresidue();
      std::int64_t a = x.a(), b = x.b();
      Scalar s;
      if (b == 0) {
        if (is_residue(a, p)) {
          s = f.element(sqrt_mod(a, p), 0);
        } else {
          // (c t)^2 = c^2 d = a
          std::int64_t c2 = mulmod(a, invmod(d, p), p);
          s = f.element(0, sqrt_mod(c2, p));
        }
      } else {
        std::int64_t norm = mod(mulmod(a, a, p) - mulmod(d, mulmod(b, b, p), p), p);
        if (!is_residue(norm, p)) return std::nullopt;
        std::int64_t r = sqrt_mod(norm, p);
        std::int64_t half = invmod(2, p);
        std::int64_t u2 = mulmod(mod(a + r, p), half, p);
        if (!is_residue(u2, p) || u2 == 0) u2 = mulmod(mod(a - r, p), half, p);
        std::int64_t u = sqrt_mod(u2, p);
        std::int64_t v = mulmod(b, invmod(mulmod(2, u, p), p), p);
        s = f.element(u, v);
      }
      if (!(s * s == x)) return std::nullopt;
      Scalar t = -s;
      return (t < s) ? t : s;
    }
  }
  return std::nullopt;
}

bool is_square(const Scalar& x) { return sqrt_in_field(x).has_value(); }

Scalar sqrt_scalar(const Scalar& x) {
  if (auto s = sqrt_in_field(x)) return *s;
  const Field* ext = x.field().quadratic_extension();
  if (ext != nullptr) {
    if (auto s = sqrt_in_field(x.lift(*ext))) return *s;
  }
  fail(ErrorKind::NoSquareRootInSupportedTower, "no square root of " + x.to_string() + " in " + x.field().name() +
                                                    (ext ? " or " + ext->name() : std::string()));
}

std::int64_t padic_val(const Scalar& x, std::int64_t p) {
  if (!x.field().is_rational()) fail(ErrorKind::WrongField, "padic_val needs a rational input");
  if (x.is_zero()) fail(ErrorKind::ZeroInput, "padic_val of zero");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  mpz_class prime(static_cast<long>(p));
  mpz_class num = abs(x.rational().get_num());
  mpz_class den = x.rational().get_den();
  mpz_class rest;
  auto up = static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t()));
  auto down = static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t()));
  return up - down;
}

}  // namespace twnorm
