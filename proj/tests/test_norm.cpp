#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "support.hpp"
#include "twnorm/linalg.hpp"
#include "twnorm/norm.hpp"

using namespace twnorm;
using support::kind_of;

namespace {

std::vector<const Field*> finite_fields() { return {&Field::prime(5), &Field::prime(7), &Field::quadratic(3)}; }

Mat random_semisimple_so(const Field& f, std::size_t m, Rng& rng) {
  while (true) {
    Mat h = random_so(f, m, rng);
    if (is_semisimple(h)) return h;
  }
}

Pair random_valid_pair(const Field& f, std::size_t n, std::size_t m, Rng& rng) {
  while (true) {
    auto [x, y] = support::random_raw_pair(f, n, m, rng);
    if (rank(y) == n) return make_pair(x, y);
  }
}

std::vector<std::uint64_t> code(const Mat& a) {
  std::vector<std::uint64_t> k;
  for (const auto& s : a.data()) k.push_back(s.index());
  return k;
}

std::vector<Mat> sorted(std::vector<Mat> v) {
  std::sort(v.begin(), v.end(), [](const Mat& a, const Mat& b) { return code(a) < code(b); });
  return v;
}

bool same_list(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

// Multiplicity of r as a root of p.
int root_multiplicity(Poly p, const Scalar& r) {
  Poly lin = Poly::linear_root(r.lift(p.leading().field()));
  int k = 0;
  while (p.degree() > 0 && (p % lin).degree() < 0) {
    p = p / lin;
    ++k;
  }
  return k;
}

// Product of the nonzero eigenvalues of t, read off its characteristic
// polynomial; valid when ker t is the full generalized kernel.
Scalar nonzero_eigen_product(const Mat& t) {
  Poly p = char_poly(t);
  int k = 0;
  while (p.coeff(k).is_zero()) ++k;
  Scalar c = p.coeff(k);
  return (p.degree() - k) % 2 == 0 ? c : -c;
}

// Matrix of A -> fn(A) on the full matrix space, row convention on flattened A.
Mat full_map(const Field& f, std::size_t d, auto fn) {
  Mat t(f, d * d, d * d);
  for (std::size_t e = 0; e < d * d; ++e) {
    Mat a(f, d, d);
    a.set(e / d, e % d, 1);
    Mat img = fn(a);
    for (std::size_t c = 0; c < d * d; ++c) t.set(e, c, img(c / d, c % d));
  }
  return t;
}

}  // namespace

TEST_CASE("norm_value examples") {
  const Field& f5 = Field::prime(5);
  CHECK(norm_value(make_pair(Mat::identity(f5, 3), Mat::diag_ints(f5, {3, 2, 1}))) == Mat::diag_ints(f5, {2, 1, 3}));
  CHECK(norm_value(make_pair(Mat::from_ints(f5, {{1, 0, 0}, {0, 0, 1}}), Mat::diag_ints(f5, {1, 3}))) ==
        Mat::diag_ints(f5, {2, 1, 3}));
  const Field& q = Field::rational();
  for (std::int64_t xv : {1, 2, -3}) {
    Scalar x = q.from_int(xv);
    Pair p = make_pair(Mat::diag(q, {x}), Mat::diag(q, {-(x * x) / q.from_int(2)}));
    // X' = -x, Y^{-1} = -2/x^2: (-1)(1 - 2) = 1
    CHECK(norm_value(p).is_identity());
  }
  Pair singular = make_pair(Mat(f5, 2, 3), Mat(f5, 2, 2));
  CHECK_FALSE(singular.y_invertible);
  CHECK(kind_of([&] { norm_value(singular); }) == ErrorKind::Singular);
}

TEST_CASE("pair_act examples and conjugation of the norm") {
  const Field& f5 = Field::prime(5);
  Pair p = make_pair(Mat::identity(f5, 3), Mat::diag_ints(f5, {3, 2, 1}));
  Pair same = pair_act(Mat::identity(f5, 3), Mat::identity(f5, 3), p);
  CHECK(same.x == p.x);
  CHECK(same.y == p.y);
  Rng rng(30);
  Mat nv = norm_value(p);
  for (int k = 0; k < 50; ++k) {
    Mat g = random_invertible(f5, 3, rng);
    Mat h = random_so(f5, 1, rng);
    Pair q = pair_act(g, h, p);
    CHECK(norm_value(q) == h * nv * inverse(h));
  }
  CHECK(kind_of([&] { pair_act(Mat::identity(f5, 3), Mat::diag_ints(f5, {2, 1, 2}), p); }) == ErrorKind::NotInSO);
}

TEST_CASE("pair identities hold on random pairs") {
  Rng rng(31);
  std::vector<const Field*> fields = finite_fields();
  fields.push_back(&Field::rational());
  for (const Field* f : fields) {
    for (int k = 0; k < 60; ++k) {
      std::size_t n = 1 + static_cast<std::size_t>(k % 5), m = static_cast<std::size_t>(k % 3);
      Pair p = random_valid_pair(*f, n, m, rng);
      for (const auto& c : pair_identities(p)) {
        INFO(c.name);
        CHECK(c.ok);
      }
      // The norm N satisfies rank(I - (-1)^n N) <= n.
      Mat nv = norm_value(p);
      Scalar sigma = n % 2 == 0 ? f->one() : -f->one();
      CHECK(rank(Mat::identity(*f, 2 * m + 1) - sigma * nv) <= n);
    }
  }
}

TEST_CASE("small n: at least 2m+1-n eigenvalues are +1 or -1") {
  Rng rng(32);
  for (const Field* f : finite_fields()) {
    for (std::size_t m = 2; m <= 3; ++m) {
      for (std::size_t n = 1; n < 2 * m; ++n) {
        for (int k = 0; k < 8; ++k) {
          Mat nv = norm_value(random_valid_pair(*f, n, m, rng));
          Poly cp = char_poly(nv);
          int count = root_multiplicity(cp, f->one()) + root_multiplicity(cp, -f->one());
          CHECK(count >= static_cast<int>(2 * m + 1 - n));
        }
      }
    }
  }
}

TEST_CASE("section_solve examples") {
  const Field& f5 = Field::prime(5);
  Mat h = Mat::diag_ints(f5, {2, 1, 3});
  NormCertificate c1 = section_solve(h, 3, 1);
  CHECK(c1.route == Route::ClosedFormOdd);
  CHECK(c1.pair.x.is_identity());
  CHECK(c1.pair.y == Mat::diag_ints(f5, {3, 2, 1}));
  CHECK(c1.norm == h);
  CHECK(c1.all_ok());

  NormCertificate c2 = section_solve(h, 2, 1);
  CHECK(c2.route == Route::PadEven);
  CHECK(c2.pair.x == Mat::from_ints(f5, {{1, 0, 0}, {0, 0, 1}}));
  CHECK(c2.pair.y == Mat::diag_ints(f5, {1, 3}));
  CHECK(c2.norm == h);

  CHECK(kind_of([&] { section_solve(Mat::from_ints(f5, {{1, 1, 2}, {0, 1, 4}, {0, 0, 1}}), 3, 1); }) ==
        ErrorKind::NotSemisimple);
  CHECK(kind_of([&] { section_solve(Mat::diag_ints(f5, {2, 1, 2}), 3, 1); }) == ErrorKind::NotInSO);
}

TEST_CASE("section_solve on the identity in every regime") {
  for (const Field* f : {&Field::prime(5), &Field::rational()}) {
    for (std::size_t m = 0; m <= 2; ++m) {
      for (std::size_t n = 1; n <= 2 * m + 4; ++n) {
        Mat id = Mat::identity(*f, 2 * m + 1);
        if (n % 2 == 1 && n < 2 * m + 1) {
          // For odd n the norm has 2m+1-n eigenvalues -1, so I is not a norm.
          CHECK(kind_of([&] { section_solve(id, n, m); }) == ErrorKind::DeflationFailed);
          continue;
        }
        NormCertificate c = section_solve(id, n, m);
        CHECK(c.all_ok());
        CHECK(c.norm.is_identity());
      }
    }
  }
}

TEST_CASE("section_solve on random semisimple targets") {
  Rng rng(33);
  std::map<Route, int> routes;
  std::vector<const Field*> fields = finite_fields();
  fields.push_back(&Field::rational());
  for (const Field* f : fields) {
    for (std::size_t m = 0; m <= 2; ++m) {
      for (std::size_t n = 1; n <= 2 * m + 3; ++n) {
        for (int k = 0; k < 6; ++k) {
          Mat h = random_semisimple_so(*f, m, rng);
          Scalar sigma = n % 2 == 0 ? f->one() : -f->one();
          std::size_t r = rank(Mat::identity(*f, 2 * m + 1) - sigma * h);
          bool deflated = n == 2 * m + 1 && r < n;
          if (r > n && !deflated) {
            CHECK(n < 2 * m);
            CHECK(kind_of([&] { section_solve(h, n, m); }) == ErrorKind::DeflationFailed);
            continue;
          }
          NormCertificate c = section_solve(h, n, m);
          ++routes[c.route];
          CHECK(c.all_ok());
          CHECK(c.norm == h);
          CHECK(c.pair.n == n);
          CHECK(norm_value(c.pair) == h);
          if (n < 2 * m) CHECK(c.route == Route::PadSmall);
          if (n > 2 * m + 1) CHECK(c.route == Route::PadLarge);
        }
      }
    }
  }
  CHECK(routes[Route::ClosedFormOdd] > 0);
  CHECK(routes[Route::PadEven] > 0);
  CHECK(routes[Route::PadLarge] > 0);
  CHECK(routes[Route::PadSmall] > 0);
}

TEST_CASE("section_solve deflates targets with eigenvalue -1") {
  const Field& f5 = Field::prime(5);
  // diag(-1, 1, -1) in SO_3, and a rotation block with -1 eigenvalues in SO_5.
  Mat h = Mat::diag_ints(f5, {-1, 1, -1});
  NormCertificate c = section_solve(h, 3, 1);
  CHECK(c.route == Route::Deflated);
  CHECK(c.norm == h);
  Rng rng(34);
  int deflated = 0;
  for (const Field* f : finite_fields()) {
    for (int k = 0; k < 200 && deflated < 60; ++k) {
      std::size_t m = 1 + static_cast<std::size_t>(k % 2);
      Mat z = random_semisimple_so(*f, m, rng);
      if (rank(Mat::identity(*f, 2 * m + 1) + z) == 2 * m + 1) continue;
      NormCertificate d = section_solve(z, 2 * m + 1, m);
      CHECK(d.route == Route::Deflated);
      CHECK(d.norm == z);
      CHECK(d.all_ok());
      ++deflated;
    }
  }
  CHECK(deflated > 20);
}

TEST_CASE("semisimple_so_conjugate agrees with SO_3(F_3) orbits") {
  const Field& f3 = Field::prime(3);
  std::vector<Mat> group;
  for (const Mat& a : support::all_matrices(f3, 3, 3))
    if (so_membership(a, 1).member) group.push_back(a);
  REQUIRE(group.size() == 24);
  std::vector<Mat> ss;
  for (const Mat& a : group)
    if (is_semisimple(a)) ss.push_back(a);
  for (const Mat& a : ss) {
    std::set<std::vector<std::uint64_t>> orbit;
    for (const Mat& g : group) orbit.insert(code(g * a * inverse(g)));
    for (const Mat& b : ss) {
      auto v = semisimple_so_conjugate(a, b);
      REQUIRE(v.has_value());
      CHECK(*v == (orbit.count(code(b)) > 0));
    }
  }
}

TEST_CASE("diagonal_section examples") {
  const Field& f5 = Field::prime(5);
  Pair p = diagonal_section(Mat::diag_ints(f5, {1, 2, 3}), 1);
  CHECK(norm_value(p) == Mat::diag_ints(f5, {3, 1, 2}));
  CHECK(norm_value(diagonal_section(Mat::identity(f5, 3), 1)).is_identity());
  CHECK(kind_of([] { diagonal_section(Mat::diag_ints(Field::rational(), {1, 1, 4}), 1); }) == ErrorKind::FieldTooSmall);
  CHECK_NOTHROW(diagonal_section(Mat::diag_ints(f5, {1, 1, 4}), 1));
  CHECK(kind_of([&] { diagonal_section(Mat::diag_ints(f5, {1, 0, 4}), 1); }) == ErrorKind::Singular);
}

TEST_CASE("diagonal_section norm formula on random diagonals") {
  Rng rng(35);
  for (const Field* f : finite_fields()) {
    for (int k = 0; k < 60; ++k) {
      std::size_t m = static_cast<std::size_t>(k % 3), n = 2 * m + 1;
      std::vector<Scalar> a;
      for (std::size_t i = 0; i < n; ++i) a.push_back(random_nonzero(*f, rng));
      Pair p;
      try {
        p = diagonal_section(Mat::diag(*f, a), m);
      } catch (const Error& e) {
        // Only F_9 can lack sqrt(-1) or sqrt(2 a_{m+1}); it has no extension here.
        CHECK(e.kind() == ErrorKind::FieldTooSmall);
        CHECK(f->kind() == FieldKind::QuadExt);
        continue;
      }
      Mat nv = norm_value(p);
      std::vector<Scalar> b;
      for (std::size_t i = 0; i < m; ++i) b.push_back(a[i].inv() * a[n - 1 - i]);
      std::vector<Scalar> expect = b;
      expect.push_back(f->one());
      for (std::size_t i = m; i-- > 0;) expect.push_back(b[i].inv());
      CHECK(nv == Mat::diag(*f, expect).lift(nv.field()));
    }
  }
}

TEST_CASE("canonical_section relations") {
  const Field& f5 = Field::prime(5);
  Pair p1 = canonical_section(Mat::diag_ints(f5, {2, 1, 3}), 1);
  CHECK(p1.x.is_identity());
  Pair p2 = canonical_section(Mat::identity(f5, 3), 1);
  CHECK(p2.x.is_identity());
  CHECK(norm_value(p2).is_identity());

  Rng rng(36);
  int with_minus_one = 0;
  for (int k = 0; k < 100; ++k) {
    std::size_t m = 1 + static_cast<std::size_t>(k % 2), n = 2 * m + 1;
    Mat z = random_semisimple_so(f5, m, rng);
    Pair p = canonical_section(z, m);
    Mat x = p.x, yi = inverse(p.y), xp = x_prime(x, n, m);
    CHECK(x * x == x);
    CHECK(xp * yi * x == xp * yi);
    CHECK(xp * yi == -(yi * x));
    CHECK(norm_value(p) == z);

    // eps(Y^{-1}) Y^{-1} has the eigenvalues of z on im X, and -1 on ker X.
    FormContext ctx = form_context(f5, n);
    Mat e = eps(yi, ctx) * yi;
    Mat im = row_space(x);
    Mat zr(f5, im.rows(), im.rows());
    Mat img = im * z;
    for (std::size_t i = 0; i < im.rows(); ++i) {
      auto c = coordinates(im, img.row(i));
      REQUIRE(!c.empty());
      for (std::size_t j = 0; j < c.size(); ++j) zr.set(i, j, c[j]);
    }
    Poly expect = im.rows() > 0 ? char_poly(zr) : Poly::constant(f5.one());
    for (std::size_t i = im.rows(); i < n; ++i) expect = expect * Poly::linear_root(-f5.one());
    CHECK(char_poly(e) == expect);
    if (im.rows() < n) ++with_minus_one;
    try {
      Spectrum se = char_poly_roots(e);
      Spectrum sz = char_poly_roots(z);
      REQUIRE(se.roots.size() == sz.roots.size());
      for (std::size_t i = 0; i < se.roots.size(); ++i) {
        CHECK(se.roots[i].value == sz.roots[i].value);
        CHECK(se.roots[i].multiplicity == sz.roots[i].multiplicity);
      }
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::RootsOutsideSupportedExtension);
    }
  }
  CHECK(with_minus_one > 5);
}

TEST_CASE("fixed space of SO_{2m+1} elements has odd dimension") {
  Rng rng(37);
  for (const Field* f : finite_fields()) {
    for (int k = 0; k < 60; ++k) {
      std::size_t m = static_cast<std::size_t>(k % 3);
      Mat h = random_so(*f, m, rng);
      CHECK(eigenspace_dim(h, f->one()) % 2 == 1);
    }
  }
}

TEST_CASE("twisted centralizer examples") {
  const Field& f5 = Field::prime(5);
  CHECK(twisted_tangent_dim(Mat::identity(f5, 2)) == 1);
  CHECK(twisted_tangent_dim(Mat::identity(f5, 1)) == 0);
  CHECK(twisted_tangent_dim(Mat::identity(f5, 3)) == 3);
  CHECK(kind_of([&] { twisted_centralizer_members(Mat::identity(f5, 3), 10); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("twisted centralizer members match brute force on GL_2(F_3)") {
  const Field& f3 = Field::prime(3);
  FormContext ctx = form_context(f3, 2);
  std::vector<Mat> gl;
  for (const Mat& a : support::all_matrices(f3, 2, 2))
    if (rank(a) == 2) gl.push_back(a);
  REQUIRE(gl.size() == 48);
  for (const Mat& y : gl) {
    std::vector<Mat> brute;
    for (const Mat& g : gl)
      if (inverse(g) * y * eps(g, ctx) == y) brute.push_back(g);
    auto members = twisted_centralizer_members(y);
    CHECK(same_list(members, sorted(brute)));

    // C(eps(Y)) = C(Y^{-1}) = eps(C(Y))
    std::vector<Mat> image;
    for (const Mat& g : members) image.push_back(eps(g, ctx));
    auto c_eps = twisted_centralizer_members(eps(y, ctx));
    CHECK(same_list(c_eps, twisted_centralizer_members(inverse(y))));
    CHECK(same_list(c_eps, sorted(image)));
  }
}

TEST_CASE("minimal twisted tangent dimension is floor(n/2)") {
  for (const Field* f : {&Field::prime(3), &Field::prime(5)}) {
    for (std::size_t n = 1; n <= (f->order() == 3 ? 3u : 2u); ++n) {
      std::size_t best = n * n;
      for (const Mat& y : support::all_matrices(*f, n, n))
        if (rank(y) == n) best = std::min(best, twisted_tangent_dim(y));
      CHECK(best == min_twisted_tangent_dim(n));
    }
  }
}

TEST_CASE("regularity_flags examples") {
  const Field& f5 = Field::prime(5);
  CHECK(regularity_flags(Mat::identity(f5, 3)).eps_semisimple);
  CHECK_FALSE(regularity_flags(Mat::identity(f5, 3)).eps_regular);
  RegularityFlags r = regularity_flags(Mat::diag_ints(f5, {3, 2, 1}));
  CHECK(r.eps_semisimple);
  CHECK(r.eps_regular);

  // In GL_2(F_3) every non-semisimple Y eps(Y) is minus a unipotent; the
  // first unipotent ones appear in GL_3(F_3).
  const Field& f3 = Field::prime(3);
  for (std::size_t n : {2u, 3u}) {
    FormContext ctx = form_context(f3, n);
    int non_semisimple = 0, unipotent = 0;
    for (const Mat& y : support::all_matrices(f3, n, n)) {
      if (rank(y) < n) continue;
      Mat t = y * eps(y, ctx);
      bool ss = regularity_flags(y).eps_semisimple;
      CHECK(ss == is_semisimple(t));
      if (ss) continue;
      ++non_semisimple;
      Mat d = t - Mat::identity(f3, n), e = t + Mat::identity(f3, n);
      Mat dp = d, ep = e;
      for (std::size_t i = 1; i < n; ++i) {
        dp = dp * d;
        ep = ep * e;
      }
      if (dp.is_zero()) ++unipotent;
      if (n == 2) CHECK(ep.is_zero());
    }
    CHECK(non_semisimple > 0);
    if (n == 2) CHECK(unipotent == 0);
    if (n == 3) CHECK(unipotent > 0);
  }
}

TEST_CASE("ks_norm examples and torus kernel") {
  const Field& f5 = Field::prime(5);
  FormContext ctx = form_context(f5, 3);
  CHECK(ks_norm(Mat::diag_ints(f5, {2, 3, 4}), ctx) == Mat::diag_ints(f5, {3, 1, 2}));
  CHECK(ks_norm(Mat::identity(f5, 3), ctx).is_identity());
  CHECK(ks_norm(Mat::diag_ints(f5, {2, 4, 2}), ctx).is_identity());
  for (const Field* f : {&Field::prime(3), &Field::prime(5)}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      KernelCheck kc = kernel_identity(*f, n);
      CHECK(kc.holds);
      CHECK(kc.kernel_size == kc.symmetric_size);
      std::size_t units = static_cast<std::size_t>(f->order() - 1), expect = 1;
      for (std::size_t i = 0; i < (n + 1) / 2; ++i) expect *= units;
      CHECK(kc.kernel_size == expect);
      if (n % 2 == 1) CHECK(kc.lifted_preimages > 0);
    }
  }
}

TEST_CASE("compare_with_ks") {
  const Field& f5 = Field::prime(5);
  ComparisonReport r = compare_with_ks(Mat::diag_ints(f5, {3, 2, 1}), 3, 1);
  CHECK(r.sign == -1);
  CHECK(kind_of([&] { compare_with_ks(Mat::identity(f5, 3), 3, 1); }) == ErrorKind::NotRegular);

  std::map<std::pair<std::size_t, std::int64_t>, std::set<int>> signs;
  auto scan = [&](const Field& f, std::size_t n, std::size_t m) {
    int count = 0;
    for (const Mat& y : support::all_matrices(f, n, n)) {
      if (!y.is_diagonal() || rank(y) < n || !strongly_regular(y)) continue;
      ComparisonReport c = compare_with_ks(y, n, m);
      CHECK(c.sign != 0);
      if (!c.ambiguous) signs[{n, f.order()}].insert(c.sign);
      ++count;
    }
    return count;
  };
  CHECK(scan(Field::prime(7), 2, 1) > 0);
  CHECK(scan(Field::prime(5), 3, 1) > 0);
  for (const auto& [key, s] : signs) CHECK(s.size() == 1);
}

TEST_CASE("alpha_scaling") {
  const Field& f5 = Field::prime(5);
  Pair p = make_pair(Mat::identity(f5, 3), Mat::diag_ints(f5, {3, 2, 1}));
  ScalingReport r = alpha_scaling(f5.element(4), p);
  CHECK(r.witness.lambda == f5.element(2));
  CHECK(r.witness.alpha_zero == Mat::diag_ints(f5, {4, 2, 1}));
  CHECK(r.holds);
  ScalingReport one = alpha_scaling(f5.one(), p);
  CHECK(one.witness.alpha_zero.is_identity());
  CHECK(one.lhs == one.rhs);
  CHECK(kind_of([&] { alpha_scaling(f5.element(2), p); }) == ErrorKind::NotASquare);

  Rng rng(38);
  std::vector<const Field*> fields = finite_fields();
  fields.push_back(&Field::rational());
  for (const Field* f : fields) {
    for (int k = 0; k < 30; ++k) {
      std::size_t n = 1 + static_cast<std::size_t>(k % 4), m = static_cast<std::size_t>(k % 3);
      Pair q = random_valid_pair(*f, n, m, rng);
      Scalar s = random_nonzero(*f, rng);
      ScalingReport sr = alpha_scaling(s * s, q);
      CHECK(sr.holds);
      CHECK(sr.witness.lambda * sr.witness.lambda == s * s);
    }
  }
}

TEST_CASE("discriminants") {
  const Field& f5 = Field::prime(5);
  Mat gamma = Mat::diag_ints(f5, {2, 1, 3});
  DiscriminantReport d = discriminants(gamma, Mat::diag_ints(f5, {1, 2, 3}));
  CHECK(d.d_gamma == f5.element(2));
  CHECK_FALSE(d.kappa1_valuation.has_value());
  CHECK(d.kappa1_ratio == d.d_theta_star / d.d_gamma);
  CHECK(kind_of([&] { discriminants(Mat::identity(f5, 3), Mat::diag_ints(f5, {1, 2, 3})); }) ==
        ErrorKind::NotRegular);

  const Field& q = Field::rational();
  Mat gq = Mat::diag(q, {q.from_int(2), q.one(), q.from_rational(mpq_class(1, 2))});
  Mat yq = Mat::diag(q, {q.one(), q.from_rational(mpq_class(1, 3)), q.from_rational(mpq_class(1, 2))});
  DiscriminantReport dq = discriminants(gq, yq, 2);
  // D = (2 - 1)(1/2 - 1) = -1/2
  CHECK(dq.d_gamma == q.from_rational(mpq_class(-1, 2)));
  REQUIRE(dq.kappa1_valuation.has_value());
  CHECK(*dq.kappa1_valuation == padic_val(dq.d_theta_star, 2) + 1);
}

TEST_CASE("discriminants agree with characteristic polynomial products") {
  Rng rng(39);
  int tested = 0;
  for (const Field* f : {&Field::prime(5), &Field::prime(7)}) {
    for (int k = 0; k < 40; ++k) {
      std::size_t m = 1, n = 3;
      Mat gamma = random_semisimple_so(*f, m, rng);
      Mat yp = random_invertible(*f, n, rng);
      DiscriminantReport d;
      try {
        d = discriminants(gamma, yp);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotRegular);
        continue;
      }
      // Independent route: Ad(gamma) - 1 on all of gl, then restrict the
      // eigenvalue product to so via its dimension count.
      std::size_t k2 = 2 * m + 1;
      Mat w = antidiag(*f, k2), gi = inverse(gamma);
      Mat cond = full_map(*f, k2, [&](const Mat& a) { return a * w + w * a.transpose(); });
      Mat so = left_kernel(cond);
      REQUIRE(so.rows() == m * (2 * m + 1));
      Mat t(*f, so.rows(), so.rows());
      for (std::size_t i = 0; i < so.rows(); ++i) {
        Mat a(*f, k2, k2);
        for (std::size_t c = 0; c < k2 * k2; ++c) a.set(c / k2, c % k2, so(i, c));
        Mat img = gamma * a * gi - a;
        Mat flat(*f, 1, k2 * k2);
        for (std::size_t c = 0; c < k2 * k2; ++c) flat.set(0, c, img(c / k2, c % k2));
        auto co = coordinates(so, flat);
        REQUIRE(!co.empty());
        for (std::size_t j = 0; j < co.size(); ++j) t.set(i, j, co[j]);
      }
      CHECK(nonzero_eigen_product(t) == d.d_gamma);

      FormContext ctx = form_context(*f, n);
      Mat ui = inverse(ctx.u), ypi = inverse(yp);
      Mat tw = full_map(*f, n, [&](const Mat& a) { return yp * (-(ctx.u * a.transpose() * ui)) * ypi - a; });
      if (rank(tw) + left_kernel(tw * tw).rows() == n * n) {
        CHECK(nonzero_eigen_product(tw) == d.d_theta_star);
      }
      ++tested;
    }
  }
  CHECK(tested > 20);
}

TEST_CASE("phi_embed") {
  const Field& f5 = Field::prime(5);
  CHECK(phi_embed(Mat::identity(f5, 4)).is_identity());
  CHECK(phi_embed(Mat::diag_ints(f5, {2, 3})) == Mat::diag_ints(f5, {2, 1, 3}));
  CHECK(kind_of([&] { phi_embed(Mat::diag_ints(f5, {2, 2})); }) == ErrorKind::NotInSO);
  FormContext c4 = form_context(f5, 4), c5 = form_context(f5, 5);
  Rng rng(40);
  int tested = 0;
  while (tested < 100) {
    // SO_4 from reflections of the 4-dimensional form.
    Mat h = Mat::identity(f5, 4);
    Mat w4 = antidiag(f5, 4);
    for (int r = 0; r < 4; ++r) {
      Mat v = random_mat(f5, 1, 4, rng);
      if (pairing(v, v, w4).is_zero()) continue;
      h = h * reflection(v, w4);
    }
    if (!so_membership(h).member) continue;
    Mat ph = phi_embed(h);
    CHECK(so_membership(ph, 2).member);
    CHECK(eps_tilde(ph, c5) == phi_embed(eps_tilde(h, c4)));
    ++tested;
  }
}
