#include "twnorm/norm.hpp"

#include <algorithm>
#include <functional>

#include "twnorm/linalg.hpp"

namespace twnorm {

namespace {

Scalar sign_of(const Field& f, std::size_t n) { return n % 2 == 0 ? f.one() : -f.one(); }

Mat flatten(const Mat& a) {
  Mat v(a.field(), 1, a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) v.set(0, i * a.cols() + j, a(i, j));
  return v;
}

Mat unflatten(const Mat& v, std::size_t rows, std::size_t cols) {
  Mat a(v.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a.set(i, j, v(0, i * cols + j));
  return a;
}

// Matrix (row convention) of a linear map on the span of `basis` (rows are
// flattened d x d matrices), in that basis.
Mat map_in_basis(const Mat& basis, std::size_t d, const std::function<Mat(const Mat&)>& fn) {
  std::size_t k = basis.rows();
  Mat out(basis.field(), k, k);
  for (std::size_t i = 0; i < k; ++i) {
    Mat image = flatten(fn(unflatten(basis.row(i), d, d)));
    auto c = coordinates(basis, image);
    if (c.empty()) fail(ErrorKind::ConstructionFailed, "map leaves its domain");
    for (std::size_t j = 0; j < k; ++j) out.set(i, j, c[j]);
  }
  return out;
}

Mat standard_basis(const Field& f, std::size_t dim) { return Mat::identity(f, dim); }

// Coordinates of the rows of a * basis-image: the matrix of `a` restricted to
// the invariant subspace spanned by `basis`.
Mat restrict_to(const Mat& basis, const Mat& a) {
  Mat img = basis * a;
  std::size_t k = basis.rows();
  Mat out(img.field(), k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto c = coordinates(basis, img.row(i));
    if (c.empty()) fail(ErrorKind::ConstructionFailed, "subspace is not invariant");
    for (std::size_t j = 0; j < k; ++j) out.set(i, j, c[j]);
  }
  return out;
}

struct QuotientMap {
  std::size_t kernel_dim = 0;
  Scalar det;
};

// det of T on V / ker T, where T(ker T) = 0.
QuotientMap quotient_det(const Mat& t) {
  std::size_t d = t.rows();
  Mat ker = left_kernel(t);
  QuotientMap out;
  out.kernel_dim = ker.rows();
  Mat c = complete_basis(ker.rows() == 0 ? Mat(t.field(), 0, d) : ker);
  Mat conj = c * t * inverse(c);
  std::size_t k = out.kernel_dim;
  out.det = k == d ? t.field().one() : det(conj.block(k, k, d - k, d - k));
  return out;
}

Check make_check(std::string name, bool ok, std::string detail = {}) {
  return Check{std::move(name), ok, std::move(detail)};
}

void require_so(const Mat& h, std::size_t m) {
  if (h.rows() != 2 * m + 1 || !h.square()) fail(ErrorKind::ShapeMismatch, "expected a (2m+1) x (2m+1) matrix");
  Membership mh = so_membership(h, m);
  if (!mh.member) fail(ErrorKind::NotInSO, "matrix is not in SO_{2m+1}: " + mh.witness);
}

// so_k = {A : A w + w tA = 0}, as flattened rows.
Mat so_basis(const Field& f, std::size_t k) {
  Mat w = antidiag(f, k);
  Mat cond = map_in_basis(standard_basis(f, k * k), k, [&](const Mat& a) { return a * w + w * a.transpose(); });
  return left_kernel(cond);
}

}  // namespace

// ---------------------------------------------------------------- pairs

Pair make_pair(const Mat& x, const Mat& y) {
  NPoint u = n_make(x, y);
  Pair p{x, y, u.n, u.m, rank(y) == u.n};
  return p;
}

Pair pair_act(const Mat& g, const Mat& h, const Pair& p) {
  if (!g.square() || g.rows() != p.n) fail(ErrorKind::ShapeMismatch, "g must be n x n");
  require_so(h, p.m);
  FormContext ctx = form_context(g.field(), p.n);
  return make_pair(g * p.x * inverse(h), g * p.y * inverse(eps(g, ctx)));
}

Mat norm_value(const Pair& p) {
  const Field& f = join_fields(p.x.field(), p.y.field());
  Mat yi = inverse(p.y);
  Mat core = Mat::identity(f, 2 * p.m + 1) - x_prime(p.x, p.n, p.m) * yi * p.x;
  Mat nv = sign_of(f, p.n) * core;
  Membership mm = so_membership(nv, p.m);
  if (!mm.member) fail(ErrorKind::ConstructionFailed, "norm value left SO_{2m+1}: " + mm.witness);
  return nv;
}

std::string_view to_string(Route r) {
  switch (r) {
    case Route::ClosedFormOdd: return "ClosedFormOdd";
    case Route::PadEven: return "PadEven";
    case Route::PadLarge: return "PadLarge";
    case Route::PadSmall: return "PadSmall";
    case Route::DiagonalExtension: return "DiagonalExtension";
    case Route::Deflated: return "Deflated";
  }
  return "?";
}

bool NormCertificate::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::vector<Check> pair_identities(const Pair& p) {
  const Field& f = join_fields(p.x.field(), p.y.field());
  std::size_t n = p.n, m = p.m, k = 2 * m + 1;
  FormContext ctx = form_context(f, n);
  Mat x = p.x.lift(f), y = p.y.lift(f);
  Mat xp = x_prime(x, n, m);
  std::vector<Check> out;

  Mat defect = y + eps_tilde(y, ctx) - x * xp;
  out.push_back(make_check("pair_equation", defect.is_zero(), defect.is_zero() ? "" : defect.to_string()));

  Mat yi = inverse(y);
  Mat core = Mat::identity(f, k) - xp * yi * x;
  Mat nv = sign_of(f, n) * core;
  Membership mm = so_membership(nv, m);
  out.push_back(make_check("norm_in_so", mm.member, mm.witness));

  Mat eyi = eps(yi, ctx);
  out.push_back(make_check("left_identity", core * xp == -(xp * yi * eyi)));
  out.push_back(make_check("right_identity", x * core == -(eyi * yi * x)));

  // (Y^{-1} X, eps(Y)) solves the same equation.
  Mat x2 = yi * x, y2 = eps(y, ctx);
  Mat d2 = y2 + eps_tilde(y2, ctx) - x2 * x_prime(x2, n, m);
  out.push_back(make_check("inversion_closed", d2.is_zero()));

  Membership mu = so_membership(n_matrix(NPoint{x, y, n, m}));
  out.push_back(make_check("unipotent_in_so", mu.member, mu.witness));
  return out;
}

// ---------------------------------------------------------------- sections

Pair canonical_section(const Mat& z, std::size_t m) {
  require_so(z, m);
  if (!is_semisimple(z)) fail(ErrorKind::NotSemisimple, "canonical_section needs a semisimple target");
  const Field& f = z.field();
  std::size_t k = 2 * m + 1;
  Mat w = antidiag(f, k);
  Mat kmat = Mat::identity(f, k) + z;
  Mat wb = row_space(kmat);  // image of I + z
  Mat ub = left_kernel(kmat); // -1 eigenspace
  std::size_t r = wb.rows(), s = ub.rows();
  if (r + s != k || s % 2 != 0) fail(ErrorKind::ConstructionFailed, "eigenspace split failed");

  std::vector<Mat> blocks;
  if (r > 0) {
    Mat zw = restrict_to(wb, z);
    blocks.push_back(-inverse(Mat::identity(f, r) + zw));
  }
  if (s > 0) {
    Mat gu = ub * w * ub.transpose();
    std::size_t h = s / 2;
    Mat a(f, s, s);
    for (std::size_t i = 0; i < h; ++i) {
      a.set(i, h + i, 1);
      a.set(h + i, i, -1);
    }
    blocks.push_back(a * inverse(gu));
  }
  Mat b = r == 0 ? ub : (s == 0 ? wb : vstack({wb, ub}));
  Mat bi = inverse(b);
  Mat proj(f, k, k);
  for (std::size_t i = 0; i < r; ++i) proj.set(i, i, 1);
  Mat y = bi * block_diag(blocks) * b;
  Mat x = bi * proj * b;
  Pair p = make_pair(x, y);
  p.y_invertible = true;

  Mat yi = inverse(y);
  Mat xp = x_prime(x, k, m);
  Mat s1 = -(xp * yi * x);
  if (!(x * x == x) || !(s1 == yi * x) || !(s1 == -(xp * yi))) {
    fail(ErrorKind::ConstructionFailed, "canonical section relations failed");
  }
  if (!(norm_value(p) == z)) fail(ErrorKind::ConstructionFailed, "canonical section norm differs from target");
  return p;
}

Pair diagonal_section(const Mat& y_diag, std::size_t m) {
  std::size_t n = y_diag.rows();
  if (!y_diag.is_diagonal() || (n != 2 * m + 1 && n != 2 * m) || n == 0) {
    fail(ErrorKind::ShapeMismatch, "diagonal_section expects a diagonal Y of size 2m or 2m+1");
  }
  const Field& f = y_diag.field();
  for (std::size_t i = 0; i < n; ++i)
    if (y_diag(i, i).is_zero()) fail(ErrorKind::Singular, "Y has a zero diagonal entry");

  auto root = [&](const Scalar& v) {
    try {
      return sqrt_scalar(v);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoSquareRootInSupportedTower) throw;
      fail(ErrorKind::FieldTooSmall, "no square root of " + v.to_string() + " over " + f.name());
    }
  };
  Scalar i_unit = root(-f.one());
  std::vector<Scalar> d;
  for (std::size_t i = 0; i < m; ++i) d.push_back(y_diag(i, i) + y_diag(n - 1 - i, n - 1 - i));
  if (n % 2 == 1) d.push_back(root(f.from_int(2) * y_diag(m, m)));
  for (std::size_t i = 0; i < m; ++i) d.push_back(f.one());

  const Field* ext = &i_unit.field();
  for (const auto& v : d) ext = &join_fields(*ext, v.field());
  std::size_t k = 2 * m + 1;
  Mat x(*ext, n, k);
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (n % 2 == 0 && i == m) ++col; // middle column stays zero
    x.set(i, col++, i_unit * d[i]);
  }
  Pair p = make_pair(x.lower(), y_diag);
  p.y_invertible = true;
  return p;
}

NormCertificate section_solve(const Mat& h, std::size_t n, std::size_t m) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
  require_so(h, m);
  if (!is_semisimple(h)) fail(ErrorKind::NotSemisimple, "target is not semisimple");
  const Field& f = h.field();
  std::size_t k = 2 * m + 1;
  Scalar sigma = sign_of(f, n);

  NormCertificate cert;
  cert.target = h;
  Mat kmat = Mat::identity(f, k) - sigma * h;
  std::size_t r = rank(kmat);

  if (n == k && r < k) {
    cert.route = Route::Deflated;
    cert.pair = canonical_section(h, m);
  } else {
    if (r > n) {
      throw Error(ErrorKind::DeflationFailed,
                  "I - (-1)^n h has rank " + std::to_string(r) + " > n = " + std::to_string(n),
                  static_cast<std::int64_t>(r));
    }
    if ((n - r) % 2 != 0) fail(ErrorKind::ConstructionFailed, "n - rank is odd");
    if (n == k)
      cert.route = Route::ClosedFormOdd;
    else if (n == 2 * m)
      cert.route = Route::PadEven;
    else if (n > k)
      cert.route = Route::PadLarge;
    else
      cert.route = Route::PadSmall;

    std::size_t j = (n - r) / 2;
    Mat x1 = row_space(kmat);
    Mat y(f, n, n);
    Mat x(f, n, k);
    if (r > 0) {
      Mat hr = restrict_to(x1, h);
      Mat g = x1 * antidiag(f, k) * x1.transpose();
      Mat y1 = -(inverse(Mat::identity(f, r) - sigma * hr) * g * antidiag(f, r));
      x.set_block(j, 0, x1);
      y.set_block(j, j, y1);
    }
    for (std::size_t i = 0; i < j; ++i) {
      y.set(i, i, 1);
      y.set(n - 1 - i, n - 1 - i, -1);
    }
    cert.pair = make_pair(x, y);
  }

  cert.norm = norm_value(cert.pair);
  cert.checks = pair_identities(cert.pair);
  cert.checks.push_back(make_check("norm_sign", true, sigma.is_one() ? "+1" : "-1"));
  if (cert.norm == h) {
    cert.conjugator = Mat::identity(f, k);
    cert.checks.push_back(make_check("conjugate_to_target", true, "equal"));
  } else {
    auto verdict = semisimple_so_conjugate(cert.norm, h);
    cert.checks.push_back(make_check("conjugate_to_target", verdict.value_or(false),
                                     verdict ? "invariants" : "undecided"));
  }
  if (n < 2 * m) {
    // At least 2m+1-n eigenvalues of the norm are +1 or -1.
    Poly cp = char_poly(cert.norm);
    std::size_t count = 0;
    for (int sgn : {1, -1}) {
      Poly lin = Poly::linear_root(f.from_int(sgn));
      Poly rest = cp;
      while (rest.degree() > 0 && (rest % lin).degree() < 0) {
        rest = rest / lin;
        ++count;
      }
    }
    cert.checks.push_back(make_check("small_n_eigenvalues", count >= k - n, std::to_string(count)));
  }
  if (!cert.all_ok()) {
    std::string bad;
    for (const auto& c : cert.checks)
      if (!c.ok) bad += c.name + " ";
    fail(ErrorKind::ConstructionFailed, "certificate checks failed: " + bad);
  }
  return cert;
}

std::optional<bool> semisimple_so_conjugate(const Mat& a, const Mat& b) {
  if (!a.square() || a.rows() != b.rows() || a.rows() % 2 == 0) {
    fail(ErrorKind::ShapeMismatch, "expected two matrices of the same odd size");
  }
  std::size_t m = (a.rows() - 1) / 2;
  require_so(a, m);
  require_so(b, m);
  const Field& f = join_fields(a.field(), b.field());
  Mat al = a.lift(f), bl = b.lift(f);
  if (al == bl) return true;
  if (!is_semisimple(al) || !is_semisimple(bl)) fail(ErrorKind::NotSemisimple, "conjugacy test needs semisimple input");
  if (!(char_poly(al) == char_poly(bl))) return false;
  if (!f.is_finite()) return std::nullopt;
  Mat w = antidiag(f, a.rows());
  for (int sgn : {1, -1}) {
    Mat shift = f.from_int(sgn) * Mat::identity(f, a.rows());
    Mat ea = left_kernel(al - shift), eb = left_kernel(bl - shift);
    if (ea.rows() != eb.rows()) return false;
    if (ea.rows() == 0) continue;
    Scalar da = det(ea * w * ea.transpose()), db = det(eb * w * eb.transpose());
    if (!is_square(da / db)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- twisting

std::size_t twisted_tangent_dim(const Mat& y) {
  if (!y.square()) fail(ErrorKind::ShapeMismatch, "Y must be square");
  std::size_t n = y.rows();
  const Field& f = y.field();
  Mat b = y * antidiag(f, n);
  Mat t = map_in_basis(standard_basis(f, n * n), n, [&](const Mat& xi) { return xi * b + b * xi.transpose(); });
  return n * n - rank(t);
}

std::size_t min_twisted_tangent_dim(std::size_t n) { return n / 2; }

std::vector<Mat> twisted_centralizer_members(const Mat& y, std::uint64_t budget) {
  if (!y.square()) fail(ErrorKind::ShapeMismatch, "Y must be square");
  const Field& f = y.field();
  if (!f.is_finite()) fail(ErrorKind::InvalidArgument, "member enumeration needs a finite field");
  std::size_t n = y.rows();
  if (rank(y) != n) fail(ErrorKind::Singular, "Y must be invertible");
  Mat b = y * antidiag(f, n);
  Mat bt = b.transpose();
  auto elems = f.elements();
  std::uint64_t nodes = 0;
  std::vector<Mat> rows(n);
  std::vector<Mat> found;

  std::function<void(std::size_t)> place = [&](std::size_t i) {
    if (i == n) {
      found.push_back(vstack(rows));
      return;
    }
    // Linear constraints from earlier rows: g_i B tg_j = B_ij, g_j B tg_i = B_ji.
    Mat particular(f, 1, n);
    Mat kernel = Mat::identity(f, n);
    if (i > 0) {
      Mat c(f, n, 2 * i);
      Mat rhs(f, 1, 2 * i);
      for (std::size_t j = 0; j < i; ++j) {
        c.set_block(0, 2 * j, b * rows[j].transpose());
        c.set_block(0, 2 * j + 1, bt * rows[j].transpose());
        rhs.set(0, 2 * j, b(i, j));
        rhs.set(0, 2 * j + 1, b(j, i));
      }
      Echelon e = rref(hstack({c.transpose(), rhs.transpose()}));
      for (auto pv : e.pivots)
        if (pv == n) return;
      for (std::size_t r = 0; r < e.pivots.size(); ++r) particular.set(0, e.pivots[r], e.reduced(r, n));
      kernel = left_kernel(c);
    }
    std::size_t dim = kernel.rows();
    std::vector<std::size_t> digits(dim, 0);
    while (true) {
      if (++nodes > budget) {
        throw Error(ErrorKind::BudgetExceeded, "twisted centralizer search exceeded its budget",
                    static_cast<std::int64_t>(budget));
      }
      Mat v = particular;
      for (std::size_t t = 0; t < dim; ++t)
        if (digits[t] != 0) v += elems[digits[t]] * kernel.row(t);
      if ((v * b * v.transpose())(0, 0) == b(i, i)) {
        rows[i] = v;
        place(i + 1);
      }
      std::size_t t = 0;
      while (t < dim && ++digits[t] == elems.size()) digits[t++] = 0;
      if (t == dim) break;
    }
  };
  place(0);

  auto key = [](const Mat& a) {
    std::vector<std::uint64_t> k;
    for (const auto& s : a.data()) k.push_back(s.index());
    return k;
  };
  std::sort(found.begin(), found.end(), [&](const Mat& a, const Mat& c) { return key(a) < key(c); });
  return found;
}

RegularityFlags regularity_flags(const Mat& y) {
  if (!y.square()) fail(ErrorKind::ShapeMismatch, "Y must be square");
  std::size_t n = y.rows();
  FormContext ctx = form_context(y.field(), n);
  RegularityFlags out;
  out.eps_semisimple = is_semisimple(y * eps(y, ctx));
  out.tangent_dim = twisted_tangent_dim(y);
  out.eps_regular = out.tangent_dim == min_twisted_tangent_dim(n);
  return out;
}

bool strongly_regular(const Mat& y, std::uint64_t budget) {
  if (!regularity_flags(y).eps_regular) return false;
  auto members = twisted_centralizer_members(y, budget);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!(members[i] * members[j] == members[j] * members[i])) return false;
  return true;
}

Mat ks_norm(const Mat& y, const FormContext& ctx) { return y * theta_star(y, ctx); }

KernelCheck kernel_identity(const Field& f, std::size_t n) {
  if (!f.is_finite()) fail(ErrorKind::InvalidArgument, "kernel_identity scans a finite torus");
  FormContext ctx = form_context(f, n);
  auto units = f.nonzero_elements();
  KernelCheck out;
  out.holds = true;
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    std::vector<Scalar> d;
    for (auto i : digits) d.push_back(units[i]);
    Mat y = Mat::diag(f, d);
    ++out.torus_size;
    bool in_kernel = ks_norm(y, ctx).is_identity();
    bool symmetric = true;
    for (std::size_t i = 0; i < n; ++i) symmetric = symmetric && d[i] == d[n - 1 - i];
    if (in_kernel) ++out.kernel_size;
    if (symmetric) ++out.symmetric_size;
    if (in_kernel != symmetric) out.holds = false;
    if (in_kernel) {
      // t theta*(t)^{-1} = diag(t_i t_{n+1-i}); the middle entry needs a root.
      std::vector<Scalar> t(n, f.one());
      for (std::size_t i = 0; i < n / 2; ++i) t[i] = d[i];
      if (n % 2 == 1) t[n / 2] = sqrt_scalar(d[n / 2]);
      const Field* tf = &f;
      for (const auto& s : t) tf = &join_fields(*tf, s.field());
      if (tf != &f) ++out.lifted_preimages;
      Mat tm = Mat::diag(*tf, t);
      FormContext tctx = form_context(*tf, n);
      if (!(tm * inverse(theta_star(tm, tctx)) == y.lift(*tf))) out.holds = false;
    }
    std::size_t k = 0;
    while (k < n && ++digits[k] == units.size()) digits[k++] = 0;
    if (k == n) break;
  }
  return out;
}

std::size_t so_centralizer_dim(const Mat& h) {
  if (!h.square() || h.rows() % 2 == 0) fail(ErrorKind::ShapeMismatch, "expected an odd square matrix");
  std::size_t k = h.rows();
  Mat hi = inverse(h);
  Mat ad = map_in_basis(so_basis(h.field(), k), k, [&](const Mat& a) { return h * a * hi - a; });
  return ad.rows() - rank(ad);
}

Mat phi_embed(const Mat& h0) {
  if (!h0.square() || h0.rows() % 2 != 0) fail(ErrorKind::ShapeMismatch, "phi_embed expects an even square matrix");
  Membership mm = so_membership(h0);
  if (!mm.member) fail(ErrorKind::NotInSO, "matrix is not in SO_{2m}: " + mm.witness);
  std::size_t m = h0.rows() / 2;
  Mat out = Mat::identity(h0.field(), 2 * m + 1);
  for (std::size_t i = 0; i < 2 * m; ++i)
    for (std::size_t j = 0; j < 2 * m; ++j) out.set(i < m ? i : i + 1, j < m ? j : j + 1, h0(i, j));
  return out;
}

ComparisonReport compare_with_ks(const Mat& y, std::size_t n, std::size_t m) {
  if (!y.square() || y.rows() != n || (n != 2 * m && n != 2 * m + 1) || n == 0) {
    fail(ErrorKind::ShapeMismatch, "compare_with_ks expects n = 2m or 2m+1");
  }
  if (!y.is_diagonal()) fail(ErrorKind::InvalidArgument, "compare_with_ks works on the diagonal torus");
  if (rank(y) != n) fail(ErrorKind::Singular, "Y must be invertible");
  RegularityFlags rf = regularity_flags(y);
  if (!rf.eps_regular) {
    throw Error(ErrorKind::NotRegular, "Y is not eps-regular", static_cast<std::int64_t>(rf.tangent_dim));
  }
  FormContext ctx = form_context(y.field(), n);
  ComparisonReport out;
  out.y = y;
  out.norm = norm_value(diagonal_section(y, m));
  out.ks = ks_norm(y, ctx);
  auto transport = [&](const Mat& k) { return n % 2 == 1 ? k : phi_embed(-k); };
  const Field& nf = out.norm.field();
  bool plus = transport(out.ks).lift(nf) == out.norm;
  bool minus = transport(inverse(out.ks)).lift(nf) == out.norm;
  out.ambiguous = plus && minus;
  out.sign = minus ? -1 : (plus ? 1 : 0);
  return out;
}

ScalingReport alpha_scaling(const Scalar& alpha, const Pair& p) {
  const Field& f = join_fields(join_fields(p.x.field(), p.y.field()), alpha.field());
  if (alpha.is_zero()) fail(ErrorKind::ZeroInput, "alpha must be nonzero");
  Scalar a = alpha.lift(f);
  auto lambda = sqrt_in_field(a);
  if (!lambda) fail(ErrorKind::NotASquare, alpha.to_string() + " is not a square in " + f.name());
  std::size_t m = p.m;
  std::vector<Scalar> d(m, a);
  d.push_back(*lambda);
  for (std::size_t i = 0; i < m; ++i) d.push_back(f.one());
  ScalingReport out;
  out.witness = ScalingWitness{a, *lambda, Mat::diag(f, d)};
  Mat a0 = out.witness.alpha_zero;
  Pair scaled = make_pair(p.x.lift(f) * a0, a * p.y.lift(f));
  out.lhs = norm_value(scaled);
  out.rhs = inverse(a0) * norm_value(p).lift(f) * a0;
  out.holds = out.lhs == out.rhs;
  return out;
}

DiscriminantReport discriminants(const Mat& gamma, const Mat& y_prime, std::int64_t p) {
  if (!gamma.square() || gamma.rows() % 2 == 0) fail(ErrorKind::ShapeMismatch, "gamma must be (2m+1) x (2m+1)");
  if (!y_prime.square()) fail(ErrorKind::ShapeMismatch, "y_prime must be square");
  std::size_t m = (gamma.rows() - 1) / 2, k = gamma.rows(), n = y_prime.rows();
  require_so(gamma, m);
  const Field& f = join_fields(gamma.field(), y_prime.field());
  Mat g = gamma.lift(f), yp = y_prime.lift(f);
  Mat gi = inverse(g), ypi = inverse(yp);

  Mat ad = map_in_basis(so_basis(f, k), k, [&](const Mat& a) { return g * a * gi - a; });
  QuotientMap qd = quotient_det(ad);
  if (qd.kernel_dim > m) {
    throw Error(ErrorKind::NotRegular, "gamma is not regular: centralizer dimension " + std::to_string(qd.kernel_dim),
                static_cast<std::int64_t>(qd.kernel_dim));
  }

  FormContext ctx = form_context(f, n);
  Mat ui = inverse(ctx.u);
  Mat tw = map_in_basis(standard_basis(f, n * n), n,
                        [&](const Mat& a) { return yp * (-(ctx.u * a.transpose() * ui)) * ypi - a; });
  QuotientMap qt = quotient_det(tw);
  if (qt.kernel_dim > n / 2) {
    throw Error(ErrorKind::NotRegular,
                "y_prime is not theta*-regular: twisted centralizer dimension " + std::to_string(qt.kernel_dim),
                static_cast<std::int64_t>(qt.kernel_dim));
  }

  DiscriminantReport out;
  out.d_gamma = qd.det;
  out.d_theta_star = qt.det;
  if (out.d_gamma.is_zero()) fail(ErrorKind::ZeroInput, "D(gamma) vanishes");
  out.kappa1_ratio = out.d_theta_star / out.d_gamma;
  if (f.is_rational() && p > 0 && !out.d_theta_star.is_zero()) {
    out.kappa1_valuation = padic_val(out.d_theta_star, p) - padic_val(out.d_gamma, p);
  }
  return out;
}

}  // namespace twnorm
