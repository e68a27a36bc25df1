#include "twnorm/forms.hpp"

#include "twnorm/linalg.hpp"

namespace twnorm {

Mat antidiag(const Field& f, std::size_t n) {
  Mat w(f, n, n);
  for (std::size_t i = 0; i < n; ++i) w.set(i, n - 1 - i, 1);
  return w;
}

FormContext form_context(const Field& f, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "form_context needs n >= 1");
  FormContext ctx;
  ctx.n = n;
  ctx.w = antidiag(f, n);
  ctx.g_theta = Mat(f, n, n);
  ctx.g_eps = Mat(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    ctx.g_theta.set(i, i, i % 2 == 0 ? -1 : 1);
    bool odd_n = n % 2 == 1;
    ctx.g_eps.set(i, i, (i % 2 == 0) == odd_n ? -1 : 1);
  }
  ctx.u = ctx.g_theta * ctx.w;

  if (!(ctx.w == ctx.w.transpose()) || !(ctx.w * ctx.w).is_identity()) {
    fail(ErrorKind::ConstructionFailed, "w_n is not a symmetric involution");
  }
  if (!(ctx.u * ctx.g_eps == ctx.w)) fail(ErrorKind::ConstructionFailed, "w_n != u_n g_eps");
  if (n % 2 == 1 && !(ctx.g_eps * ctx.u == ctx.w)) fail(ErrorKind::ConstructionFailed, "w_n != g_eps u_n");
  if (n % 2 == 0 && !(ctx.g_eps * ctx.u == -ctx.w)) fail(ErrorKind::ConstructionFailed, "g_eps u_n != -w_n");
  return ctx;
}

Mat eps(const Mat& g, const FormContext& ctx) { return ctx.w * inverse(g).transpose() * ctx.w; }

Mat eps_tilde(const Mat& y, const FormContext& ctx) {
  if (y.rows() != ctx.n || y.cols() != ctx.n) fail(ErrorKind::ShapeMismatch, "eps_tilde expects an n x n matrix");
  return ctx.w * y.transpose() * ctx.w;
}

Mat theta_star(const Mat& g, const FormContext& ctx) {
  return ctx.u * inverse(g).transpose() * inverse(ctx.u);
}

Mat x_prime(const Mat& x, std::size_t n, std::size_t m) {
  if (x.rows() != n || x.cols() != 2 * m + 1) {
    fail(ErrorKind::ShapeMismatch, "X must be " + std::to_string(n) + "x" + std::to_string(2 * m + 1));
  }
  const Field& f = x.field();
  return -(antidiag(f, 2 * m + 1) * x.transpose() * antidiag(f, n));
}

Membership so_membership(const Mat& h) {
  Membership r;
  if (!h.square()) {
    r.witness = "not square";
    return r;
  }
  Mat w = antidiag(h.field(), h.rows());
  Mat lhs = h * w * h.transpose();
  r.preserves_form = lhs == w;
  Scalar d = det(h);
  r.det_one = d.is_one();
  r.member = r.preserves_form && r.det_one;
  if (!r.preserves_form) {
    r.witness = "h w th = " + lhs.to_string();
  } else if (!r.det_one) {
    r.witness = "det h = " + d.to_string();
  }
  return r;
}

Membership so_membership(const Mat& h, std::size_t m) {
  if (h.rows() != 2 * m + 1 || h.cols() != 2 * m + 1) {
    Membership r;
    r.witness = "expected size " + std::to_string(2 * m + 1);
    return r;
  }
  return so_membership(h);
}

Scalar pairing(const Mat& a, const Mat& b, const Mat& form) { return (a * form * b.transpose())(0, 0); }

OrthogonalBasis orthogonalize(const Mat& rows, const Mat& form) {
  const Field& f = join_fields(rows.field(), form.field());
  std::vector<Mat> vecs;
  Mat span = row_space(rows);
  for (std::size_t i = 0; i < span.rows(); ++i) vecs.push_back(span.row(i).lift(f));
  std::vector<Mat> out;
  std::vector<Scalar> values;
  while (!vecs.empty()) {
    std::size_t pick = vecs.size();
    for (std::size_t j = 0; j < vecs.size(); ++j) {
      if (!pairing(vecs[j], vecs[j], form).is_zero()) {
        pick = j;
        break;
      }
    }
    if (pick == vecs.size()) {
      for (std::size_t j = 0; j < vecs.size() && pick == vecs.size(); ++j)
        for (std::size_t k = j + 1; k < vecs.size(); ++k)
          if (!pairing(vecs[j], vecs[k], form).is_zero()) {
            vecs[j] += vecs[k];
            pick = j;
            break;
          }
    }
    if (pick == vecs.size()) {
      for (auto& v : vecs) {
        out.push_back(v);
        values.push_back(f.zero());
      }
      break;
    }
    Mat b = vecs[pick];
    vecs.erase(vecs.begin() + static_cast<std::ptrdiff_t>(pick));
    Scalar q = pairing(b, b, form);
    for (auto& v : vecs) {
      Scalar c = pairing(v, b, form) / q;
      if (!c.is_zero()) v -= c * b;
    }
    out.push_back(b);
    values.push_back(q);
  }
  OrthogonalBasis ob;
  ob.basis = out.empty() ? Mat(f, 0, rows.cols()) : vstack(out);
  ob.values = std::move(values);
  return ob;
}

namespace {

std::vector<Scalar> small_rationals(const Field& f) {
  std::vector<Scalar> out{f.zero()};
  const long nums[] = {1, 2, 3, 4, 5};
  const long dens[] = {1, 2, 3};
  for (long d : dens)
    for (long n : nums) {
      mpq_class q(n, d);
      q.canonicalize();
      if (q.get_den() != d) continue;
      out.push_back(f.from_rational(q));
      out.push_back(f.from_rational(mpq_class(-q)));
    }
  return out;
}

std::optional<Mat> represent_rational(const Scalar& value, const OrthogonalBasis& ob, const Mat& form) {
  const Field& f = value.field();
  std::size_t k = ob.basis.rows();
  const auto& q = ob.values;
  auto b = [&](std::size_t i) { return ob.basis.row(i); };
  auto search = small_rationals(f);

  for (std::size_t i = 0; i < k; ++i)
    if (auto c = sqrt_in_field(value / q[i])) return *c * b(i);

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      for (const auto& x : search) {
        Scalar rem = value - q[i] * x * x;
        if (auto y = sqrt_in_field(rem / q[j])) return x * b(i) + *y * b(j);
      }
    }

  // Hyperbolic trick: an isotropic f and a partner f' give f + (value/2) f'.
  std::optional<Mat> iso;
  for (std::size_t i = 0; i < k && !iso; ++i)
    for (std::size_t j = i + 1; j < k && !iso; ++j)
      if (auto r = sqrt_in_field(-q[i] / q[j])) iso = b(i) + *r * b(j);
  for (std::size_t i = 0; i < k && !iso; ++i)
    for (std::size_t j = i + 1; j < k && !iso; ++j)
      for (std::size_t l = j + 1; l < k && !iso; ++l)
        for (const auto& x : search) {
          if (iso) break;
          for (const auto& y : search) {
            Scalar rest = -(q[i] * x * x + q[j] * y * y) / q[l];
            if (rest.is_zero()) continue;
            if (auto z = sqrt_in_field(rest)) {
              iso = x * b(i) + y * b(j) + *z * b(l);
              break;
            }
          }
        }
  if (iso) {
    for (std::size_t i = 0; i < k; ++i) {
      Scalar fg = pairing(*iso, b(i), form);
      if (fg.is_zero()) continue;
      Scalar qg = pairing(b(i), b(i), form);
      Mat partner = fg.inv() * (b(i) - (qg / (f.from_int(2) * fg)) * *iso);
      return *iso + (value / f.from_int(2)) * partner;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Mat> represent(const Scalar& value, const OrthogonalBasis& ob, const Mat& form) {
  std::size_t k = ob.basis.rows();
  if (k == 0) return std::nullopt;
  const Field& f = ob.basis.field();
  const auto& q = ob.values;
  if (auto c = sqrt_in_field(value / q[0])) return *c * ob.basis.row(0);
  if (!f.is_finite()) return represent_rational(value.lift(f), ob, form);
  if (k < 2) return std::nullopt;
  for (const auto& x : f.elements()) {
    Scalar rem = value - q[0] * x * x;
    if (auto y = sqrt_in_field(rem / q[1])) return x * ob.basis.row(0) + *y * ob.basis.row(1);
  }
  return std::nullopt;
}

Mat reflection(const Mat& a, const Mat& form) {
  const Field& f = a.field();
  Scalar qa = pairing(a, a, form);
  if (qa.is_zero()) fail(ErrorKind::ConstructionFailed, "reflection in an isotropic vector");
  Mat id = Mat::identity(f, a.cols());
  return id - (f.from_int(2) / qa) * (form * a.transpose() * a);
}

namespace {

[[noreturn]] void not_represented(const Scalar& v) {
  fail(ErrorKind::AnisotropicObstruction, "value " + v.to_string() + " not represented by the remaining split space");
}

// Complement of x inside an orthogonal room.
OrthogonalBasis shrink(const OrthogonalBasis& room, const Mat& x, const Mat& wk) {
  const Field& f = wk.field();
  std::size_t k = wk.rows();
  Mat first = room.basis.row(0);
  Scalar c = pairing(x, first, wk) / room.values[0];
  if (x == c * first) {
    OrthogonalBasis next;
    next.basis = room.basis.rows() > 1 ? room.basis.block(1, 0, room.basis.rows() - 1, k) : Mat(f, 0, k);
    next.values.assign(room.values.begin() + 1, room.values.end());
    return next;
  }
  Mat coeffs = left_kernel(room.basis * wk * x.transpose());
  if (coeffs.rows() == 0) return OrthogonalBasis{Mat(f, 0, k), {}};
  return orthogonalize(coeffs * room.basis, wk);
}

// Mutually orthogonal vectors with the given nonzero lengths, greedily.
// Over a finite field this fails only when the last step is forced and the
// discriminants disagree.
std::vector<Mat> embed_values_finite(const std::vector<Scalar>& values, const Mat& wk) {
  OrthogonalBasis room = orthogonalize(Mat::identity(wk.field(), wk.rows()), wk);
  std::vector<Mat> out;
  for (const auto& v : values) {
    auto x = represent(v, room, wk);
    if (!x) not_represented(v);
    out.push_back(*x);
    room = shrink(room, *x, wk);
  }
  return out;
}

// Over Q the hyperbolic planes e_i, e_{k+1-i} represent anything; they are
// spent only when the anisotropic part cannot take the value directly.
std::vector<Mat> embed_values_rational(const std::vector<Scalar>& values, std::size_t m, const Mat& wk) {
  const Field& f = wk.field();
  std::size_t k = wk.rows();
  std::vector<std::pair<Mat, Mat>> planes;
  for (std::size_t i = 0; i < m; ++i) {
    Mat e(f, 1, k), e2(f, 1, k);
    e.set(0, i, 1);
    e2.set(0, k - 1 - i, 1);
    planes.emplace_back(e, e2);
  }
  OrthogonalBasis diag;
  diag.basis = Mat(f, 1, k);
  diag.basis.set(0, m, 1);
  diag.values = {f.one()};
  Scalar half = f.from_int(2).inv();
  std::vector<Mat> out;
  for (const auto& v : values) {
    std::optional<Mat> x;
    for (std::size_t i = 0; i < diag.values.size() && !x; ++i) {
      if (auto c = sqrt_in_field(v / diag.values[i])) {
        x = *c * diag.basis.row(i);
        // Move the used line to the front so shrink() drops it directly.
        if (i != 0) {
          Mat b = diag.basis;
          b.set_block(0, 0, diag.basis.row(i));
          b.set_block(i, 0, diag.basis.row(0));
          std::swap(diag.values[0], diag.values[i]);
          diag.basis = b;
        }
        diag = shrink(diag, *x, wk);
      }
    }
    if (!x && !planes.empty()) {
      auto [e, e2] = planes.back();
      planes.pop_back();
      x = e + (v * half) * e2;
      Mat rest = e - (v * half) * e2;
      diag.basis = diag.basis.rows() == 0 ? rest : vstack({diag.basis, rest});
      diag.values.push_back(-v);
    }
    if (!x && diag.values.size() > 0) {
      x = represent(v, diag, wk);
      if (x) diag = shrink(diag, *x, wk);
    }
    if (!x) not_represented(v);
    out.push_back(*x);
  }
  return out;
}

}  // namespace

Mat congruence_to_split(const Mat& s, std::size_t n, std::size_t m) {
  const Field& f = s.field();
  if (s.rows() != n || s.cols() != n) fail(ErrorKind::ShapeMismatch, "S must be n x n");
  FormContext ctx = form_context(f, n);
  if (!(eps_tilde(s, ctx) == s)) fail(ErrorKind::ConstraintViolated, "S is not eps_tilde-symmetric");
  std::size_t k = 2 * m + 1;
  Mat quad = -(s * ctx.w);
  OrthogonalBasis p = orthogonalize(Mat::identity(f, n), quad);
  std::size_t r = 0;
  while (r < p.values.size() && !p.values[r].is_zero()) ++r;
  if (r > k) fail(ErrorKind::RankTooLarge, "rank " + std::to_string(r) + " exceeds 2m+1 = " + std::to_string(k));

  Mat wk = antidiag(f, k);
  std::vector<Scalar> targets(p.values.begin(), p.values.begin() + static_cast<std::ptrdiff_t>(r));
  std::vector<Mat> rows = f.is_finite() ? embed_values_finite(targets, wk) : embed_values_rational(targets, m, wk);
  Mat x0(f, n, k);
  for (std::size_t i = 0; i < r; ++i) x0.set_block(i, 0, rows[i]);
  Mat x = inverse(p.basis) * x0;
  if (!(x * x_prime(x, n, m) == s)) fail(ErrorKind::ConstructionFailed, "congruence_to_split self-check failed");
  return x;
}

PinnedForm pin_semisimple(const Mat& h, std::size_t m) {
  const Field& f = h.field();
  std::size_t k = 2 * m + 1;
  Membership mem = so_membership(h, m);
  if (!mem.member) fail(ErrorKind::NotInSO, "pin_semisimple: " + mem.witness);
  if (!is_semisimple(h)) fail(ErrorKind::NotSemisimple, "pin_semisimple: h is not semisimple");
  Mat w = antidiag(f, k);
  Mat id = Mat::identity(f, k);
  Mat e(f, 1, k);
  e.set(0, m, 1);

  Mat r = id;
  if (!(e * h == e)) {
    Mat fixed = left_kernel(h - id);
    OrthogonalBasis ob = orthogonalize(fixed, w);
    auto v = represent(f.one(), ob, w);
    if (!v) fail(ErrorKind::NoSuitableFixedVector, "no fixed vector of norm 1");
    Mat a = e - *v;
    if (!pairing(a, a, w).is_zero()) {
      r = reflection(a, w);
    } else {
      r = reflection(e + *v, w) * reflection(*v, w);
    }
    if (!det(r).is_one()) r = -r;
  }
  PinnedForm out;
  out.original = h;
  out.conjugator = inverse(r);
  out.pinned = r * h * out.conjugator;
  if (!so_membership(out.conjugator, m).member) fail(ErrorKind::ConstructionFailed, "conjugator left SO");
  for (std::size_t i = 0; i < k; ++i) {
    bool mid = i == m;
    if (!(out.pinned(m, i) == (mid ? f.one() : f.zero())) || !(out.pinned(i, m) == (mid ? f.one() : f.zero()))) {
      fail(ErrorKind::ConstructionFailed, "pinned matrix does not fix e_{m+1}");
    }
  }
  return out;
}

}  // namespace twnorm
