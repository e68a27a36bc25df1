#include "twnorm/parabolic.hpp"

#include "twnorm/linalg.hpp"

namespace twnorm {

Mat levi_embed(const LeviPoint& p) {
  if (!p.g.square() || !p.h.square() || p.h.rows() % 2 == 0) {
    fail(ErrorKind::ShapeMismatch, "levi_embed expects square g and odd-sized h");
  }
  std::size_t n = p.g.rows();
  std::size_t m = (p.h.rows() - 1) / 2;
  Membership mh = so_membership(p.h, m);
  if (!mh.member) fail(ErrorKind::NotInSO, "h is not in SO_{2m+1}: " + mh.witness);
  FormContext ctx = form_context(p.g.field(), n);
  Mat big = block_diag({p.g, p.h, eps(p.g, ctx)});
  Membership mb = so_membership(big);
  if (!mb.member) fail(ErrorKind::NotInSO, "Levi element left SO_{2r+1}: " + mb.witness);
  return big;
}

NPoint n_make(const Mat& x, const Mat& y) {
  if (!y.square() || x.rows() != y.rows() || x.cols() % 2 == 0) {
    fail(ErrorKind::ShapeMismatch, "n_make expects X: n x (2m+1) and Y: n x n");
  }
  NPoint u{x, y, y.rows(), (x.cols() - 1) / 2};
  FormContext ctx = form_context(y.field(), u.n);
  Mat defect = y + eps_tilde(y, ctx) - x * x_prime(x, u.n, u.m);
  if (!defect.is_zero()) fail(ErrorKind::ConstraintViolated, "Y + eps~(Y) - XX' = " + defect.to_string());
  return u;
}

Mat n_matrix(const NPoint& u) {
  const Field& f = join_fields(u.x.field(), u.y.field());
  std::size_t n = u.n, k = 2 * u.m + 1;
  Mat big = Mat::identity(f, 2 * n + k);
  big.set_block(0, n, u.x);
  big.set_block(0, n + k, u.y);
  big.set_block(n, n + k, x_prime(u.x, n, u.m));
  return big;
}

Mat w0(const Field& f, std::size_t n, std::size_t m) {
  std::size_t k = 2 * m + 1;
  Mat w(f, 2 * n + k, 2 * n + k);
  Mat id = Mat::identity(f, n);
  w.set_block(0, n + k, id);
  w.set_block(n + k, 0, id);
  Mat mid = Mat::identity(f, k);
  w.set_block(n, n, n % 2 == 0 ? mid : -mid);
  return w;
}

BruhatFactorization bruhat_factor(const NPoint& u) {
  const Field& f = join_fields(u.x.field(), u.y.field());
  std::size_t n = u.n, m = u.m, k = 2 * m + 1;
  Mat yi;
  try {
    yi = inverse(u.y);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    fail(ErrorKind::NotInBigCell, "Y is singular (rank " + std::to_string(e.detail()) + ")");
  }
  FormContext ctx = form_context(f, n);
  Mat xp = x_prime(u.x, n, m);
  Mat yix = yi * u.x;
  Mat sign_id = n % 2 == 0 ? Mat::identity(f, k) : -Mat::identity(f, k);
  Mat core = Mat::identity(f, k) - xp * yix;

  BruhatFactorization out;
  out.p_part = Mat(f, 2 * n + k, 2 * n + k);
  out.p_part.set_block(0, 0, eps(u.y, ctx));
  out.p_part.set_block(0, n, -yix);
  out.p_part.set_block(0, n + k, Mat::identity(f, n));
  out.p_part.set_block(n, n, sign_id * core);
  out.p_part.set_block(n, n + k, sign_id * xp);
  out.p_part.set_block(n + k, n + k, u.y);

  out.nbar_part = Mat::identity(f, 2 * n + k);
  out.nbar_part.set_block(n, 0, x_prime(yix, n, m));
  out.nbar_part.set_block(n + k, 0, yi);
  out.nbar_part.set_block(n + k, n, yix);

  Mat target = inverse(w0(f, n, m)) * n_matrix(u);
  if (!(out.p_part * out.nbar_part == target)) {
    fail(ErrorKind::ConstructionFailed, "Bruhat factors do not multiply to w0^{-1} u");
  }
  return out;
}

}  // namespace twnorm
