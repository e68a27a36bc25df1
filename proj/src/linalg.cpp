#include "twnorm/linalg.hpp"

#include <utility>

namespace twnorm {

namespace {

void swap_rows(Mat& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Scalar t = a(i, c);
    a.set(i, c, a(j, c));
    a.set(j, c, t);
  }
}

void swap_cols(Mat& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Scalar t = a(r, i);
    a.set(r, i, a(r, j));
    a.set(r, j, t);
  }
}

}  // namespace

Echelon rref(const Mat& a_in) {
  Mat a = a_in;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    swap_rows(a, row, p);
    Scalar inv = a(row, col).inv();
    for (std::size_t c = col; c < a.cols(); ++c) a.set(row, c, a(row, c) * inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      Scalar factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a.set(r, c, a(r, c) - factor * a(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(a), std::move(pivots)};
}

std::size_t rank(const Mat& a) { return rref(a).pivots.size(); }

Scalar det(const Mat& a_in) {
  if (!a_in.square()) fail(ErrorKind::ShapeMismatch, "det of a non-square matrix");
  Mat a = a_in;
  std::size_t n = a.rows();
  Scalar d = a.field().one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col).is_zero()) ++p;
    if (p == n) return a.field().zero();
    if (p != col) {
      swap_rows(a, p, col);
      d = -d;
    }
    d *= a(col, col);
    Scalar inv = a(col, col).inv();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      Scalar factor = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a.set(r, c, a(r, c) - factor * a(col, c));
    }
  }
  return d;
}

Mat inverse(const Mat& a) {
  if (!a.square()) fail(ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  std::size_t n = a.rows();
  Echelon e = rref(hstack({a, Mat::identity(a.field(), n)}));
  std::size_t r = 0;
  for (auto p : e.pivots)
    if (p < n) ++r;
  if (r < n) throw Error(ErrorKind::Singular, "matrix is singular (rank " + std::to_string(r) + ")",
                         static_cast<std::int64_t>(r));
  return e.reduced.block(0, n, n, n);
}

Mat right_kernel(const Mat& a) {
  Echelon e = rref(a);
  std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat k(a.field(), free_cols.size(), n);
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    std::size_t fc = free_cols[i];
    k.set(i, fc, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k.set(i, e.pivots[r], -e.reduced(r, fc));
  }
  return k;
}

Mat left_kernel(const Mat& a) { return right_kernel(a.transpose()); }

Mat row_space(const Mat& a) {
  Echelon e = rref(a);
  return e.reduced.block(0, 0, e.pivots.size(), a.cols());
}

std::vector<Scalar> coordinates(const Mat& basis, const Mat& v) {
  // Solve c * basis = v via the transposed system.
  std::size_t k = basis.rows();
  Mat aug = hstack({basis.transpose(), v.transpose()});
  Echelon e = rref(aug);
  for (auto p : e.pivots)
    if (p == k) return {};
  std::vector<Scalar> c(k, aug.field().zero());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) c[e.pivots[r]] = e.reduced(r, k);
  return c;
}

Mat complete_basis(const Mat& a) {
  std::size_t n = a.cols();
  Mat cur = a;
  std::size_t r = rank(cur);
  for (std::size_t i = 0; i < n && r < n; ++i) {
    Mat e(a.field(), 1, n);
    e.set(0, i, 1);
    Mat next = cur.rows() == 0 ? e : vstack({cur, e});
    std::size_t nr = rank(next);
    if (nr > r) {
      cur = next;
      r = nr;
    }
  }
  return cur;
}

Poly char_poly(const Mat& a_in) {
  if (!a_in.square()) fail(ErrorKind::ShapeMismatch, "char_poly of a non-square matrix");
  const Field& f = a_in.field();
  std::size_t n = a_in.rows();
  Mat h = a_in;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t p = m;
    while (p < n && h(p, m - 1).is_zero()) ++p;
    if (p == n) continue;
    swap_rows(h, p, m);
    swap_cols(h, p, m);
    Scalar inv = h(m, m - 1).inv();
    for (std::size_t i = m + 1; i < n; ++i) {
      if (h(i, m - 1).is_zero()) continue;
      Scalar u = h(i, m - 1) * inv;
      for (std::size_t c = 0; c < n; ++c) h.set(i, c, h(i, c) - u * h(m, c));
      for (std::size_t r = 0; r < n; ++r) h.set(r, m, h(r, m) + u * h(r, i));
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik prod_{j=i+1..k} h_{j,j-1} p_{i-1}
  std::vector<Poly> p;
  p.push_back(Poly::constant(f.one()));
  for (std::size_t k = 0; k < n; ++k) {
    Poly next = Poly(f, {-h(k, k), f.one()}) * p[k];
    Scalar prod = f.one();
    for (std::size_t i = k; i-- > 0;) {
      prod *= h(i + 1, i);
      if (prod.is_zero()) break;
      next -= (prod * h(i, k)) * p[i];
    }
    p.push_back(next);
  }
  return p[n];
}

Poly min_poly(const Mat& a) {
  if (!a.square()) fail(ErrorKind::ShapeMismatch, "min_poly of a non-square matrix");
  const Field& f = a.field();
  std::size_t n = a.rows();
  // Find the first power A^k that depends on I, A, ..., A^{k-1}.
  std::vector<Mat> powers;
  Mat cur = Mat::identity(f, n);
  for (std::size_t k = 0; k <= n; ++k) {
    Mat flat(f, 1, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat.set(0, i * n + j, cur(i, j));
    if (!powers.empty()) {
      auto c = coordinates(vstack(powers), flat);
      if (!c.empty()) {
        std::vector<Scalar> coeffs;
        for (auto& x : c) coeffs.push_back(-x);
        coeffs.push_back(f.one());
        return Poly(f, std::move(coeffs));
      }
    }
    powers.push_back(flat);
    cur = cur * a;
  }
  return char_poly(a);
}

bool is_semisimple(const Mat& a) {
  // Squarefree minimal polynomial; fields here are perfect.
  return is_squarefree(min_poly(a));
}

std::size_t eigenspace_dim(const Mat& a, const Scalar& lambda) {
  Mat shifted = a - lambda * Mat::identity(a.field(), a.rows());
  return a.rows() - rank(shifted);
}

Spectrum char_poly_roots(const Mat& a) {
  Spectrum s;
  s.roots = poly_roots(char_poly(a));
  s.semisimple = is_semisimple(a);
  return s;
}

}  // namespace twnorm
