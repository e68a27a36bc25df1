#include "twnorm/matrix.hpp"

#include <sstream>

namespace twnorm {

const Field& join_fields(const Field& a, const Field& b) {
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  fail(ErrorKind::FieldMismatch, "mixing " + a.name() + " and " + b.name());
}

Mat::Mat(const Field& f, std::size_t rows, std::size_t cols)
    : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = f.one();
  return m;
}

Mat Mat::diag(const Field& f, const std::vector<Scalar>& d) {
  Mat m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

Mat Mat::diag_ints(const Field& f, const std::vector<std::int64_t>& d) {
  Mat m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

Mat Mat::from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(ErrorKind::ShapeMismatch, "ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Mat Mat::parse(const Field& f, std::string_view text) {
  std::vector<std::vector<Scalar>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row_text = text.substr(start, end - start);
    std::vector<Scalar> row;
    std::size_t s = 0;
    while (s <= row_text.size()) {
      std::size_t e = row_text.find(',', s);
      if (e == std::string_view::npos) e = row_text.size();
      row.push_back(f.parse(row_text.substr(s, e - s)));
      s = e + 1;
    }
    rows.push_back(std::move(row));
    start = end + 1;
  }
  std::size_t c = rows[0].size();
  Mat m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) fail(ErrorKind::ParseError, "ragged matrix text");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void Mat::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (v.field_ptr() == field_) {
    data_[r * cols_ + c] = v;
  } else {
    data_[r * cols_ + c] = v.lift(*field_);
  }
}

Mat Mat::transpose() const {
  Mat t(*field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorKind::ShapeMismatch, "block out of range");
  Mat b(*field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) fail(ErrorKind::ShapeMismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) set(r0 + i, c0 + j, b(i, j));
}

Mat Mat::lift(const Field& target) const {
  if (&target == field_) return *this;
  Mat m(target, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k].lift(target);
  return m;
}

Mat Mat::lower() const {
  if (field_->base() == nullptr) return *this;
  for (const auto& s : data_)
    if (!s.in_base_field()) return *this;
  Mat m(*field_->base(), rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k].lower();
  return m;
}

bool Mat::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& s = (*this)(i, j);
      if (i == j ? !s.is_one() : !s.is_zero()) return false;
    }
  return true;
}

bool Mat::is_diagonal() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

Scalar Mat::trace() const {
  Scalar t = field_->zero();
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& s : m.data_) s = -s;
  return m;
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::ShapeMismatch, "matrix sum shape mismatch");
  if (&join_fields(*field_, *o.field_) != field_) *this = lift(*o.field_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::ShapeMismatch, "matrix difference shape mismatch");
  if (&join_fields(*field_, *o.field_) != field_) *this = lift(*o.field_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Mat operator*(const Mat& a_in, const Mat& b_in) {
  if (a_in.cols_ != b_in.rows_) {
    fail(ErrorKind::ShapeMismatch, "cannot multiply " + std::to_string(a_in.rows_) + "x" +
                                       std::to_string(a_in.cols_) + " by " + std::to_string(b_in.rows_) + "x" +
                                       std::to_string(b_in.cols_));
  }
  const Field& f = join_fields(*a_in.field_, *b_in.field_);
  const Mat& a = a_in.field_ == &f ? a_in : a_in.lift(f);
  const Mat& b = b_in.field_ == &f ? b_in : b_in.lift(f);
  Mat c(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.data_[i * a.cols_ + k];
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b.data_[k * b.cols_ + j];
        if (bkj.is_zero()) continue;
        c.data_[i * b.cols_ + j] += aik * bkj;
      }
    }
  return c;
}

Mat operator*(const Scalar& s, const Mat& a) {
  const Field& f = join_fields(s.field(), *a.field_);
  Mat m = a.lift(f);
  for (auto& x : m.data_) x *= s;
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    if (!(a.data_[k] == b.data_[k])) return false;
  return true;
}

std::string Mat::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ';';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ',';
      out << (*this)(i, j).to_string();
    }
  }
  return out.str();
}

namespace {

const Field& common_field(const std::vector<Mat>& parts) {
  const Field* f = &parts.front().field();
  for (const auto& p : parts) f = &join_fields(*f, p.field());
  return *f;
}

}  // namespace

Mat hstack(const std::vector<Mat>& parts) {
  std::size_t r = parts.front().rows(), c = 0;
  for (const auto& p : parts) {
    if (p.rows() != r) fail(ErrorKind::ShapeMismatch, "hstack row mismatch");
    c += p.cols();
  }
  Mat m(common_field(parts), r, c);
  std::size_t off = 0;
  for (const auto& p : parts) {
    m.set_block(0, off, p);
    off += p.cols();
  }
  return m;
}

Mat vstack(const std::vector<Mat>& parts) {
  std::size_t c = parts.front().cols(), r = 0;
  for (const auto& p : parts) {
    if (p.cols() != c) fail(ErrorKind::ShapeMismatch, "vstack column mismatch");
    r += p.rows();
  }
  Mat m(common_field(parts), r, c);
  std::size_t off = 0;
  for (const auto& p : parts) {
    m.set_block(off, 0, p);
    off += p.rows();
  }
  return m;
}

Mat block_diag(const std::vector<Mat>& parts) {
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    r += p.rows();
    c += p.cols();
  }
  Mat m(common_field(parts), r, c);
  std::size_t ro = 0, co = 0;
  for (const auto& p : parts) {
    m.set_block(ro, co, p);
    ro += p.rows();
    co += p.cols();
  }
  return m;
}

}  // namespace twnorm
