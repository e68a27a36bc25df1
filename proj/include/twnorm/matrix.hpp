#pragma once

// Dense matrices over an exact Field. All entries live in the matrix's field;
// mixing F_p and F_p^2 operands lifts to F_p^2.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twnorm/field.hpp"

namespace twnorm {

class Mat {
 public:
  Mat() = default;
  Mat(const Field& f, std::size_t rows, std::size_t cols);

  static Mat zero(const Field& f, std::size_t rows, std::size_t cols) { return Mat(f, rows, cols); }
  static Mat identity(const Field& f, std::size_t n);
  static Mat diag(const Field& f, const std::vector<Scalar>& d);
  static Mat diag_ints(const Field& f, const std::vector<std::int64_t>& d);
  static Mat from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows);
  /// "1,0;0,1"; entries parsed by Field::parse.
  static Mat parse(const Field& f, std::string_view text);

  const Field& field() const { return *field_; }
  const Field* field_ptr() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return field_ == nullptr; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_->from_int(v); }
  const std::vector<Scalar>& data() const noexcept { return data_; }

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  Mat row(std::size_t r) const { return block(r, 0, 1, cols_); }
  Mat lift(const Field& target) const;
  /// Drops from F_p^2 to F_p when every entry lies in F_p.
  Mat lower() const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  Scalar trace() const;

  Mat operator-() const;
  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Scalar& s, const Mat& a);
  friend bool operator==(const Mat& a, const Mat& b);

  /// Text format: rows separated by ';', entries by ','.
  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Common field of two matrices (the larger one of the tower).
const Field& join_fields(const Field& a, const Field& b);

Mat hstack(const std::vector<Mat>& parts);
Mat vstack(const std::vector<Mat>& parts);
Mat block_diag(const std::vector<Mat>& parts);

}  // namespace twnorm
