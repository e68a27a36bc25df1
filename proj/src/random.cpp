#include "twnorm/random.hpp"

#include "twnorm/forms.hpp"
#include "twnorm/linalg.hpp"

namespace twnorm {

Scalar random_scalar(const Field& f, Rng& rng) {
  if (f.is_finite()) {
    std::uniform_int_distribution<std::int64_t> d(0, f.order() - 1);
    return f.from_index(static_cast<std::uint64_t>(d(rng)));
  }
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  long a = num(rng);
  long b = den(rng);
  return f.from_rational(mpq_class(a, b));
}

Scalar random_nonzero(const Field& f, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

Mat random_mat(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, random_scalar(f, rng));
  return m;
}

Mat random_invertible(const Field& f, std::size_t n, Rng& rng) {
  for (;;) {
    Mat m = random_mat(f, n, n, rng);
    if (!det(m).is_zero()) return m;
  }
}

Mat random_so(const Field& f, std::size_t m, Rng& rng) {
  std::size_t k = 2 * m + 1;
  Mat w = antidiag(f, k);
  Mat g = Mat::identity(f, k);
  for (std::size_t i = 0; i < 2 * k; ++i) {
    Mat a = random_mat(f, 1, k, rng);
    while (pairing(a, a, w).is_zero()) a = random_mat(f, 1, k, rng);
    g = g * reflection(a, w);
  }
  return g;
}

}  // namespace twnorm
