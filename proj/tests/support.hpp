#pragma once

#include <cstdint>
#include <vector>

#include "twnorm/forms.hpp"
#include "twnorm/random.hpp"

namespace support {

using namespace twnorm;

inline ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

// All matrices of the given shape over a finite field, in index order.
inline std::vector<Mat> all_matrices(const Field& f, std::size_t rows, std::size_t cols) {
  std::vector<Mat> out;
  std::size_t cells = rows * cols;
  auto q = static_cast<std::uint64_t>(f.order());
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < cells; ++k) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    Mat m(f, rows, cols);
    std::uint64_t c = code;
    for (std::size_t k = 0; k < cells; ++k) {
      m.set(k / cols, k % cols, f.from_index(c % q));
      c /= q;
    }
    out.push_back(m);
  }
  return out;
}

// Y = XX'/2 + R - eps~(R) solves Y + eps~(Y) = XX' for any R.
struct RawPair {
  Mat x, y;
};

inline RawPair random_raw_pair(const Field& f, std::size_t n, std::size_t m, Rng& rng) {
  FormContext ctx = form_context(f, n);
  Mat x = random_mat(f, n, 2 * m + 1, rng);
  Mat r = random_mat(f, n, n, rng);
  Mat y = f.from_int(2).inv() * (x * x_prime(x, n, m)) + r - eps_tilde(r, ctx);
  return {x, y};
}

}  // namespace support
