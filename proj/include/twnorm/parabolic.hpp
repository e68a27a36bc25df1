#pragma once

// The maximal parabolic P = MN of SO_{2r+1}, r = n + m, with Levi
// M = GL_n x SO_{2m+1} and unipotent radical N parametrized by pairs (X, Y).

#include <cstddef>

#include "twnorm/forms.hpp"

namespace twnorm {

struct LeviPoint {
  Mat g; // n x n, invertible
  Mat h; // in SO_{2m+1}
};

/// diag(g, h, eps(g)), checked to lie in SO_{2n+2m+1}.
Mat levi_embed(const LeviPoint& p);

struct NPoint {
  Mat x; // n x (2m+1)
  Mat y; // n x n
  std::size_t n = 0;
  std::size_t m = 0;
};

/// Validates Y + eps_tilde(Y) = X X'; ConstraintViolated reports the defect.
NPoint n_make(const Mat& x, const Mat& y);
/// [[I, X, Y], [0, I, X'], [0, 0, I]]
Mat n_matrix(const NPoint& u);

/// [[0, 0, I_n], [0, (-1)^n I_{2m+1}, 0], [I_n, 0, 0]]
Mat w0(const Field& f, std::size_t n, std::size_t m);

struct BruhatFactorization {
  Mat p_part;
  Mat nbar_part;
};

/// w0^{-1} u = p_part nbar_part; NotInBigCell when Y is singular.
BruhatFactorization bruhat_factor(const NPoint& u);

}  // namespace twnorm
