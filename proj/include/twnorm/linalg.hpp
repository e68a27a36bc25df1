#pragma once

// Gaussian elimination and spectral helpers. Vectors are rows: kernels are
// left kernels unless stated otherwise, images are row spaces.

#include <cstddef>
#include <vector>

#include "twnorm/matrix.hpp"
#include "twnorm/poly.hpp"

namespace twnorm {

struct Echelon {
  Mat reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(const Mat& a);
std::size_t rank(const Mat& a);
Scalar det(const Mat& a);
/// Exact inverse; Error(Singular) carries the rank in detail().
Mat inverse(const Mat& a);

/// Rows spanning {v : v a = 0}; 0 rows when trivial.
Mat left_kernel(const Mat& a);
/// Rows spanning {v : a tv = 0}.
Mat right_kernel(const Mat& a);
/// Reduced echelon basis of the row space.
Mat row_space(const Mat& a);
/// Coefficients c with c * basis = v, or empty when v is outside the span.
std::vector<Scalar> coordinates(const Mat& basis, const Mat& v);
/// Complete the rows of `a` (independent) to a basis, appending standard vectors.
Mat complete_basis(const Mat& a);

Poly char_poly(const Mat& a);
Poly min_poly(const Mat& a);
bool is_semisimple(const Mat& a);
/// dim ker(a - lambda I).
std::size_t eigenspace_dim(const Mat& a, const Scalar& lambda);

struct Spectrum {
  std::vector<Root> roots;
  bool semisimple = false;
};

/// Eigenvalues with multiplicity, in the field or its quadratic extension.
Spectrum char_poly_roots(const Mat& a);

}  // namespace twnorm
