#pragma once

// Deterministic sampling of scalars and matrices for property checks.

#include <cstdint>
#include <random>

#include "twnorm/matrix.hpp"

namespace twnorm {

using Rng = std::mt19937_64;

/// Uniform over a finite field; small fractions (|num| <= 6, den <= 4) over Q.
Scalar random_scalar(const Field& f, Rng& rng);
Scalar random_nonzero(const Field& f, Rng& rng);
Mat random_mat(const Field& f, std::size_t rows, std::size_t cols, Rng& rng);
Mat random_invertible(const Field& f, std::size_t n, Rng& rng);
/// Product of 2(2m+1) random anisotropic reflections for the form w_{2m+1}.
Mat random_so(const Field& f, std::size_t m, Rng& rng);

}  // namespace twnorm
