#pragma once

// The antidiagonal form w_n, the involutions built from it, and the small
// amount of quadratic-form theory needed to construct isometries.

#include <optional>
#include <string>
#include <vector>

#include "twnorm/matrix.hpp"

namespace twnorm {

/// w_n: ones on the antidiagonal.
Mat antidiag(const Field& f, std::size_t n);

struct FormContext {
  std::size_t n = 0;
  Mat w;       // w_n
  Mat u;       // u_n = g_theta w_n
  Mat g_theta; // diag(-1, 1, -1, ...)
  Mat g_eps;   // diag(-1, 1, ..., -1) for odd n, diag(1, -1, ..., -1) for even n
};

/// Builds and checks the context. For even n only w = u g_eps holds; the
/// other product g_eps u equals -w.
FormContext form_context(const Field& f, std::size_t n);

/// w tg^{-1} w
Mat eps(const Mat& g, const FormContext& ctx);
/// w tY w
Mat eps_tilde(const Mat& y, const FormContext& ctx);
/// u tg^{-1} u^{-1}
Mat theta_star(const Mat& g, const FormContext& ctx);
/// X' = -w_{2m+1} tX w_n for an n x (2m+1) matrix X.
Mat x_prime(const Mat& x, std::size_t n, std::size_t m);

struct Membership {
  bool member = false;
  bool preserves_form = false;
  bool det_one = false;
  std::string witness;
};

/// h w th = w and det h = 1, with w = w_{2m+1}.
Membership so_membership(const Mat& h, std::size_t m);
/// so_membership on a square matrix of any size (form w_size).
Membership so_membership(const Mat& h);

/// a w tb for row vectors a, b.
Scalar pairing(const Mat& a, const Mat& b, const Mat& form);

struct OrthogonalBasis {
  Mat basis;                  // rows
  std::vector<Scalar> values; // form values; nonzero entries come first
};

/// Orthogonal basis of the row span of `rows` for the symmetric form.
OrthogonalBasis orthogonalize(const Mat& rows, const Mat& form);

/// A vector x in the span of `basis` (an orthogonal basis of a nondegenerate
/// subspace) with x form tx = value, if one is found.
std::optional<Mat> represent(const Scalar& value, const OrthogonalBasis& basis, const Mat& form);

/// Reflection x -> x - 2<x,a>/<a,a> a as a matrix acting on row vectors.
Mat reflection(const Mat& a, const Mat& form);

/// X (n x (2m+1)) with X X' = S, for S = eps_tilde(S).
Mat congruence_to_split(const Mat& s, std::size_t n, std::size_t m);

struct PinnedForm {
  Mat original;
  Mat conjugator; // in SO_{2m+1}
  Mat pinned;     // conjugator^{-1} original conjugator; e_{m+1} row and column fixed
};

PinnedForm pin_semisimple(const Mat& h, std::size_t m);

}  // namespace twnorm
