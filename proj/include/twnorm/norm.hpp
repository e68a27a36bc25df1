#pragma once

// The norm correspondence: pairs (X, Y) with Y + eps~(Y) = X X', their norm
// values (-1)^n (I - X' Y^{-1} X) in SO_{2m+1}, and explicit sections.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twnorm/forms.hpp"
#include "twnorm/parabolic.hpp"

namespace twnorm {

struct Pair {
  Mat x;
  Mat y;
  std::size_t n = 0;
  std::size_t m = 0;
  bool y_invertible = false;
};

/// Validates shapes and the pair equation (ConstraintViolated otherwise).
Pair make_pair(const Mat& x, const Mat& y);

/// (g X h^{-1}, g Y eps(g)^{-1}); the norm value becomes h N h^{-1}.
Pair pair_act(const Mat& g, const Mat& h, const Pair& p);

/// (-1)^n (I - X' Y^{-1} X), checked to lie in SO_{2m+1}.
Mat norm_value(const Pair& p);

enum class Route { ClosedFormOdd, PadEven, PadLarge, PadSmall, DiagonalExtension, Deflated };
std::string_view to_string(Route r);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct NormCertificate {
  Mat target;
  Pair pair;
  Mat norm;
  Route route = Route::ClosedFormOdd;
  std::optional<Mat> conjugator; // c with c^{-1} norm c = target
  std::vector<Check> checks;

  bool all_ok() const;
};

/// Identities every pair with invertible Y must satisfy, as named checks.
std::vector<Check> pair_identities(const Pair& p);

/// A pair whose norm is SO_{2m+1}-conjugate to the semisimple h.
NormCertificate section_solve(const Mat& h, std::size_t n, std::size_t m);

/// Explicit section for diagonal Y of size 2m+1 (or 2m); may move to F_p^2.
Pair diagonal_section(const Mat& y_diag, std::size_t m);

/// n = 2m+1 section with X a projection and
/// X' Y^{-1} X = X' Y^{-1} = -Y^{-1} X, norm exactly z.
Pair canonical_section(const Mat& z, std::size_t m);

/// Semisimple SO-conjugacy over a finite field: characteristic polynomial
/// and the square classes of the form on the +1 and -1 eigenspaces.
/// Over Q only equality is decided; returns nullopt when undecided.
std::optional<bool> semisimple_so_conjugate(const Mat& a, const Mat& b);

// ---------------------------------------------------------------- twisting

/// dim {xi : xi Y w + Y w t(xi) = 0}
std::size_t twisted_tangent_dim(const Mat& y);
/// Smallest tangent dimension over GL_n: floor(n/2).
std::size_t min_twisted_tangent_dim(std::size_t n);
/// {g : g^{-1} Y eps(g) = Y}, sorted; BudgetExceeded past `budget` search nodes.
std::vector<Mat> twisted_centralizer_members(const Mat& y, std::uint64_t budget = 20'000'000);

struct RegularityFlags {
  bool eps_semisimple = false;
  bool eps_regular = false;
  std::size_t tangent_dim = 0;
};

RegularityFlags regularity_flags(const Mat& y);
/// eps-regular with an abelian twisted centralizer (finite fields).
bool strongly_regular(const Mat& y, std::uint64_t budget = 20'000'000);

/// Y theta*(Y)
Mat ks_norm(const Mat& y, const FormContext& ctx);

struct KernelCheck {
  std::size_t torus_size = 0;
  std::size_t kernel_size = 0;
  std::size_t symmetric_size = 0;
  std::size_t lifted_preimages = 0; // kernel elements needing F_p^2
  bool holds = false;
};

/// Over the diagonal torus of GL_n(F_q): ker(Y -> Y theta*(Y)) equals the
/// symmetric diagonals, and each is t theta*(t)^{-1} for a diagonal t.
KernelCheck kernel_identity(const Field& f, std::size_t n);

struct ComparisonReport {
  Mat y;
  Mat norm;
  Mat ks;
  int sign = 0;         // +1, -1, or 0 for a mismatch
  bool ambiguous = false; // both signs match
};

/// Compares the norm of the diagonal section over Y with Y theta*(Y).
ComparisonReport compare_with_ks(const Mat& y, std::size_t n, std::size_t m);

struct ScalingWitness {
  Scalar alpha;
  Scalar lambda;
  Mat alpha_zero; // diag(alpha I_m, lambda, I_m)
};

struct ScalingReport {
  ScalingWitness witness;
  Mat lhs; // norm of (X alpha0, alpha Y)
  Mat rhs; // alpha0^{-1} N alpha0
  bool holds = false;
};

ScalingReport alpha_scaling(const Scalar& alpha, const Pair& p);

struct DiscriminantReport {
  Scalar d_gamma;
  Scalar d_theta_star;
  Scalar kappa1_ratio;                       // d_theta_star / d_gamma
  std::optional<std::int64_t> kappa1_valuation; // v_p(d_theta_star) - v_p(d_gamma) over Q
};

/// Twisted and untwisted Weyl discriminants; p is used only over Q.
DiscriminantReport discriminants(const Mat& gamma, const Mat& y_prime, std::int64_t p = 0);

/// dim of the centralizer of h in so_{2m+1} (the kernel of Ad(h) - 1).
std::size_t so_centralizer_dim(const Mat& h);

/// SO_{2m} (form w_{2m}) into SO_{2m+1}: insert a middle 1.
Mat phi_embed(const Mat& h0);

}  // namespace twnorm
