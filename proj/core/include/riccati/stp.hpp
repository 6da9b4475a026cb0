#pragma once

#include <vector>

#include <Eigen/Dense>

#include "riccati/errors.hpp"

namespace riccati {

using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Left semi-tensor product a ⋉ b.
///
/// Defined as (a ⊗ I_{p/n}) b when n | p and a (b ⊗ I_{n/p}) when p | n,
/// where n = a.cols() and p = b.rows(). Coincides with the ordinary product
/// when n = p. Throws DimensionError when neither divisibility holds.
Matrix ltimes(const Matrix& a, const Matrix& b);

/// k-fold ⋉-power a ⋉ a ⋉ … ⋉ a of a matrix shaped rn×n.
/// k = 0 requires a square and returns the identity.
Matrix ltimes_pow(const Matrix& a, long k);

/// The rn×rn permutation Π with Πᵀ (X ⊗ I_r) Π = I_r ⊗ X for all X ∈ ℝ^{n×n}.
Matrix shuffle_perm(Index n, Index r);

/// The rn×rn permutation Π̃ with diag(X, X ⊗ I_{r−1}) = Π̃ᵀ (X ⊗ I_r) Π̃
/// for all X ∈ ℝ^{n×n}. Returns I_n for r = 1.
Matrix mixed_shuffle_perm(Index n, Index r);

/// Lower ⋉-block-Toeplitz matrix from blocks A_i ∈ ℝ^{r^i·p1 × p2}:
/// block (i,j) is A_{i−j} ⊗ I_{r^j} for i ≥ j, zero above the diagonal.
/// Degenerates to an ordinary lower block-Toeplitz matrix for r = 1.
Matrix toepl(const std::vector<Matrix>& blocks, Index r);

/// Full-row-rank factor C of a symmetric PSD matrix m, with Cᵀ C = m.
///
/// Eigenvalues in [−tol·scale, tol·scale] are treated as zero; C has one row
/// per eigenvalue above that threshold. Throws NotPSDError if m is not
/// symmetric within tolerance or has an eigenvalue below −tol·‖m‖·n.
Matrix psd_sqrt_factor(const Matrix& m, double tol = 1e-10);

/// Symmetric part (m + mᵀ)/2.
inline Matrix symmetrize(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

/// Symmetric inverse square root of a symmetric positive definite matrix.
Matrix inv_sqrt_spd(const Matrix& m);

/// True iff every entry is finite.
bool all_finite(const Matrix& m);

}  // namespace riccati
