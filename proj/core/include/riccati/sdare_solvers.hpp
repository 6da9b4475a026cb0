#pragma once

#include <utility>

#include "riccati/diagnostics.hpp"
#include "riccati/problem.hpp"

namespace riccati {

/// Standard-form SDARE in Gram shape: X = Aᵀ⋉X⋉(I + G⋉X)⁻¹⋉A + H with
/// G = BBᵀ and H = CᵀC. The Cayley bridge produces G and H directly, so the
/// solvers work on this form.
struct SdareGram {
  Matrix A;  // rn × n
  Matrix G;  // rn × rn, symmetric PSD
  Matrix H;  // n × n, symmetric PSD
  Index r = 0;
  Index n = 0;
};

SdareGram gram_form(const StandardSdare& std_form);

/// One application of the fixed-point map 𝒟.
Matrix fp_step(const SdareGram& gram, const Matrix& x);

/// Thrown when an iteration hits its step limit; carries the last iterate.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, Matrix last, SolveReport report)
      : Error(what), last_iterate(std::move(last)), report(std::move(report)) {}

  Matrix last_iterate;
  SolveReport report;
};

/// Fixed-point iteration X_{t+1} = 𝒟(X_t) from X_0 = 0 until the relative
/// change and the residual drop below tol. Throws NoConvergenceError at
/// max_iter.
std::pair<Matrix, SolveReport> fixed_point_solve(const SdareGram& gram,
                                                 double tol = 1e-12,
                                                 int max_iter = 10000);

/// Truncated observability stack V_t and ⋉-block-Toeplitz T_t of depth t.
struct ToeplitzData {
  int t = 0;
  Matrix V;  // ((r^t−1)/(r−1))l × n
  Matrix T;  // ((r^t−1)/(r−1))l × ((r^t−1)/(r−1))m
};

ToeplitzData toeplitz_data(const StandardSdare& std_form, int t,
                           Index size_cap = 4096);

/// Closed-form t-th fixed-point iterate X_t = V_tᵀ(I + T_tT_tᵀ)⁻¹V_t.
Matrix toeplitz_iterate(const StandardSdare& std_form, int t,
                        Index size_cap = 4096);

/// Doubling iterate (A_k, G_k, H_k); row_dim grows as r^{2^k}·n.
struct DoublingState {
  int k = 0;
  Matrix A;  // r^{2^k}n × n
  Matrix G;  // r^{2^k}n × r^{2^k}n, symmetric PSD
  Matrix H;  // n × n, symmetric PSD
  Index r = 0;
  Index n = 0;
  double presym_defect = 0.0;  // asymmetry of G, H before symmetrization

  Index row_dim() const { return A.rows(); }
};

DoublingState doubling_init(const SdareGram& gram);

/// One ⋉-doubling step; the result has row dimension r^{2^{k+1}}·n.
/// Throws SizeCapError if that exceeds size_cap.
DoublingState doubling_step(const DoublingState& state, Index size_cap = 4096);

/// Doubling iteration from (A, BBᵀ, CᵀC) until ‖H_{k+1} − H_k‖ ≤ tol(1+‖H_k‖)
/// or the size cap halts growth. A cap-limited run is refined with
/// fixed-point steps from the best H_k and flagged in the report.
std::pair<Matrix, SolveReport> doubling_solve(const SdareGram& gram,
                                              double tol = 1e-12,
                                              Index size_cap = 4096,
                                              int fp_refine_max = 10000);

/// Non-iterative (A_k, G_k, H_k) from the depth-2^k Toeplitz data; the
/// decoupled closed form used as an oracle for doubling_step.
DoublingState doubling_oracle(const StandardSdare& std_form, int k,
                              Index size_cap = 4096);

/// ⋉-SSF1 pair (Θ_k, Φ_k) = ([[A_k,0],[−H_k,I]], [[I,G_k],[0,A_kᵀ]]).
std::pair<Matrix, Matrix> ssf1_pair(const DoublingState& state);

/// ‖Θ_k⋉J⋉Θ_kᵀ − Φ_k⋉J⋉Φ_kᵀ‖_F with J = [[0,I],[−I,0]].
double symplectic_defect(const DoublingState& state);

/// The pair (Θ'_k, Φ'_k) realizing the ⋉-doubling transformation, satisfying
/// Θ'_k ⋉ Φ_k = Φ'_k ⋉ Θ_k.
std::pair<Matrix, Matrix> doubling_transform_pair(const DoublingState& state);

/// Normalized residual ‖𝒟(X) − X‖_F / (1 + ‖X‖_F) of the standard form.
double standard_sdare_residual(const SdareGram& gram, const Matrix& x);

}  // namespace riccati
