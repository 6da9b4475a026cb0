#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riccati/stp.hpp"

namespace riccati {

/// Raw data of a stochastic discrete-time algebraic Riccati equation:
/// r coefficient pairs (A_i, B_i), weights Q, L, R. A_0/B_0 are the mean
/// dynamics, A_1..A_{r−1}/B_1..B_{r−1} the multiplicative-noise channels.
struct SdareInstance {
  std::vector<Matrix> A;
  std::vector<Matrix> B;
  Matrix Q;
  Matrix L;
  Matrix R;

  Index r() const { return static_cast<Index>(A.size()); }
  Index n() const { return Q.rows(); }
  Index m() const { return R.rows(); }
};

/// Raw data of a stochastic continuous-time algebraic Riccati equation.
/// Same layout as SdareInstance; A_0 is the drift, A_1..A_{r−1} diffusion.
struct ScareInstance {
  std::vector<Matrix> A;
  std::vector<Matrix> B;
  Matrix Q;
  Matrix L;
  Matrix R;

  Index r() const { return static_cast<Index>(A.size()); }
  Index n() const { return Q.rows(); }
  Index m() const { return R.rows(); }
};

/// Standard-form SDARE data: X = Aᵀ⋉X⋉(I + BBᵀ⋉X)⁻¹⋉A + CᵀC,
/// with A ∈ ℝ^{rn×n}, B ∈ ℝ^{rn×m}, C ∈ ℝ^{l×n}.
struct StandardSdare {
  Matrix A;
  Matrix B;
  Matrix C;
  // Recovery data from the reduction.
  Matrix R;
  Matrix L;
  Matrix Pi;
  Index r = 0;
  Index n = 0;
  Index m = 0;
  Index l = 0;
};

/// Standard-form SCARE data:
/// AᵀX + XA + CᵀC + Âᵀ⋉X⋉Â
///   − (XB + Âᵀ⋉X⋉B̂)(B̂ᵀ⋉X⋉B̂ + I)⁻¹(BᵀX + B̂ᵀ⋉X⋉Â) = 0,
/// with Â, B̂ the stacked and shuffled diffusion data ((r−1)n rows).
struct StandardScare {
  Matrix A;
  Matrix B;
  Matrix Ahat;
  Matrix Bhat;
  Matrix C;
  // Recovery data from the reduction.
  Matrix R;
  Matrix L;
  Matrix Pi;
  Matrix PiTilde;
  Index r = 0;
  Index n = 0;
  Index m = 0;
  Index l = 0;
};

/// Outcome of the standing-assumption checks. Failed checks are reported,
/// not thrown; the certificate checks can also come back inconclusive when
/// no heuristic feedback produced a certificate.
struct ValidationReport {
  enum class Cert { yes, no, inconclusive };

  bool shapes_ok = false;
  bool weight_psd = false;    // [[Q, L],[Lᵀ, R]] ⪰ 0
  bool r_positive = false;    // R ≻ 0
  Cert stabilizable = Cert::inconclusive;
  Cert detectable = Cert::inconclusive;
  double stabilizing_rho = -1.0;  // ρ (discrete) or spectral abscissa
  double detect_rho = -1.0;
  std::vector<std::string> messages;

  bool all_ok() const {
    return shapes_ok && weight_psd && r_positive &&
           stabilizable == Cert::yes && detectable == Cert::yes;
  }
};

ValidationReport validate_sdare(const SdareInstance& inst, double tol = 1e-9,
                                const std::optional<Matrix>& feedback = {},
                                const std::optional<Matrix>& dual_feedback = {});
ValidationReport validate_scare(const ScareInstance& inst, double tol = 1e-9,
                                const std::optional<Matrix>& feedback = {},
                                const std::optional<Matrix>& dual_feedback = {});

StandardSdare reduce_sdare(const SdareInstance& inst);
StandardScare reduce_scare(const ScareInstance& inst);

/// F_X = −(Σ BᵢᵀXBᵢ + R)⁻¹ (Σ AᵢᵀXBᵢ + L)ᵀ.
Matrix feedback_sdare(const SdareInstance& inst, const Matrix& x);

/// F_X = −(Σ_{i≥1} BᵢᵀXBᵢ + R)⁻¹ (B₀ᵀX + Σ_{i≥1} BᵢᵀXAᵢ + Lᵀ).
Matrix feedback_scare(const ScareInstance& inst, const Matrix& x);

/// n²×n² matrix of the closed-loop Stein operator Σ (Aᵢ+BᵢF)⊗(Aᵢ+BᵢF).
Matrix closed_loop_op_discrete(const SdareInstance& inst, const Matrix& f);

/// n²×n² matrix of the closed-loop Lyapunov operator
/// (A₀+B₀F)⊗I + I⊗(A₀+B₀F) + Σ_{i≥1} (Aᵢ+BᵢF)⊗(Aᵢ+BᵢF).
Matrix closed_loop_op_continuous(const ScareInstance& inst, const Matrix& f);

}  // namespace riccati
