#pragma once

#include <cstdint>
#include <optional>

#include "riccati/sdare_solvers.hpp"

namespace riccati {

/// Cayley transform of a standard-form SCARE at shift γ: the bridged SDARE
/// data (E_γ, G_γ, H_γ) plus the low-rank factors of G_γ and H_γ.
struct CayleyData {
  double gamma = 0.0;
  Matrix A_gamma;   // A − γI, n×n
  Matrix Z;         // C A_γ⁻¹ B, l×m
  Matrix E;         // rn×n
  Matrix H;         // n×n, PSD
  Matrix G;         // rn×rn, PSD
  Matrix h_factor;  // l×n, H = h_factorᵀ h_factor
  Matrix g_factor;  // rn×m, G = g_factor g_factorᵀ
};

/// Picks γ > 0 with A − γI well conditioned. Tries 1, ‖A‖∞ + 1, then seeded
/// pseudo-random draws from (0, 2‖A‖ + 2]. Throws GammaSelectionError after
/// `attempts` rejections.
double select_gamma(const StandardScare& std_form, int attempts = 8,
                    std::uint64_t seed = 0x5ca3e);

/// Builds the bridged SDARE data at γ. Throws SingularError when one of the
/// required inverses does not exist.
CayleyData cayley_ssf1(const StandardScare& std_form, double gamma);

/// ⋉-SSF1 pencil (Θ_γ, Φ_γ) = ([[E,0],[−H,I]], [[I,G],[0,Eᵀ]]).
std::pair<Matrix, Matrix> ssf1_pencil(const CayleyData& data);

struct ScareSolveOptions {
  SolveMethod method = SolveMethod::cayley_fixed_point;
  double tol = 1e-12;
  int max_iter = 10000;
  Index size_cap = 4096;
  std::optional<double> gamma;  // fixed shift; otherwise selected
  int gamma_attempts = 8;
  std::uint64_t seed = 0x5ca3e;
};

/// Solves the standard-form SCARE through the bridged SDARE. Retries with a
/// fresh γ when I + G_γ⋉X comes back near-singular or the SCARE residual
/// fails. The report carries the accepted γ and both residuals.
std::pair<Matrix, SolveReport> solve_scare(const StandardScare& std_form,
                                           const ScareSolveOptions& opts = {});

}  // namespace riccati
