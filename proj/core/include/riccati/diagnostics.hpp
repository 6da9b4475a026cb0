#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riccati/problem.hpp"

namespace riccati {

/// One recorded iterate of a solver run.
struct IterRecord {
  int t = 0;
  double delta = 0.0;     // ‖X_{t} − X_{t−1}‖_F
  double residual = 0.0;  // normalized standard-form residual at X_t
};

enum class SolveMethod { fixed_point, doubling, cayley_fixed_point, cayley_doubling };

std::string to_string(SolveMethod method);

/// Summary of a solver run: iterate history, residuals, convergence rate
/// estimate, and the stabilizing certificate.
struct SolveReport {
  enum class Stabilizing { yes, no, not_checked };

  SolveMethod method = SolveMethod::fixed_point;
  int iterations = 0;
  double residual_original = -1.0;
  double residual_standard = -1.0;
  double rate_empirical = -1.0;
  double rate_bound = -1.0;  // ρ(S_{F★}) discrete, ρ_{F★} continuous
  Stabilizing stabilizing = Stabilizing::not_checked;
  bool cap_limited = false;
  std::optional<double> gamma;
  double max_presym_defect = 0.0;  // asymmetry drift absorbed per step
  std::vector<IterRecord> history;
};

/// Normalized residual ‖RHS(X) − X‖_F / (1 + ‖X‖_F) of the original SDARE.
double sdare_residual(const SdareInstance& inst, const Matrix& x);

/// Normalized residual ‖LHS(X)‖_F / (1 + ‖X‖_F) of the original SCARE.
double scare_residual(const ScareInstance& inst, const Matrix& x);

/// Normalized residual of the reduced standard-form SCARE.
double standard_scare_residual(const StandardScare& std_form, const Matrix& x);

/// Computes the feedback for x and checks closed-loop stability:
/// (ρ < 1, ρ) for the discrete Stein operator.
std::pair<bool, double> certify_stabilizing(const SdareInstance& inst,
                                            const Matrix& x);

/// Continuous analogue: (max Re λ < 0, max Re λ) of the Lyapunov operator.
std::pair<bool, double> certify_stabilizing(const ScareInstance& inst,
                                            const Matrix& x);

/// Empirical R-linear rate from the tail of an error history.
///
/// errors[i] = ‖X_{t_i} − X★‖ at global iteration index t_i; the estimate is
/// the largest (errors[i]/scale)^{1/t_i} over usable tail entries. Returns
/// (rate_empirical, rate_bound). Throws InsufficientHistoryError for fewer
/// than 5 points.
std::pair<double, double> rate_report(const std::vector<std::pair<int, double>>& errors,
                                      double solution_norm, double rate_bound);

/// ρ_{F★} for the Cayley-bridged doubling iteration:
/// ρ([(A₀+B₀F+γI)⊗(A₀+B₀F+γI) + 2γ Σ_{i≥1} (Aᵢ+BᵢF)⊗(Aᵢ+BᵢF)]
///   · (A₀+B₀F−γI)⁻¹ ⊗ (A₀+B₀F−γI)⁻¹).
double rho_F_star_continuous(const ScareInstance& inst, const Matrix& f,
                             double gamma);

}  // namespace riccati
