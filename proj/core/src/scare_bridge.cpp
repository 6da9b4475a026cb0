#include "riccati/scare_bridge.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace riccati {

namespace {

std::vector<double> gamma_candidates(const StandardScare& std_form,
                                     int attempts, std::uint64_t seed) {
  std::vector<double> candidates = {1.0,
                                    std_form.A.cwiseAbs().rowwise().sum().maxCoeff() + 1.0};
  std::mt19937_64 rng(seed);
  const double hi = 2.0 * std_form.A.norm() + 2.0;
  std::uniform_real_distribution<double> dist(0.0, hi);
  while (static_cast<int>(candidates.size()) < attempts) {
    const double draw = dist(rng);
    if (draw > 0.0) candidates.push_back(draw);
  }
  candidates.resize(attempts);
  return candidates;
}

bool shift_well_conditioned(const StandardScare& std_form, double gamma) {
  const Index n = std_form.n;
  const Matrix shifted =
      std_form.A - gamma * Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(shifted);
  const double smin = svd.singularValues().minCoeff();
  return smin >= 1e-8 * std::max(std_form.A.norm(), 1.0);
}

double condition_estimate(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const double smin = svd.singularValues().minCoeff();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues().maxCoeff() / smin;
}

}  // namespace

double select_gamma(const StandardScare& std_form, int attempts,
                    std::uint64_t seed) {
  for (double gamma : gamma_candidates(std_form, attempts, seed)) {
    if (!shift_well_conditioned(std_form, gamma)) continue;
    try {
      cayley_ssf1(std_form, gamma);
      return gamma;
    } catch (const SingularError&) {
    }
  }
  throw GammaSelectionError("select_gamma: no candidate produced a usable shift");
}

CayleyData cayley_ssf1(const StandardScare& std_form, double gamma) {
  if (gamma <= 0.0) {
    throw GammaSelectionError("cayley_ssf1: gamma must be positive");
  }
  const Index n = std_form.n;
  const Index r = std_form.r;
  const Index m = std_form.m;
  const Index l = std_form.l;
  const Matrix id_n = Matrix::Identity(n, n);

  CayleyData data;
  data.gamma = gamma;
  data.A_gamma = std_form.A - gamma * id_n;
  Eigen::FullPivLU<Matrix> lu_shift(data.A_gamma);
  if (!lu_shift.isInvertible()) {
    throw SingularError("cayley_ssf1: A - gamma I is singular");
  }
  const Matrix shift_inv = lu_shift.inverse();
  const Matrix shift_inv_b = shift_inv * std_form.B;  // A_γ⁻¹B
  data.Z = std_form.C * shift_inv_b;

  const Matrix zc = data.Z.transpose() * std_form.C;  // m×n
  Eigen::FullPivLU<Matrix> lu_inner(id_n + shift_inv_b * zc);
  if (!lu_inner.isInvertible()) {
    throw SingularError("cayley_ssf1: I + A_γ⁻¹ B Z_γᵀ C is singular");
  }

  const double root = std::sqrt(2.0 * gamma);
  Matrix stacked(r * n, n);
  stacked.topRows(n) = data.A_gamma + 2.0 * gamma * id_n + std_form.B * zc;
  stacked.bottomRows((r - 1) * n) =
      root * (std_form.Ahat + std_form.Bhat * zc);
  data.E = std_form.PiTilde * stacked * lu_inner.inverse() * shift_inv;

  // H_γ = h_factorᵀ h_factor with h_factor = √(2γ)(I + ZZᵀ)^{−1/2} C A_γ⁻¹.
  const Matrix w_rows =
      inv_sqrt_spd(Matrix::Identity(l, l) + data.Z * data.Z.transpose());
  data.h_factor = root * w_rows * std_form.C * shift_inv;
  data.H = symmetrize(data.h_factor.transpose() * data.h_factor);

  // G_γ = g_factor g_factorᵀ with
  // g_factor = Π̃ [√(2γ)A_γ⁻¹B; Â A_γ⁻¹B − B̂] (I + ZᵀZ)^{−1/2}.
  const Matrix w_cols =
      inv_sqrt_spd(Matrix::Identity(m, m) + data.Z.transpose() * data.Z);
  Matrix g_stack(r * n, m);
  g_stack.topRows(n) = root * shift_inv_b;
  g_stack.bottomRows((r - 1) * n) =
      std_form.Ahat * shift_inv_b - std_form.Bhat;
  data.g_factor = std_form.PiTilde * g_stack * w_cols;
  data.G = symmetrize(data.g_factor * data.g_factor.transpose());
  return data;
}

std::pair<Matrix, Matrix> ssf1_pencil(const CayleyData& data) {
  DoublingState state;
  state.k = 0;
  state.A = data.E;
  state.G = data.G;
  state.H = data.H;
  state.n = data.H.rows();
  state.r = data.E.rows() / state.n;
  return ssf1_pair(state);
}

std::pair<Matrix, SolveReport> solve_scare(const StandardScare& std_form,
                                           const ScareSolveOptions& opts) {
  const bool use_doubling = opts.method == SolveMethod::cayley_doubling ||
                            opts.method == SolveMethod::doubling;
  std::vector<double> candidates;
  if (opts.gamma) {
    candidates.push_back(*opts.gamma);
  } else {
    candidates = gamma_candidates(std_form, opts.gamma_attempts, opts.seed);
  }

  std::string last_failure = "no gamma candidate attempted";
  for (double gamma : candidates) {
    if (!opts.gamma && !shift_well_conditioned(std_form, gamma)) continue;
    CayleyData data;
    try {
      data = cayley_ssf1(std_form, gamma);
    } catch (const SingularError& e) {
      last_failure = e.what();
      continue;
    }

    SdareGram gram;
    gram.A = data.E;
    gram.G = data.G;
    gram.H = data.H;
    gram.r = std_form.r;
    gram.n = std_form.n;

    Matrix x;
    SolveReport report;
    try {
      if (use_doubling) {
        std::tie(x, report) =
            doubling_solve(gram, opts.tol, opts.size_cap, opts.max_iter);
      } else {
        std::tie(x, report) = fixed_point_solve(gram, opts.tol, opts.max_iter);
      }
    } catch (const NoConvergenceError& e) {
      last_failure = e.what();
      continue;
    }

    const Index rn = gram.A.rows();
    const Matrix closed = Matrix::Identity(rn, rn) + ltimes(gram.G, x);
    if (condition_estimate(closed) > 1e12) {
      last_failure = "I + G_gamma ⋉ X is near-singular at gamma = " +
                     std::to_string(gamma);
      continue;
    }
    const double residual = standard_scare_residual(std_form, x);
    if (residual > std::max(1e3 * opts.tol, 1e-12)) {
      last_failure = "SCARE residual " + std::to_string(residual) +
                     " too large at gamma = " + std::to_string(gamma);
      continue;
    }

    report.method = use_doubling ? SolveMethod::cayley_doubling
                                 : SolveMethod::cayley_fixed_point;
    report.gamma = gamma;
    report.residual_original = residual;
    return {x, report};
  }
  throw GammaSelectionError("solve_scare: all gamma attempts failed (" +
                            last_failure + ")");
}

}  // namespace riccati
