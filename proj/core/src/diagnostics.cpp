#include "riccati/diagnostics.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace riccati {

std::string to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::fixed_point:
      return "fixed_point";
    case SolveMethod::doubling:
      return "doubling";
    case SolveMethod::cayley_fixed_point:
      return "cayley+fixed_point";
    case SolveMethod::cayley_doubling:
      return "cayley+doubling";
  }
  return "unknown";
}

double sdare_residual(const SdareInstance& inst, const Matrix& x) {
  const Matrix xs = symmetrize(x);
  Matrix rhs = symmetrize(inst.Q);
  Matrix s = symmetrize(inst.R);
  Matrix u = inst.L;
  for (Index i = 0; i < inst.r(); ++i) {
    rhs += inst.A[i].transpose() * xs * inst.A[i];
    u += inst.A[i].transpose() * xs * inst.B[i];
    s += inst.B[i].transpose() * xs * inst.B[i];
  }
  Eigen::FullPivLU<Matrix> lu(symmetrize(s));
  if (!lu.isInvertible()) {
    throw SingularError("sdare_residual: sum B_i'XB_i + R is singular");
  }
  rhs -= u * lu.solve(u.transpose());
  return (rhs - xs).norm() / (1.0 + xs.norm());
}

double scare_residual(const ScareInstance& inst, const Matrix& x) {
  const Matrix xs = symmetrize(x);
  Matrix lhs = inst.A[0].transpose() * xs + xs * inst.A[0] + symmetrize(inst.Q);
  Matrix s = symmetrize(inst.R);
  Matrix u = xs * inst.B[0] + inst.L;
  for (Index i = 1; i < inst.r(); ++i) {
    lhs += inst.A[i].transpose() * xs * inst.A[i];
    u += inst.A[i].transpose() * xs * inst.B[i];
    s += inst.B[i].transpose() * xs * inst.B[i];
  }
  Eigen::FullPivLU<Matrix> lu(symmetrize(s));
  if (!lu.isInvertible()) {
    throw SingularError("scare_residual: sum B_i'XB_i + R is singular");
  }
  lhs -= u * lu.solve(u.transpose());
  return lhs.norm() / (1.0 + xs.norm());
}

double standard_scare_residual(const StandardScare& std_form, const Matrix& x) {
  const Matrix xs = symmetrize(x);
  const Index m = std_form.m;
  Matrix lhs = std_form.A.transpose() * xs + xs * std_form.A +
               std_form.C.transpose() * std_form.C;
  Matrix u = xs * std_form.B;
  Matrix s = Matrix::Identity(m, m);
  if (std_form.r > 1) {
    const Matrix xa = ltimes(xs, std_form.Ahat);
    const Matrix xb = ltimes(xs, std_form.Bhat);
    lhs += ltimes(std_form.Ahat.transpose(), xa);
    u += ltimes(std_form.Ahat.transpose(), xb);
    s += ltimes(std_form.Bhat.transpose(), xb);
  }
  Eigen::FullPivLU<Matrix> lu(symmetrize(s));
  if (!lu.isInvertible()) {
    throw SingularError("standard_scare_residual: inner block is singular");
  }
  lhs -= u * lu.solve(u.transpose());
  return lhs.norm() / (1.0 + xs.norm());
}

std::pair<bool, double> certify_stabilizing(const SdareInstance& inst,
                                            const Matrix& x) {
  const Matrix f = feedback_sdare(inst, x);
  const double rho =
      closed_loop_op_discrete(inst, f).eigenvalues().cwiseAbs().maxCoeff();
  return {rho < 1.0, rho};
}

std::pair<bool, double> certify_stabilizing(const ScareInstance& inst,
                                            const Matrix& x) {
  const Matrix f = feedback_scare(inst, x);
  const double alpha =
      closed_loop_op_continuous(inst, f).eigenvalues().real().maxCoeff();
  return {alpha < 0.0, alpha};
}

std::pair<double, double> rate_report(
    const std::vector<std::pair<int, double>>& errors, double solution_norm,
    double rate_bound) {
  if (errors.size() < 5) {
    throw InsufficientHistoryError("rate_report: need at least 5 points, got " +
                                   std::to_string(errors.size()));
  }
  if (solution_norm <= 0.0) {
    return {0.0, rate_bound};
  }
  const double floor = 64.0 * std::numeric_limits<double>::epsilon();
  double rate = 0.0;
  int used = 0;
  for (auto it = errors.rbegin(); it != errors.rend() && used < 10; ++it) {
    const auto& [t, err] = *it;
    const double rel = err / solution_norm;
    if (t <= 0 || rel <= floor) continue;
    rate = std::max(rate, std::pow(rel, 1.0 / static_cast<double>(t)));
    ++used;
  }
  return {rate, rate_bound};
}

double rho_F_star_continuous(const ScareInstance& inst, const Matrix& f,
                             double gamma) {
  const Index n = inst.n();
  const Matrix drift = inst.A[0] + inst.B[0] * f;
  const Matrix plus = drift + gamma * Matrix::Identity(n, n);
  const Matrix minus = drift - gamma * Matrix::Identity(n, n);
  Eigen::FullPivLU<Matrix> lu(minus);
  if (!lu.isInvertible()) {
    throw SingularError("rho_F_star_continuous: A0 + B0 F - gamma I singular");
  }
  const Matrix minus_inv = lu.inverse();
  Matrix numerator = kron(plus, plus);
  for (Index i = 1; i < inst.r(); ++i) {
    const Matrix closed = inst.A[i] + inst.B[i] * f;
    numerator += 2.0 * gamma * kron(closed, closed);
  }
  const Matrix op = numerator * kron(minus_inv, minus_inv);
  return op.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace riccati
