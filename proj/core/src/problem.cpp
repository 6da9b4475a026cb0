#include "riccati/problem.hpp"

#include <functional>

#include <Eigen/Eigenvalues>

namespace riccati {

namespace {

template <typename Inst>
bool shapes_consistent(const Inst& inst, std::vector<std::string>* messages) {
  const Index r = inst.r();
  const Index n = inst.n();
  const Index m = inst.m();
  if (r < 1 || n < 1 || m < 1) {
    if (messages) messages->push_back("empty instance");
    return false;
  }
  if (inst.B.size() != inst.A.size()) {
    if (messages) messages->push_back("A and B term counts differ");
    return false;
  }
  for (Index i = 0; i < r; ++i) {
    if (inst.A[i].rows() != n || inst.A[i].cols() != n ||
        inst.B[i].rows() != n || inst.B[i].cols() != m) {
      if (messages)
        messages->push_back("term " + std::to_string(i) + " has wrong shape");
      return false;
    }
    if (!all_finite(inst.A[i]) || !all_finite(inst.B[i])) {
      if (messages)
        messages->push_back("term " + std::to_string(i) + " has non-finite entries");
      return false;
    }
  }
  if (inst.Q.rows() != n || inst.Q.cols() != n || inst.L.rows() != n ||
      inst.L.cols() != m || inst.R.rows() != m || inst.R.cols() != m) {
    if (messages) messages->push_back("weight matrices have wrong shape");
    return false;
  }
  if (!all_finite(inst.Q) || !all_finite(inst.L) || !all_finite(inst.R)) {
    if (messages) messages->push_back("weights have non-finite entries");
    return false;
  }
  return true;
}

template <typename Inst>
void check_weights(const Inst& inst, double tol, ValidationReport* report) {
  const Index n = inst.n();
  const Index m = inst.m();
  Matrix w(n + m, n + m);
  w.topLeftCorner(n, n) = symmetrize(inst.Q);
  w.topRightCorner(n, m) = inst.L;
  w.bottomLeftCorner(m, n) = inst.L.transpose();
  w.bottomRightCorner(m, m) = symmetrize(inst.R);
  Eigen::SelfAdjointEigenSolver<Matrix> es(w);
  report->weight_psd = es.eigenvalues().minCoeff() >= -tol * (1.0 + w.norm());

  Eigen::SelfAdjointEigenSolver<Matrix> esr(symmetrize(inst.R));
  report->r_positive =
      esr.eigenvalues().minCoeff() > tol * (1.0 + inst.R.norm());
}

double spectral_radius(const Matrix& m) {
  return m.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_abscissa(const Matrix& m) {
  return m.eigenvalues().real().maxCoeff();
}

// Crude value iteration on the original Riccati map, used only to propose a
// candidate feedback for the stabilizability certificate.
std::optional<Matrix> heuristic_sdare_feedback(const SdareInstance& inst) {
  const Index n = inst.n();
  Matrix x = Matrix::Zero(n, n);
  for (int t = 0; t < 300; ++t) {
    Matrix s = inst.R;
    Matrix u = inst.L;
    Matrix next = inst.Q;
    for (Index i = 0; i < inst.r(); ++i) {
      next += inst.A[i].transpose() * x * inst.A[i];
      u += inst.A[i].transpose() * x * inst.B[i];
      s += inst.B[i].transpose() * x * inst.B[i];
    }
    Eigen::LDLT<Matrix> ldlt(symmetrize(s));
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    next -= u * ldlt.solve(u.transpose());
    next = symmetrize(next);
    if (!all_finite(next)) return std::nullopt;
    const double delta = (next - x).norm();
    x = next;
    if (delta <= 1e-10 * (1.0 + x.norm())) break;
  }
  try {
    return feedback_sdare(inst, x);
  } catch (const Error&) {
    return std::nullopt;
  }
}

ValidationReport::Cert try_certificates(
    const std::vector<std::optional<Matrix>>& candidates,
    const std::function<double(const Matrix&)>& measure, double threshold,
    double* best) {
  bool any = false;
  for (const auto& f : candidates) {
    if (!f) continue;
    any = true;
    const double value = measure(*f);
    if (*best < 0.0 || value < *best || !std::isfinite(*best)) *best = value;
    if (value < threshold) {
      *best = value;
      return ValidationReport::Cert::yes;
    }
  }
  return any ? ValidationReport::Cert::inconclusive
             : ValidationReport::Cert::inconclusive;
}

Matrix detect_factor(const Matrix& q, const Matrix& l, const Matrix& r) {
  Eigen::LDLT<Matrix> ldlt(symmetrize(r));
  return psd_sqrt_factor(symmetrize(q) - l * ldlt.solve(l.transpose()), 1e-10);
}

}  // namespace

ValidationReport validate_sdare(const SdareInstance& inst, double tol,
                                const std::optional<Matrix>& feedback,
                                const std::optional<Matrix>& dual_feedback) {
  ValidationReport report;
  report.shapes_ok = shapes_consistent(inst, &report.messages);
  if (!report.shapes_ok) return report;
  check_weights(inst, tol, &report);

  const Index n = inst.n();
  const Index m = inst.m();

  std::vector<std::optional<Matrix>> candidates = {
      feedback, Matrix::Zero(m, n)};
  if (report.r_positive) candidates.push_back(heuristic_sdare_feedback(inst));
  report.stabilizable = try_certificates(
      candidates,
      [&](const Matrix& f) {
        return spectral_radius(closed_loop_op_discrete(inst, f));
      },
      1.0, &report.stabilizing_rho);

  // Detectability of ({A_i}, C) is stabilizability of the dual pair
  // ({A_iᵀ}, {C_iᵀ}) with C_0 = C and C_i = 0 for i >= 1.
  try {
    const Matrix c = detect_factor(inst.Q, inst.L, inst.R);
    SdareInstance dual;
    dual.Q = Matrix::Identity(n, n);
    dual.L = Matrix::Zero(n, c.rows());
    dual.R = Matrix::Identity(c.rows(), c.rows());
    for (Index i = 0; i < inst.r(); ++i) {
      dual.A.push_back(inst.A[i].transpose());
      dual.B.push_back(i == 0 ? Matrix(c.transpose())
                              : Matrix(Matrix::Zero(n, c.rows())));
    }
    std::vector<std::optional<Matrix>> dual_candidates = {
        dual_feedback, Matrix::Zero(c.rows(), n),
        heuristic_sdare_feedback(dual)};
    report.detectable = try_certificates(
        dual_candidates,
        [&](const Matrix& f) {
          return spectral_radius(closed_loop_op_discrete(dual, f));
        },
        1.0, &report.detect_rho);
  } catch (const Error& e) {
    report.messages.push_back(std::string("detectability check skipped: ") +
                              e.what());
  }
  return report;
}

ValidationReport validate_scare(const ScareInstance& inst, double tol,
                                const std::optional<Matrix>& feedback,
                                const std::optional<Matrix>& dual_feedback) {
  ValidationReport report;
  report.shapes_ok = shapes_consistent(inst, &report.messages);
  if (!report.shapes_ok) return report;
  check_weights(inst, tol, &report);

  const Index n = inst.n();
  const Index m = inst.m();

  std::vector<std::optional<Matrix>> candidates = {feedback,
                                                   Matrix::Zero(m, n)};
  if (report.r_positive) {
    Eigen::LDLT<Matrix> ldlt(symmetrize(inst.R));
    candidates.push_back(Matrix(-ldlt.solve(inst.L.transpose())));
  }
  report.stabilizable = try_certificates(
      candidates,
      [&](const Matrix& f) {
        return spectral_abscissa(closed_loop_op_continuous(inst, f));
      },
      0.0, &report.stabilizing_rho);

  try {
    const Matrix c = detect_factor(inst.Q, inst.L, inst.R);
    ScareInstance dual;
    dual.Q = Matrix::Identity(n, n);
    dual.L = Matrix::Zero(n, c.rows());
    dual.R = Matrix::Identity(c.rows(), c.rows());
    for (Index i = 0; i < inst.r(); ++i) {
      dual.A.push_back(inst.A[i].transpose());
      dual.B.push_back(i == 0 ? Matrix(c.transpose())
                              : Matrix(Matrix::Zero(n, c.rows())));
    }
    std::vector<std::optional<Matrix>> dual_candidates = {
        dual_feedback, Matrix::Zero(c.rows(), n)};
    report.detectable = try_certificates(
        dual_candidates,
        [&](const Matrix& f) {
          return spectral_abscissa(closed_loop_op_continuous(dual, f));
        },
        0.0, &report.detect_rho);
  } catch (const Error& e) {
    report.messages.push_back(std::string("detectability check skipped: ") +
                              e.what());
  }
  return report;
}

StandardSdare reduce_sdare(const SdareInstance& inst) {
  if (!shapes_consistent(inst, nullptr)) {
    throw ShapeError("reduce_sdare: inconsistent instance shapes");
  }
  const Index r = inst.r();
  const Index n = inst.n();
  const Index m = inst.m();

  const Matrix rsym = symmetrize(inst.R);
  Eigen::SelfAdjointEigenSolver<Matrix> esr(rsym);
  if (esr.eigenvalues().minCoeff() <= 1e-13 * (1.0 + rsym.norm())) {
    throw SingularError("reduce_sdare: R is numerically singular");
  }
  const Matrix r_inv_sqrt = inv_sqrt_spd(rsym);
  const Matrix r_inv = r_inv_sqrt * r_inv_sqrt;

  Matrix a_tilde(r * n, n), b_tilde(r * n, m);
  for (Index i = 0; i < r; ++i) {
    a_tilde.middleRows(i * n, n) = inst.A[i];
    b_tilde.middleRows(i * n, n) = inst.B[i];
  }

  StandardSdare std_form;
  std_form.Pi = shuffle_perm(n, r);
  std_form.A = std_form.Pi * (a_tilde - b_tilde * r_inv * inst.L.transpose());
  std_form.B = std_form.Pi * b_tilde * r_inv_sqrt;
  std_form.C =
      psd_sqrt_factor(symmetrize(inst.Q) - inst.L * r_inv * inst.L.transpose());
  std_form.R = rsym;
  std_form.L = inst.L;
  std_form.r = r;
  std_form.n = n;
  std_form.m = m;
  std_form.l = std_form.C.rows();
  return std_form;
}

StandardScare reduce_scare(const ScareInstance& inst) {
  if (!shapes_consistent(inst, nullptr)) {
    throw ShapeError("reduce_scare: inconsistent instance shapes");
  }
  const Index r = inst.r();
  const Index n = inst.n();
  const Index m = inst.m();

  const Matrix rsym = symmetrize(inst.R);
  Eigen::SelfAdjointEigenSolver<Matrix> esr(rsym);
  if (esr.eigenvalues().minCoeff() <= 1e-13 * (1.0 + rsym.norm())) {
    throw SingularError("reduce_scare: R is numerically singular");
  }
  const Matrix r_inv_sqrt = inv_sqrt_spd(rsym);
  const Matrix r_inv = r_inv_sqrt * r_inv_sqrt;

  Matrix a_tilde((r - 1) * n, n), b_tilde((r - 1) * n, m);
  for (Index i = 1; i < r; ++i) {
    a_tilde.middleRows((i - 1) * n, n) = inst.A[i];
    b_tilde.middleRows((i - 1) * n, n) = inst.B[i];
  }

  StandardScare std_form;
  std_form.A = inst.A[0] - inst.B[0] * r_inv * inst.L.transpose();
  std_form.B = inst.B[0] * r_inv_sqrt;
  std_form.Pi = r > 1 ? shuffle_perm(n, r - 1) : Matrix(0, 0);
  if (r > 1) {
    std_form.Ahat =
        std_form.Pi * (a_tilde - b_tilde * r_inv * inst.L.transpose());
    std_form.Bhat = std_form.Pi * b_tilde * r_inv_sqrt;
  } else {
    std_form.Ahat = Matrix(0, n);
    std_form.Bhat = Matrix(0, m);
  }
  std_form.PiTilde = mixed_shuffle_perm(n, r);
  std_form.C =
      psd_sqrt_factor(symmetrize(inst.Q) - inst.L * r_inv * inst.L.transpose());
  std_form.R = rsym;
  std_form.L = inst.L;
  std_form.r = r;
  std_form.n = n;
  std_form.m = m;
  std_form.l = std_form.C.rows();
  return std_form;
}

Matrix feedback_sdare(const SdareInstance& inst, const Matrix& x) {
  const Matrix xs = symmetrize(x);
  Matrix s = symmetrize(inst.R);
  Matrix u = inst.L;
  for (Index i = 0; i < inst.r(); ++i) {
    s += inst.B[i].transpose() * xs * inst.B[i];
    u += inst.A[i].transpose() * xs * inst.B[i];
  }
  Eigen::FullPivLU<Matrix> lu(symmetrize(s));
  if (!lu.isInvertible()) {
    throw SingularError("feedback_sdare: sum B_i'XB_i + R is singular");
  }
  return -lu.solve(u.transpose());
}

Matrix feedback_scare(const ScareInstance& inst, const Matrix& x) {
  const Matrix xs = symmetrize(x);
  Matrix s = symmetrize(inst.R);
  Matrix u = inst.B[0].transpose() * xs + inst.L.transpose();
  for (Index i = 1; i < inst.r(); ++i) {
    s += inst.B[i].transpose() * xs * inst.B[i];
    u += inst.B[i].transpose() * xs * inst.A[i];
  }
  Eigen::FullPivLU<Matrix> lu(symmetrize(s));
  if (!lu.isInvertible()) {
    throw SingularError("feedback_scare: sum B_i'XB_i + R is singular");
  }
  return -lu.solve(u);
}

Matrix closed_loop_op_discrete(const SdareInstance& inst, const Matrix& f) {
  const Index n = inst.n();
  if (f.rows() != inst.m() || f.cols() != n) {
    throw ShapeError("closed_loop_op_discrete: feedback has wrong shape");
  }
  Matrix op = Matrix::Zero(n * n, n * n);
  for (Index i = 0; i < inst.r(); ++i) {
    const Matrix closed = inst.A[i] + inst.B[i] * f;
    op += kron(closed, closed);
  }
  return op;
}

Matrix closed_loop_op_continuous(const ScareInstance& inst, const Matrix& f) {
  const Index n = inst.n();
  if (f.rows() != inst.m() || f.cols() != n) {
    throw ShapeError("closed_loop_op_continuous: feedback has wrong shape");
  }
  const Matrix id = Matrix::Identity(n, n);
  const Matrix drift = inst.A[0] + inst.B[0] * f;
  Matrix op = kron(drift, id) + kron(id, drift);
  for (Index i = 1; i < inst.r(); ++i) {
    const Matrix closed = inst.A[i] + inst.B[i] * f;
    op += kron(closed, closed);
  }
  return op;
}

}  // namespace riccati
