#include "riccati/sdare_solvers.hpp"

#include <deque>

#include <Eigen/Dense>

namespace riccati {

namespace {

Matrix solve_full_piv(const Matrix& lhs, const Matrix& rhs,
                      const char* context) {
  Eigen::FullPivLU<Matrix> lu(lhs);
  if (!lu.isInvertible()) {
    throw SingularError(std::string(context) + ": matrix is singular");
  }
  return lu.solve(rhs);
}

Index pow_index(Index base, int exp, Index cap) {
  Index out = 1;
  for (int i = 0; i < exp; ++i) {
    out *= base;
    if (out > cap) return out;
  }
  return out;
}

// Shared iteration core: fixed-point steps from a given start, appending to
// the report. Returns the converged iterate or throws NoConvergenceError.
Matrix fp_iterate(const SdareGram& gram, Matrix x, double tol, int max_iter,
                  int t_offset, SolveReport* report) {
  std::deque<std::pair<int, Matrix>> recent;
  recent.emplace_back(t_offset, x);
  bool converged = false;
  int t = t_offset;
  for (int step = 0; step < max_iter; ++step) {
    const Matrix next = fp_step(gram, x);
    ++t;
    const double delta = (next - x).norm();
    report->history.push_back({t, delta, delta / (1.0 + x.norm())});
    x = next;
    recent.emplace_back(t, x);
    if (recent.size() > 16) recent.pop_front();
    if (delta <= tol * (1.0 + x.norm())) {
      converged = true;
      // The stopping delta equals the residual of the previous iterate; make
      // sure the returned one is below tolerance too.
      if (standard_sdare_residual(gram, x) <= tol * (1.0 + x.norm())) break;
      converged = false;
    }
  }
  report->iterations = t;
  // Empirical rate from the tail, against the final iterate.
  std::vector<std::pair<int, double>> errors;
  for (const auto& [ti, xi] : recent) {
    if (ti < t) errors.emplace_back(ti, (xi - x).norm());
  }
  if (errors.size() >= 5) {
    report->rate_empirical =
        rate_report(errors, x.norm(), report->rate_bound).first;
  } else if (converged) {
    report->rate_empirical = 0.0;
  }
  report->residual_standard = standard_sdare_residual(gram, x);
  if (!converged) {
    throw NoConvergenceError(
        "fixed point iteration did not reach tolerance in " +
            std::to_string(max_iter) + " steps",
        x, *report);
  }
  return x;
}

}  // namespace

SdareGram gram_form(const StandardSdare& std_form) {
  SdareGram gram;
  gram.A = std_form.A;
  gram.G = symmetrize(std_form.B * std_form.B.transpose());
  gram.H = symmetrize(std_form.C.transpose() * std_form.C);
  gram.r = std_form.r;
  gram.n = std_form.n;
  return gram;
}

Matrix fp_step(const SdareGram& gram, const Matrix& x) {
  const Index rn = gram.A.rows();
  const Matrix xs = symmetrize(x);
  const Matrix shifted = Matrix::Identity(rn, rn) + ltimes(gram.G, xs);
  const Matrix m = solve_full_piv(shifted, gram.A, "fp_step");
  return symmetrize(ltimes(gram.A.transpose(), ltimes(xs, m)) + gram.H);
}

std::pair<Matrix, SolveReport> fixed_point_solve(const SdareGram& gram,
                                                 double tol, int max_iter) {
  SolveReport report;
  report.method = SolveMethod::fixed_point;
  Matrix x = fp_iterate(gram, Matrix::Zero(gram.n, gram.n), tol, max_iter, 0,
                        &report);
  return {x, report};
}

ToeplitzData toeplitz_data(const StandardSdare& std_form, int t,
                           Index size_cap) {
  if (t < 1) throw DimensionError("toeplitz_data: depth must be >= 1");
  const Index r = std_form.r;
  const Index l = std_form.l;
  const Index m = std_form.m;
  Index blocks_total = 0, rpow = 1;
  for (int i = 0; i < t; ++i) {
    blocks_total += rpow;
    rpow *= r;
  }
  if (blocks_total * std::max(l, m) > size_cap) {
    throw SizeCapError("toeplitz_data: depth " + std::to_string(t) +
                       " exceeds the size cap");
  }

  ToeplitzData data;
  data.t = t;
  data.V.resize(blocks_total * l, std_form.n);
  std::vector<Matrix> t_blocks;
  t_blocks.emplace_back(Matrix::Zero(l, m));
  Matrix w = std_form.C;  // C ⋉ A^{⋉i} as i advances
  Index row = 0;
  for (int i = 0; i < t; ++i) {
    data.V.middleRows(row, w.rows()) = w;
    row += w.rows();
    if (i + 1 < t) {
      if (static_cast<Index>(t_blocks.size()) < t) {
        t_blocks.push_back(ltimes(w, std_form.B));
      }
      w = ltimes(w, std_form.A);
    }
  }
  data.T = toepl(t_blocks, r);
  return data;
}

Matrix toeplitz_iterate(const StandardSdare& std_form, int t, Index size_cap) {
  const ToeplitzData data = toeplitz_data(std_form, t, size_cap);
  const Index rows = data.T.rows();
  const Matrix gram =
      Matrix::Identity(rows, rows) + data.T * data.T.transpose();
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw SingularError("toeplitz_iterate: I + T T' factorization failed");
  }
  return symmetrize(data.V.transpose() * llt.solve(data.V));
}

DoublingState doubling_init(const SdareGram& gram) {
  DoublingState state;
  state.k = 0;
  state.A = gram.A;
  state.G = symmetrize(gram.G);
  state.H = symmetrize(gram.H);
  state.r = gram.r;
  state.n = gram.n;
  return state;
}

DoublingState doubling_step(const DoublingState& state, Index size_cap) {
  const Index n = state.n;
  const Index big = state.row_dim() / n;  // r^{2^k}
  if (big * big * n > size_cap) {
    throw SizeCapError("doubling_step: next row dimension " +
                       std::to_string(big * big * n) + " exceeds cap " +
                       std::to_string(size_cap));
  }
  const Index rn = state.row_dim();
  Eigen::FullPivLU<Matrix> lu(Matrix::Identity(rn, rn) +
                              ltimes(state.G, state.H));
  if (!lu.isInvertible()) {
    throw SingularError("doubling_step: I + G ⋉ H is singular");
  }
  const Matrix sa = lu.solve(state.A);  // (I + G⋉H)⁻¹ A
  const Matrix sg = lu.solve(state.G);  // (I + G⋉H)⁻¹ G

  DoublingState next;
  next.k = state.k + 1;
  next.r = state.r;
  next.n = n;
  next.A = ltimes(state.A, sa);
  Matrix g = kron(state.G, Matrix::Identity(big, big)) +
             ltimes(ltimes(state.A, sg), state.A.transpose());
  Matrix h = state.H + ltimes(state.A.transpose(), state.H) * sa;
  next.presym_defect = std::max((g - g.transpose()).norm(),
                                (h - h.transpose()).norm());
  next.G = symmetrize(g);
  next.H = symmetrize(h);
  return next;
}

std::pair<Matrix, SolveReport> doubling_solve(const SdareGram& gram,
                                              double tol, Index size_cap,
                                              int fp_refine_max) {
  SolveReport report;
  report.method = SolveMethod::doubling;
  DoublingState state = doubling_init(gram);
  bool converged = false;
  while (true) {
    report.max_presym_defect =
        std::max(report.max_presym_defect, state.presym_defect);
    DoublingState next;
    try {
      next = doubling_step(state, size_cap);
    } catch (const SizeCapError&) {
      report.cap_limited = true;
      break;
    }
    const double delta = (next.H - state.H).norm();
    report.history.push_back({next.k, delta, delta / (1.0 + state.H.norm())});
    const bool done = delta <= tol * (1.0 + state.H.norm());
    state = next;
    report.iterations = state.k;
    if (done) {
      converged = true;
      break;
    }
  }
  Matrix x = state.H;
  if (report.cap_limited && !converged) {
    // H_k = X_{2^k}; continue the underlying fixed-point sequence directly.
    x = fp_iterate(gram, x, tol, fp_refine_max, 1 << state.k, &report);
  }
  report.residual_standard = standard_sdare_residual(gram, x);
  return {x, report};
}

DoublingState doubling_oracle(const StandardSdare& std_form, int k,
                              Index size_cap) {
  const int t = 1 << k;
  const Index r = std_form.r;
  const Index n = std_form.n;
  if (pow_index(r, t, size_cap) * n > size_cap) {
    throw SizeCapError("doubling_oracle: A^{⋉2^k} exceeds the size cap");
  }
  const ToeplitzData data = toeplitz_data(std_form, t, size_cap);

  // U_{2^k} = [A^{⋉(t−1)}⋉B, (A^{⋉(t−2)}⋉B)⊗I_r, …, B⊗I_{r^{t−1}}].
  std::vector<Matrix> reach;  // reach[i] = A^{⋉i} ⋉ B
  reach.push_back(std_form.B);
  for (int i = 1; i < t; ++i) {
    reach.push_back(ltimes(std_form.A, reach.back()));
  }
  const Index rows = reach.back().rows();  // r^t n
  Index cols = 0, rj = 1;
  for (int j = 0; j < t; ++j) {
    cols += rj * std_form.m;
    rj *= r;
  }
  Matrix u(rows, cols);
  Index col = 0;
  rj = 1;
  for (int j = 0; j < t; ++j) {
    const Matrix block =
        kron(reach[t - 1 - j], Matrix::Identity(rj, rj));
    u.middleCols(col, block.cols()) = block;
    col += block.cols();
    rj *= r;
  }

  const Matrix& v = data.V;
  const Matrix& tt = data.T;
  const Matrix gram_cols =
      Matrix::Identity(tt.cols(), tt.cols()) + tt.transpose() * tt;
  const Matrix gram_rows =
      Matrix::Identity(tt.rows(), tt.rows()) + tt * tt.transpose();
  Eigen::LLT<Matrix> llt_cols(gram_cols), llt_rows(gram_rows);
  if (llt_cols.info() != Eigen::Success || llt_rows.info() != Eigen::Success) {
    throw SingularError("doubling_oracle: Toeplitz Gram factorization failed");
  }

  DoublingState state;
  state.k = k;
  state.r = r;
  state.n = n;
  state.A = ltimes_pow(std_form.A, t) -
            u * llt_cols.solve(tt.transpose() * v);
  state.G = symmetrize(u * llt_cols.solve(u.transpose()));
  state.H = symmetrize(v.transpose() * llt_rows.solve(v));
  return state;
}

std::pair<Matrix, Matrix> ssf1_pair(const DoublingState& state) {
  const Index n = state.n;
  const Index rn = state.row_dim();
  Matrix theta = Matrix::Zero(rn + n, 2 * n);
  theta.topLeftCorner(rn, n) = state.A;
  theta.bottomLeftCorner(n, n) = -state.H;
  theta.bottomRightCorner(n, n) = Matrix::Identity(n, n);
  Matrix phi = Matrix::Zero(rn + n, 2 * rn);
  phi.topLeftCorner(rn, rn) = Matrix::Identity(rn, rn);
  phi.topRightCorner(rn, rn) = state.G;
  phi.bottomRightCorner(n, rn) = state.A.transpose();
  return {theta, phi};
}

double symplectic_defect(const DoublingState& state) {
  const Index n = state.n;
  const auto [theta, phi] = ssf1_pair(state);
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  const Matrix lhs = ltimes(ltimes(theta, j), theta.transpose());
  const Matrix rhs = ltimes(ltimes(phi, j), phi.transpose());
  return (lhs - rhs).norm();
}

std::pair<Matrix, Matrix> doubling_transform_pair(const DoublingState& state) {
  const Index n = state.n;
  const Index rn = state.row_dim();
  const Index big = rn / n;
  const Matrix id = Matrix::Identity(rn, rn);
  const Matrix s_gh_inv =
      solve_full_piv(id + ltimes(state.G, state.H), id, "doubling_transform");
  const Matrix s_hg_inv =
      solve_full_piv(id + ltimes(state.H, state.G), id, "doubling_transform");

  const Matrix top_left = ltimes(state.A, s_gh_inv);       // r^{2^{k+1}}n × rn
  const Matrix at_shg = state.A.transpose() * s_hg_inv;    // n × rn
  Matrix theta_p = Matrix::Zero(big * rn + n, rn + n);
  theta_p.topLeftCorner(big * rn, rn) = top_left;
  theta_p.bottomLeftCorner(n, rn) = -ltimes(at_shg, state.H);
  theta_p.bottomRightCorner(n, n) = Matrix::Identity(n, n);

  Matrix phi_p = Matrix::Zero(big * rn + n, big * rn + rn);
  phi_p.topLeftCorner(big * rn, big * rn) =
      Matrix::Identity(big * rn, big * rn);
  phi_p.topRightCorner(big * rn, rn) = ltimes(state.A, state.G) * s_hg_inv;
  phi_p.bottomRightCorner(n, rn) = at_shg;
  return {theta_p, phi_p};
}

double standard_sdare_residual(const SdareGram& gram, const Matrix& x) {
  const Matrix xs = symmetrize(x);
  return (fp_step(gram, xs) - xs).norm() / (1.0 + xs.norm());
}

}  // namespace riccati
