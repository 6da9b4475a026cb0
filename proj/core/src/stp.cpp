#include "riccati/stp.hpp"

#include <cmath>
#include <string>

namespace riccati {

namespace {

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// (a ⊗ I_k) b without materializing the Kronecker factor.
Matrix kron_identity_left(const Matrix& a, Index k, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() * k, b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0.0) {
        out.middleRows(i * k, k) += a(i, j) * b.middleRows(j * k, k);
      }
    }
  }
  return out;
}

// a (b ⊗ I_k) without materializing the Kronecker factor.
Matrix kron_identity_right(const Matrix& a, const Matrix& b, Index k) {
  Matrix out = Matrix::Zero(a.rows(), b.cols() * k);
  for (Index i = 0; i < b.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      if (b(i, j) != 0.0) {
        out.middleCols(j * k, k) += b(i, j) * a.middleCols(i * k, k);
      }
    }
  }
  return out;
}

}  // namespace

bool all_finite(const Matrix& m) {
  return m.allFinite();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix ltimes(const Matrix& a, const Matrix& b) {
  const Index n = a.cols();
  const Index p = b.rows();
  if (n == p) {
    return a * b;
  }
  if (n > 0 && p % n == 0) {
    return kron_identity_left(a, p / n, b);
  }
  if (p > 0 && n % p == 0) {
    return kron_identity_right(a, b, n / p);
  }
  throw DimensionError("ltimes: incompatible shapes " + shape_str(a) + " and " +
                       shape_str(b));
}

Matrix ltimes_pow(const Matrix& a, long k) {
  if (k < 0) {
    throw DimensionError("ltimes_pow: negative exponent");
  }
  if (k == 0) {
    if (a.rows() != a.cols()) {
      throw DimensionError("ltimes_pow: k = 0 requires a square matrix");
    }
    return Matrix::Identity(a.rows(), a.cols());
  }
  if (a.cols() == 0 || a.rows() % a.cols() != 0) {
    throw DimensionError("ltimes_pow: matrix must be shaped rn x n, got " +
                         shape_str(a));
  }
  Matrix out = a;
  for (long i = 1; i < k; ++i) {
    out = ltimes(out, a);
  }
  return out;
}

Matrix shuffle_perm(Index n, Index r) {
  // Row i·r + s, column s·n + i carries the 1, so that conjugation by Π sends
  // index s·n + i of I_r ⊗ X to index i·r + s of X ⊗ I_r.
  Matrix pi = Matrix::Zero(r * n, r * n);
  for (Index i = 0; i < n; ++i) {
    for (Index s = 0; s < r; ++s) {
      pi(i * r + s, s * n + i) = 1.0;
    }
  }
  return pi;
}

Matrix mixed_shuffle_perm(Index n, Index r) {
  if (r < 1) {
    throw DimensionError("mixed_shuffle_perm: r must be positive");
  }
  Matrix pi = Matrix::Zero(r * n, r * n);
  // First n indices of diag(X, X ⊗ I_{r−1}) pick channel 0 of X ⊗ I_r.
  for (Index i = 0; i < n; ++i) {
    pi(i * r, i) = 1.0;
  }
  // Remaining (r−1)n indices, laid out as (i, s) of X ⊗ I_{r−1}, pick
  // channel s + 1.
  for (Index i = 0; i < n; ++i) {
    for (Index s = 0; s + 1 < r; ++s) {
      pi(i * r + s + 1, n + i * (r - 1) + s) = 1.0;
    }
  }
  return pi;
}

Matrix toepl(const std::vector<Matrix>& blocks, Index r) {
  if (blocks.empty()) {
    throw DimensionError("toepl: no blocks");
  }
  const Index p1 = blocks[0].rows();
  const Index p2 = blocks[0].cols();
  const Index m = static_cast<Index>(blocks.size());
  Index rpow = 1;
  std::vector<Index> row_off(m + 1, 0), col_off(m + 1, 0);
  for (Index i = 0; i < m; ++i) {
    if (blocks[i].rows() != rpow * p1 || blocks[i].cols() != p2) {
      throw DimensionError("toepl: block " + std::to_string(i) +
                           " must be r^i*p1 x p2, got " +
                           shape_str(blocks[i]));
    }
    row_off[i + 1] = row_off[i] + rpow * p1;
    col_off[i + 1] = col_off[i] + rpow * p2;
    rpow *= r;
  }
  Matrix out = Matrix::Zero(row_off[m], col_off[m]);
  Index rj = 1;
  for (Index j = 0; j < m; ++j) {
    for (Index i = j; i < m; ++i) {
      out.block(row_off[i], col_off[j], row_off[i + 1] - row_off[i],
                rj * p2) = kron(blocks[i - j], Matrix::Identity(rj, rj));
    }
    rj *= r;
  }
  return out;
}

Matrix psd_sqrt_factor(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw ShapeError("psd_sqrt_factor: matrix must be square");
  }
  const double scale = m.norm();
  if ((m - m.transpose()).norm() > tol * (1.0 + scale) * 1e3) {
    throw NotPSDError("psd_sqrt_factor: input is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double floor = -tol * scale * static_cast<double>(m.rows());
  const double rank_tol = tol * std::max(scale, 1e-300);
  Index l = 0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < floor) {
      throw NotPSDError("psd_sqrt_factor: eigenvalue " + std::to_string(ev(i)) +
                        " below tolerance");
    }
    if (ev(i) > rank_tol) {
      ++l;
    }
  }
  Matrix c(l, m.cols());
  Index row = 0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > rank_tol) {
      c.row(row++) =
          std::sqrt(ev(i)) * es.eigenvectors().col(i).transpose();
    }
  }
  return c;
}

Matrix inv_sqrt_spd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw SingularError("inv_sqrt_spd: matrix is not positive definite");
  }
  return es.eigenvectors() *
         ev.array().rsqrt().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace riccati
