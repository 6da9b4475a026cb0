#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "riccati/stp.hpp"

using riccati::Index;
using riccati::Matrix;

namespace {

std::mt19937_64 rng(12345);

Matrix random_matrix(Index rows, Index cols) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = unit(rng);
  return out;
}

// Dimensions that pairwise divide each other, so random chains are always
// compatible with the semi-tensor product.
Index random_dim() {
  static const Index dims[] = {1, 2, 4, 8};
  std::uniform_int_distribution<int> pick(0, 3);
  return dims[pick(rng)];
}

// All 4x4 permutation matrices P with Pᵀ(E⊗I_2)P = I_2⊗E on every 2x2 basis
// matrix E. The defining identity does not pin the permutation down uniquely,
// so the oracle collects every satisfying candidate.
std::vector<Matrix> shuffle_candidates_2_2() {
  std::vector<Matrix> found;
  std::vector<int> perm = {0, 1, 2, 3};
  const Matrix id2 = Matrix::Identity(2, 2);
  do {
    Matrix p = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) p(i, perm[i]) = 1.0;
    bool ok = true;
    for (int a = 0; a < 2 && ok; ++a) {
      for (int b = 0; b < 2 && ok; ++b) {
        Matrix e = Matrix::Zero(2, 2);
        e(a, b) = 1.0;
        ok = (p.transpose() * riccati::kron(e, id2) * p - riccati::kron(id2, e))
                 .norm() == 0.0;
      }
    }
    if (ok) found.push_back(p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

}  // namespace

TEST_CASE("kron basics") {
  const Matrix m = random_matrix(3, 2);
  CHECK((riccati::kron(Matrix::Ones(1, 1), m) - m).norm() == 0.0);
  CHECK((riccati::kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) -
         Matrix::Identity(6, 6))
            .norm() == 0.0);

  Matrix a(1, 2);
  a << 1, 2;
  Matrix b(2, 1);
  b << 3, 4;
  Matrix expected(2, 2);
  expected << 3, 6, 4, 8;
  CHECK((riccati::kron(a, b) - expected).norm() == 0.0);
}

TEST_CASE("ltimes definition cases") {
  Matrix a(1, 1), b(1, 1);
  a << 2;
  b << 3;
  CHECK(riccati::ltimes(a, b)(0, 0) == 6.0);

  const Matrix m = random_matrix(2, 3);
  CHECK((riccati::ltimes(Matrix::Identity(2, 2), m) - m).norm() == 0.0);

  Matrix row(1, 2);
  row << 1, 2;
  Matrix tall(4, 1);
  tall << 1, 0, 0, 1;
  Matrix expected(2, 1);
  expected << 1, 2;
  CHECK((riccati::ltimes(row, tall) - expected).norm() == 0.0);

  CHECK_THROWS_AS(riccati::ltimes(random_matrix(2, 3), random_matrix(2, 2)),
                  riccati::DimensionError);
}

TEST_CASE("ltimes powers") {
  const Matrix a = random_matrix(4, 2);
  CHECK((riccati::ltimes_pow(a, 1) - a).norm() == 0.0);

  const Matrix sq = random_matrix(3, 3);
  CHECK((riccati::ltimes_pow(sq, 2) - sq * sq).norm() < 1e-14);
  CHECK((riccati::ltimes_pow(sq, 0) - Matrix::Identity(3, 3)).norm() == 0.0);

  Matrix v(2, 1);
  v << 0.7, -0.3;
  Matrix expected(4, 1);
  expected << v(0) * v(0), v(0) * v(1), v(1) * v(0), v(1) * v(1);
  CHECK((riccati::ltimes_pow(v, 2) - expected).norm() < 1e-15);
}

TEST_CASE("shuffle permutation degenerate and searched cases") {
  CHECK((riccati::shuffle_perm(1, 3) - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK((riccati::shuffle_perm(4, 1) - Matrix::Identity(4, 4)).norm() == 0.0);

  const std::vector<Matrix> candidates = shuffle_candidates_2_2();
  CHECK(!candidates.empty());
  const Matrix pi = riccati::shuffle_perm(2, 2);
  bool member = false;
  for (const Matrix& p : candidates) member = member || (p - pi).norm() == 0.0;
  CHECK(member);
}

TEST_CASE("shuffle permutation defining identity") {
  for (Index n : {1, 2, 3, 5}) {
    for (Index r : {1, 2, 4}) {
      const Matrix pi = riccati::shuffle_perm(n, r);
      // Exactly one 1 per row and column.
      CHECK((pi * pi.transpose() - Matrix::Identity(r * n, r * n)).norm() ==
            0.0);
      CHECK(pi.sum() == doctest::Approx(double(r * n)));
      const Matrix x = random_matrix(n, n);
      const Matrix idr = Matrix::Identity(r, r);
      CHECK((pi.transpose() * riccati::kron(x, idr) * pi -
             riccati::kron(idr, x))
                .norm() < 1e-14 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("mixed shuffle permutation") {
  CHECK((riccati::mixed_shuffle_perm(1, 3) - Matrix::Identity(3, 3)).norm() ==
        0.0);

  // For n = 2, r = 2 the two defining identities coincide; the searched
  // candidate set is therefore reused.
  const std::vector<Matrix> candidates = shuffle_candidates_2_2();
  const Matrix pit22 = riccati::mixed_shuffle_perm(2, 2);
  bool member = false;
  for (const Matrix& p : candidates)
    member = member || (p - pit22).norm() == 0.0;
  CHECK(member);

  for (Index n : {2, 3}) {
    for (Index r : {2, 3, 4}) {
      const Matrix pit = riccati::mixed_shuffle_perm(n, r);
      CHECK((pit * pit.transpose() - Matrix::Identity(r * n, r * n)).norm() ==
            0.0);
      const Matrix x = random_matrix(n, n);
      Matrix direct = Matrix::Zero(r * n, r * n);
      direct.topLeftCorner(n, n) = x;
      direct.bottomRightCorner((r - 1) * n, (r - 1) * n) =
          riccati::kron(x, Matrix::Identity(r - 1, r - 1));
      CHECK((pit.transpose() * riccati::kron(x, Matrix::Identity(r, r)) * pit -
             direct)
                .norm() < 1e-14 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("block-Toeplitz structure") {
  const Matrix a0 = random_matrix(2, 3);
  CHECK((riccati::toepl({a0}, 2) - a0).norm() == 0.0);

  const Matrix a1 = random_matrix(4, 3);
  const Matrix t2 = riccati::toepl({a0, a1}, 2);
  REQUIRE(t2.rows() == 6);
  REQUIRE(t2.cols() == 9);
  CHECK((t2.topLeftCorner(2, 3) - a0).norm() == 0.0);
  CHECK(t2.topRightCorner(2, 6).norm() == 0.0);
  CHECK((t2.bottomLeftCorner(4, 3) - a1).norm() == 0.0);
  CHECK((t2.bottomRightCorner(4, 6) -
         riccati::kron(a0, Matrix::Identity(2, 2)))
            .norm() == 0.0);

  // r = 1 degenerates to an ordinary lower block-Toeplitz matrix.
  const Matrix b0 = random_matrix(2, 2), b1 = random_matrix(2, 2),
               b2 = random_matrix(2, 2);
  const Matrix t3 = riccati::toepl({b0, b1, b2}, 1);
  Matrix expected = Matrix::Zero(6, 6);
  expected.block(0, 0, 2, 2) = b0;
  expected.block(2, 0, 2, 2) = b1;
  expected.block(2, 2, 2, 2) = b0;
  expected.block(4, 0, 2, 2) = b2;
  expected.block(4, 2, 2, 2) = b1;
  expected.block(4, 4, 2, 2) = b0;
  CHECK((t3 - expected).norm() == 0.0);

  CHECK_THROWS_AS(riccati::toepl({a0, random_matrix(3, 3)}, 2),
                  riccati::DimensionError);
}

TEST_CASE("positive semidefinite square-root factor") {
  const Matrix c1 = riccati::psd_sqrt_factor(Matrix::Identity(3, 3));
  CHECK((c1.transpose() * c1 - Matrix::Identity(3, 3)).norm() < 1e-12);

  const Matrix c0 = riccati::psd_sqrt_factor(Matrix::Zero(4, 4));
  CHECK(c0.rows() == 0);
  CHECK(c0.cols() == 4);

  Matrix m(2, 2);
  m << 2, 0, 0, 0;
  const Matrix c = riccati::psd_sqrt_factor(m);
  REQUIRE(c.rows() == 1);
  CHECK((c.transpose() * c - m).norm() < 1e-12);

  Matrix indef(2, 2);
  indef << 1, 0, 0, -1;
  CHECK_THROWS_AS(riccati::psd_sqrt_factor(indef), riccati::NotPSDError);
}

TEST_CASE("semi-tensor product laws on random compatible tuples") {
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_matrix(random_dim(), random_dim());
    const Matrix b = random_matrix(random_dim(), random_dim());
    const Matrix c = random_matrix(random_dim(), random_dim());
    const double scale =
        1.0 + a.norm() * b.norm() * c.norm() + a.norm() * b.norm();

    const Matrix ab = riccati::ltimes(a, b);
    CHECK((riccati::ltimes(ab, c) - riccati::ltimes(a, riccati::ltimes(b, c)))
              .norm() < 1e-13 * scale);
    CHECK((ab.transpose() -
           riccati::ltimes(b.transpose(), a.transpose()))
              .norm() == 0.0);
    CHECK((riccati::ltimes(a + a, b) - 2.0 * ab).norm() < 1e-13 * scale);
    CHECK((riccati::ltimes(a, b + b) - 2.0 * ab).norm() < 1e-13 * scale);
  }
}

TEST_CASE("inverse law for square factors") {
  for (int trial = 0; trial < 20; ++trial) {
    // Well-conditioned square factors: identity plus a small perturbation.
    const Matrix a =
        Matrix::Identity(2, 2) + 0.4 * random_matrix(2, 2);
    const Matrix b =
        Matrix::Identity(4, 4) + 0.4 * random_matrix(4, 4);
    const Matrix prod = riccati::ltimes(a, b);
    const Matrix lhs = prod.inverse();
    const Matrix rhs = riccati::ltimes(b.inverse(), a.inverse());
    CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
  }
}

TEST_CASE("two-by-two block law") {
  for (int trial = 0; trial < 20; ++trial) {
    // M is 4x4 split into 2x2 blocks, N is 8x4 split into 4x2 blocks; the
    // half-partitioned semi-tensor product multiplies blockwise.
    const Matrix m = random_matrix(4, 4);
    const Matrix n = random_matrix(8, 4);
    const auto blk_m = [&](int i, int j) { return m.block(2 * i, 2 * j, 2, 2); };
    const auto blk_n = [&](int i, int j) { return n.block(4 * i, 2 * j, 4, 2); };

    const Matrix full = riccati::ltimes(m, n);
    Matrix blockwise(8, 4);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        blockwise.block(4 * i, 2 * j, 4, 2) =
            riccati::ltimes(blk_m(i, 0), blk_n(0, j)) +
            riccati::ltimes(blk_m(i, 1), blk_n(1, j));
      }
    }
    CHECK((full - blockwise).norm() < 1e-13 * (1.0 + full.norm()));
  }
}
