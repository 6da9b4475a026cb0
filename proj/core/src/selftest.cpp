#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "riccati/cli.hpp"
#include "riccati/scare_bridge.hpp"

namespace riccati {

namespace {

constexpr std::uint64_t kSelftestSeed = 0x7e57;

Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = unit(rng);
  return out;
}

// Dimensions drawn from {1, 2, 4, 8} so every pair is ⋉-compatible.
Index random_dim(std::mt19937_64& rng) {
  static const Index dims[] = {1, 2, 4, 8};
  std::uniform_int_distribution<int> pick(0, 3);
  return dims[pick(rng)];
}

bool check_algebra_laws(int tuples) {
  std::mt19937_64 rng(kSelftestSeed);
  for (int trial = 0; trial < tuples; ++trial) {
    const Matrix a = random_matrix(rng, random_dim(rng), random_dim(rng));
    const Matrix b = random_matrix(rng, random_dim(rng), random_dim(rng));
    const Matrix c = random_matrix(rng, random_dim(rng), random_dim(rng));
    const double scale =
        std::max({a.norm() * b.norm() * c.norm(), a.norm() * b.norm(), 1.0});

    const Matrix ab = ltimes(a, b);
    if ((ltimes(ab, c) - ltimes(a, ltimes(b, c))).norm() > 1e-11 * scale) {
      return false;
    }
    if ((ab.transpose() - ltimes(b.transpose(), a.transpose())).norm() >
        1e-11 * scale) {
      return false;
    }
    const Matrix sum = ltimes(a + a, b) - 2.0 * ab;
    if (sum.norm() > 1e-11 * scale) return false;
  }
  return true;
}

bool check_shuffle_identities() {
  std::mt19937_64 rng(kSelftestSeed + 1);
  for (Index n = 1; n <= 4; ++n) {
    for (Index r = 1; r <= 4; ++r) {
      const Matrix x = random_matrix(rng, n, n);
      const Matrix pi = shuffle_perm(n, r);
      const Matrix idr = Matrix::Identity(r, r);
      if ((pi.transpose() * kron(x, idr) * pi - kron(idr, x)).norm() >
          1e-12 * (1.0 + x.norm())) {
        return false;
      }
      const Matrix pit = mixed_shuffle_perm(n, r);
      Matrix direct = Matrix::Zero(r * n, r * n);
      direct.topLeftCorner(n, n) = x;
      if (r > 1) {
        direct.bottomRightCorner((r - 1) * n, (r - 1) * n) =
            kron(x, Matrix::Identity(r - 1, r - 1));
      }
      if ((pit.transpose() * kron(x, idr) * pit - direct).norm() >
          1e-12 * (1.0 + x.norm())) {
        return false;
      }
    }
  }
  return true;
}

SdareGram golden_gram() {
  SdareGram gram;
  gram.A = Matrix::Ones(1, 1);
  gram.G = Matrix::Ones(1, 1);
  gram.H = Matrix::Ones(1, 1);
  gram.r = 1;
  gram.n = 1;
  return gram;
}

bool check_golden_fixed_point() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto [x, report] = fixed_point_solve(golden_gram(), 1e-13, 200);
  return std::abs(x(0, 0) - phi) <= 1e-12 && report.iterations <= 80;
}

bool check_golden_doubling() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto [x, report] = doubling_solve(golden_gram(), 1e-13);
  return std::abs(x(0, 0) - phi) <= 1e-12 && report.iterations <= 6;
}

StandardSdare random_standard(std::uint64_t seed, Index n, Index m, Index r) {
  const InstanceFile file = gen_instance("sdare", n, m, r, seed);
  return reduce_sdare(file.to_sdare());
}

bool check_toeplitz_oracle(int instances) {
  for (int trial = 0; trial < instances; ++trial) {
    const StandardSdare std_form =
        random_standard(100 + trial, 1 + trial % 3, 1 + trial % 2,
                        1 + trial % 2);
    const SdareGram gram = gram_form(std_form);
    Matrix x = Matrix::Zero(std_form.n, std_form.n);
    for (int t = 1; t <= 5; ++t) {
      x = fp_step(gram, x);
      const Matrix oracle = toeplitz_iterate(std_form, t);
      if ((x - oracle).norm() > 1e-10 * (1.0 + x.norm())) return false;
    }
  }
  return true;
}

bool check_doubling_matches_fp(int instances) {
  for (int trial = 0; trial < instances; ++trial) {
    const StandardSdare std_form =
        random_standard(200 + trial, 1 + trial % 2, 1, 1 + trial % 2);
    const SdareGram gram = gram_form(std_form);
    DoublingState state = doubling_init(gram);
    Matrix x = Matrix::Zero(std_form.n, std_form.n);
    int steps = 0;
    for (int k = 1; k <= 2; ++k) {
      state = doubling_step(state);
      while (steps < (1 << k)) {
        x = fp_step(gram, x);
        ++steps;
      }
      if ((state.H - x).norm() > 1e-10 * (1.0 + x.norm())) return false;
      const DoublingState oracle = doubling_oracle(std_form, k);
      if ((oracle.A - state.A).norm() + (oracle.G - state.G).norm() +
              (oracle.H - state.H).norm() >
          1e-10 * (1.0 + state.A.norm() + state.G.norm() + state.H.norm())) {
        return false;
      }
    }
  }
  return true;
}

bool check_symplectic_defect() {
  const StandardSdare std_form = random_standard(300, 2, 1, 2);
  DoublingState state = doubling_init(gram_form(std_form));
  for (int k = 0; k <= 2; ++k) {
    const double scale = 1.0 + state.A.norm() + state.G.norm() + state.H.norm();
    if (symplectic_defect(state) > 1e-10 * scale) return false;
    if (k < 2) state = doubling_step(state);
  }

  // Same invariant for the Cayley-bridged pencil.
  ScareInstance inst;
  inst.A = {(Matrix(1, 1) << -2.0).finished(),
            (Matrix(1, 1) << 0.5).finished()};
  inst.B = {Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
  inst.Q = Matrix::Ones(1, 1);
  inst.L = Matrix::Zero(1, 1);
  inst.R = Matrix::Ones(1, 1);
  const CayleyData data = cayley_ssf1(reduce_scare(inst), 1.0);
  DoublingState bridged;
  bridged.A = data.E;
  bridged.G = data.G;
  bridged.H = data.H;
  bridged.n = 1;
  bridged.r = 2;
  const double scale =
      1.0 + bridged.A.norm() + bridged.G.norm() + bridged.H.norm();
  return symplectic_defect(bridged) <= 1e-10 * scale;
}

bool check_scare_scalar() {
  ScareInstance inst;
  inst.A = {(Matrix(1, 1) << -1.0).finished()};
  inst.B = {Matrix::Ones(1, 1)};
  inst.Q = Matrix::Ones(1, 1);
  inst.L = Matrix::Zero(1, 1);
  inst.R = Matrix::Ones(1, 1);
  const auto [x, report] = solve_scare(reduce_scare(inst));
  return std::abs(x(0, 0) - (std::sqrt(2.0) - 1.0)) <= 1e-10;
}

bool check_scare_two_noise() {
  ScareInstance inst;
  inst.A = {(Matrix(1, 1) << -2.0).finished(),
            (Matrix(1, 1) << 0.5).finished()};
  inst.B = {Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
  inst.Q = Matrix::Ones(1, 1);
  inst.L = Matrix::Zero(1, 1);
  inst.R = Matrix::Ones(1, 1);
  const auto [x, report] = solve_scare(reduce_scare(inst));
  // Positive root of x² + 3.75x − 1 = 0.
  const double root = (-3.75 + std::sqrt(3.75 * 3.75 + 4.0)) / 2.0;
  return std::abs(x(0, 0) - root) <= 1e-8;
}

bool check_monotone_iterates() {
  const StandardSdare std_form = random_standard(400, 3, 2, 2);
  const SdareGram gram = gram_form(std_form);
  Matrix x = Matrix::Zero(std_form.n, std_form.n);
  for (int t = 0; t < 40; ++t) {
    const Matrix next = fp_step(gram, x);
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<Matrix>(next - x).eigenvalues().minCoeff();
    if (min_eig < -1e-11 * (1.0 + next.norm())) return false;
    x = next;
  }
  return true;
}

struct Check {
  const char* name;
  bool in_quick;
  std::function<bool()> run;
};

}  // namespace

int cmd_selftest(bool quick) {
  const std::vector<Check> checks = {
      {"semi-tensor algebra laws", true,
       [quick] { return check_algebra_laws(quick ? 60 : 200); }},
      {"shuffle permutation identities", true, check_shuffle_identities},
      {"scalar fixed point (golden ratio)", true, check_golden_fixed_point},
      {"scalar doubling (golden ratio)", true, check_golden_doubling},
      {"Toeplitz closed-form iterates", false,
       [] { return check_toeplitz_oracle(6); }},
      {"doubling squares the iteration index", false,
       [] { return check_doubling_matches_fp(6); }},
      {"symplectic pencil invariants", false, check_symplectic_defect},
      {"continuous scalar closed form", true, check_scare_scalar},
      {"continuous two-noise closed form", false, check_scare_two_noise},
      {"monotone fixed-point iterates", false, check_monotone_iterates},
  };

  bool all_ok = true;
  for (const Check& check : checks) {
    if (quick && !check.in_quick) continue;
    bool ok = false;
    try {
      ok = check.run();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  (%s threw: %s)\n", check.name, e.what());
    }
    std::printf("%-40s %s\n", check.name, ok ? "PASS" : "FAIL");
    all_ok = all_ok && ok;
  }
  std::printf("%-40s %s\n", "overall", all_ok ? "PASS" : "FAIL");
  return all_ok ? 0 : 2;
}

}  // namespace riccati
