// Acceptance suite: one pass/fail line per criterion. Exits nonzero if any
// criterion fails. Criteria are property- and oracle-based at desk scale.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "riccati/cli.hpp"
#include "riccati/scare_bridge.hpp"

using riccati::Index;
using riccati::Matrix;

namespace {

std::mt19937_64 rng(0xacce97);

Matrix random_matrix(Index rows, Index cols) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = unit(rng);
  return out;
}

Index random_dim() {
  // Pairwise dividing dimensions ≤ 12 keep every random chain compatible.
  static const Index dims[] = {1, 2, 3, 6, 12};
  std::uniform_int_distribution<int> pick(0, 4);
  const Index d = dims[pick(rng)];
  // Mix the {1,2,4,8} chain in as well.
  static const Index alt[] = {1, 2, 4, 8};
  std::uniform_int_distribution<int> coin(0, 1);
  return coin(rng) ? d : alt[pick(rng) % 4];
}

riccati::StandardSdare random_standard(std::uint64_t seed, Index n, Index m,
                                       Index r) {
  return riccati::reduce_sdare(
      riccati::gen_instance("sdare", n, m, r, seed).to_sdare());
}

// --- criterion bodies -------------------------------------------------------

bool algebra_laws() {
  const auto start = std::chrono::steady_clock::now();
  int tuples = 0;
  while (tuples < 200) {
    Index d1 = random_dim(), d2 = random_dim(), d3 = random_dim();
    Index d4 = random_dim(), d5 = random_dim(), d6 = random_dim();
    // Each factor pair must satisfy one-sided divisibility; the dimension
    // pools guarantee it within each pool but not across, so filter.
    auto divides = [](Index a, Index b) { return a % b == 0 || b % a == 0; };
    if (!divides(d2, d3) || !divides(d4, d5)) continue;
    const Matrix a = random_matrix(d1, d2);
    const Matrix b = random_matrix(d3, d4);
    const Matrix c = random_matrix(d5, d6);
    Matrix ab, bc;
    try {
      ab = riccati::ltimes(a, b);
      bc = riccati::ltimes(b, c);
    } catch (const riccati::DimensionError&) {
      continue;
    }
    ++tuples;
    const double scale =
        1.0 + a.norm() * b.norm() * c.norm() + a.norm() * b.norm();
    Matrix left, right;
    try {
      left = riccati::ltimes(ab, c);
      right = riccati::ltimes(a, bc);
    } catch (const riccati::DimensionError&) {
      continue;  // associativity chain not well formed for this tuple
    }
    if ((left - right).norm() > 1e-11 * scale) return false;
    if ((ab.transpose() - riccati::ltimes(b.transpose(), a.transpose()))
            .norm() > 1e-11 * scale) {
      return false;
    }
    if ((riccati::ltimes(a + a, b) - 2.0 * ab).norm() > 1e-11 * scale) {
      return false;
    }
  }
  // Inverse and block laws on dedicated shapes.
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix a = Matrix::Identity(3, 3) + 0.4 * random_matrix(3, 3);
    const Matrix b = Matrix::Identity(6, 6) + 0.4 * random_matrix(6, 6);
    const Matrix prod = riccati::ltimes(a, b);
    if ((prod.inverse() - riccati::ltimes(b.inverse(), a.inverse())).norm() >
        1e-10 * (1.0 + prod.inverse().norm())) {
      return false;
    }
    const Matrix m = random_matrix(4, 4);
    const Matrix n = random_matrix(8, 4);
    const Matrix full = riccati::ltimes(m, n);
    Matrix blockwise(8, 4);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        blockwise.block(4 * i, 2 * j, 4, 2) =
            riccati::ltimes(m.block(2 * i, 0, 2, 2), n.block(0, 2 * j, 4, 2)) +
            riccati::ltimes(m.block(2 * i, 2, 2, 2), n.block(4, 2 * j, 4, 2));
      }
    }
    if ((full - blockwise).norm() > 1e-11 * (1.0 + full.norm())) return false;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return elapsed < 5.0;
}

bool scalar_closed_form() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  riccati::SdareGram gram;
  gram.A = Matrix::Ones(1, 1);
  gram.G = Matrix::Ones(1, 1);
  gram.H = Matrix::Ones(1, 1);
  gram.r = 1;
  gram.n = 1;
  const auto [xf, rf] = riccati::fixed_point_solve(gram, 1e-13);
  if (std::abs(xf(0, 0) - phi) > 1e-12 || rf.iterations > 80) return false;
  const auto [xd, rd] = riccati::doubling_solve(gram, 1e-13);
  return std::abs(xd(0, 0) - phi) <= 1e-12 && rd.iterations <= 6;
}

bool toeplitz_oracle() {
  for (int trial = 0; trial < 50; ++trial) {
    const auto std_form = random_standard(1000 + trial, 1 + trial % 3,
                                          1 + trial % 2, 1 + trial % 2);
    const auto gram = riccati::gram_form(std_form);
    Matrix x = Matrix::Zero(std_form.n, std_form.n);
    for (int t = 1; t <= 6; ++t) {
      x = riccati::fp_step(gram, x);
      const Matrix closed = riccati::toeplitz_iterate(std_form, t);
      if ((x - closed).norm() > 1e-10 * (1.0 + x.norm())) return false;
    }
  }
  return true;
}

bool doubling_oracles() {
  for (int trial = 0; trial < 50; ++trial) {
    const auto std_form = random_standard(2000 + trial, 1 + trial % 3,
                                          1 + trial % 2, 1 + trial % 2);
    const auto gram = riccati::gram_form(std_form);
    auto state = riccati::doubling_init(gram);
    Matrix x = Matrix::Zero(std_form.n, std_form.n);
    int steps = 0;
    for (int k = 1; k <= 3; ++k) {
      try {
        state = riccati::doubling_step(state);
      } catch (const riccati::SizeCapError&) {
        break;
      }
      while (steps < (1 << k)) {
        x = riccati::fp_step(gram, x);
        ++steps;
      }
      if ((state.H - x).norm() > 1e-10 * (1.0 + x.norm())) return false;
      if (k <= 2) {
        const auto oracle = riccati::doubling_oracle(std_form, k);
        const double scale =
            1.0 + state.A.norm() + state.G.norm() + state.H.norm();
        if ((oracle.A - state.A).norm() > 1e-10 * scale ||
            (oracle.G - state.G).norm() > 1e-10 * scale ||
            (oracle.H - state.H).norm() > 1e-10 * scale) {
          return false;
        }
      }
    }
  }
  return true;
}

bool symplectic_invariants() {
  for (int trial = 0; trial < 10; ++trial) {
    auto state = riccati::doubling_init(
        riccati::gram_form(random_standard(3000 + trial, 2, 1, 2)));
    for (int k = 0; k <= 3; ++k) {
      const double scale =
          1.0 + state.A.norm() + state.G.norm() + state.H.norm();
      if (riccati::symplectic_defect(state) > 1e-10 * scale) return false;
      if (k == 3) break;
      try {
        state = riccati::doubling_step(state);
      } catch (const riccati::SizeCapError&) {
        break;
      }
    }
  }
  // Continuous-bridge pencils satisfy the same invariant.
  for (int trial = 0; trial < 10; ++trial) {
    const auto std_form = riccati::reduce_scare(
        riccati::gen_instance("scare", 2, 1, 2, 3100 + trial).to_scare());
    const auto data =
        riccati::cayley_ssf1(std_form, riccati::select_gamma(std_form));
    riccati::DoublingState bridged;
    bridged.A = data.E;
    bridged.G = data.G;
    bridged.H = data.H;
    bridged.r = std_form.r;
    bridged.n = std_form.n;
    const double scale =
        1.0 + bridged.A.norm() + bridged.G.norm() + bridged.H.norm();
    if (riccati::symplectic_defect(bridged) > 1e-10 * scale) return false;
  }
  return true;
}

bool monotone_iterates() {
  for (int trial = 0; trial < 10; ++trial) {
    const auto gram = riccati::gram_form(
        random_standard(4000 + trial, 2 + trial % 3, 1 + trial % 2, 1 + trial % 3));
    Matrix x = Matrix::Zero(gram.n, gram.n);
    for (int t = 0; t < 60; ++t) {
      const Matrix next = riccati::fp_step(gram, x);
      const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(next - x)
                                 .eigenvalues()
                                 .minCoeff();
      if (min_eig < -1e-11 * (1.0 + next.norm())) return false;
      x = next;
    }
  }
  return true;
}

bool rate_bound() {
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst =
        riccati::gen_instance("sdare", 1 + trial % 4, 1 + trial % 2,
                              1 + trial % 3, 5000 + trial)
            .to_sdare();
    const auto gram = riccati::gram_form(riccati::reduce_sdare(inst));
    const auto [x, report] = riccati::fixed_point_solve(gram);
    const auto [ok, rho] = riccati::certify_stabilizing(inst, x);
    if (!ok) return false;
    if (report.rate_empirical > rho + 0.05) return false;
  }
  return true;
}

Matrix care_hamiltonian_oracle(const Matrix& a, const Matrix& b,
                               const Matrix& c) {
  const Index n = a.rows();
  Matrix ham(2 * n, 2 * n);
  ham.topLeftCorner(n, n) = a;
  ham.topRightCorner(n, n) = -b * b.transpose();
  ham.bottomLeftCorner(n, n) = -c.transpose() * c;
  ham.bottomRightCorner(n, n) = -a.transpose();
  Eigen::EigenSolver<Matrix> eig(ham);
  Eigen::MatrixXcd basis(2 * n, n);
  Index col = 0;
  for (Index i = 0; i < 2 * n && col < n; ++i) {
    if (eig.eigenvalues()(i).real() < 0.0) basis.col(col++) = eig.eigenvectors().col(i);
  }
  if (col != n) throw riccati::Error("oracle: stable subspace not n-dimensional");
  return riccati::symmetrize(
      (basis.bottomRows(n) * basis.topRows(n).inverse()).real());
}

bool continuous_bridge() {
  riccati::ScareInstance scalar;
  scalar.A = {(Matrix(1, 1) << -1.0).finished()};
  scalar.B = {Matrix::Ones(1, 1)};
  scalar.Q = Matrix::Identity(1, 1);
  scalar.L = Matrix::Zero(1, 1);
  scalar.R = Matrix::Identity(1, 1);
  const auto [x1, r1] = riccati::solve_scare(riccati::reduce_scare(scalar));
  if (std::abs(x1(0, 0) - (std::sqrt(2.0) - 1.0)) > 1e-10) return false;

  riccati::ScareInstance two = scalar;
  two.A = {(Matrix(1, 1) << -2.0).finished(), (Matrix(1, 1) << 0.5).finished()};
  two.B = {Matrix::Ones(1, 1), Matrix::Zero(1, 1)};
  const double root = (-3.75 + std::sqrt(3.75 * 3.75 + 4.0)) / 2.0;
  const auto [x2, r2] = riccati::solve_scare(riccati::reduce_scare(two));
  if (std::abs(x2(0, 0) - root) > 1e-8) return false;

  for (int trial = 0; trial < 20; ++trial) {
    const auto std_form = riccati::reduce_scare(
        riccati::gen_instance("scare", 2, 1, 1, 6000 + trial).to_scare());
    const Matrix oracle =
        care_hamiltonian_oracle(std_form.A, std_form.B, std_form.C);
    const auto [x, report] = riccati::solve_scare(std_form);
    if ((x - oracle).norm() > 1e-8 * (1.0 + oracle.norm())) return false;
  }
  return true;
}

bool gamma_invariance() {
  for (int trial = 0; trial < 10; ++trial) {
    const auto std_form = riccati::reduce_scare(
        riccati::gen_instance("scare", 2 + trial % 2, 1 + trial % 2, 2,
                              7000 + trial)
            .to_scare());
    riccati::ScareSolveOptions opts;
    opts.gamma = 1.0;
    const auto [xa, ra] = riccati::solve_scare(std_form, opts);
    opts.gamma = std_form.A.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
    const auto [xb, rb] = riccati::solve_scare(std_form, opts);
    if (*ra.gamma == *rb.gamma) return false;
    if ((xa - xb).norm() > 1e-8 * (1.0 + xa.norm())) return false;
  }
  return true;
}

bool end_to_end() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "riccati_acceptance";
  fs::create_directories(dir);
  int checked = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const std::string kind = trial % 2 == 0 ? "sdare" : "scare";
    riccati::GenArgs gen;
    gen.kind = kind;
    gen.n = 2 + trial % 4;  // n ≤ 5
    gen.m = 1 + trial % 2;
    gen.r = 1 + trial % 3;
    gen.seed = 8000 + trial;
    gen.out_path = (dir / ("inst" + std::to_string(trial) + ".json")).string();
    if (riccati::cmd_gen(gen) != 0) return false;

    riccati::SolveArgs solve;
    solve.in_path = gen.out_path;
    solve.out_path = (dir / ("out" + std::to_string(trial) + ".json")).string();
    solve.method = trial % 3 == 0 ? "sda" : "fp";
    solve.verify = true;
    if (riccati::cmd_solve(solve) != 0) return false;

    const std::string text = [&] {
      std::FILE* f = std::fopen(solve.out_path.c_str(), "rb");
      std::string out;
      char buf[4096];
      size_t got;
      while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
      std::fclose(f);
      return out;
    }();
    // residual_original is stored normalized by (1 + ‖X‖).
    const auto pos = text.find("\"residual_original\": ");
    if (pos == std::string::npos) return false;
    const double residual = std::stod(text.substr(pos + 21));
    if (residual > 1e-9) return false;
    if (text.find("\"stabilizing\": \"yes\"") == std::string::npos) return false;
    ++checked;
  }
  // One run through the installed front end itself.
  const std::string in = (dir / "inst0.json").string();
  const std::string out = (dir / "cli_out.json").string();
  const std::string command = std::string(RICCATI_CLI_EXE) + " solve --in " +
                              in + " --out " + out + " --verify";
  if (WEXITSTATUS(std::system(command.c_str())) != 0) return false;
  return checked == 8;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<bool()>>> criteria = {
      {" 1. semi-tensor algebra laws on random tuples", algebra_laws},
      {" 2. scalar closed form via fixed point and doubling", scalar_closed_form},
      {" 3. Toeplitz closed-form iterates match fixed point", toeplitz_oracle},
      {" 4. doubling squares the iteration index, closed form agrees", doubling_oracles},
      {" 5. symplectic pencil invariants at every step", symplectic_invariants},
      {" 6. monotone nondecreasing fixed-point iterates", monotone_iterates},
      {" 7. empirical rate within the closed-loop spectral bound", rate_bound},
      {" 8. continuous bridge matches scalar and Hamiltonian oracles", continuous_bridge},
      {" 9. solutions invariant under the accepted shift", gamma_invariance},
      {"10. end-to-end solve with verification on generated instances", end_to_end},
  };

  const auto start = std::chrono::steady_clock::now();
  bool all_ok = true;
  for (const auto& [name, body] : criteria) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  (%s threw: %s)\n", name, e.what());
    }
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%s total runtime %.1f s\n", elapsed < 60.0 ? "PASS" : "FAIL",
              elapsed);
  return (all_ok && elapsed < 60.0) ? 0 : 1;
}
