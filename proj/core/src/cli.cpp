#include "riccati/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "riccati/scare_bridge.hpp"

namespace riccati {

LogLevel log_level() {
  const char* raw = std::getenv("RICCATI_LOG");
  if (raw == nullptr) return LogLevel::quiet;
  const std::string value(raw);
  if (value == "debug") return LogLevel::debug;
  if (value == "info") return LogLevel::info;
  return LogLevel::quiet;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::info) {
    std::cerr << "[riccati] " << message << "\n";
  }
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::debug) {
    std::cerr << "[riccati:debug] " << message << "\n";
  }
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Fills the instance-level fields of the report: original residual, the
/// stabilizing certificate, and the closed-loop rate bound at the computed
/// feedback.
void finish_sdare_report(const SdareInstance& inst, const Matrix& x,
                         const Matrix& f, SolveReport& report) {
  report.residual_original = sdare_residual(inst, x);
  const auto [stable, rho] = certify_stabilizing(inst, x);
  report.stabilizing = stable ? SolveReport::Stabilizing::yes
                              : SolveReport::Stabilizing::no;
  report.rate_bound = rho;
  (void)f;
}

void finish_scare_report(const ScareInstance& inst, const Matrix& x,
                         const Matrix& f, SolveReport& report) {
  report.residual_original = scare_residual(inst, x);
  const auto [stable, alpha] = certify_stabilizing(inst, x);
  report.stabilizing = stable ? SolveReport::Stabilizing::yes
                              : SolveReport::Stabilizing::no;
  if (report.gamma) {
    try {
      report.rate_bound = rho_F_star_continuous(inst, f, *report.gamma);
    } catch (const SingularError&) {
      report.rate_bound = -1.0;
    }
  }
  (void)alpha;
}

}  // namespace

int cmd_solve(const SolveArgs& args) {
  if (args.method != "fp" && args.method != "sda") {
    std::cerr << "error: --method must be fp or sda\n";
    return 1;
  }
  if (args.tol <= 0.0 || args.max_iter <= 0 || args.cap <= 0) {
    std::cerr << "error: --tol, --max-iter, and --cap must be positive\n";
    return 1;
  }

  std::string raw;
  AnyInstance instance;
  try {
    raw = slurp(args.in_path);
    instance = load_instance(args.in_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  ResultFile result;
  result.input_hash = fnv1a_hex(raw);

  bool converged = true;
  try {
    if (std::holds_alternative<SdareInstance>(instance)) {
      const auto& inst = std::get<SdareInstance>(instance);
      const SdareGram gram = gram_form(reduce_sdare(inst));
      log_info("solving SDARE, n=" + std::to_string(gram.n) +
               ", r=" + std::to_string(gram.r) + ", method=" + args.method);
      try {
        if (args.method == "fp") {
          std::tie(result.X, result.report) =
              fixed_point_solve(gram, args.tol, args.max_iter);
        } else {
          std::tie(result.X, result.report) =
              doubling_solve(gram, args.tol, args.cap, args.max_iter);
        }
      } catch (const NoConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        result.X = e.last_iterate;
        result.report = e.report;
        converged = false;
      }
      result.F = feedback_sdare(inst, result.X);
      finish_sdare_report(inst, result.X, result.F, result.report);
    } else {
      const auto& inst = std::get<ScareInstance>(instance);
      const StandardScare std_form = reduce_scare(inst);
      ScareSolveOptions opts;
      opts.method = args.method == "fp" ? SolveMethod::cayley_fixed_point
                                        : SolveMethod::cayley_doubling;
      opts.tol = args.tol;
      opts.max_iter = args.max_iter;
      opts.size_cap = args.cap;
      opts.gamma = args.gamma;
      opts.seed = args.seed;
      log_info("solving SCARE, n=" + std::to_string(std_form.n) +
               ", r=" + std::to_string(std_form.r) + ", method=" + args.method);
      std::tie(result.X, result.report) = solve_scare(std_form, opts);
      result.F = feedback_scare(inst, result.X);
      finish_scare_report(inst, result.X, result.F, result.report);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    save_result(result, args.out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  log_info("result written to " + args.out_path +
           " (residual " + std::to_string(result.report.residual_original) +
           ")");

  if (!converged) return 3;
  if (args.verify) {
    const double threshold = 1e3 * args.tol;
    if (result.report.residual_original > threshold) {
      std::cerr << "verify: residual " << result.report.residual_original
                << " exceeds " << threshold << "\n";
      return 2;
    }
    if (result.report.stabilizing != SolveReport::Stabilizing::yes) {
      std::cerr << "verify: solution is not stabilizing\n";
      return 2;
    }
  }
  return 0;
}

int cmd_gen(const GenArgs& args) {
  try {
    const InstanceFile file =
        gen_instance(args.kind, args.n, args.m, args.r, args.seed);
    save_instance(file, args.out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  log_info("instance written to " + args.out_path);
  return 0;
}

}  // namespace riccati
