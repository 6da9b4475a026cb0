#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "riccati/diagnostics.hpp"

namespace riccati {

inline constexpr const char* kToolVersion = "0.1.0";

/// On-disk description of an SDARE/SCARE instance. Matrices are stored as
/// arrays of row arrays; `kind` is "sdare" or "scare".
struct InstanceFile {
  std::string kind;
  Index r = 0;
  Index n = 0;
  Index m = 0;
  std::vector<Matrix> A;
  std::vector<Matrix> B;
  Matrix Q;
  Matrix L;
  Matrix R;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> description;

  SdareInstance to_sdare() const;
  ScareInstance to_scare() const;
};

using AnyInstance = std::variant<SdareInstance, ScareInstance>;

/// Canonical JSON text of an instance; parse → serialize is bit-stable.
std::string serialize_instance(const InstanceFile& file);

/// Parses and shape-checks JSON text. Throws ParseError naming the offending
/// field.
InstanceFile parse_instance(const std::string& text);

InstanceFile read_instance_file(const std::string& path);

/// Loads, parses, and validates an instance. Definite validation failures
/// (bad shapes, indefinite weights, a failed stability certificate) throw
/// ValidationError; inconclusive certificates only log.
AnyInstance load_instance(const std::string& path);

/// Atomic write (temp file + rename).
void save_instance(const InstanceFile& file, const std::string& path);

/// Solver output: solution, feedback gain, and the run report.
struct ResultFile {
  Matrix X;
  Matrix F;
  SolveReport report;
  std::string tool_version = kToolVersion;
  std::string input_hash;
};

std::string serialize_result(const ResultFile& result);
void save_result(const ResultFile& result, const std::string& path);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Deterministic random instance. Discrete instances are rescaled so the
/// open-loop Stein operator has spectral radius ≤ 0.9; continuous instances
/// get the drift shifted so the open-loop Lyapunov abscissa is ≤ −1/2. Both
/// use a full-row-rank C (so Q = CᵀC + LR⁻¹Lᵀ is detectable) and R = I + MᵀM.
InstanceFile gen_instance(const std::string& kind, Index n, Index m, Index r,
                          std::uint64_t seed);

}  // namespace riccati
