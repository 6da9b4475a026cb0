#include "riccati/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "riccati/errors.hpp"

namespace riccati {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& value, Index rows, Index cols,
                        const std::string& field) {
  if (!value.is_array() || static_cast<Index>(value.size()) != rows) {
    throw ParseError("field \"" + field + "\": expected " +
                     std::to_string(rows) + " rows");
  }
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ParseError("field \"" + field + "\" row " + std::to_string(i) +
                       ": expected " + std::to_string(cols) + " entries");
    }
    for (Index j = 0; j < cols; ++j) {
      const json& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_number()) {
        throw ParseError("field \"" + field + "\"[" + std::to_string(i) +
                         "][" + std::to_string(j) + "]: not a number");
      }
      out(i, j) = entry.get<double>();
    }
  }
  if (!all_finite(out)) {
    throw ParseError("field \"" + field + "\": non-finite entry");
  }
  return out;
}

Index require_positive_int(const json& doc, const std::string& field) {
  if (!doc.contains(field) || !doc[field].is_number_integer()) {
    throw ParseError("field \"" + field + "\": expected an integer");
  }
  const auto value = doc[field].get<long long>();
  if (value <= 0) {
    throw ParseError("field \"" + field + "\": must be positive");
  }
  return static_cast<Index>(value);
}

void atomic_write(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot open " + tmp.string() + " for writing");
    }
    out << text;
    if (!out) {
      throw Error("short write to " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

double spectral_abscissa(const Matrix& m) {
  return m.eigenvalues().real().maxCoeff();
}

}  // namespace

SdareInstance InstanceFile::to_sdare() const {
  return SdareInstance{A, B, Q, L, R};
}

ScareInstance InstanceFile::to_scare() const {
  return ScareInstance{A, B, Q, L, R};
}

std::string serialize_instance(const InstanceFile& file) {
  json doc;
  doc["kind"] = file.kind;
  doc["r"] = file.r;
  doc["n"] = file.n;
  doc["m"] = file.m;
  json a = json::array();
  for (const Matrix& ai : file.A) a.push_back(matrix_to_json(ai));
  doc["A"] = std::move(a);
  json b = json::array();
  for (const Matrix& bi : file.B) b.push_back(matrix_to_json(bi));
  doc["B"] = std::move(b);
  doc["Q"] = matrix_to_json(file.Q);
  doc["L"] = matrix_to_json(file.L);
  doc["R"] = matrix_to_json(file.R);
  if (file.seed || file.description) {
    json meta;
    if (file.seed) meta["seed"] = *file.seed;
    if (file.description) meta["description"] = *file.description;
    doc["metadata"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

InstanceFile parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("top level: expected an object");
  }

  InstanceFile file;
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw ParseError("field \"kind\": expected \"sdare\" or \"scare\"");
  }
  file.kind = doc["kind"].get<std::string>();
  if (file.kind != "sdare" && file.kind != "scare") {
    throw ParseError("field \"kind\": expected \"sdare\" or \"scare\", got \"" +
                     file.kind + "\"");
  }
  file.r = require_positive_int(doc, "r");
  file.n = require_positive_int(doc, "n");
  file.m = require_positive_int(doc, "m");

  for (const char* field : {"A", "B"}) {
    if (!doc.contains(field) || !doc[field].is_array() ||
        static_cast<Index>(doc[field].size()) != file.r) {
      throw ParseError(std::string("field \"") + field + "\": expected " +
                       std::to_string(file.r) + " matrices");
    }
  }
  for (Index i = 0; i < file.r; ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    file.A.push_back(matrix_from_json(doc["A"][static_cast<std::size_t>(i)],
                                      file.n, file.n, "A" + tag));
    file.B.push_back(matrix_from_json(doc["B"][static_cast<std::size_t>(i)],
                                      file.n, file.m, "B" + tag));
  }
  if (!doc.contains("Q") || !doc.contains("L") || !doc.contains("R")) {
    throw ParseError("fields \"Q\", \"L\", \"R\" are required");
  }
  file.Q = matrix_from_json(doc["Q"], file.n, file.n, "Q");
  file.L = matrix_from_json(doc["L"], file.n, file.m, "L");
  file.R = matrix_from_json(doc["R"], file.m, file.m, "R");

  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) {
      throw ParseError("field \"metadata\": expected an object");
    }
    if (meta.contains("seed")) {
      file.seed = meta["seed"].get<std::uint64_t>();
    }
    if (meta.contains("description")) {
      file.description = meta["description"].get<std::string>();
    }
  }

  const double scale = std::max({file.Q.norm(), file.R.norm(), 1.0});
  if ((file.Q - file.Q.transpose()).norm() > 1e-12 * scale ||
      (file.R - file.R.transpose()).norm() > 1e-12 * scale) {
    throw ParseError("fields \"Q\"/\"R\": must be symmetric");
  }
  file.Q = symmetrize(file.Q);
  file.R = symmetrize(file.R);
  return file;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

AnyInstance load_instance(const std::string& path) {
  const InstanceFile file = read_instance_file(path);

  ValidationReport report;
  AnyInstance instance;
  if (file.kind == "sdare") {
    SdareInstance inst = file.to_sdare();
    report = validate_sdare(inst);
    instance = std::move(inst);
  } else {
    ScareInstance inst = file.to_scare();
    report = validate_scare(inst);
    instance = std::move(inst);
  }

  std::string detail;
  for (const std::string& msg : report.messages) {
    detail += "\n  " + msg;
  }
  if (!report.shapes_ok || !report.weight_psd || !report.r_positive ||
      report.stabilizable == ValidationReport::Cert::no ||
      report.detectable == ValidationReport::Cert::no) {
    throw ValidationError(path + ": instance fails standing assumptions" +
                          detail);
  }
  return instance;
}

void save_instance(const InstanceFile& file, const std::string& path) {
  atomic_write(path, serialize_instance(file));
}

std::string serialize_result(const ResultFile& result) {
  json doc;
  doc["X"] = matrix_to_json(symmetrize(result.X));
  doc["F"] = matrix_to_json(result.F);
  json rep;
  rep["method"] = to_string(result.report.method);
  rep["iterations"] = result.report.iterations;
  rep["residual_original"] = result.report.residual_original;
  rep["residual_standard"] = result.report.residual_standard;
  rep["rate_empirical"] = result.report.rate_empirical;
  rep["rate_bound"] = result.report.rate_bound;
  switch (result.report.stabilizing) {
    case SolveReport::Stabilizing::yes:
      rep["stabilizing"] = "yes";
      break;
    case SolveReport::Stabilizing::no:
      rep["stabilizing"] = "no";
      break;
    case SolveReport::Stabilizing::not_checked:
      rep["stabilizing"] = "not_checked";
      break;
  }
  rep["cap_limited"] = result.report.cap_limited;
  if (result.report.gamma) rep["gamma"] = *result.report.gamma;
  rep["max_presym_defect"] = result.report.max_presym_defect;
  doc["report"] = std::move(rep);
  doc["tool_version"] = result.tool_version;
  doc["input_hash"] = result.input_hash;
  return doc.dump(2) + "\n";
}

void save_result(const ResultFile& result, const std::string& path) {
  atomic_write(path, serialize_result(result));
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(out);
}

InstanceFile gen_instance(const std::string& kind, Index n, Index m, Index r,
                          std::uint64_t seed) {
  if (kind != "sdare" && kind != "scare") {
    throw ValidationError("gen_instance: kind must be \"sdare\" or \"scare\"");
  }
  if (n <= 0 || m <= 0 || r <= 0) {
    throw ValidationError("gen_instance: dimensions must be positive");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto draw = [&](Index rows, Index cols) {
    Matrix out(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) out(i, j) = unit(rng);
    return out;
  };

  InstanceFile file;
  file.kind = kind;
  file.r = r;
  file.n = n;
  file.m = m;
  file.seed = seed;
  for (Index i = 0; i < r; ++i) {
    file.A.push_back(draw(n, n));
    file.B.push_back(draw(n, m));
  }

  if (kind == "sdare") {
    // Rescale the A_i so the F = 0 Stein operator satisfies ρ ≤ 0.9.
    Matrix stein = Matrix::Zero(n * n, n * n);
    for (const Matrix& ai : file.A) stein += kron(ai, ai);
    const double rho = stein.eigenvalues().cwiseAbs().maxCoeff();
    if (rho > 0.9) {
      const double scale = std::sqrt(0.9 / rho);
      for (Matrix& ai : file.A) ai *= scale;
    }
  } else {
    // Shift the drift so the F = 0 Lyapunov operator has abscissa ≤ −1/2.
    Matrix lyap = kron(file.A[0], Matrix::Identity(n, n)) +
                  kron(Matrix::Identity(n, n), file.A[0]);
    for (Index i = 1; i < r; ++i) lyap += kron(file.A[i], file.A[i]);
    const double alpha = spectral_abscissa(lyap);
    if (alpha > -0.5) {
      // Shifting A_0 by −cI moves the abscissa by −2c; land exactly at −1/2.
      const double c = 0.5 * (alpha + 0.5);
      file.A[0] -= c * Matrix::Identity(n, n);
    }
  }

  // Full-row-rank C with l = n; redraw in the measure-zero degenerate case.
  Matrix c_mat = draw(n, n);
  while (Eigen::FullPivLU<Matrix>(c_mat).rank() < n) c_mat = draw(n, n);

  const Matrix m_mat = draw(m, m);
  file.R = symmetrize(Matrix::Identity(m, m) + m_mat.transpose() * m_mat);
  file.L = 0.1 * draw(n, m);
  const Matrix r_inv_lt =
      Eigen::LLT<Matrix>(file.R).solve(file.L.transpose());
  file.Q = symmetrize(c_mat.transpose() * c_mat + file.L * r_inv_lt);
  return file;
}

}  // namespace riccati
