#include "gke/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "gke/errors.hpp"

namespace gke {
namespace {

using nlohmann::json;

std::string index_path(const std::string& field, int i) { return field + "[" + std::to_string(i) + "]"; }

double number_at(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_number()) throw ValidationError(origin + ": " + path + " must be a number");
  return v.get<double>();
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

MatrixEnsemble parse_ensemble_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError(origin + ": top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "dim" && key != "weights" && key != "matrices" && key != "bounds") {
      throw ValidationError(origin + ": unknown field \"" + key + "\"");
    }
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ValidationError(origin + ": missing integer field \"dim\"");
  }
  const int dim = j["dim"].get<int>();
  if (dim < 1) throw ValidationError(origin + ": dim must be positive, got " + std::to_string(dim));
  if (!j.contains("weights") || !j["weights"].is_array()) {
    throw ValidationError(origin + ": missing array field \"weights\"");
  }
  std::vector<double> weights;
  for (int i = 0; i < static_cast<int>(j["weights"].size()); ++i) {
    weights.push_back(number_at(j["weights"][i], origin, index_path("weights", i)));
  }
  if (!j.contains("matrices") || !j["matrices"].is_array()) {
    throw ValidationError(origin + ": missing array field \"matrices\"");
  }
  const json& jm = j["matrices"];
  if (jm.size() != weights.size()) {
    throw ValidationError(origin + ": matrices count " + std::to_string(jm.size()) +
                          " does not match weights count " + std::to_string(weights.size()));
  }
  std::vector<PositiveDefiniteMatrix> mats;
  mats.reserve(jm.size());
  for (int i = 0; i < static_cast<int>(jm.size()); ++i) {
    const json& entry = jm[i];
    const std::string mpath = index_path("matrices", i);
    if (!entry.is_array() || static_cast<int>(entry.size()) != dim) {
      throw ValidationError(origin + ": " + mpath + " must be a " + std::to_string(dim) + "-row array");
    }
    Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
      const json& row = entry[r];
      const std::string rpath = index_path(mpath, r);
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        throw ValidationError(origin + ": " + rpath + " must hold " + std::to_string(dim) + " entries");
      }
      for (int c = 0; c < dim; ++c) {
        const json& cell = row[c];
        const std::string cpath = index_path(rpath, c);
        if (!cell.is_array() || cell.size() != 2) {
          throw ValidationError(origin + ": " + cpath + " must be an [re, im] pair");
        }
        a(r, c) = Complex(number_at(cell[0], origin, cpath + "[0]"), number_at(cell[1], origin, cpath + "[1]"));
      }
    }
    try {
      mats.emplace_back(a);
    } catch (const Error& e) {
      throw ValidationError(origin + ": " + mpath + ": " + e.what());
    }
  }
  std::optional<SpectrumBounds> bounds;
  if (j.contains("bounds")) {
    const json& jb = j["bounds"];
    if (!jb.is_object() || !jb.contains("m") || !jb.contains("M")) {
      throw ValidationError(origin + ": bounds must be an object with \"m\" and \"M\"");
    }
    const double m = number_at(jb["m"], origin, "bounds.m");
    const double M = number_at(jb["M"], origin, "bounds.M");
    try {
      bounds.emplace(m, M);
    } catch (const Error& e) {
      throw ValidationError(origin + ": bounds: " + e.what());
    }
  }
  try {
    return MatrixEnsemble(std::move(mats), std::move(weights), bounds);
  } catch (const Error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
}

MatrixEnsemble read_ensemble_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ensemble_json(buf.str(), path);
}

std::string ensemble_to_json(const MatrixEnsemble& e) {
  json j;
  if (e.bounds()) j["bounds"] = {{"m", e.bounds()->m}, {"M", e.bounds()->M}};
  j["dim"] = e.dim();
  json mats = json::array();
  for (const auto& a : e.matrices()) mats.push_back(matrix_to_json(a.entries()));
  j["matrices"] = std::move(mats);
  j["weights"] = e.weights();
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("write failed for " + path);
}

void write_ensemble_file(const std::string& path, const MatrixEnsemble& e) {
  write_text_file(path, ensemble_to_json(e));
}

std::string solve_report_to_json(const SolveReport& r) {
  json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["residual"] = r.final_residual;
  j["restarts"] = r.restarts;
  j["solution"] = matrix_to_json(r.solution.entries());
  j["tolerance"] = r.tolerance;
  return j.dump(2) + "\n";
}

std::string check_result_json_line(const CheckResult& r, bool stable) {
  json j;
  j["checkId"] = r.check_id;
  j["seed"] = r.seed;
  j["dims"] = json::array({r.dim, r.count});
  j["holds"] = r.holds;
  j["margin"] = r.margin;
  if (!stable) j["elapsed"] = r.elapsed_seconds;
  return j.dump() + "\n";
}

std::string check_results_csv(const std::vector<CheckResult>& results) {
  std::string out = "checkId,seed,dim,n,generator,p,holds,margin\n";
  for (const auto& r : results) {
    out += r.check_id;
    out += "," + std::to_string(r.seed);
    out += "," + std::to_string(r.dim);
    out += "," + std::to_string(r.count);
    out += "," + r.generator_name;
    out += ",";
    if (r.p) out += json(*r.p).dump();
    out += ",";
    out += r.holds ? "true" : "false";
    out += "," + json(r.margin).dump();
    out += "\n";
  }
  return out;
}

}  // namespace gke
