#pragma once

#include <string>
#include <vector>

#include "gke/checks.hpp"
#include "gke/ensemble.hpp"
#include "gke/solvers.hpp"

namespace gke {

/// On-disk ensemble format: UTF-8 JSON object with "dim", "weights",
/// "matrices" (k x k arrays of [re, im] pairs) and optional "bounds"
/// {"m", "M"}. Numbers are written at shortest round-trip precision, keys
/// sorted, so write-then-read-then-write is byte-identical.
MatrixEnsemble parse_ensemble_json(const std::string& text, const std::string& origin);
MatrixEnsemble read_ensemble_file(const std::string& path);
std::string ensemble_to_json(const MatrixEnsemble& e);
void write_ensemble_file(const std::string& path, const MatrixEnsemble& e);

std::string solve_report_to_json(const SolveReport& r);

/// One JSON object per line: {checkId, seed, dims, holds, margin, elapsed};
/// stable drops the elapsed field so reports compare byte-identically.
std::string check_result_json_line(const CheckResult& r, bool stable);

/// Header plus one row per result: checkId,seed,dim,n,generator,p,holds,margin.
std::string check_results_csv(const std::vector<CheckResult>& results);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace gke
