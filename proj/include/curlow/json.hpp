#pragma once

#include <json.hpp>

#include "curlow/bounds.hpp"
#include "curlow/coherence.hpp"
#include "curlow/cur.hpp"
#include "curlow/harness.hpp"
#include "curlow/recovery.hpp"

namespace curlow {

using Json = nlohmann::ordered_json;

/// {"mu": ..., "arg_row": ..., "arg_col": ..., "r": ...}
Json to_json(const CoherenceReport<double>& rep);
/// {"lambda": ..., "numerical_rank": ..., "mu_lambda": ...}
Json to_json(const NumericalRankReport<double>& rep);
/// {"r": ..., "ridge": ..., "lambda_min_KtK": ..., "residual": ..., "Z": [[...]]}
Json to_json(const RecoveryResult<double>& res);
/// {"c": ..., "r_rows": ..., "error_ratio": ...} or {"c": ..., "r_rows": ..., "exact": true}
Json to_json(const CurFactors<double>& f, const CurErrorReport<double>& rep);
Json to_json(const BoundReport& rep);
Json to_json(const HoldsSummary& s);
Json to_json(const MatrixXd& M);

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace curlow
