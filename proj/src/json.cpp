#include "curlow/json.hpp"

#include <cmath>

namespace curlow {

namespace {
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace

Json to_json(const CoherenceReport<double>& rep) {
    Json j;
    j["mu"] = rep.mu;
    j["arg_row"] = rep.arg_row;
    j["arg_col"] = rep.arg_col ? Json(*rep.arg_col) : Json(nullptr);
    j["r"] = rep.r;
    return j;
}

Json to_json(const NumericalRankReport<double>& rep) {
    Json j;
    j["lambda"] = rep.lambda;
    j["numerical_rank"] = rep.value;
    j["mu_lambda"] = number_or_null(rep.mu_lambda);
    return j;
}

Json to_json(const MatrixXd& M) {
    Json rows = Json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const RecoveryResult<double>& res) {
    Json j;
    j["r"] = res.Z_star.rows();
    j["ridge"] = res.regularizer_used;
    j["lambda_min_KtK"] = res.lambda_min_KtK;
    j["residual"] = res.residual;
    j["Z"] = to_json(res.Z_star);
    j["degenerate_gap"] = res.bases.degenerate_gap();
    return j;
}

Json to_json(const CurFactors<double>& f, const CurErrorReport<double>& rep) {
    Json j;
    j["c"] = f.C.cols();
    j["r_rows"] = f.R.rows();
    if (rep.exact) {
        j["exact"] = true;
    } else {
        j["exact"] = false;
        j["error_ratio"] = number_or_null(rep.ratio);
        if (std::isinf(rep.ratio)) j["infinite"] = true;
    }
    j["error_frobenius"] = rep.numerator;
    j["best_rank_k_error"] = rep.denominator;
    return j;
}

Json to_json(const BoundReport& rep) {
    Json j;
    j["name"] = rep.name;
    j["lhs"] = number_or_null(rep.lhs);
    j["rhs"] = number_or_null(rep.rhs);
    j["holds"] = rep.holds;
    j["premises_met"] = rep.premises_met;
    Json params = Json::object();
    for (const auto& [k, v] : rep.params) params[k] = number_or_null(v);
    j["params"] = std::move(params);
    return j;
}

Json to_json(const HoldsSummary& s) {
    Json j;
    j["name"] = s.name;
    j["trials"] = s.trials;
    j["premise_trials"] = s.premise_trials;
    j["holds_with_premises"] = s.holds_with_premises;
    j["holds_all"] = s.holds_all;
    j["premise_rate"] = number_or_null(s.premise_rate());
    j["overall_rate"] = s.overall_rate();
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace curlow
