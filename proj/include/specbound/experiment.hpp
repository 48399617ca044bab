#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specbound/certify.hpp"
#include "specbound/duality.hpp"
#include "specbound/graph.hpp"

namespace specbound {

struct ExperimentConfig {
    std::string label;  // written to the family column
    std::size_t k_min = 1;
    std::size_t k_max = 1;
    std::optional<std::size_t> r_override;
    SolverOptions solver;
    CertifyOptions certify;
    bool optimize_weights = true;  // ω from primal_max_spread, else uniform
    bool compute_dual = true;
};

struct ExperimentRow {
    std::string family;
    std::size_t n = 0;
    std::size_t k = 0;
    double d_max = 0.0;
    double lambda_exact = 0.0;
    double cert_bound = 0.0;
    std::optional<double> epsilon;
    std::optional<double> beta;
    std::optional<double> dual_value;
    std::optional<double> gap;
    std::vector<std::string> flags;
};

/// One row per k in [k_min, k_max], in increasing k. Per-row failures are
/// recorded in the row's flags and the run continues.
std::vector<ExperimentRow> run_experiment(const Graph& g, const ExperimentConfig& config);

/// Header family,n,k,lambda_exact,cert_bound,epsilon,beta,dual_value,gap,flags;
/// missing values are empty fields and flags are joined with ';'.
std::string results_csv(const std::vector<ExperimentRow>& rows);
/// Scatter of λ_k·n/(d_max·k) against k on log axes, one marker per row.
/// Zero eigenvalues are drawn on the bottom edge with class "clamped".
std::string scaling_svg(const std::vector<ExperimentRow>& rows);

/// Writes results.csv and scaling.svg into outdir, creating it if needed.
/// Throws ValidationError for an empty table.
void emit_report(const std::vector<ExperimentRow>& rows, const std::string& outdir);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace specbound
