#include "specbound/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "specbound/errors.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

namespace {

std::string format_number(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

std::string format_optional(const std::optional<double>& x) {
    return x && std::isfinite(*x) ? format_number(*x) : std::string{};
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const Graph& g, const ExperimentConfig& config) {
    const std::size_t n = g.num_vertices();
    if (config.k_min < 1 || config.k_min > config.k_max || config.k_max > n) {
        throw ValidationError("k range [" + std::to_string(config.k_min) + ", " + std::to_string(config.k_max) +
                              "] must lie within [1, " + std::to_string(n) + "]");
    }
    const auto spectrum = eig_symmetric(laplacian(g));
    const double d_max = static_cast<double>(g.max_degree());

    std::vector<ExperimentRow> rows;
    for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
        ExperimentRow row;
        row.family = config.label;
        row.n = n;
        row.k = k;
        row.d_max = d_max;
        row.lambda_exact = lambda_k(spectrum, k);
        const std::size_t r = config.r_override.value_or(n / (8 * k));
        try {
            VertexWeighting w = VertexWeighting::uniform(n);
            std::optional<SpreadingCertificate> primal;
            if (r >= 2 && r <= n && config.optimize_weights) {
                primal = primal_max_spread(g, r, config.solver);
                w = primal->weights;
                if (primal->mode == SolveMode::heuristic) row.flags.emplace_back("heuristic_primal");
            }
            auto cert = build_certificate(g, w, k, config.certify);
            cert.exact_lambda_k = row.lambda_exact;
            row.cert_bound = cert.certified_bound;
            row.flags.push_back(to_string(cert.status));
            for (const auto& f : cert.flags) row.flags.push_back(f);
            if (cert.status == CertificateStatus::certified) {
                row.epsilon = cert.epsilon;
                row.beta = cert.beta;
                for (const auto& check : proof_invariants(g, cert))
                    if (!check.passed) row.flags.push_back("invariant_failed:" + check.name);
                if (!verify_certificate(g, cert).ok) row.flags.emplace_back("verification_failed");
            } else if (primal) {
                row.epsilon = primal->epsilon;
            } else if (cert.epsilon > 0.0) {
                row.epsilon = cert.epsilon;
            }
            if (config.compute_dual && r >= 2 && r <= n) {
                const auto dual = dual_min_congestion(g, r, config.solver);
                row.dual_value = dual.dual_value;
                if (dual.mode == SolveMode::heuristic) row.flags.emplace_back("heuristic_dual");
                if (!dual.converged) row.flags.emplace_back("dual_not_converged");
                if (primal) {
                    row.gap = std::abs(primal->epsilon - dual.dual_value) / std::max(dual.dual_value, 1e-12);
                }
            }
        } catch (const Error& e) {
            row.flags.push_back(std::string("error:") + e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string results_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << "family,n,k,lambda_exact,cert_bound,epsilon,beta,dual_value,gap,flags\n";
    for (const auto& row : rows) {
        std::string flags = join(row.flags, ';');
        std::replace(flags.begin(), flags.end(), ',', ' ');
        std::replace(flags.begin(), flags.end(), '\n', ' ');
        out << row.family << ',' << row.n << ',' << row.k << ',' << format_number(row.lambda_exact) << ','
            << format_number(row.cert_bound) << ',' << format_optional(row.epsilon) << ','
            << format_optional(row.beta) << ',' << format_optional(row.dual_value) << ','
            << format_optional(row.gap) << ',' << flags << '\n';
    }
    return out.str();
}

std::string scaling_svg(const std::vector<ExperimentRow>& rows) {
    constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 20, kTop = 30, kBottom = 50;
    std::vector<double> ks, ys;
    for (const auto& row : rows) {
        ks.push_back(static_cast<double>(row.k));
        ys.push_back(row.lambda_exact * static_cast<double>(row.n) / (row.d_max * static_cast<double>(row.k)));
    }
    double y_min = kInfinity, y_max = 0.0;
    for (double y : ys) {
        if (y > 1e-12) {
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!std::isfinite(y_min)) {
        y_min = 1e-3;
        y_max = 1.0;
    }
    const double ly0 = std::floor(std::log10(y_min)), ly1 = std::max(ly0 + 1.0, std::ceil(std::log10(y_max)));
    const double lx0 = 0.0;
    const double lx1 = std::max(1.0, std::ceil(std::log10(*std::max_element(ks.begin(), ks.end()))));
    auto px = [&](double k) { return kLeft + (std::log10(k) - lx0) / (lx1 - lx0) * (kWidth - kLeft - kRight); };
    auto py = [&](double ly) { return kHeight - kBottom - (ly - ly0) / (ly1 - ly0) * (kHeight - kTop - kBottom); };

    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">" << (rows.empty() ? std::string{} : rows.front().family)
        << ": lambda_k n / (d_max k)</text>\n";
    const double x_axis = py(ly0), y_axis = px(1.0);
    out << "<line x1=\"" << y_axis << "\" y1=\"" << x_axis << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << x_axis
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << y_axis << "\" y1=\"" << x_axis << "\" x2=\"" << y_axis << "\" y2=\"" << kTop
        << "\" stroke=\"black\"/>\n";
    for (double e = lx0; e <= lx1; e += 1.0) {
        out << "<text x=\"" << px(std::pow(10.0, e)) << "\" y=\"" << x_axis + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << std::pow(10.0, e)
            << "</text>\n";
    }
    for (double e = ly0; e <= ly1; e += 1.0) {
        out << "<text x=\"" << y_axis - 6 << "\" y=\"" << py(e) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e << "</text>\n";
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">k</text>\n";
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const bool clamped = !(ys[i] > 1e-12);
        const double y = clamped ? py(ly0) : py(std::log10(ys[i]));
        out << "<circle class=\"" << (clamped ? "clamped" : "marker") << "\" cx=\"" << px(ks[i]) << "\" cy=\"" << y
            << "\" r=\"4\" fill=\"" << (clamped ? "gray" : "steelblue") << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void emit_report(const std::vector<ExperimentRow>& rows, const std::string& outdir) {
    if (rows.empty()) throw ValidationError("cannot emit a report for an empty results table");
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw FilesystemError("cannot create " + outdir + ": " + ec.message());
    auto write = [&](const std::string& name, const std::string& body) {
        const auto path = std::filesystem::path(outdir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << body)) throw FilesystemError("cannot write " + path.string());
    };
    write("results.csv", results_csv(rows));
    write("scaling.svg", scaling_svg(rows));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope needs at least two matching points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("log-log slope needs positive values");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    if (sxx == 0.0) throw ValidationError("slope needs at least two distinct x values");
    return sxy / sxx;
}

}  // namespace specbound
