#include "specbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "specbound/errors.hpp"

namespace specbound {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw ValidationError(where + ": expected a number, got '" + text + "'");
    }
    return value;
}

}  // namespace

BoundsConfig read_bounds_config(std::istream& in) {
    BoundsConfig config;
    const std::map<std::string, double BoundsConfig::*> keys{
        {"C1", &BoundsConfig::C1},
        {"c0", &BoundsConfig::c0},
        {"c_KT", &BoundsConfig::c_kt},
        {"claim_lite_factor", &BoundsConfig::claim_lite_factor},
    };
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const std::string where = "constants line " + std::to_string(number);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const auto it = keys.find(key);
        if (it == keys.end()) throw ValidationError(where + ": unknown key '" + key + "'");
        const double value = parse_number(trim(line.substr(eq + 1)), where);
        if (value < 0.0) throw ValidationError(where + ": '" + key + "' must be nonnegative");
        config.*(it->second) = value;
    }
    return config;
}

BoundsConfig load_bounds_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FilesystemError("cannot open constants file '" + path + "'");
    return read_bounds_config(in);
}

std::string describe(const BoundsConfig& config) {
    std::ostringstream out;
    out.precision(17);
    out << "C1=" << config.C1 << " c0=" << config.c0 << " c_KT=" << config.c_kt
        << " claim_lite_factor=" << config.claim_lite_factor;
    return out.str();
}

CongestionConstants family_constants(CongestionFamily family, double parameter, double c_kt) {
    CongestionConstants cc;
    cc.family = family;
    cc.c_kt = c_kt;
    switch (family) {
        case CongestionFamily::planar:
            cc.k = 3.0;
            break;
        case CongestionFamily::genus:
            if (!(parameter >= 1.0)) throw ValidationError("genus must be at least 1");
            cc.parameter = parameter;
            cc.k = std::max(3.0, std::sqrt(6.0 * parameter));
            break;
        case CongestionFamily::minor_free:
            if (!(parameter >= 3.0)) throw ValidationError("excluded minor size h must be at least 3");
            if (!(c_kt > 0.0)) throw ValidationError("c_KT must be positive");
            cc.parameter = parameter;
            cc.k = 2.0 * c_kt * parameter * std::sqrt(std::log(parameter));
            break;
    }
    cc.c = 27.0 * cc.k * cc.k;
    cc.a = cc.k;
    return cc;
}

CongestionConstants parse_family_constants(const std::string& text, double c_kt) {
    if (text == "planar") return family_constants(CongestionFamily::planar, 0.0, c_kt);
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string name = text.substr(0, colon);
        const double parameter = parse_number(text.substr(colon + 1), "family '" + text + "'");
        if (name == "genus") return family_constants(CongestionFamily::genus, parameter, c_kt);
        if (name == "minor_free") return family_constants(CongestionFamily::minor_free, parameter, c_kt);
    }
    throw ValidationError("unknown congestion family '" + text + "' (planar, genus:G, minor_free:H)");
}

double conmeasure_lower(double num_vertices, double num_edges, const CongestionConstants& cc) {
    if (!(num_vertices >= 1.0)) throw ValidationError("conmeasure_lower needs at least one vertex");
    return num_edges * num_edges * num_edges / (cc.c * num_vertices * num_vertices) - cc.a * num_vertices;
}

double boost_weak_to_strong(double num_vertices, double num_edges, double k) {
    if (!(num_vertices >= 1.0)) throw ValidationError("boost_weak_to_strong needs at least one vertex");
    if (!(k > 0.0)) throw ValidationError("boost_weak_to_strong needs k > 0");
    return num_edges * num_edges * num_edges / (27.0 * k * k * num_vertices * num_vertices) - k * num_vertices;
}

LightEdgeBound light_edge_lower(const SubsetDistribution& mu, std::size_t n, const CongestionConstants& cc,
                                double factor) {
    if (mu.empty()) throw ValidationError("light_edge_lower needs a nonempty distribution");
    if (n == 0) throw ValidationError("light_edge_lower needs n >= 1");
    if (mu.vertex_bound() > n) throw ValidationError("distribution mentions vertices outside [0, n)");
    const auto table = mu.pair_table(n);
    const double nn = static_cast<double>(n);

    LightEdgeBound out;
    double total = 0.0;
    for (const auto& row : table)
        for (double f : row) total += f;
    out.beta = std::sqrt(total / (nn * nn));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const double f = table[u][v];
            if (f > 0.0 && f < out.beta) {
                out.light_mass += f;
                ++out.light_pairs;
            }
        }
    }
    const double head = out.beta > 0.0
                            ? factor * out.light_mass * out.light_mass * out.light_mass / (out.beta * cc.c * nn * nn)
                            : 0.0;
    out.value = head - 2.0 * out.beta * out.beta * cc.a * nn;
    return out;
}

double ss_prime_lower(const Graph& g, const SubsetDistribution& mu, OverlapMode mode,
                      const CongestionConstants& cc, const BruteForceOptions& options) {
    if (mu.empty()) throw ValidationError("ss_prime_lower needs a nonempty distribution");
    if (mu.vertex_bound() > g.num_vertices()) throw ValidationError("distribution mentions vertices outside the host");
    BruteForceOptions fixed = options;
    fixed.placement = PlacementMode::fixed;

    std::map<std::vector<Vertex>, double> cache;
    auto term = [&](const std::vector<Vertex>& common) {
        const std::size_t m = common.size();
        if (m < 4) return 0.0;
        if (mode == OverlapMode::formula) {
            const double md = static_cast<double>(m);
            return std::max(0.0, conmeasure_lower(md, md * (md - 1.0) / 2.0, cc));
        }
        if (auto it = cache.find(common); it != cache.end()) return it->second;
        const double value = min_intersection_bruteforce(g, DemandGraph::complete_on(common), fixed).value;
        cache.emplace(common, value);
        return value;
    };

    double expectation = 0.0;
    for (const auto& [s, p] : mu.atoms()) {
        for (const auto& [t, q] : mu.atoms()) {
            std::vector<Vertex> common;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
            expectation += p * q * term(common);
        }
    }
    return expectation;
}

double subset_flow_lower(const SubsetDistribution& mu, std::size_t n, const CongestionConstants& cc, double C1,
                         double c0) {
    if (n == 0) throw ValidationError("subset_flow_lower needs n >= 1");
    const double second_moment = mu.expected_size_sq();
    const double nn = static_cast<double>(n);
    return std::max(0.0, C1 * std::pow(second_moment, 2.5) / (cc.c * nn) - c0 * (cc.a / nn) * second_moment);
}

double subset_flow_lower_fixed(std::size_t r, std::size_t n, const CongestionConstants& cc, double C1, double c0) {
    if (n == 0) throw ValidationError("subset_flow_lower needs n >= 1");
    const double rr = static_cast<double>(r);
    const double nn = static_cast<double>(n);
    return std::max(0.0, C1 * std::pow(rr, 5.0) / (cc.c * nn) - c0 * cc.a * rr * rr / nn);
}

}  // namespace specbound
