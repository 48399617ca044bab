#pragma once

#include <iosfwd>
#include <string>

#include "specbound/flow.hpp"
#include "specbound/graph.hpp"

namespace specbound {

enum class CongestionFamily { planar, genus, minor_free };

/// Constants (c, a) of a congestion measure: inter_G(H) >= |E|³/(c|V|²) - a|V|
/// for unit demand graphs H placed in any host of the family.
struct CongestionConstants {
    double c = 0.0;
    double a = 0.0;
    double k = 0.0;  // slope of the weak inequality inter >= |E| - k|V|
    CongestionFamily family = CongestionFamily::planar;
    double parameter = 0.0;  // genus g or excluded minor size h; 0 for planar
    double c_kt = 4.0;
};

/// Tunable constants for the estimators below. Defaults are conservative and
/// every report prints the values used.
struct BoundsConfig {
    double C1 = 1e-3;
    double c0 = 1.0;
    double c_kt = 4.0;
    double claim_lite_factor = 1.0 / 12.0;
};

/// "key = value" lines; '#' starts a comment. Unknown keys and malformed
/// values are validation errors.
BoundsConfig read_bounds_config(std::istream& in);
BoundsConfig load_bounds_config(const std::string& path);
std::string describe(const BoundsConfig& config);

/// planar: (243, 3); genus g: k = max(3, √(6g)); minor_free h: k = 2·c_kt·h·√(ln h).
/// Throws ValidationError for g < 1 or h < 3.
CongestionConstants family_constants(CongestionFamily family, double parameter = 0.0, double c_kt = 4.0);
/// Accepts "planar", "genus:G", "minor_free:H".
CongestionConstants parse_family_constants(const std::string& text, double c_kt = 4.0);

/// nE³/(c·nV²) - a·nV; may be negative.
double conmeasure_lower(double num_vertices, double num_edges, const CongestionConstants& cc);

/// (1/27)·nE³/(k²·nV²) - k·nV.
double boost_weak_to_strong(double num_vertices, double num_edges, double k);

struct LightEdgeBound {
    double value = 0.0;
    double beta = 0.0;
    double light_mass = 0.0;  // Σ F(u,v) over light unordered pairs
    std::size_t light_pairs = 0;
};

/// Light-pair estimator on H_μ: β = √(Σ_{u,v} F(u,v) / n²) over ordered pairs
/// with F(u,u) = Pr[u ∈ S]; light pairs are u ≠ v with 0 < F(u,v) < β; value
/// = factor·(Σ_light F)³/(β·c·n²) - 2β²·a·n.
LightEdgeBound light_edge_lower(const SubsetDistribution& mu, std::size_t n, const CongestionConstants& cc,
                                double factor = BoundsConfig{}.claim_lite_factor);

enum class OverlapMode { bruteforce, formula };

/// E_{S,S'~μ×μ} of the intersection number of the unit complete graph on
/// S ∩ S'. Brute force routes that complete graph on its own host vertices;
/// formula uses max(0, conmeasure_lower(m, m(m-1)/2)).
double ss_prime_lower(const Graph& g, const SubsetDistribution& mu, OverlapMode mode,
                      const CongestionConstants& cc, const BruteForceOptions& options = {});

/// max(0, C1·(E|S|²)^{5/2}/(c·n) - c0·(a/n)·E|S|²).
double subset_flow_lower(const SubsetDistribution& mu, std::size_t n, const CongestionConstants& cc,
                         double C1 = BoundsConfig{}.C1, double c0 = BoundsConfig{}.c0);
/// Same bound for μ supported on size-r sets: max(0, C1·r⁵/(cn) - c0·a·r²/n).
double subset_flow_lower_fixed(std::size_t r, std::size_t n, const CongestionConstants& cc,
                               double C1 = BoundsConfig{}.C1, double c0 = BoundsConfig{}.c0);

}  // namespace specbound
