#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specbound/duality.hpp"
#include "specbound/graph.hpp"
#include "specbound/metric.hpp"
#include "specbound/spectral.hpp"

namespace specbound {

struct PaddedPartition {
    std::vector<std::vector<Vertex>> cells;  // each sorted; cells ordered by creation
    std::vector<std::size_t> cell_of;        // vertex -> index into cells
    double delta = 0.0;
    double measured_beta = 1.0;
    std::uint64_t seed = 0;
};

/// Random-order ball carving: visit vertices in a seeded random order; each
/// unassigned visited vertex claims every unassigned vertex within a seeded
/// radius drawn uniformly from [Δ/4, Δ/2]. Cell diameters are at most Δ.
PaddedPartition ball_partition(const MetricOracle& oracle, double delta, std::uint64_t seed);

/// pad(x) = dist(x, V \ P(x)), +inf when x's cell is all of V. Throws
/// ValidationError unless `cells` partition the vertex set.
std::vector<double> padding(const MetricOracle& oracle, const std::vector<std::vector<Vertex>>& cells);

/// Smallest β >= 1 such that at least ⌈n/2⌉ vertices have pad(x) > Δ/β,
/// i.e. B(x, Δ/β) ⊆ P(x). +inf when half the vertices have pad 0.
double measure_beta(const MetricOracle& oracle, const std::vector<std::vector<Vertex>>& cells, double delta);
double beta_from_padding(std::vector<double> pads, double delta);

struct CertifyOptions {
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    /// Δ = scale·ε/2. Scale 1 is the literal construction; larger scales are
    /// tried as well and the smallest sound bound is kept.
    std::vector<double> scales = default_scales();
    static std::vector<double> default_scales();
    /// Keep the seed with the smallest certified bound rather than the
    /// smallest measured β.
    bool select_by_bound = false;
    SubsetSearchOptions search;
};

enum class CertificateStatus { certified, trivial };

std::string to_string(CertificateStatus status);

struct CandidateSet {
    std::vector<Vertex> core;          // S_i, a union of padded cores
    std::vector<Vertex> neighborhood;  // S̃_i = {x : dist(x, S_i) <= threshold}
    std::size_t light_count = 0;       // |S_i \ H|
    double edge_cost = 0.0;            // W(S̃_i) = Σ_{u∈S̃_i} Σ_{v~u} (ω(u)+ω(v))²
};

struct BoundCertificate {
    CertificateStatus status = CertificateStatus::trivial;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t r = 0;
    double d_max = 0.0;
    VertexWeighting weights;  // normalized
    double epsilon = 0.0;
    SolveMode epsilon_mode = SolveMode::exact;
    double beta = 0.0;
    double scale = 1.0;
    double delta = 0.0;
    double threshold = 0.0;  // heavy threshold and bump height, Δ/(2β)
    std::uint64_t seed = 0;
    std::vector<std::vector<Vertex>> cells;
    std::vector<Vertex> heavy_set;
    std::vector<CandidateSet> candidates;  // every assembled set
    std::vector<std::size_t> selected;     // the k candidates with smallest edge_cost
    std::vector<std::vector<double>> vectors;
    std::vector<RayleighQuotient> quotients;
    double certified_bound = 0.0;
    std::optional<double> exact_lambda_k;
    /// Measured smallest dist(S̃_i, S̃_j) over distinct candidates.
    double neighborhood_separation = 0.0;
    std::vector<std::string> flags;
    std::string diagnostics;
};

/// Builds the eigenvalue certificate for λ_k of g from the spreading weight ω.
/// When ⌊n/8k⌋ < 2 or no scale yields a sound set of test vectors, the
/// certificate falls back to the trivial bound 2·d_max and says why.
BoundCertificate build_certificate(const Graph& g, const VertexWeighting& w, std::size_t k,
                                   const CertifyOptions& options = {});

struct InvariantCheck {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// The four per-run proof-chain checks: bound >= exact λ_k (skipped when no
/// exact value is attached), Σ W(S̃_i) <= 4·d_max·Σω², separation of the
/// padded neighborhoods by Δ/β, and |H| <= 16β²/ε². Trivial certificates
/// report only the first.
std::vector<InvariantCheck> proof_invariants(const Graph& g, const BoundCertificate& cert);

struct VerificationReport {
    bool ok = true;
    std::vector<InvariantCheck> checks;
    std::vector<std::string> failures;
};

/// Independent re-check of an emitted certificate against g: supports pairwise
/// non-adjacent, vectors vanish on H and equal the threshold on S_i \ H,
/// energy <= W(S̃_i), norm² >= threshold²·|S_i \ H|, the recorded bound equals
/// the recomputed maximum ratio, and the bound dominates λ_k when known.
VerificationReport verify_certificate(const Graph& g, const BoundCertificate& cert,
                                      std::optional<double> exact_lambda_k = std::nullopt);

std::string to_json(const BoundCertificate& cert);
BoundCertificate certificate_from_json(const std::string& text);

}  // namespace specbound
