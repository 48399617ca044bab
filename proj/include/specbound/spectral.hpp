#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "specbound/graph.hpp"
#include "specbound/matrix.hpp"

namespace specbound {

struct Spectrum {
    std::vector<double> eigenvalues;         // ascending
    std::optional<DenseMatrix> eigenvectors; // column j pairs with eigenvalues[j]
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices. Throws
/// ValidationError when |M - Mᵀ| exceeds 1e-12 anywhere.
Spectrum eig_symmetric(const DenseMatrix& m, bool want_vectors = false);

/// λ_k with 1-based k, as in λ_1 <= λ_2 <= ...
double lambda_k(const Spectrum& spectrum, std::size_t k);

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

struct RayleighQuotient {
    double energy = 0.0;   // Σ_{u~v} (f(u)-f(v))²
    double norm_sq = 0.0;  // Σ f(v)²
    double ratio = 0.0;
};

/// Throws ValidationError when f is the zero vector or has the wrong length.
RayleighQuotient rayleigh(const Graph& g, std::span<const double> f);

/// Entries with |f(x)| <= 1e-14 count as zero.
std::vector<Vertex> support(std::span<const double> f);

struct SupportViolation {
    std::size_t i = 0;
    std::size_t j = 0;
    Vertex witness = 0;  // in supp(f_i) ∩ N(supp(f_j))
};

struct SupportBoundResult {
    bool accepted = false;
    double bound = 0.0;  // max_i ratio(f_i); only meaningful when accepted
    std::vector<RayleighQuotient> quotients;
    std::optional<SupportViolation> violation;
};

/// Upper bound on λ_k, k = |fs|, from vectors whose supports are pairwise
/// non-adjacent: if supp(f_i) ∩ N(supp(f_j)) = ∅ for all i != j then
/// λ_k <= max_i ‖f_i‖²_L / ‖f_i‖². Otherwise the first violating pair is
/// reported. A zero vector is a ValidationError.
SupportBoundResult disjoint_support_bound(const Graph& g, const std::vector<std::vector<double>>& fs);

}  // namespace specbound
