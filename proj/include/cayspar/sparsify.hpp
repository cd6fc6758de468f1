#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cayspar/cayley.hpp"
#include "cayspar/spectral.hpp"

namespace cayspar {

/// Shared per-graph spectral context: Laplacian, its eigendecomposition, the
/// pseudo-inverse and pseudo-inverse square root, and the combinatorial
/// component count (cross-checked against the spectral null dimension).
/// Immutable once built; safe to share across worker threads.
struct GraphSpectrum {
    Eigen::MatrixXd laplacian;
    SpectralDecomposition eig;
    Eigen::MatrixXd pinvSqrt;  // L^{+/2}
    Eigen::MatrixXd pinv;      // L^{+}
    int componentCount = 0;

    int size() const { return int(laplacian.rows()); }
};

GraphSpectrum analyze_graph(const CayleyGraph& h,
                            const Tolerances& tol = Tolerances::global());

/// Extreme relative eigenvalues of lTest against a pre-analyzed reference.
RelativeSpectrum relative_spectrum(const GraphSpectrum& ref, const Eigen::MatrixXd& lTest,
                                   const Tolerances& tol = Tolerances::global());

struct RepImportance {
    int rep = 0;
    bool involution = false;
    double weight = 1.0;  // pair weight in the input graph
    double imp = 0.0;
    double p = 1.0;
};

struct ImportanceProfile {
    std::vector<RepImportance> perRep;
    double eps = 0.0;      // quality parameter used in the p formula
    double bigC = 0.0;     // oversampling constant
    double logTerm = 0.0;  // natural log of the vertex count
};

/// ||L_H^{+/2} L_rep L_H^{+/2}||_op with the unweighted single-copy L_rep.
/// Involutions use an exact half-dimension compression (the pair-difference
/// basis of I - A_s), which matches the dense route to solver accuracy.
double importance(const GraphSpectrum& ctx, const CayleyGraph& h, int rep);
double importance(const CayleyGraph& h, int rep,
                  const Tolerances& tol = Tolerances::global());

/// A unit vector attaining the importance maximum, mapped back to vertex
/// space (v = L_H^{+/2} y for the top eigenvector y of the normalized
/// generator matrix).
Eigen::VectorXd importance_vector(const GraphSpectrum& ctx, const CayleyGraph& h, int rep);

/// score(s, v) = (w_s v' L_s v) / (v' L_H v). Weighted numerators make the
/// scores of all representatives sum to exactly 1 for any valid v.
double score(const CayleyGraph& h, int rep, const Eigen::VectorXd& v);

/// Importances and keep probabilities p = min(C * imp * ln(n) / eps^2, 1)
/// for every symmetric representative.
ImportanceProfile build_importance_profile(const CayleyGraph& h, const GraphSpectrum& ctx,
                                           double eps, double bigC, int threads = 1);

struct KeptGenerator {
    int elem = 0;
    double weight = 0.0;
};

struct SparsifierResult {
    std::vector<KeptGenerator> kept;  // closed under inverses when undirected
    std::uint64_t seed = 0;
    double requestedEps = 0.0;
    ImportanceProfile profile;
    std::optional<std::pair<double, double>> certificate;  // (lambdaMin, lambdaMax)
    bool directed = false;

    int kept_pair_count(const GroupTable& g) const;

    /// Rebuilds the sparsified graph over the original vertex set.
    CayleyGraph sparsified(const CayleyGraph& original) const;
};

struct SparsifyOptions {
    bool computeCertificate = true;
    int threads = 1;
};

/// Importance sampling for undirected unweighted Cayley/Schreier graphs:
/// keep each representative pair with probability p_s at weight 1/p_s.
SparsifierResult sample_sparsifier(const CayleyGraph& h, double eps, double bigC,
                                   std::uint64_t seed, const SparsifyOptions& opts = {},
                                   const Tolerances& tol = Tolerances::global());

/// Sampling step alone, for callers that reuse one importance profile across
/// many seeds. No certificate is attached.
SparsifierResult sample_from_profile(const CayleyGraph& h, const ImportanceProfile& profile,
                                     std::uint64_t seed);

/// Weighted extension (weights >= 1): conceptually replaces each generator
/// with floor(10 w_s / eps) unit copies and sparsifies at quality eps/10,
/// then rescales by eps/10. Copies are never materialized; the per-pair keep
/// count is a Binomial(m_s, p_s) draw and the final weight is
/// draws * (1/p_s) * (eps/10).
SparsifierResult sparsify_weighted(const CayleyGraph& h, double eps, double bigC,
                                   std::uint64_t seed, const SparsifyOptions& opts = {},
                                   const Tolerances& tol = Tolerances::global());

/// Directed cut sparsification: involutions are sparsified as undirected
/// edges; proper generators are undirectified, sparsified, and each kept
/// pair is mapped back to the members present in the original directed set
/// (pair weight split pro rata when both directions were present).
SparsifierResult sparsify_directed(const CayleyGraph& h, double eps, double bigC,
                                   std::uint64_t seed, const SparsifyOptions& opts = {},
                                   const Tolerances& tol = Tolerances::global());

/// #{representatives with imp >= alpha}.
int important_count(const CayleyGraph& h, double alpha, int threads = 1,
                    const Tolerances& tol = Tolerances::global());

struct GreedyPick {
    int rep = 0;
    Eigen::VectorXd vec;
};

/// Greedy construction of generator/vector pairs in upper triangular form:
/// each pick scores at least alpha on its own vector and below
/// alpha / (bigC * ln^2 n) on every earlier vector. Permitted picks are
/// visited in ascending element order.
std::vector<GreedyPick> upper_triangular_greedy(const CayleyGraph& h, double alpha,
                                                double bigC, int threads = 1,
                                                const Tolerances& tol = Tolerances::global());

/// Same, for callers that already hold the graph context and the per-rep
/// selection importances (weight times unit importance, aligned with
/// symmetric_representatives(h)).
std::vector<GreedyPick> upper_triangular_greedy(const GraphSpectrum& ctx, const CayleyGraph& h,
                                                const std::vector<double>& imps, double alpha,
                                                double bigC);

}  // namespace cayspar
