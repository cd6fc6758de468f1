#include "cayspar/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cayspar/parallel.hpp"
#include "cayspar/rng.hpp"

namespace cayspar {
namespace {

void require_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("eps must lie in (0, 1), got " + std::to_string(eps));
}

void require_big_c(double bigC) {
    if (!(bigC > 0.0)) throw std::invalid_argument("the oversampling constant must be positive");
}

GraphSpectrum analyze_laplacian(Eigen::MatrixXd lap, int componentCount, const Tolerances& tol) {
    GraphSpectrum ctx;
    ctx.laplacian = std::move(lap);
    ctx.eig = decompose_symmetric(ctx.laplacian, tol);
    ctx.componentCount = componentCount;
    int n = ctx.size();
    if (n > 0 && ctx.eig.eigenvalues[n - 1] < -ctx.eig.zeroThreshold - tol.symmetryRel)
        throw NumericalError("laplacian has a negative eigenvalue " +
                             std::to_string(ctx.eig.eigenvalues[n - 1]));
    int nullDim = ctx.eig.null_dimension();
    if (nullDim != componentCount)
        throw NumericalError("laplacian null dimension " + std::to_string(nullDim) +
                             " does not match the combinatorial component count " +
                             std::to_string(componentCount));
    Eigen::VectorXd invSqrt(n), inv(n);
    for (int i = 0; i < n; ++i) {
        double lam = ctx.eig.eigenvalues[i];
        bool zero = lam <= ctx.eig.zeroThreshold;
        invSqrt[i] = zero ? 0.0 : 1.0 / std::sqrt(lam);
        inv[i] = zero ? 0.0 : 1.0 / lam;
    }
    ctx.pinvSqrt = ctx.eig.eigenvectors * invSqrt.asDiagonal() * ctx.eig.eigenvectors.transpose();
    ctx.pinv = ctx.eig.eigenvectors * inv.asDiagonal() * ctx.eig.eigenvectors.transpose();
    return ctx;
}

/// 2-cycles of the permutation of an involution generator (fixed points can
/// appear in Schreier graphs and contribute nothing to I - A_s).
std::vector<std::pair<int, int>> involution_pairs(const CayleyGraph& h, int rep) {
    std::vector<std::pair<int, int>> pairs;
    int n = h.vertex_count();
    pairs.reserve(n / 2);
    for (int x = 0; x < n; ++x) {
        int y = h.vertices.apply(x, rep);
        if (x < y) pairs.emplace_back(x, y);
    }
    return pairs;
}

/// Compression of L_H^{+/2} (I - A_s) L_H^{+/2} for involutions: I - A_s is
/// twice the projector onto the pair-difference basis U, and the nonzero
/// spectrum equals that of 2 U' L_H^{+} U.
Eigen::MatrixXd compressed_involution_matrix(const GraphSpectrum& ctx,
                                             const std::vector<std::pair<int, int>>& pairs) {
    int k = int(pairs.size());
    const Eigen::MatrixXd& w = ctx.pinv;
    Eigen::MatrixXd c(k, k);
    for (int a = 0; a < k; ++a) {
        auto [xa, ya] = pairs[a];
        for (int b = a; b < k; ++b) {
            auto [xb, yb] = pairs[b];
            double v = 0.5 * (w(xa, xb) - w(xa, yb) - w(ya, xb) + w(ya, yb));
            c(a, b) = v;
            c(b, a) = v;
        }
    }
    return c;
}

/// Dense normalized matrix B (2I - A_s - A_{s^-1}) B for proper pairs.
Eigen::MatrixXd normalized_pair_matrix(const GraphSpectrum& ctx, const CayleyGraph& h, int rep) {
    int n = ctx.size();
    const Eigen::MatrixXd& b = ctx.pinvSqrt;
    Eigen::MatrixXd permuted(n, n);
    for (int x = 0; x < n; ++x) permuted.row(x) = b.row(h.vertices.apply(x, rep));
    Eigen::MatrixXd bab = b * permuted;
    Eigen::MatrixXd m = 2.0 * ctx.pinv - bab - bab.transpose();
    return 0.5 * (m + m.transpose());
}

double rep_importance(const GraphSpectrum& ctx, const CayleyGraph& h, int rep, bool involution,
                      const Tolerances& tol) {
    if (involution) {
        auto pairs = involution_pairs(h, rep);
        if (pairs.empty()) return 0.0;
        return 2.0 * opnorm_psd(compressed_involution_matrix(ctx, pairs), tol);
    }
    return opnorm_psd(normalized_pair_matrix(ctx, h, rep), tol);
}

std::int64_t binomial_draw(SplitMix64& rng, std::int64_t m, double p) {
    if (p >= 1.0) return m;
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < m; ++i) hits += rng.next_unit() < p;
    return hits;
}

void sort_kept(std::vector<KeptGenerator>& kept) {
    std::sort(kept.begin(), kept.end(),
              [](const KeptGenerator& a, const KeptGenerator& b) { return a.elem < b.elem; });
}

}  // namespace

GraphSpectrum analyze_graph(const CayleyGraph& h, const Tolerances& tol) {
    return analyze_laplacian(graph_laplacian(h), component_count(h), tol);
}

RelativeSpectrum relative_spectrum(const GraphSpectrum& ref, const Eigen::MatrixXd& lTest,
                                   const Tolerances& tol) {
    return detail::relative_spectrum_from(ref.eig, lTest, tol);
}

double importance(const GraphSpectrum& ctx, const CayleyGraph& h, int rep) {
    return rep_importance(ctx, h, rep, h.group().is_involution(rep), Tolerances::global());
}

double importance(const CayleyGraph& h, int rep, const Tolerances& tol) {
    auto reps = symmetric_representatives(h);  // also validates undirectedness
    int invRep = h.group().inverse(rep);
    bool found = false;
    for (const auto& r : reps) found |= r.rep == std::min(rep, invRep);
    if (!found) throw std::invalid_argument("importance: element is not a generator");
    GraphSpectrum ctx = analyze_graph(h, tol);
    return rep_importance(ctx, h, std::min(rep, invRep), invRep == rep, tol);
}

Eigen::VectorXd importance_vector(const GraphSpectrum& ctx, const CayleyGraph& h, int rep) {
    if (h.group().is_involution(rep)) {
        auto pairs = involution_pairs(h, rep);
        if (pairs.empty()) throw std::invalid_argument("generator acts trivially");
        Eigen::MatrixXd c = compressed_involution_matrix(ctx, pairs);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c);
        Eigen::VectorXd u = solver.eigenvectors().col(int(pairs.size()) - 1);
        // v = L_H^{+} (U u) attains score = imp: the numerator becomes
        // 2 ||C u||^2 and the denominator u' C u.
        Eigen::VectorXd lifted = Eigen::VectorXd::Zero(ctx.size());
        for (int k = 0; k < int(pairs.size()); ++k) {
            lifted[pairs[k].first] += u[k];
            lifted[pairs[k].second] -= u[k];
        }
        return (ctx.pinv * lifted).normalized();
    }
    Eigen::MatrixXd m = normalized_pair_matrix(ctx, h, rep);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    Eigen::VectorXd y = solver.eigenvectors().col(ctx.size() - 1);
    return (ctx.pinvSqrt * y).normalized();
}

double score(const CayleyGraph& h, int rep, const Eigen::VectorXd& v) {
    if (v.size() != h.vertex_count()) throw std::invalid_argument("score: vector length mismatch");
    const GroupTable& g = h.group();
    int invRep = g.inverse(rep);
    rep = std::min(rep, invRep);
    auto pair_energy = [&](int s, bool involution, double weight) {
        double cross = 0.0;
        for (int x = 0; x < h.vertex_count(); ++x) cross += v[x] * v[h.vertices.apply(x, s)];
        double e = v.squaredNorm() - cross;
        return involution ? weight * e : 2.0 * weight * e;
    };
    auto reps = symmetric_representatives(h);
    double denom = 0.0, num = 0.0;
    bool found = false;
    for (const auto& r : reps) {
        double e = pair_energy(r.rep, r.involution, r.weight);
        denom += e;
        if (r.rep == rep) {
            num = e;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("score: element is not a generator");
    double floor = 1e-12 * v.squaredNorm() * std::max(1.0, 4.0 * h.gens.total_weight());
    if (denom <= floor)
        throw std::invalid_argument("score: vector lies in the null space of the laplacian");
    return num / denom;
}

ImportanceProfile build_importance_profile(const CayleyGraph& h, const GraphSpectrum& ctx,
                                           double eps, double bigC, int threads) {
    require_eps(eps);
    require_big_c(bigC);
    auto reps = symmetric_representatives(h);
    ImportanceProfile profile;
    profile.eps = eps;
    profile.bigC = bigC;
    profile.logTerm = std::log(double(h.vertex_count()));
    profile.perRep.resize(reps.size());
    const Tolerances& tol = Tolerances::global();
    parallel_for(threads, std::int64_t(reps.size()), [&](std::int64_t i) {
        const PairRep& r = reps[i];
        double imp = rep_importance(ctx, h, r.rep, r.involution, tol);
        double p = std::min(bigC * imp * profile.logTerm / (eps * eps), 1.0);
        profile.perRep[i] = {r.rep, r.involution, r.weight, imp, p};
    });
    return profile;
}

int SparsifierResult::kept_pair_count(const GroupTable& g) const {
    int count = 0;
    for (const auto& k : kept) count += g.inverse(k.elem) >= k.elem;
    return count;
}

CayleyGraph SparsifierResult::sparsified(const CayleyGraph& original) const {
    std::vector<GeneratorEntry> entries;
    entries.reserve(kept.size());
    for (const auto& k : kept) entries.push_back({k.elem, k.weight});
    GeneratorSet gens = directed ? GeneratorSet::directed(original.group(), std::move(entries))
                                 : GeneratorSet::undirected(original.group(), std::move(entries));
    return CayleyGraph{original.vertices, std::move(gens)};
}

SparsifierResult sample_from_profile(const CayleyGraph& h, const ImportanceProfile& profile,
                                     std::uint64_t seed) {
    SparsifierResult result;
    result.seed = seed;
    result.requestedEps = profile.eps;
    result.profile = profile;
    const GroupTable& g = h.group();
    for (const auto& r : profile.perRep) {
        if (r.p <= 0.0) continue;
        if (substream(seed, std::uint64_t(r.rep)).next_unit() >= r.p) continue;
        double w = 1.0 / r.p;
        result.kept.push_back({r.rep, w});
        if (!r.involution) result.kept.push_back({g.inverse(r.rep), w});
    }
    sort_kept(result.kept);
    return result;
}

SparsifierResult sample_sparsifier(const CayleyGraph& h, double eps, double bigC,
                                   std::uint64_t seed, const SparsifyOptions& opts,
                                   const Tolerances& tol) {
    require_eps(eps);
    require_big_c(bigC);
    if (h.gens.directed())
        throw std::invalid_argument("sample_sparsifier expects an undirected graph");
    if (!h.gens.unit_weights())
        throw std::invalid_argument("sample_sparsifier expects unit weights");

    GraphSpectrum ctx = analyze_graph(h, tol);
    SparsifierResult result =
        sample_from_profile(h, build_importance_profile(h, ctx, eps, bigC, opts.threads), seed);
    result.requestedEps = eps;

    if (opts.computeCertificate) {
        auto rs = relative_spectrum(ctx, graph_laplacian(result.sparsified(h)), tol);
        result.certificate = std::make_pair(rs.lambdaMin, rs.lambdaMax);
    }
    return result;
}

SparsifierResult sparsify_weighted(const CayleyGraph& h, double eps, double bigC,
                                   std::uint64_t seed, const SparsifyOptions& opts,
                                   const Tolerances& tol) {
    require_eps(eps);
    require_big_c(bigC);
    if (h.gens.directed())
        throw std::invalid_argument("sparsify_weighted expects an undirected graph");
    for (const auto& e : h.gens.entries())
        if (e.weight < 1.0 - 1e-12)
            throw std::invalid_argument("sparsify_weighted requires every weight >= 1, element " +
                                        std::to_string(e.elem) + " has weight " +
                                        std::to_string(e.weight));

    auto reps = symmetric_representatives(h);
    int n = h.vertex_count();
    std::vector<std::int64_t> copies(reps.size());
    Eigen::MatrixXd unweightedLap = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        copies[i] = std::int64_t(std::floor(10.0 * reps[i].weight / eps));
        unweightedLap += generator_laplacian(h, reps[i].rep, double(copies[i]));
    }

    GraphSpectrum ctxUnweighted = analyze_laplacian(std::move(unweightedLap), component_count(h), tol);

    // The multi-copy graph is sparsified at quality eps/10 and rescaled by
    // eps/10, so the composed deviation stays inside (1 +- eps).
    double epsAlg = eps / 10.0;
    SparsifierResult result;
    result.seed = seed;
    result.requestedEps = eps;
    result.profile.eps = epsAlg;
    result.profile.bigC = bigC;
    result.profile.logTerm = std::log(double(n));
    result.profile.perRep.resize(reps.size());
    parallel_for(opts.threads, std::int64_t(reps.size()), [&](std::int64_t i) {
        const PairRep& r = reps[i];
        double imp = rep_importance(ctxUnweighted, h, r.rep, r.involution, tol);
        double p = std::min(bigC * imp * result.profile.logTerm / (epsAlg * epsAlg), 1.0);
        result.profile.perRep[i] = {r.rep, r.involution, r.weight, imp, p};
    });

    const GroupTable& g = h.group();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const RepImportance& r = result.profile.perRep[i];
        if (r.p <= 0.0) continue;
        SplitMix64 rng = substream(seed, std::uint64_t(r.rep));
        std::int64_t draws = binomial_draw(rng, copies[i], r.p);
        if (draws == 0) continue;
        double w = (double(draws) * eps) / 10.0 / r.p;
        result.kept.push_back({r.rep, w});
        if (!r.involution) result.kept.push_back({g.inverse(r.rep), w});
    }
    sort_kept(result.kept);

    if (opts.computeCertificate) {
        GraphSpectrum ctx = analyze_graph(h, tol);
        auto rs = relative_spectrum(ctx, graph_laplacian(result.sparsified(h)), tol);
        result.certificate = std::make_pair(rs.lambdaMin, rs.lambdaMax);
    }
    return result;
}

SparsifierResult sparsify_directed(const CayleyGraph& h, double eps, double bigC,
                                   std::uint64_t seed, const SparsifyOptions& opts,
                                   const Tolerances& tol) {
    require_eps(eps);
    require_big_c(bigC);
    if (!h.gens.directed())
        throw std::invalid_argument("sparsify_directed expects a directed graph");

    const GroupTable& g = h.group();
    std::vector<GeneratorEntry> involutions, proper;
    for (const auto& e : h.gens.entries())
        (g.is_involution(e.elem) ? involutions : proper).push_back(e);

    SparsifyOptions subOpts = opts;
    subOpts.computeCertificate = false;

    auto run_undirected = [&](const GeneratorSet& gens, std::uint64_t subSeed) {
        CayleyGraph sub{h.vertices, gens};
        if (gens.unit_weights()) return sample_sparsifier(sub, eps, bigC, subSeed, subOpts, tol);
        return sparsify_weighted(sub, eps, bigC, subSeed, subOpts, tol);
    };

    SparsifierResult result;
    result.seed = seed;
    result.requestedEps = eps;
    result.directed = true;

    if (!involutions.empty()) {
        auto sub = run_undirected(GeneratorSet::undirected(g, involutions), mix_seed(seed, 1));
        for (const auto& k : sub.kept) result.kept.push_back(k);
        result.profile = std::move(sub.profile);
    }

    if (!proper.empty()) {
        std::map<int, double> directedWeight;
        for (const auto& e : proper) directedWeight[e.elem] = e.weight;
        std::vector<GeneratorEntry> sym;
        for (const auto& e : proper) {
            sym.push_back(e);
            sym.push_back({g.inverse(e.elem), e.weight});
        }
        GeneratorSet undirected = GeneratorSet::undirected(g, std::move(sym));
        std::map<int, double> pairWeight;
        for (const auto& e : undirected.entries()) pairWeight[e.elem] = e.weight;

        auto sub = run_undirected(undirected, mix_seed(seed, 2));
        // Keep only the members that were present in the original directed
        // set; when both directions were present the kept pair weight is
        // split pro rata.
        for (const auto& k : sub.kept) {
            auto it = directedWeight.find(k.elem);
            if (it == directedWeight.end()) continue;
            double scale = k.weight / pairWeight.at(k.elem);
            result.kept.push_back({k.elem, scale * it->second});
        }
        auto& mergedPerRep = result.profile.perRep;
        if (mergedPerRep.empty()) {
            result.profile = std::move(sub.profile);
        } else {
            mergedPerRep.insert(mergedPerRep.end(), sub.profile.perRep.begin(),
                                sub.profile.perRep.end());
        }
    }
    sort_kept(result.kept);
    return result;
}

int important_count(const CayleyGraph& h, double alpha, int threads, const Tolerances& tol) {
    if (!(alpha > 0.0)) throw std::invalid_argument("important_count requires alpha > 0");
    GraphSpectrum ctx = analyze_graph(h, tol);
    auto reps = symmetric_representatives(h);
    std::vector<double> imps(reps.size());
    parallel_for(threads, std::int64_t(reps.size()), [&](std::int64_t i) {
        imps[i] = rep_importance(ctx, h, reps[i].rep, reps[i].involution, tol);
    });
    int count = 0;
    for (double v : imps) count += v >= alpha;
    return count;
}

std::vector<GreedyPick> upper_triangular_greedy(const GraphSpectrum& ctx, const CayleyGraph& h,
                                                const std::vector<double>& imps, double alpha,
                                                double bigC) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("upper_triangular_greedy requires alpha in (0, 1]");
    require_big_c(bigC);
    int n = h.vertex_count();
    if (n < 2) return {};
    auto reps = symmetric_representatives(h);
    if (imps.size() != reps.size())
        throw std::invalid_argument("upper_triangular_greedy: importance list size mismatch");

    std::vector<int> candidates;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (imps[i] >= alpha) candidates.push_back(int(i));

    double logN = std::log(double(n));
    double forbidThreshold = alpha / (bigC * logN * logN);
    std::vector<char> permitted(reps.size(), 1);
    std::vector<GreedyPick> picks;
    for (int idx : candidates) {
        if (!permitted[idx]) continue;
        GreedyPick pick;
        pick.rep = reps[idx].rep;
        pick.vec = importance_vector(ctx, h, reps[idx].rep);
        permitted[idx] = 0;
        for (int other : candidates) {
            if (!permitted[other]) continue;
            if (score(h, reps[other].rep, pick.vec) >= forbidThreshold) permitted[other] = 0;
        }
        picks.push_back(std::move(pick));
    }
    return picks;
}

std::vector<GreedyPick> upper_triangular_greedy(const CayleyGraph& h, double alpha, double bigC,
                                                int threads, const Tolerances& tol) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("upper_triangular_greedy requires alpha in (0, 1]");
    require_big_c(bigC);
    if (h.vertex_count() < 2) return {};

    GraphSpectrum ctx = analyze_graph(h, tol);
    auto reps = symmetric_representatives(h);
    std::vector<double> imps(reps.size());
    parallel_for(threads, std::int64_t(reps.size()), [&](std::int64_t i) {
        // Weight folded in so the selection threshold matches the score that
        // the chosen vector attains (identical to imp on unweighted graphs).
        imps[i] = reps[i].weight * rep_importance(ctx, h, reps[i].rep, reps[i].involution, tol);
    });
    return upper_triangular_greedy(ctx, h, imps, alpha, bigC);
}

}  // namespace cayspar
