#include "cayspar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "cayspar/parallel.hpp"
#include "cayspar/rng.hpp"

namespace cayspar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CutEvaluator {
    struct Term {
        std::vector<int> perm;
        double weight;  // pre-multiplied: 2w for proper pairs, w otherwise
    };
    std::vector<Term> terms;
    double weightScale = 1.0;

    explicit CutEvaluator(const CayleyGraph& h) {
        if (h.gens.directed()) {
            for (const auto& e : h.gens.entries())
                terms.push_back({adjacency_perm(h, e.elem), e.weight});
        } else {
            for (const auto& rep : symmetric_representatives(h))
                terms.push_back({adjacency_perm(h, rep.rep),
                                 rep.involution ? rep.weight : 2.0 * rep.weight});
        }
        for (const auto& t : terms) weightScale += t.weight;
    }

    double eval_mask(std::uint32_t mask, int n) const {
        double total = 0.0;
        for (const auto& t : terms) {
            int cnt = 0;
            for (int x = 0; x < n; ++x)
                cnt += int((mask >> x) & 1u & ~(mask >> t.perm[x]));
            total += t.weight * cnt;
        }
        return total;
    }

    double eval_bytes(const std::vector<std::uint8_t>& inT, int n) const {
        double total = 0.0;
        for (const auto& t : terms) {
            const int* perm = t.perm.data();
            std::int64_t cnt = 0;
            for (int x = 0; x < n; ++x) cnt += inT[x] & (inT[perm[x]] ^ 1);
            total += t.weight * double(cnt);
        }
        return total;
    }
};

struct RatioTracker {
    // worstLow/.High are the extreme observed ratios; (1, 1) when no nonzero
    // cut ever showed up.
    double worstLow = kInf;
    double worstHigh = -kInf;
    std::int64_t argLow = -1;
    std::int64_t argHigh = -1;
    double zeroTol;

    explicit RatioTracker(double zeroTolerance) : zeroTol(zeroTolerance) {}

    void feed(double original, double candidate, std::int64_t witness) {
        if (original <= zeroTol) {
            if (candidate > zeroTol) {
                worstHigh = kInf;
                argHigh = witness;
            }
            return;
        }
        double ratio = candidate / original;
        if (ratio < worstLow) {
            worstLow = ratio;
            argLow = witness;
        }
        if (ratio > worstHigh) {
            worstHigh = ratio;
            argHigh = witness;
        }
    }

    double low() const { return argLow < 0 ? 1.0 : worstLow; }
    double high() const {
        if (std::isinf(worstHigh) && worstHigh > 0) return worstHigh;  // zero-cut violation
        return argHigh < 0 ? 1.0 : worstHigh;
    }
};

std::vector<int> mask_to_subset(std::uint32_t mask, int n) {
    std::vector<int> subset;
    for (int x = 0; x < n; ++x)
        if ((mask >> x) & 1u) subset.push_back(x);
    return subset;
}

void finish_report(VerifyReport& report, double eps, const Tolerances& tol) {
    report.eps = eps;
    report.pass = report.worstLow >= 1.0 - eps - tol.verifyBandSlack &&
                  report.worstHigh <= 1.0 + eps + tol.verifyBandSlack;
}

}  // namespace

VerifyReport verify_spectral(const CayleyGraph& h, const CayleyGraph& hTilde, double eps,
                             const Tolerances& tol) {
    if (h.vertex_count() != hTilde.vertex_count())
        throw std::invalid_argument("verify_spectral: vertex sets differ");
    VerifyReport report;
    report.kind = VerifyKind::Spectral;
    auto rs = relative_spectrum(graph_laplacian(h), graph_laplacian(hTilde), component_count(h), tol);
    report.worstLow = rs.lambdaMin;
    report.worstHigh = rs.lambdaMax;
    finish_report(report, eps, tol);
    if (!rs.rangeOk) {
        report.pass = false;
        report.worstHigh = kInf;
        report.witnessVector = rs.rangeWitness;
        report.note = "range violation: sparsifier carries energy outside range(L_H)";
        return report;
    }
    if (rs.vectorMin.size() > 0) {
        double devLow = 1.0 - rs.lambdaMin, devHigh = rs.lambdaMax - 1.0;
        report.witnessVector = devLow >= devHigh ? rs.vectorMin : rs.vectorMax;
    }
    return report;
}

VerifyReport verify_cuts_exhaustive(const CayleyGraph& h, const CayleyGraph& hTilde, double eps,
                                    bool directed, const Tolerances& tol) {
    int n = h.vertex_count();
    if (hTilde.vertex_count() != n)
        throw std::invalid_argument("verify_cuts_exhaustive: vertex sets differ");
    if (n > tol.exhaustiveCutMaxVertices)
        throw std::invalid_argument("verify_cuts_exhaustive: vertex count " + std::to_string(n) +
                                    " exceeds the exhaustive cap of " +
                                    std::to_string(tol.exhaustiveCutMaxVertices));
    if (h.gens.directed() != directed || hTilde.gens.directed() != directed)
        throw std::invalid_argument("verify_cuts_exhaustive: directedness flag mismatch");

    CutEvaluator orig(h), cand(hTilde);
    double zeroTol = tol.cutZero * std::max(orig.weightScale, cand.weightScale);
    std::uint64_t total = std::uint64_t(1) << n;

    RatioTracker tracker(zeroTol);
    for (std::uint64_t mask = 1; mask + 1 < total; ++mask)
        tracker.feed(orig.eval_mask(std::uint32_t(mask), n), cand.eval_mask(std::uint32_t(mask), n),
                     std::int64_t(mask));

    VerifyReport report;
    report.kind = VerifyKind::CutExhaustive;
    report.trials = std::int64_t(total);
    report.worstLow = tracker.low();
    report.worstHigh = tracker.high();
    finish_report(report, eps, tol);
    std::int64_t witness = -1;
    if (report.worstLow < 1.0 - eps - tol.verifyBandSlack) witness = tracker.argLow;
    if (report.worstHigh > 1.0 + eps + tol.verifyBandSlack) witness = tracker.argHigh;
    if (witness < 0) witness = tracker.argLow >= 0 ? tracker.argLow : tracker.argHigh;
    if (witness >= 0) report.witnessCut = mask_to_subset(std::uint32_t(witness), n);
    if (std::isinf(report.worstHigh)) report.note = "zero cut of the input became positive";
    return report;
}

VerifyReport verify_cuts_sampled(const CayleyGraph& h, const CayleyGraph& hTilde, double eps,
                                 std::int64_t trials, std::uint64_t seed, int threads,
                                 const Tolerances& tol) {
    int n = h.vertex_count();
    if (hTilde.vertex_count() != n)
        throw std::invalid_argument("verify_cuts_sampled: vertex sets differ");
    if (trials < 1) throw std::invalid_argument("verify_cuts_sampled: trials must be >= 1");

    CutEvaluator orig(h), cand(hTilde);
    double zeroTol = tol.cutZero * std::max(orig.weightScale, cand.weightScale);

    std::vector<std::vector<std::uint8_t>> structured;
    for (int x = 0; x < n; ++x) {  // singletons
        std::vector<std::uint8_t> inT(n, 0);
        inT[x] = 1;
        structured.push_back(std::move(inT));
    }
    if (h.vertices.regular) {
        // Cosets of the cyclic subgroup generated by each distinct generator
        // (capped per generator; these are the natural sharp cuts).
        const GroupTable& g = h.group();
        std::set<int> elems;
        for (const auto& e : h.gens.entries()) elems.insert(e.elem);
        for (int s : elems) {
            std::vector<int> subgroup;
            for (int e = g.id;; e = g.times(e, s)) {
                if (!subgroup.empty() && e == g.id) break;
                subgroup.push_back(e);
            }
            std::vector<char> covered(n, 0);
            int emitted = 0;
            for (int x = 0; x < n && emitted < 8; ++x) {
                if (covered[x]) continue;
                std::vector<std::uint8_t> inT(n, 0);
                for (int m : subgroup) {
                    int y = g.times(x, m);
                    covered[y] = 1;
                    inT[y] = 1;
                }
                structured.push_back(std::move(inT));
                ++emitted;
            }
        }
    }

    std::int64_t totalSubsets = std::int64_t(structured.size()) + trials;
    std::vector<double> origVals(totalSubsets), candVals(totalSubsets);
    parallel_for(threads, totalSubsets, [&](std::int64_t i) {
        std::vector<std::uint8_t> inT;
        if (i < std::int64_t(structured.size())) {
            inT = structured[i];
        } else {
            SplitMix64 rng = substream(seed, std::uint64_t(i));
            inT.resize(n);
            std::uint64_t word = 0;
            for (int x = 0; x < n; ++x) {
                if ((x & 63) == 0) word = rng.next();
                inT[x] = std::uint8_t((word >> (x & 63)) & 1u);
            }
        }
        origVals[i] = orig.eval_bytes(inT, n);
        candVals[i] = cand.eval_bytes(inT, n);
    });

    RatioTracker tracker(zeroTol);
    for (std::int64_t i = 0; i < totalSubsets; ++i) tracker.feed(origVals[i], candVals[i], i);

    VerifyReport report;
    report.kind = VerifyKind::CutSampled;
    report.trials = totalSubsets;
    report.worstLow = tracker.low();
    report.worstHigh = tracker.high();
    finish_report(report, eps, tol);
    if (std::isinf(report.worstHigh)) report.note = "zero cut of the input became positive";
    return report;
}

}  // namespace cayspar
