// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Seeds are fixed so every number printed here is
// reproducible; --calibrate prints the regression-guard statistics that the
// pinned constants below were derived from.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cayspar/cayley.hpp"
#include "cayspar/cli.hpp"
#include "cayspar/gadget.hpp"
#include "cayspar/group.hpp"
#include "cayspar/parallel.hpp"
#include "cayspar/rng.hpp"
#include "cayspar/sparsify.hpp"
#include "cayspar/verify.hpp"

using namespace cayspar;

namespace {

int gThreads = default_thread_count();
bool gCalibrate = false;

constexpr double kEps = 0.5;
constexpr double kBigC = 4.0;
constexpr int kTrials = 20;
constexpr std::uint64_t kRootSeed = 0xACCE5500u;
constexpr double kBandSlack = 1e-7;

// Regression-guard constants pinned from the seeded calibration run
// (./acceptance --calibrate); the asserts below allow 2x headroom for the
// size fit and use the recorded maximum for the importance-count guard.
constexpr double kSizeFitC = 0.0627;        // max over f2:5..10 of median/(ln^4 n * ln |S|)
constexpr double kImportantCountC = 0.014;  // max over instances/alphas of alpha*count/ln^3 n

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

CayleyGraph complete_f2(int k) {
    auto g = share(make_f2k(k));
    std::vector<GeneratorEntry> entries;
    for (int e = 1; e < g->n; ++e) entries.push_back({e, 1.0});
    return make_cayley(g, GeneratorSet::undirected(*g, std::move(entries)));
}

/// pairCount distinct non-involution inverse pairs, drawn from a fixed
/// substream. Weights are 1 unless a weight range is given.
std::vector<GeneratorEntry> seeded_pairs(const GroupTable& g, int pairCount, std::uint64_t seed,
                                         int weightLo = 1, int weightHi = 1) {
    SplitMix64 rng(mix_seed(kRootSeed, seed));
    std::set<int> chosen;
    std::vector<GeneratorEntry> entries;
    while (int(chosen.size()) < 2 * pairCount) {
        int e = 1 + int(rng.next_below(std::uint64_t(g.n - 1)));
        if (e == g.id || g.inverse(e) == e || chosen.count(e)) continue;
        double w = double(weightLo + int(rng.next_below(std::uint64_t(weightHi - weightLo + 1))));
        chosen.insert(e);
        chosen.insert(g.inverse(e));
        entries.push_back({e, w});
        entries.push_back({g.inverse(e), w});
    }
    return entries;
}

struct Instance {
    std::string name;
    CayleyGraph graph;
    GraphSpectrum ctx;
    ImportanceProfile profile;
    bool medianHalfCheck = false;
};

Instance make_instance(std::string name, CayleyGraph graph, bool medianHalfCheck = false) {
    Instance inst{std::move(name), std::move(graph), {}, {}, medianHalfCheck};
    inst.ctx = analyze_graph(inst.graph);
    inst.profile = build_importance_profile(inst.graph, inst.ctx, kEps, kBigC, gThreads);
    return inst;
}

// The criterion-3 instance family (reused by criteria 4 and 5).
std::vector<Instance>& spectral_instances() {
    static std::vector<Instance> instances = [] {
        std::vector<Instance> out;
        for (int k = 6; k <= 9; ++k)
            out.push_back(make_instance("f2:" + std::to_string(k), complete_f2(k), k >= 8));
        {
            auto g = share(make_cyclic(512));
            out.push_back(make_instance(
                "cyclic:512/40",
                make_cayley(g, GeneratorSet::undirected(*g, seeded_pairs(*g, 20, 101)))));
        }
        {
            auto g = share(make_symmetric(5));
            out.push_back(make_instance(
                "sym:5/30",
                make_cayley(g, GeneratorSet::undirected(*g, seeded_pairs(*g, 15, 102)))));
        }
        return out;
    }();
    return instances;
}

// ---------------------------------------------------------------------------
// criterion 1: exact algebraic identities

bool criterion1(std::ostream& out) {
    struct Row {
        std::string name;
        CayleyGraph graph;
    };
    std::vector<Row> rows;
    {
        auto z4 = share(make_cyclic(4));
        rows.push_back(
            {"cyclic:4", make_cayley(z4, GeneratorSet::undirected(*z4, {{1, 1}, {3, 1}}))});
        auto z12 = share(make_cyclic(12));
        rows.push_back({"cyclic:12", make_cayley(z12, GeneratorSet::undirected(
                                                          *z12, {{1, 1}, {11, 1}, {3, 1}, {9, 1}}))});
        for (int k : {3, 4}) rows.push_back({"f2:" + std::to_string(k), complete_f2(k)});
        auto d3 = share(make_dihedral(3));
        std::vector<GeneratorEntry> allD3;
        for (int e = 1; e < 6; ++e) allD3.push_back({e, 1.0});
        rows.push_back({"dihedral:3", make_cayley(d3, GeneratorSet::undirected(*d3, allD3))});
        auto s3 = share(make_symmetric(3));
        std::vector<GeneratorEntry> allS3;
        for (int e = 1; e < 6; ++e) allS3.push_back({e, 1.0});
        rows.push_back({"sym:3", make_cayley(s3, GeneratorSet::undirected(*s3, allS3))});
        auto d4 = share(make_dihedral(4));
        rows.push_back({"dihedral:4", make_cayley(d4, GeneratorSet::undirected(
                                                          *d4, {{1, 1}, {3, 1}, {4, 1}}))});
        auto prod = share(make_product(make_dihedral(3), make_cyclic(2)));
        rows.push_back(
            {"dihedral:3 x cyclic:2",
             make_cayley(prod, GeneratorSet::undirected(*prod, {{1, 1}, {2, 1}, {4, 1}}))});
        auto z16 = share(make_cyclic(16));
        rows.push_back(
            {"cyclic:16 weighted",
             make_cayley(z16, GeneratorSet::undirected(
                                  *z16, {{1, 2.5}, {15, 2.5}, {4, 1.0}, {12, 1.0}, {8, 0.5}}))});
        auto act = natural_symmetric_action(4);
        std::vector<int> cycle{1, 2, 3, 0};
        int gc = int(rank_of_permutation(cycle));
        int gi = act.group->inverse(gc);
        auto grp = act.group;
        rows.push_back({"schreier sym:4 on 4",
                        make_schreier(act, GeneratorSet::undirected(*grp, {{gc, 1}, {gi, 1}}))});
    }

    bool ok = true;
    SplitMix64 rng(mix_seed(kRootSeed, 1));
    for (const auto& row : rows) {
        const CayleyGraph& h = row.graph;
        int n = h.vertex_count();

        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
        for (const auto& rep : symmetric_representatives(h))
            sum += generator_laplacian(h, rep.rep, rep.weight);
        bool exact = sum == graph_laplacian(h);

        bool compose = true;
        const GroupTable& g = h.group();
        if (g.n <= 64) {
            std::vector<std::vector<int>> perms(g.n);
            for (int e = 0; e < g.n; ++e) perms[e] = adjacency_perm(h, e);
            for (int a = 0; a < g.n && compose; ++a)
                for (int b = 0; b < g.n && compose; ++b) {
                    const auto& pab = perms[g.times(a, b)];
                    for (int x = 0; x < n; ++x)
                        if (perms[b][perms[a][x]] != pab[x]) {
                            compose = false;
                            break;
                        }
                }
        }

        double worst = 0.0;
        auto reps = symmetric_representatives(h);
        Eigen::MatrixXd lap = graph_laplacian(h);
        for (int t = 0; t < 100; ++t) {
            Eigen::VectorXd v(n);
            double energy = 0.0;
            do {
                for (int i = 0; i < n; ++i) v[i] = 2.0 * rng.next_unit() - 1.0;
                energy = v.dot(lap * v);
            } while (energy <= 1e-9);
            double s = 0.0;
            for (const auto& rep : reps) s += score(h, rep.rep, v);
            worst = std::max(worst, std::abs(s - 1.0));
        }
        bool scoreOk = worst <= 1e-8;

        ok &= exact && compose && scoreOk;
        out << "  " << row.name << ": sum-exact=" << (exact ? "yes" : "NO")
            << " compose=" << (compose ? "yes" : "NO") << " worst|score_sum-1|=" << worst << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 2: half-cut identity for directed single generators

bool criterion2(std::ostream& out) {
    struct Row {
        std::string name;
        GroupTable group;
    };
    std::vector<Row> rows;
    rows.push_back({"cyclic:5", make_cyclic(5)});
    rows.push_back({"cyclic:8", make_cyclic(8)});
    rows.push_back({"dihedral:3", make_dihedral(3)});

    bool ok = true;
    for (auto& row : rows) {
        auto g = share(std::move(row.group));
        int n = g->n;
        int checkedGens = 0;
        bool exact = true;
        for (int t = 1; t < n; ++t) {
            if (t == g->id || g->inverse(t) == t) continue;
            ++checkedGens;
            auto dir = make_cayley(g, GeneratorSet::directed(*g, {{t, 1.0}}));
            auto undir = undirectify(dir);
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                std::vector<bool> inT(n);
                for (int x = 0; x < n; ++x) inT[x] = (mask >> x) & 1u;
                if (2.0 * cut_value(dir, inT) != cut_value(undir, inT)) {
                    exact = false;
                    break;
                }
            }
        }
        ok &= exact && checkedGens > 0;
        out << "  " << row.name << ": " << checkedGens << " non-involution generators, all "
            << (1u << n) << " subsets " << (exact ? "exact" : "MISMATCH") << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 3: spectral sparsifier success rates

bool criterion3(std::ostream& out) {
    bool ok = true;
    for (const auto& inst : spectral_instances()) {
        int passes = 0;
        std::vector<double> keptPairs;
        for (int t = 0; t < kTrials; ++t) {
            auto r = sample_from_profile(inst.graph, inst.profile,
                                         mix_seed(mix_seed(kRootSeed, 3), t));
            auto rs = relative_spectrum(inst.ctx, graph_laplacian(r.sparsified(inst.graph)));
            bool pass = rs.rangeOk && rs.lambdaMin >= 1.0 - kEps - kBandSlack &&
                        rs.lambdaMax <= 1.0 + kEps + kBandSlack;
            passes += pass;
            keptPairs.push_back(double(r.kept_pair_count(inst.graph.group())));
        }
        double med = median(keptPairs);
        int pairCount = int(inst.profile.perRep.size());
        bool passRate = passes >= 18;
        ok &= passRate;
        out << "  " << inst.name << ": certificate passes " << passes << "/" << kTrials
            << " (need >= 18), median kept pairs " << med << " of " << pairCount;
        if (inst.medianHalfCheck) {
            // Known red on f2:8: every pair there has imp = 2/n, so the keep
            // probability is min(4 * (2/256) * ln 256 / 0.25, 1) = ln 2 and
            // the median concentrates near 0.69 * 255. The bound is reported
            // as measured rather than loosened.
            bool half = med < double(pairCount) / 2.0;
            ok &= half;
            out << " [median < " << double(pairCount) / 2.0 << ": " << (half ? "yes" : "NO")
                << "]";
        }
        out << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 4: size scaling regression guard

bool criterion4(std::ostream& out) {
    bool ok = true;
    double observedC = 0.0;
    for (int k = 5; k <= 10; ++k) {
        const Instance* inst = nullptr;
        std::optional<Instance> local;
        for (const auto& i : spectral_instances())
            if (i.name == "f2:" + std::to_string(k)) inst = &i;
        if (!inst) {
            local.emplace(make_instance("f2:" + std::to_string(k), complete_f2(k)));
            inst = &*local;
        }
        std::vector<double> kept;
        for (int t = 0; t < kTrials; ++t) {
            auto r = sample_from_profile(inst->graph, inst->profile,
                                         mix_seed(mix_seed(kRootSeed, 4), t));
            kept.push_back(double(r.kept_pair_count(inst->graph.group())));
        }
        double med = median(kept);
        double n = double(inst->graph.vertex_count());
        double fit = std::pow(std::log(n), 4) * std::log(n - 1.0);
        double ratio = med / fit;
        observedC = std::max(observedC, ratio);
        bool within = med <= 2.0 * kSizeFitC * fit;
        ok &= within;
        out << "  f2:" << k << ": median kept pairs " << med << ", fit bound "
            << 2.0 * kSizeFitC * fit << (within ? "" : " EXCEEDED") << "\n";
    }
    if (gCalibrate) out << "  [calibration] size fit c = " << observedC << "\n";
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 5: importance-count guard and upper-triangular greedy

bool criterion5(std::ostream& out) {
    const std::vector<double> alphas{0.05, 0.1, 0.2, 0.5};
    bool ok = true;
    double observedC = 0.0;
    for (const auto& inst : spectral_instances()) {
        double n = double(inst.graph.vertex_count());
        double ln3 = std::pow(std::log(n), 3);
        int log2Bound = int(std::ceil(std::log2(n)));
        std::vector<double> imps;
        for (const auto& r : inst.profile.perRep) imps.push_back(r.weight * r.imp);

        for (double alpha : alphas) {
            int count = 0;
            for (const auto& r : inst.profile.perRep) count += r.imp >= alpha;
            observedC = std::max(observedC, alpha * double(count) / ln3);
            bool countOk = alpha * double(count) <= kImportantCountC * ln3 + 1e-12;

            auto picks = upper_triangular_greedy(inst.ctx, inst.graph, imps, alpha, kBigC);
            bool lenOk = int(picks.size()) <= log2Bound;
            double forbidThreshold = alpha / (kBigC * std::log(n) * std::log(n));
            bool propsOk = true;
            for (std::size_t i = 0; i < picks.size(); ++i) {
                propsOk &= score(inst.graph, picks[i].rep, picks[i].vec) >= alpha - 1e-8;
                for (std::size_t j = 0; j < i; ++j)
                    propsOk &=
                        score(inst.graph, picks[i].rep, picks[j].vec) <= forbidThreshold + 1e-8;
            }
            ok &= countOk && lenOk && propsOk;
            if (!countOk || !lenOk || !propsOk || gCalibrate)
                out << "  " << inst.name << " alpha=" << alpha << ": count=" << count
                    << (countOk ? "" : " COUNT-GUARD") << " greedy len=" << picks.size() << "/"
                    << log2Bound << (lenOk ? "" : " LENGTH") << (propsOk ? "" : " PROPERTIES")
                    << "\n";
        }
    }
    out << "  importance-count guard and greedy properties over "
        << spectral_instances().size() << " instances x " << alphas.size() << " alphas"
        << (ok ? " all hold" : ": FAILURES above") << "\n";
    if (gCalibrate) out << "  [calibration] importance count c = " << observedC << "\n";
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 6: weighted path

bool criterion6(std::ostream& out) {
    auto g = share(make_cyclic(256));
    auto entries = seeded_pairs(*g, 15, 103, 1, 50);
    auto h = make_cayley(g, GeneratorSet::undirected(*g, entries));

    SparsifyOptions opts;
    opts.threads = gThreads;
    int passes = 0;
    for (int t = 0; t < kTrials; ++t) {
        auto r = sparsify_weighted(h, kEps, kBigC, mix_seed(mix_seed(kRootSeed, 6), t), opts);
        bool pass = r.certificate && r.certificate->first >= 1.0 - kEps - kBandSlack &&
                    r.certificate->second <= 1.0 + kEps + kBandSlack;
        passes += pass;
    }
    bool rateOk = passes >= 18;
    out << "  cyclic:256 weights[1,50]: certificate passes " << passes << "/" << kTrials
        << " (need >= 18)\n";

    // Degenerate path: tiny dyadic eps forces p = 1 everywhere and the
    // output must reproduce the input weights bit for bit.
    double tinyEps = 0.03125;
    auto r = sparsify_weighted(h, tinyEps, kBigC, mix_seed(kRootSeed, 61), opts);
    bool allPOne = true;
    for (const auto& rep : r.profile.perRep) allPOne &= rep.p == 1.0;
    std::map<int, double> keptW;
    for (const auto& k : r.kept) keptW[k.elem] = k.weight;
    bool exact = keptW.size() == h.gens.entries().size();
    for (const auto& e : h.gens.entries())
        exact &= keptW.count(e.elem) == 1 && keptW[e.elem] == e.weight;
    out << "  degenerate eps=" << tinyEps << ": all p=1 " << (allPOne ? "yes" : "NO")
        << ", weights reproduced exactly " << (exact ? "yes" : "NO") << "\n";
    return rateOk && allPOne && exact;
}

// ---------------------------------------------------------------------------
// criterion 7: directed path

bool criterion7(std::ostream& out) {
    struct Row {
        std::string name;
        CayleyGraph graph;
    };
    std::vector<Row> rows;
    {
        auto z16 = share(make_cyclic(16));
        rows.push_back({"cyclic:16 directed {1,3,5}",
                        make_cayley(z16, GeneratorSet::directed(*z16, {{1, 1}, {3, 1}, {5, 1}}))});
        auto d3 = share(make_dihedral(3));
        rows.push_back(
            {"dihedral:3 directed {1}", make_cayley(d3, GeneratorSet::directed(*d3, {{1, 1}}))});
    }
    SparsifyOptions opts;
    opts.threads = gThreads;
    bool ok = true;
    for (const auto& row : rows) {
        int passes = 0;
        for (int t = 0; t < kTrials; ++t) {
            auto r = sparsify_directed(row.graph, kEps, kBigC,
                                       mix_seed(mix_seed(kRootSeed, 7), t), opts);
            auto rep = verify_cuts_exhaustive(row.graph, r.sparsified(row.graph), kEps, true);
            passes += rep.pass;
        }
        ok &= passes >= 18;
        out << "  " << row.name << ": exhaustive cut passes " << passes << "/" << kTrials
            << " (need >= 18)\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 8: AND gadget

bool criterion8(std::ostream& out) {
    auto d3 = share(make_dihedral(3));
    bool ok = true;
    std::int64_t expected = 4;
    for (int r = 2; r <= 12; ++r) {
        auto gadget = build_and_gadget(d3, r);
        bool verified = verify_and_gadget(gadget);
        bool sizeOk = std::int64_t(gadget.equation.varCount) == expected &&
                      double(expected) <= std::pow(3.0, r);
        ok &= verified && sizeOk;
        if (!verified || !sizeOk)
            out << "  r=" << r << ": verified=" << verified << " K=" << gadget.equation.varCount
                << " expected=" << expected << "\n";
        expected = 2 * expected + 2;

        // Mutation sweep: flip every single sign. Mutants whose coefficient
        // is an involution are algebraically equivalent (a^-x = a^x); they
        // must evaluate identically everywhere. Every other mutant must be
        // caught by the exhaustive verifier.
        const GroupTable& g = *d3;
        const auto& mono = gadget.equation.monomials;
        int k = int(mono.size());
        std::uint64_t allOnes = (std::uint64_t(1) << r) - 1;
        std::vector<char> caught(k, 0), everDiffers(k, 0);
        std::vector<int> prefix(k + 1), suffix(k + 1);
        std::vector<std::uint8_t> x(k);
        for (std::uint64_t y = 0; y <= allOnes; ++y) {
            for (int j = 0; j < k; ++j) x[j] = std::uint8_t((y >> gadget.pi[j]) & 1);
            auto factor = [&](int j) {
                if (!x[mono[j].var]) return g.id;
                return mono[j].sign > 0 ? mono[j].coeff : g.inverse(mono[j].coeff);
            };
            prefix[0] = g.id;
            for (int j = 0; j < k; ++j) prefix[j + 1] = g.times(prefix[j], factor(j));
            suffix[k] = g.id;
            for (int j = k - 1; j >= 0; --j) suffix[j] = g.times(factor(j), suffix[j + 1]);
            int orig = prefix[k];
            for (int j = 0; j < k; ++j) {
                int flipped = x[mono[j].var]
                                  ? (mono[j].sign > 0 ? g.inverse(mono[j].coeff) : mono[j].coeff)
                                  : g.id;
                int mut = g.times(g.times(prefix[j], flipped), suffix[j + 1]);
                if (mut != orig) everDiffers[j] = 1;
                if ((mut != g.id) != (y == allOnes)) caught[j] = 1;
            }
        }
        int equivalent = 0, killed = 0;
        for (int j = 0; j < k; ++j) {
            bool involutionCoeff = g.is_involution(mono[j].coeff);
            if (caught[j]) {
                ++killed;
            } else if (involutionCoeff && !everDiffers[j]) {
                ++equivalent;  // provably a semantic no-op
            } else {
                ok = false;
                out << "  r=" << r << ": mutant " << j << " escaped (coeff=" << mono[j].coeff
                    << ")\n";
            }
        }
        if (r <= 4 || gCalibrate)
            out << "  r=" << r << ": K=" << gadget.equation.varCount << " verified, " << killed
                << " mutants killed, " << equivalent << " equivalent (involution coeff)\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 9: negative controls

bool criterion9(std::ostream& out) {
    auto f8 = share(make_f2k(3));
    auto cube = make_cayley(f8, GeneratorSet::undirected(*f8, {{1, 1}, {2, 1}, {4, 1}}));
    auto dropped = make_cayley(f8, GeneratorSet::undirected(*f8, {{2, 1}, {4, 1}}));
    auto cutRep = verify_cuts_exhaustive(cube, dropped, kEps, false);
    bool dropCaught = !cutRep.pass && cutRep.witnessCut.has_value() &&
                      *cutRep.witnessCut == std::vector<int>{0, 2, 4, 6};
    out << "  dropped cut-critical generator: fail=" << (!cutRep.pass ? "yes" : "NO")
        << " witness={";
    if (cutRep.witnessCut)
        for (int v : *cutRep.witnessCut) out << v << " ";
    out << "}\n";

    auto h = complete_f2(6);
    auto r = sample_sparsifier(h, kEps, kBigC, mix_seed(kRootSeed, 9));
    auto good = verify_spectral(h, r.sparsified(h), kEps);
    std::vector<GeneratorEntry> scaled;
    for (const auto& k : r.kept) scaled.push_back({k.elem, (1.0 + 2.0 * kEps) * k.weight});
    auto inflated =
        make_cayley(share(make_f2k(6)), GeneratorSet::undirected(h.group(), std::move(scaled)));
    auto bad = verify_spectral(h, inflated, kEps);
    out << "  valid sparsifier passes=" << (good.pass ? "yes" : "NO")
        << "; scaled by (1+2eps) fails=" << (!bad.pass ? "yes" : "NO")
        << " worstHigh=" << bad.worstHigh << "\n";
    return dropCaught && good.pass && !bad.pass;
}

// ---------------------------------------------------------------------------
// criterion 10: determinism

bool criterion10(std::ostream& out) {
    std::vector<std::string> args{"sparsify", "--group", "f2:8",   "--gens",        "all",
                                  "--eps",    "0.5",     "--seed", "424242",        "--bigc",
                                  "4",        "--threads", "2",    "--no-timestamp"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    bool same = a.exitCode == 0 && b.exitCode == 0 && a.out == b.out && !a.out.empty();
    out << "  two seeded CLI runs byte-identical: " << (same ? "yes" : "NO") << "\n";

    auto h = complete_f2(7);
    auto r1 = sample_sparsifier(h, kEps, kBigC, 31337);
    auto r2 = sample_sparsifier(h, kEps, kBigC, 31337);
    bool sameKept = r1.kept.size() == r2.kept.size();
    for (std::size_t i = 0; sameKept && i < r1.kept.size(); ++i)
        sameKept = r1.kept[i].elem == r2.kept[i].elem && r1.kept[i].weight == r2.kept[i].weight;
    out << "  library-level kept sets identical: " << (sameKept ? "yes" : "NO") << "\n";
    return same && sameKept;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
        if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) gThreads = std::atoi(argv[++i]);
        if (!std::strcmp(argv[i], "--calibrate")) gCalibrate = true;
    }

    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::ostream&)> run;
    };
    std::vector<Criterion> criteria{
        {1, "exact algebraic identities", criterion1},
        {2, "directed half-cut identity, exhaustive", criterion2},
        {3, "spectral sparsifier success rate", criterion3},
        {4, "kept-size scaling guard", criterion4},
        {5, "importance-count guard and greedy diagnostics", criterion5},
        {6, "weighted sparsification", criterion6},
        {7, "directed sparsification, exhaustive cuts", criterion7},
        {8, "AND gadget construction and mutation sweep", criterion8},
        {9, "negative controls", criterion9},
        {10, "determinism", criterion10},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        auto start = std::chrono::steady_clock::now();
        std::ostringstream detail;
        bool pass = false;
        std::string error;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !pass;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name
                  << " (" << secs << "s)\n";
        if (!error.empty()) std::cout << "  exception: " << error << "\n";
        std::cout << detail.str();
        std::cout.flush();
    }
    std::cout << (failures ? "ACCEPTANCE: FAILED (" : "ACCEPTANCE: PASSED (")
              << (failures ? std::to_string(failures) + " criteria failed)" : "all criteria)")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
