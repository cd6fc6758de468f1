#include <doctest.h>

#include <cmath>

#include "cayspar/cayley.hpp"
#include "cayspar/sparsify.hpp"
#include "cayspar/verify.hpp"

using namespace cayspar;

namespace {

CayleyGraph complete_f2(int k) {
    auto g = share(make_f2k(k));
    std::vector<GeneratorEntry> entries;
    for (int e = 1; e < g->n; ++e) entries.push_back({e, 1.0});
    return make_cayley(g, GeneratorSet::undirected(*g, std::move(entries)));
}

CayleyGraph scaled(const CayleyGraph& h, double factor) {
    std::vector<GeneratorEntry> entries;
    for (const auto& e : h.gens.entries()) entries.push_back({e.elem, factor * e.weight});
    return CayleyGraph{h.vertices, GeneratorSet::undirected(h.group(), std::move(entries))};
}

}  // namespace

TEST_CASE("verify_spectral") {
    auto h = complete_f2(3);
    auto same = verify_spectral(h, h, 0.5);
    CHECK(same.pass);
    CHECK(same.worstLow == doctest::Approx(1.0));
    CHECK(same.worstHigh == doctest::Approx(1.0));

    // Scaling by (1 + 2 eps) must fail with worstHigh = 1 + 2 eps.
    double eps = 0.5;
    auto fail = verify_spectral(h, scaled(h, 1.0 + 2.0 * eps), eps);
    CHECK_FALSE(fail.pass);
    CHECK(fail.worstHigh == doctest::Approx(1.0 + 2.0 * eps));
    REQUIRE(fail.witnessVector.has_value());

    // Algorithm output on the complete f2:6 instance passes at eps = 0.5.
    auto h6 = complete_f2(6);
    auto r = sample_sparsifier(h6, 0.5, 4.0, 7);
    auto rep = verify_spectral(h6, r.sparsified(h6), 0.5);
    CHECK(rep.pass);
}

TEST_CASE("verify_spectral reports disconnection as a range violation") {
    auto f8 = share(make_f2k(3));
    auto h = make_cayley(f8, GeneratorSet::undirected(*f8, {{1, 1.0}, {2, 1.0}, {4, 1.0}}));
    auto crippled = make_cayley(f8, GeneratorSet::undirected(*f8, {{2, 1.0}, {4, 1.0}}));
    // Reversed roles: the "sparsifier" has energy outside the range of the
    // disconnected reference.
    auto rep = verify_spectral(crippled, h, 0.5);
    CHECK_FALSE(rep.pass);
    CHECK(rep.note.find("range") != std::string::npos);
    REQUIRE(rep.witnessVector.has_value());
}

TEST_CASE("verify_cuts_exhaustive") {
    auto h = complete_f2(3);
    auto same = verify_cuts_exhaustive(h, h, 0.5, false);
    CHECK(same.pass);
    CHECK(same.worstLow == doctest::Approx(1.0));
    CHECK(same.worstHigh == doctest::Approx(1.0));
    CHECK(same.trials == 256);

    // Dropping the cut-critical generator e1 from the cube graph without
    // reweighting kills the cut T = span{e2, e3} = {0, 2, 4, 6}.
    auto f8 = share(make_f2k(3));
    auto cube = make_cayley(f8, GeneratorSet::undirected(*f8, {{1, 1.0}, {2, 1.0}, {4, 1.0}}));
    auto dropped = make_cayley(f8, GeneratorSet::undirected(*f8, {{2, 1.0}, {4, 1.0}}));
    auto rep = verify_cuts_exhaustive(cube, dropped, 0.5, false);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worstLow < 1.0 - 0.5);
    REQUIRE(rep.witnessCut.has_value());
    // Worst cut: the subgroup spanned by the surviving generators.
    CHECK(*rep.witnessCut == std::vector<int>{0, 2, 4, 6});

    auto big = share(make_cyclic(32));
    auto hBig = make_cayley(big, GeneratorSet::undirected(*big, {{1, 1.0}, {31, 1.0}}));
    CHECK_THROWS_AS(verify_cuts_exhaustive(hBig, hBig, 0.5, false), std::invalid_argument);
}

TEST_CASE("verify_cuts_exhaustive agrees with indicator quadratic forms") {
    auto z8 = share(make_cyclic(8));
    auto h = make_cayley(z8, GeneratorSet::undirected(*z8, {{1, 1.0}, {7, 1.0}, {4, 2.0}}));
    auto hTilde = make_cayley(z8, GeneratorSet::undirected(*z8, {{1, 1.5}, {7, 1.5}}));
    auto rep = verify_cuts_exhaustive(h, hTilde, 0.9, false);

    Eigen::MatrixXd lh = graph_laplacian(h), lt = graph_laplacian(hTilde);
    double lo = 1e300, hi = 0.0;
    for (std::uint32_t mask = 1; mask < 255; ++mask) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(8);
        for (int i = 0; i < 8; ++i) x[i] = (mask >> i) & 1u;
        double orig = x.dot(lh * x);
        if (orig <= 1e-12) continue;
        double ratio = x.dot(lt * x) / orig;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(rep.worstLow == doctest::Approx(lo).epsilon(1e-8));
    CHECK(rep.worstHigh == doctest::Approx(hi).epsilon(1e-8));
}

TEST_CASE("spectral pass implies exhaustive cut pass") {
    std::vector<std::pair<CayleyGraph, CayleyGraph>> cases;
    auto h = complete_f2(4);
    auto r = sample_sparsifier(h, 0.5, 4.0, 3);
    cases.emplace_back(h, r.sparsified(h));
    cases.emplace_back(h, scaled(h, 1.2));
    cases.emplace_back(h, scaled(h, 0.6));
    for (const auto& [a, b] : cases) {
        auto spectral = verify_spectral(a, b, 0.5);
        auto cuts = verify_cuts_exhaustive(a, b, 0.5, false);
        if (spectral.pass) CHECK(cuts.pass);
        CHECK(cuts.worstLow >= spectral.worstLow - 1e-9);
        CHECK(cuts.worstHigh <= spectral.worstHigh + 1e-9);
    }
}

TEST_CASE("verify_cuts_sampled") {
    auto h = complete_f2(4);
    auto same = verify_cuts_sampled(h, h, 0.5, 200, 99);
    CHECK(same.pass);
    CHECK(same.trials >= 200);

    // The all-zero candidate fails on the first nonzero cut.
    auto f16 = share(make_f2k(4));
    auto empty = make_cayley(f16, GeneratorSet::undirected(*f16, {}));
    auto rep = verify_cuts_sampled(h, empty, 0.5, 50, 99);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worstLow == 0.0);

    // Sampled oracle on a seeded sparsifier of f2:10 (the large-scale route).
    auto h10 = complete_f2(10);
    SparsifyOptions opts;
    opts.threads = 2;
    opts.computeCertificate = false;
    auto r10 = sample_sparsifier(h10, 0.5, 4.0, 20240517, opts);
    auto rep10 = verify_cuts_sampled(h10, r10.sparsified(h10), 0.5, 10000, 4, 2);
    CHECK(rep10.pass);
}
