#include "cayspar/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cayspar/json_io.hpp"
#include "cayspar/parallel.hpp"
#include "cayspar/rng.hpp"
#include "cayspar/sparsify.hpp"
#include "cayspar/verify.hpp"

namespace cayspar {
namespace {

using nlohmann::json;

std::pair<GroupTable, std::size_t> parse_group_spec_at(const std::string& spec, std::size_t pos);

int parse_int(const std::string& spec, std::size_t& pos, const char* what) {
    std::size_t start = pos;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
    if (start == pos)
        throw std::invalid_argument(std::string("group spec: expected an integer for ") + what);
    return std::stoi(spec.substr(start, pos - start));
}

std::pair<GroupTable, std::size_t> parse_group_spec_at(const std::string& spec, std::size_t pos) {
    auto starts = [&](const char* kw) {
        std::size_t len = std::string(kw).size();
        return spec.compare(pos, len, kw) == 0;
    };
    if (starts("cyclic:")) {
        pos += 7;
        return {make_cyclic(parse_int(spec, pos, "cyclic order")), pos};
    }
    if (starts("f2:")) {
        pos += 3;
        return {make_f2k(parse_int(spec, pos, "f2 dimension")), pos};
    }
    if (starts("dihedral:")) {
        pos += 9;
        return {make_dihedral(parse_int(spec, pos, "dihedral order")), pos};
    }
    if (starts("sym:")) {
        pos += 4;
        return {make_symmetric(parse_int(spec, pos, "symmetric degree")), pos};
    }
    if (starts("table:")) {
        pos += 6;
        std::size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        std::string path = spec.substr(pos, end - pos);
        return {from_table_file(path), end};
    }
    if (starts("product:")) {
        pos += 8;
        auto [g1, p1] = parse_group_spec_at(spec, pos);
        if (p1 >= spec.size() || spec[p1] != ',')
            throw std::invalid_argument("group spec: product needs two comma-separated factors");
        auto [g2, p2] = parse_group_spec_at(spec, p1 + 1);
        return {make_product(g1, g2), p2};
    }
    throw std::invalid_argument("group spec: unknown kind at '" + spec.substr(pos) + "'");
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            values.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + tok + "'");
        }
    }
    return values;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

void emit(const std::string& payload, const std::string& outPath, CliResult& result) {
    if (outPath.empty()) {
        result.out = payload;
        return;
    }
    std::ofstream out(outPath);
    if (!out) throw std::invalid_argument("cannot open output path: " + outPath);
    out << payload;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

struct SparsifyArgs {
    std::string group, gens, mode = "auto", out;
    double eps = 0.5, bigC = 4.0;
    std::uint64_t seed = kDefaultSeed;
    bool directedFlag = false, symmetrize = false, noTimestamp = false;
    std::vector<std::string> verify;
    std::int64_t trials = 10000;
    int threads = default_thread_count();
    std::string edgesOut, sparseEdgesOut;
};

int cmd_sparsify(const SparsifyArgs& a, CliResult& result) {
    GroupPtr group = share(parse_group_spec(a.group));
    auto entries = parse_generator_spec(a.gens, *group);

    std::string mode = a.mode;
    bool directed = a.directedFlag || mode == "directed";
    if (mode == "auto") {
        bool unit = std::all_of(entries.begin(), entries.end(),
                                [](const GeneratorEntry& e) { return e.weight == 1.0; });
        mode = directed ? "directed" : unit ? "plain" : "weighted";
    }
    if (mode == "directed") directed = true;

    GeneratorSet gens =
        directed ? GeneratorSet::directed(*group, entries)
                 : GeneratorSet::undirected(*group, entries,
                                            a.symmetrize ? SymmetrizePolicy::Average
                                                         : SymmetrizePolicy::Reject);
    CayleyGraph h = make_cayley(group, std::move(gens));

    SparsifyOptions opts;
    opts.threads = a.threads;
    opts.computeCertificate = !directed;

    SparsifierResult sres;
    if (mode == "plain")
        sres = sample_sparsifier(h, a.eps, a.bigC, a.seed, opts);
    else if (mode == "weighted")
        sres = sparsify_weighted(h, a.eps, a.bigC, a.seed, opts);
    else if (mode == "directed")
        sres = sparsify_directed(h, a.eps, a.bigC, a.seed, opts);
    else
        throw std::invalid_argument("unknown mode '" + mode + "'");

    CayleyGraph hTilde = sres.sparsified(h);

    json verifyReports = json::array();
    bool verifyFailed = false;
    for (const std::string& v : a.verify) {
        VerifyReport report;
        if (v == "spectral") {
            if (directed)
                throw std::invalid_argument("spectral verification needs an undirected graph");
            report = verify_spectral(h, hTilde, a.eps);
        } else if (v == "cuts") {
            report = verify_cuts_exhaustive(h, hTilde, a.eps, directed);
        } else if (v == "cuts-sampled") {
            report = verify_cuts_sampled(h, hTilde, a.eps, a.trials, mix_seed(a.seed, 0xC07),
                                         a.threads);
        } else {
            throw std::invalid_argument("unknown verifier '" + v +
                                        "' (expected spectral, cuts or cuts-sampled)");
        }
        verifyFailed |= !report.pass;
        verifyReports.push_back(to_json(report));
    }

    if (!a.edgesOut.empty()) {
        std::ofstream f(a.edgesOut);
        if (!f) throw std::invalid_argument("cannot open edge output: " + a.edgesOut);
        write_edge_list(h, f);
    }
    if (!a.sparseEdgesOut.empty()) {
        std::ofstream f(a.sparseEdgesOut);
        if (!f) throw std::invalid_argument("cannot open edge output: " + a.sparseEdgesOut);
        write_edge_list(hTilde, f);
    }

    json payload{{"schemaVersion", kJsonSchemaVersion},
                 {"command", "sparsify"},
                 {"config",
                  {{"group", a.group},
                   {"gens", a.gens},
                   {"mode", mode},
                   {"eps", a.eps},
                   {"bigC", a.bigC},
                   {"seed", a.seed},
                   {"threads", a.threads}}},
                 {"result", to_json(sres, *group)},
                 {"verify", std::move(verifyReports)}};
    if (!a.noTimestamp) payload["timestamp"] = iso_timestamp();
    emit(payload.dump(2) + "\n", a.out, result);
    return verifyFailed ? kExitVerifyFail : kExitOk;
}

struct ProfileArgs {
    std::string group, gens, alphas = "0.05,0.1,0.2,0.5", out;
    double bigC = 4.0;
    double greedyAlpha = 0.0;  // 0 disables the greedy diagnostic
    bool noTimestamp = false;
    int threads = default_thread_count();
};

int cmd_profile(const ProfileArgs& a, CliResult& result) {
    GroupPtr group = share(parse_group_spec(a.group));
    CayleyGraph h = make_cayley(group, GeneratorSet::undirected(
                                           *group, parse_generator_spec(a.gens, *group)));
    auto alphas = parse_double_list(a.alphas, "alpha list");
    if (alphas.empty()) throw std::invalid_argument("profile: empty alpha list");

    GraphSpectrum ctx = analyze_graph(h);
    auto reps = symmetric_representatives(h);
    std::vector<double> imps(reps.size());
    parallel_for(a.threads, std::int64_t(reps.size()), [&](std::int64_t i) {
        imps[i] = importance(ctx, h, reps[i].rep);
    });

    double n = double(h.vertex_count());
    json table = json::array();
    for (double alpha : alphas) {
        int count = 0;
        for (double v : imps) count += v >= alpha;
        table.push_back({{"alpha", alpha},
                         {"importantCount", count},
                         {"reference", std::pow(std::log(n), 3) / alpha}});
    }

    json payload{{"schemaVersion", kJsonSchemaVersion},
                 {"command", "profile"},
                 {"config", {{"group", a.group}, {"gens", a.gens}, {"bigC", a.bigC}}},
                 {"table", std::move(table)}};

    if (a.greedyAlpha > 0.0) {
        auto picks = upper_triangular_greedy(h, a.greedyAlpha, a.bigC, a.threads);
        json reps_ = json::array();
        for (const auto& p : picks) reps_.push_back(p.rep);
        payload["greedy"] = {{"alpha", a.greedyAlpha},
                             {"length", int(picks.size())},
                             {"reps", std::move(reps_)},
                             {"log2Bound", int(std::ceil(std::log2(n)))}};
    }
    if (!a.noTimestamp) payload["timestamp"] = iso_timestamp();
    emit(payload.dump(2) + "\n", a.out, result);
    return kExitOk;
}

struct GadgetArgs {
    std::string group = "dihedral:3", out;
    int r = 2;
    bool noTimestamp = false;
};

int cmd_gadget(const GadgetArgs& a, CliResult& result) {
    GroupPtr group = share(parse_group_spec(a.group));
    AndGadget gadget = build_and_gadget(group, a.r);
    std::uint64_t witness = 0;
    bool verified = verify_and_gadget(gadget, &witness);

    json payload{{"schemaVersion", kJsonSchemaVersion},
                 {"command", "gadget"},
                 {"config", {{"group", a.group}, {"r", a.r}}},
                 {"gadget", to_json(gadget, a.group, verified)}};
    if (!verified) payload["gadget"]["failingAssignment"] = witness;
    if (!a.noTimestamp) payload["timestamp"] = iso_timestamp();
    emit(payload.dump(2) + "\n", a.out, result);
    return verified ? kExitOk : kExitVerifyFail;
}

struct BenchArgs {
    std::string instances, out;
    double eps = 0.5, bigC = 4.0;
    int trials = 20;
    std::uint64_t seed = kDefaultSeed;
    int threads = default_thread_count();
};

struct BenchInstance {
    std::string label;
    std::string groupSpec;
    std::string genSpec;
    bool directed = false;
};

std::vector<BenchInstance> parse_bench_instances(const std::string& text) {
    std::vector<BenchInstance> rows;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        if (tok.empty()) continue;
        std::vector<std::string> parts;
        std::stringstream ps(tok);
        std::string part;
        while (std::getline(ps, part, '/')) parts.push_back(part);
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("bench instance '" + tok +
                                        "' must look like GROUP/GENS[/directed]");
        bool directed = parts.size() == 3;
        if (directed && parts[2] != "directed")
            throw std::invalid_argument("bench instance '" + tok + "': unknown flag " + parts[2]);

        // A single A..B range in the group spec expands to one row per value.
        auto dots = parts[0].find("..");
        if (dots != std::string::npos) {
            std::size_t lo = dots;
            while (lo > 0 && std::isdigit(static_cast<unsigned char>(parts[0][lo - 1]))) --lo;
            std::size_t hi = dots + 2, hiEnd = hi;
            while (hiEnd < parts[0].size() &&
                   std::isdigit(static_cast<unsigned char>(parts[0][hiEnd])))
                ++hiEnd;
            if (lo == dots || hiEnd == hi)
                throw std::invalid_argument("bench range in '" + parts[0] + "' is malformed");
            int from = std::stoi(parts[0].substr(lo, dots - lo));
            int to = std::stoi(parts[0].substr(hi, hiEnd - hi));
            for (int v = from; v <= to; ++v) {
                BenchInstance row;
                row.groupSpec =
                    parts[0].substr(0, lo) + std::to_string(v) + parts[0].substr(hiEnd);
                row.genSpec = parts[1];
                row.directed = directed;
                row.label = row.groupSpec + "/" + row.genSpec + (directed ? "/directed" : "");
                rows.push_back(std::move(row));
            }
        } else {
            rows.push_back({tok, parts[0], parts[1], directed});
        }
    }
    return rows;
}

int cmd_bench(const BenchArgs& a, CliResult& result) {
    const Tolerances& tol = Tolerances::global();
    std::ostringstream csv;
    csv << "instance,n,num_generators,eps,trials,pass_rate,median_kept_pairs,median_ms\n";

    for (const auto& row : parse_bench_instances(a.instances)) {
        GroupPtr group = share(parse_group_spec(row.groupSpec));
        auto entries = parse_generator_spec(row.genSpec, *group);
        GeneratorSet gens = row.directed ? GeneratorSet::directed(*group, entries)
                                         : GeneratorSet::undirected(*group, entries);
        CayleyGraph h = make_cayley(group, std::move(gens));
        bool weighted = !h.gens.unit_weights();

        // The importance profile depends only on the instance; hoist it out
        // of the trial loop for the plain undirected path.
        std::optional<GraphSpectrum> ctx;
        std::optional<ImportanceProfile> profile;
        if (!row.directed && !weighted) {
            ctx.emplace(analyze_graph(h));
            profile.emplace(build_importance_profile(h, *ctx, a.eps, a.bigC, a.threads));
        }

        int passes = 0;
        std::vector<double> keptPairs, millis;
        for (int t = 0; t < a.trials; ++t) {
            std::uint64_t trialSeed = mix_seed(a.seed, std::uint64_t(t));
            auto start = std::chrono::steady_clock::now();
            SparsifyOptions opts;
            opts.threads = a.threads;
            bool pass = false;
            SparsifierResult sres;
            if (row.directed) {
                opts.computeCertificate = false;
                sres = sparsify_directed(h, a.eps, a.bigC, trialSeed, opts);
                CayleyGraph hTilde = sres.sparsified(h);
                VerifyReport report =
                    h.vertex_count() <= tol.exhaustiveCutMaxVertices
                        ? verify_cuts_exhaustive(h, hTilde, a.eps, true)
                        : verify_cuts_sampled(h, hTilde, a.eps, 2000,
                                              mix_seed(trialSeed, 0xC07), a.threads);
                pass = report.pass;
            } else {
                if (weighted) {
                    sres = sparsify_weighted(h, a.eps, a.bigC, trialSeed, opts);
                } else {
                    sres = sample_from_profile(h, *profile, trialSeed);
                    auto rs = relative_spectrum(*ctx, graph_laplacian(sres.sparsified(h)));
                    if (rs.rangeOk) sres.certificate = std::make_pair(rs.lambdaMin, rs.lambdaMax);
                }
                pass = sres.certificate &&
                       sres.certificate->first >= 1.0 - a.eps - tol.verifyBandSlack &&
                       sres.certificate->second <= 1.0 + a.eps + tol.verifyBandSlack;
            }
            auto stop = std::chrono::steady_clock::now();
            passes += pass;
            keptPairs.push_back(double(sres.kept_pair_count(*group)));
            millis.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        csv << csv_field(row.label) << ',' << h.vertex_count() << ',' << h.gens.entries().size() << ','
            << a.eps << ',' << a.trials << ',' << (a.trials ? double(passes) / a.trials : 0.0)
            << ',' << median(keptPairs) << ',' << median(millis) << '\n';
    }
    emit(csv.str(), a.out, result);
    return kExitOk;
}

}  // namespace

GroupTable parse_group_spec(const std::string& spec) {
    auto [g, end] = parse_group_spec_at(spec, 0);
    if (end != spec.size())
        throw std::invalid_argument("group spec: trailing characters '" + spec.substr(end) + "'");
    return g;
}

std::vector<GeneratorEntry> parse_generator_spec(const std::string& spec, const GroupTable& g) {
    if (spec == "all") {
        std::vector<GeneratorEntry> entries;
        for (int e = 0; e < g.n; ++e)
            if (e != g.id) entries.push_back({e, 1.0});
        return entries;
    }
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw std::invalid_argument("cannot open generator file: " + spec.substr(5));
        return parse_generator_list(in);
    }
    std::vector<GeneratorEntry> entries;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        int elem = std::stoi(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument("generator spec: cannot parse element '" + tok + "'");
        entries.push_back({elem, 1.0});
    }
    if (entries.empty()) throw std::invalid_argument("generator spec is empty");
    return entries;
}

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult result;
    CLI::App app{"Cayley/Schreier graph spectral sparsification toolkit"};
    app.require_subcommand(1);

    SparsifyArgs sa;
    auto* sparsify = app.add_subcommand("sparsify", "sparsify a Cayley or Schreier graph");
    sparsify->add_option("--group", sa.group, "group spec")->required();
    sparsify->add_option("--gens", sa.gens, "generator spec")->required();
    sparsify->add_option("--eps", sa.eps, "quality parameter in (0,1)");
    sparsify->add_option("--bigc", sa.bigC, "oversampling constant");
    sparsify->add_option("--seed", sa.seed, "root RNG seed");
    sparsify->add_option("--mode", sa.mode, "auto|plain|weighted|directed");
    sparsify->add_flag("--directed", sa.directedFlag, "treat generators as directed");
    sparsify->add_flag("--symmetrize", sa.symmetrize,
                       "average asymmetric undirected weights instead of rejecting");
    sparsify->add_option("--verify", sa.verify, "spectral|cuts|cuts-sampled (repeatable)");
    sparsify->add_option("--trials", sa.trials, "subset count for cuts-sampled");
    sparsify->add_option("--threads", sa.threads, "worker threads");
    sparsify->add_option("--out", sa.out, "write the JSON report to this path");
    sparsify->add_flag("--no-timestamp", sa.noTimestamp, "omit the timestamp field");
    sparsify->add_option("--edges-out", sa.edgesOut, "write the input edge list");
    sparsify->add_option("--sparse-edges-out", sa.sparseEdgesOut,
                         "write the sparsifier edge list");

    ProfileArgs pa;
    auto* profile = app.add_subcommand("profile", "importance profile diagnostics");
    profile->add_option("--group", pa.group, "group spec")->required();
    profile->add_option("--gens", pa.gens, "generator spec")->required();
    profile->add_option("--alphas", pa.alphas, "comma list of thresholds");
    profile->add_option("--bigc", pa.bigC, "oversampling constant");
    profile->add_option("--greedy-alpha", pa.greedyAlpha,
                        "also run the upper-triangular greedy at this alpha");
    profile->add_option("--threads", pa.threads, "worker threads");
    profile->add_option("--out", pa.out, "write the JSON report to this path");
    profile->add_flag("--no-timestamp", pa.noTimestamp, "omit the timestamp field");

    GadgetArgs ga;
    auto* gadget = app.add_subcommand("gadget", "build and check an AND gadget");
    gadget->add_option("--group", ga.group, "group spec (non-abelian)");
    gadget->add_option("--r", ga.r, "AND arity")->required();
    gadget->add_option("--out", ga.out, "write the JSON report to this path");
    gadget->add_flag("--no-timestamp", ga.noTimestamp, "omit the timestamp field");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "seeded sweep, CSV output");
    bench->add_option("--instances", ba.instances,
                      "semicolon list of GROUP/GENS[/directed]; one A..B range expands");
    bench->add_option("--eps", ba.eps, "quality parameter");
    bench->add_option("--bigc", ba.bigC, "oversampling constant");
    bench->add_option("--trials", ba.trials, "trials per instance");
    bench->add_option("--seed", ba.seed, "root RNG seed");
    bench->add_option("--threads", ba.threads, "worker threads");
    bench->add_option("--out", ba.out, "write the CSV to this path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        if (e.get_exit_code() == 0) {  // --help
            msg << app.help();
            result.out = msg.str();
            result.exitCode = kExitOk;
            return result;
        }
        result.err = std::string(e.what()) + "\n";
        result.exitCode = kExitConfig;
        return result;
    }

    try {
        if (sparsify->parsed()) result.exitCode = cmd_sparsify(sa, result);
        if (profile->parsed()) result.exitCode = cmd_profile(pa, result);
        if (gadget->parsed()) result.exitCode = cmd_gadget(ga, result);
        if (bench->parsed()) result.exitCode = cmd_bench(ba, result);
    } catch (const NumericalError& e) {
        result.err = std::string("numerical error: ") + e.what() + "\n";
        result.exitCode = kExitNumerical;
    } catch (const std::invalid_argument& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exitCode = kExitConfig;
    }
    return result;
}

}  // namespace cayspar
