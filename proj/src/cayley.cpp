#include "cayspar/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cayspar/union_find.hpp"

namespace cayspar {
namespace {

std::vector<GeneratorEntry> normalize_entries(const GroupTable& g,
                                              std::vector<GeneratorEntry> entries) {
    std::map<int, double> merged;
    for (const auto& e : entries) {
        if (e.elem < 0 || e.elem >= g.n)
            throw std::invalid_argument("generator " + std::to_string(e.elem) +
                                        " is not a group element");
        if (e.elem == g.id)
            throw std::invalid_argument("the identity cannot be a generator (self-loop)");
        if (e.weight < 0.0)
            throw std::invalid_argument("generator weights must be nonnegative");
        if (e.weight == 0.0) continue;  // zero-weight entries are dropped
        merged[e.elem] += e.weight;
    }
    std::vector<GeneratorEntry> out;
    out.reserve(merged.size());
    for (auto& [elem, w] : merged) out.push_back({elem, w});
    return out;
}

}  // namespace

GeneratorSet GeneratorSet::undirected(const GroupTable& g, std::vector<GeneratorEntry> entries,
                                      SymmetrizePolicy policy) {
    auto norm = normalize_entries(g, std::move(entries));
    std::map<int, double> weight;
    for (const auto& e : norm) weight[e.elem] = e.weight;

    if (policy == SymmetrizePolicy::Average) {
        std::map<int, double> symmetrized;
        for (const auto& [elem, w] : weight) {
            int invElem = g.inverse(elem);
            if (symmetrized.count(elem)) continue;
            double wInv = weight.count(invElem) ? weight.at(invElem) : 0.0;
            double avg = elem == invElem ? w : 0.5 * (w + wInv);
            if (avg == 0.0) continue;
            symmetrized[elem] = avg;
            symmetrized[invElem] = avg;
        }
        weight = std::move(symmetrized);
    } else {
        for (const auto& [elem, w] : weight) {
            int invElem = g.inverse(elem);
            auto it = weight.find(invElem);
            if (it == weight.end())
                throw std::invalid_argument("undirected generator set is missing the inverse of " +
                                            std::to_string(elem));
            double wInv = it->second;
            if (std::abs(w - wInv) > 1e-12 * std::max({std::abs(w), std::abs(wInv), 1.0}))
                throw std::invalid_argument("generator " + std::to_string(elem) +
                                            " and its inverse carry different weights");
        }
    }

    std::vector<GeneratorEntry> out;
    out.reserve(weight.size());
    for (const auto& [elem, w] : weight) out.push_back({elem, w});
    return GeneratorSet(std::move(out), /*directed=*/false);
}

GeneratorSet GeneratorSet::directed(const GroupTable& g, std::vector<GeneratorEntry> entries) {
    return GeneratorSet(normalize_entries(g, std::move(entries)), /*directed=*/true);
}

double GeneratorSet::total_weight() const {
    double sum = 0.0;
    for (const auto& e : entries_) sum += e.weight;
    return sum;
}

bool GeneratorSet::unit_weights() const {
    for (const auto& e : entries_)
        if (std::abs(e.weight - 1.0) > 1e-12) return false;
    return true;
}

CayleyGraph make_cayley(GroupPtr g, GeneratorSet gens) {
    for (const auto& e : gens.entries())
        if (e.elem >= g->n) throw std::invalid_argument("generator outside the group");
    return CayleyGraph{regular_action(std::move(g)), std::move(gens)};
}

CayleyGraph make_schreier(GroupAction action, GeneratorSet gens) {
    if (!action.group) throw std::invalid_argument("schreier graph requires an action group");
    for (const auto& e : gens.entries())
        if (e.elem >= action.group->n) throw std::invalid_argument("generator outside the group");
    return CayleyGraph{std::move(action), std::move(gens)};
}

std::vector<PairRep> symmetric_representatives(const GroupTable& g, const GeneratorSet& gens) {
    if (gens.directed())
        throw std::invalid_argument("symmetric representatives require an undirected set");
    std::vector<PairRep> reps;
    for (const auto& e : gens.entries()) {
        int invElem = g.inverse(e.elem);
        if (invElem < e.elem) continue;  // the smaller pair member represents
        reps.push_back({e.elem, invElem == e.elem, e.weight});
    }
    return reps;
}

std::vector<PairRep> symmetric_representatives(const CayleyGraph& h) {
    return symmetric_representatives(h.group(), h.gens);
}

std::vector<int> adjacency_perm(const CayleyGraph& h, int s) {
    if (s < 0 || s >= h.group().n) throw std::invalid_argument("invalid generator element");
    std::vector<int> perm(h.vertex_count());
    for (int x = 0; x < h.vertex_count(); ++x) perm[x] = h.vertices.apply(x, s);
    return perm;
}

Eigen::MatrixXd adjacency_matrix(const CayleyGraph& h, int s) {
    int n = h.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) a(x, h.vertices.apply(x, s)) = 1.0;
    return a;
}

Eigen::MatrixXd generator_laplacian(const CayleyGraph& h, int rep, double weight) {
    int n = h.vertex_count();
    int invRep = h.group().inverse(rep);
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    if (invRep == rep) {
        for (int x = 0; x < n; ++x) {
            l(x, x) += weight;
            l(x, h.vertices.apply(x, rep)) -= weight;
        }
    } else {
        for (int x = 0; x < n; ++x) {
            l(x, x) += 2.0 * weight;
            l(x, h.vertices.apply(x, rep)) -= weight;
            l(x, h.vertices.apply(x, invRep)) -= weight;
        }
    }
    return l;
}

Eigen::MatrixXd graph_laplacian(const CayleyGraph& h) {
    if (h.gens.directed())
        throw std::invalid_argument("graph laplacian is defined for undirected graphs");
    int n = h.vertex_count();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (const auto& rep : symmetric_representatives(h)) l += generator_laplacian(h, rep.rep, rep.weight);
    return l;
}

double cut_value(const CayleyGraph& h, const std::vector<bool>& inT) {
    int n = h.vertex_count();
    if (int(inT.size()) != n) throw std::invalid_argument("cut indicator has wrong length");
    auto escapes = [&](int s) {
        std::int64_t cnt = 0;
        for (int x = 0; x < n; ++x)
            if (inT[x] && !inT[h.vertices.apply(x, s)]) ++cnt;
        return double(cnt);
    };
    double total = 0.0;
    if (h.gens.directed()) {
        for (const auto& e : h.gens.entries()) total += e.weight * escapes(e.elem);
    } else {
        for (const auto& rep : symmetric_representatives(h)) {
            double c = escapes(rep.rep);
            total += rep.involution ? rep.weight * c : 2.0 * rep.weight * c;
        }
    }
    return total;
}

CayleyGraph undirectify(const CayleyGraph& h) {
    if (!h.gens.directed()) throw std::invalid_argument("undirectify expects a directed graph");
    const GroupTable& g = h.group();
    std::vector<GeneratorEntry> entries;
    for (const auto& e : h.gens.entries()) {
        entries.push_back(e);
        if (g.inverse(e.elem) != e.elem) entries.push_back({g.inverse(e.elem), e.weight});
    }
    return CayleyGraph{h.vertices, GeneratorSet::undirected(g, std::move(entries))};
}

int component_count(const CayleyGraph& h) {
    UnionFind uf(h.vertex_count());
    for (const auto& e : h.gens.entries())
        for (int x = 0; x < h.vertex_count(); ++x) uf.unite(x, h.vertices.apply(x, e.elem));
    return uf.components();
}

std::vector<GeneratorEntry> parse_generator_list(std::istream& in) {
    std::vector<GeneratorEntry> entries;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        int elem;
        if (!(ls >> elem)) continue;  // blank or comment-only line
        double weight = 1.0;
        ls >> weight;
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("generator list line " + std::to_string(lineNo) +
                                        ": trailing tokens");
        entries.push_back({elem, weight});
    }
    return entries;
}

std::vector<GeneratorEntry> parse_generator_list(const std::string& text) {
    std::istringstream in(text);
    return parse_generator_list(in);
}

void write_edge_list(const CayleyGraph& h, std::ostream& out) {
    int n = h.vertex_count();
    if (h.gens.directed()) {
        for (const auto& e : h.gens.entries())
            for (int x = 0; x < n; ++x) out << x << ' ' << h.vertices.apply(x, e.elem) << ' ' << e.weight << '\n';
        return;
    }
    for (const auto& rep : symmetric_representatives(h)) {
        for (int x = 0; x < n; ++x) {
            int y = h.vertices.apply(x, rep.rep);
            if (rep.involution && y < x) continue;  // each matching edge once
            out << x << ' ' << y << ' ' << rep.weight << '\n';
        }
    }
}

}  // namespace cayspar
