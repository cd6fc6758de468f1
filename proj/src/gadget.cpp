#include "cayspar/gadget.hpp"

#include <algorithm>
#include <stdexcept>

namespace cayspar {
namespace {

/// First element pair (in lexicographic order) that fails to commute.
std::pair<int, int> smallest_noncommuting_pair(const GroupTable& g) {
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.times(a, b) != g.times(b, a)) return {a, b};
    throw std::invalid_argument("the group is abelian: no non-commuting pair exists");
}

int smallest_noncommuting_with(const GroupTable& g, int z) {
    for (int t = 0; t < g.n; ++t)
        if (g.times(z, t) != g.times(t, z)) return t;
    throw std::invalid_argument("element " + std::to_string(z) +
                                " is central: the inductive step cannot continue");
}

GadgetEquation shifted(const GadgetEquation& eq, int offset) {
    GadgetEquation out = eq;
    for (auto& m : out.monomials) m.var += offset;
    out.varCount = 0;
    for (const auto& m : out.monomials) out.varCount = std::max(out.varCount, m.var + 1);
    return out;
}

constexpr std::int64_t kMaxMonomials = 1 << 24;

}  // namespace

int eval_equation(const GadgetEquation& eq, const std::vector<std::uint8_t>& x) {
    if (int(x.size()) != eq.varCount)
        throw std::invalid_argument("eval_equation: assignment length " +
                                    std::to_string(x.size()) + " != variable count " +
                                    std::to_string(eq.varCount));
    const GroupTable& g = *eq.group;
    int acc = g.id;
    for (const auto& m : eq.monomials) {
        if (!x[m.var]) continue;
        acc = g.times(acc, m.sign > 0 ? m.coeff : g.inverse(m.coeff));
    }
    return acc;
}

GadgetEquation inverse_equation(const GadgetEquation& eq) {
    GadgetEquation out;
    out.group = eq.group;
    out.varCount = eq.varCount;
    out.monomials.assign(eq.monomials.rbegin(), eq.monomials.rend());
    for (auto& m : out.monomials) m.sign = -m.sign;
    return out;
}

AndGadget build_and_gadget(GroupPtr group, int r) {
    if (r < 2) throw std::invalid_argument("AND gadget needs arity >= 2");
    const GroupTable& g = *group;
    // K_i = 2 K_{i-1} + 2 starting from K_2 = 4, i.e. K_r = 3 * 2^(r-1) - 2.
    if (r > 23 || (std::int64_t(3) << (r - 1)) - 2 > kMaxMonomials)
        throw std::invalid_argument("AND gadget arity too large for the monomial budget");

    auto [b1, b2] = smallest_noncommuting_pair(g);

    AndGadget out;
    out.arity = r;
    out.baseElements = {b1, b2};
    out.equation.group = group;
    out.equation.varCount = 4;
    out.equation.monomials = {{b1, 0, +1}, {b2, 1, +1}, {b1, 2, -1}, {b2, 3, -1}};
    out.pi = {0, 1, 0, 1};
    out.levelSizes = {4};

    auto all_ones_value = [&out]() {
        std::vector<std::uint8_t> ones(out.equation.varCount, 1);
        return eval_equation(out.equation, ones);
    };

    int z = all_ones_value();
    out.witnesses = {z};

    for (int level = 3; level <= r; ++level) {
        int b = smallest_noncommuting_with(g, z);
        out.baseElements.push_back(b);

        int k = out.equation.varCount;  // K_{level-1}
        GadgetEquation invCopy = shifted(inverse_equation(out.equation), k + 1);
        std::vector<int> piNext = out.pi;
        piNext.push_back(level - 1);                                // fresh var for b^{y_level}
        piNext.insert(piNext.end(), out.pi.begin(), out.pi.end());  // duplicated copy
        piNext.push_back(level - 1);                                // fresh var for b^{-y_level}

        GadgetEquation next;
        next.group = group;
        next.varCount = 2 * k + 2;
        next.monomials = out.equation.monomials;
        next.monomials.push_back({b, k, +1});
        next.monomials.insert(next.monomials.end(), invCopy.monomials.begin(),
                              invCopy.monomials.end());
        next.monomials.push_back({b, 2 * k + 1, -1});

        out.equation = std::move(next);
        out.pi = std::move(piNext);
        out.levelSizes.push_back(out.equation.varCount);
        z = all_ones_value();
        out.witnesses.push_back(z);
    }
    return out;
}

bool verify_and_gadget(const AndGadget& gadget, std::uint64_t* witnessOut) {
    if (gadget.arity > 20)
        throw std::invalid_argument("verify_and_gadget: arity above the exhaustive cap of 20");
    const GroupTable& g = *gadget.equation.group;
    int k = gadget.equation.varCount;
    std::vector<std::uint8_t> x(k);
    std::uint64_t allOnes = (std::uint64_t(1) << gadget.arity) - 1;
    for (std::uint64_t y = 0; y <= allOnes; ++y) {
        for (int j = 0; j < k; ++j) x[j] = std::uint8_t((y >> gadget.pi[j]) & 1);
        bool nontrivial = eval_equation(gadget.equation, x) != g.id;
        if (nontrivial != (y == allOnes)) {
            if (witnessOut) *witnessOut = y;
            return false;
        }
    }
    return true;
}

double csp_unsat_count(const std::vector<WeightedEquation>& eqs,
                       const std::vector<std::uint8_t>& x) {
    double total = 0.0;
    for (const auto& we : eqs) {
        if (int(x.size()) != we.eq.varCount)
            throw std::invalid_argument("csp_unsat_count: inconsistent variable counts");
        if (eval_equation(we.eq, x) != we.eq.group->id) total += we.weight;
    }
    return total;
}

bool brute_force_code_sparsifier_check(const std::vector<GadgetEquation>& eqs,
                                       const std::vector<CandidateEquation>& candidate,
                                       double eps) {
    if (eqs.empty()) return true;
    int vars = eqs.front().varCount;
    for (const auto& eq : eqs)
        if (eq.varCount != vars)
            throw std::invalid_argument("code sparsifier check: inconsistent variable counts");
    if (vars > 20)
        throw std::invalid_argument("code sparsifier check: variable count above the cap of 20");
    for (const auto& c : candidate)
        if (c.index < 0 || c.index >= int(eqs.size()))
            throw std::invalid_argument("code sparsifier check: candidate index out of range");

    std::vector<std::uint8_t> x(vars);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << vars); ++bits) {
        for (int j = 0; j < vars; ++j) x[j] = std::uint8_t((bits >> j) & 1);
        double full = 0.0;
        std::vector<char> unsat(eqs.size());
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            unsat[i] = eval_equation(eqs[i], x) != eqs[i].group->id;
            full += unsat[i];
        }
        double kept = 0.0;
        for (const auto& c : candidate)
            if (unsat[c.index]) kept += c.weight;
        if (full == 0.0) {
            if (kept != 0.0) return false;
        } else if (kept < (1.0 - eps) * full || kept > (1.0 + eps) * full) {
            return false;
        }
    }
    return true;
}

}  // namespace cayspar
