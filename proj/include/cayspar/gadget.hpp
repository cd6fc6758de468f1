#pragma once

#include <cstdint>
#include <vector>

#include "cayspar/group.hpp"

namespace cayspar {

/// One factor coeff^(sign * x_var) of a group-valued linear equation.
/// Exponent 0 contributes the identity; exponent -1 contributes inv(coeff).
struct Monomial {
    int coeff = 0;
    int var = 0;
    int sign = +1;  // +1 or -1
};

/// Word of monomials over a finite group, evaluated left to right on a
/// binary assignment. The all-zeros assignment always evaluates to the
/// identity.
struct GadgetEquation {
    GroupPtr group;
    std::vector<Monomial> monomials;
    int varCount = 0;
};

int eval_equation(const GadgetEquation& eq, const std::vector<std::uint8_t>& x);

/// Word inverse: reversed monomials with negated signs, so that
/// eval(inverse(E), x) = inv(eval(E, x)) for every x.
GadgetEquation inverse_equation(const GadgetEquation& eq);

/// AND_r gadget: an equation over K_r variables plus a restriction map pi
/// onto r AND inputs such that the lifted equation evaluates to a
/// non-identity element exactly on the all-ones assignment.
struct AndGadget {
    int arity = 0;
    GadgetEquation equation;
    std::vector<int> pi;            // equation variable -> y index in [0, arity)
    std::vector<int> baseElements;  // b_1..b_r (b_1, b_2 form the base commutator)
    std::vector<int> witnesses;     // z_i = level-i value at all-ones, i = 2..r
    std::vector<int> levelSizes;    // K_2..K_r (level i equation = first K_i monomials)
};

/// Builds the inductive commutator gadget over any non-abelian group:
/// level 2 is b1^y1 b2^y2 b1^-y1 b2^-y2 on the smallest lexicographic
/// non-commuting pair, and level i+1 conjugates level i's witness by the
/// smallest element that fails to commute with it, duplicating the level-i
/// equation onto fresh variables. Throws std::invalid_argument for abelian
/// groups or when a witness lands in the center.
AndGadget build_and_gadget(GroupPtr group, int r);

/// Exhaustively checks all 2^r AND assignments (r <= 20); on failure the
/// violating assignment is written to witnessOut bit i = y_i.
bool verify_and_gadget(const AndGadget& g, std::uint64_t* witnessOut = nullptr);

struct WeightedEquation {
    GadgetEquation eq;
    double weight = 1.0;
};

/// Sum of weights over equations that evaluate to a non-identity element.
double csp_unsat_count(const std::vector<WeightedEquation>& eqs,
                       const std::vector<std::uint8_t>& x);

struct CandidateEquation {
    int index = 0;  // into the full equation list
    double weight = 1.0;
};

/// Exhaustive code-sparsifier check (varCount <= 20): the weighted candidate
/// unsatisfied count must lie within (1 +- eps) of the full unweighted count
/// for every assignment, and zero must map to zero.
bool brute_force_code_sparsifier_check(const std::vector<GadgetEquation>& eqs,
                                       const std::vector<CandidateEquation>& candidate,
                                       double eps);

}  // namespace cayspar
