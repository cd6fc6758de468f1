#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayspar/cayley.hpp"
#include "cayspar/spectral.hpp"

namespace cayspar {

enum class VerifyKind { Spectral, CutExhaustive, CutSampled };

/// Outcome of an independent quality oracle. pass holds exactly when
/// worstLow >= 1 - eps - slack and worstHigh <= 1 + eps + slack; a cut that
/// vanishes on one side only drives the ratio to 0 or infinity and shows up
/// in the worst bounds.
struct VerifyReport {
    VerifyKind kind = VerifyKind::Spectral;
    bool pass = false;
    double eps = 0.0;
    double worstLow = 1.0;
    double worstHigh = 1.0;
    std::optional<std::vector<int>> witnessCut;
    std::optional<Eigen::VectorXd> witnessVector;
    std::int64_t trials = 0;
    std::string note;
};

/// Certifies (1 - eps) L_H <= L_Htilde <= (1 + eps) L_H on range(L_H).
/// A range violation (the sparsifier lost a component) reports pass = false
/// with the escaping direction as witness.
VerifyReport verify_spectral(const CayleyGraph& h, const CayleyGraph& hTilde, double eps,
                             const Tolerances& tol = Tolerances::global());

/// Checks every one of the 2^n cuts (n <= 20). Zero cuts of h must stay zero
/// in hTilde; nonzero cuts must match within (1 +- eps).
VerifyReport verify_cuts_exhaustive(const CayleyGraph& h, const CayleyGraph& hTilde,
                                    double eps, bool directed,
                                    const Tolerances& tol = Tolerances::global());

/// Randomized cut oracle for graphs past the exhaustive cap: `trials` uniform
/// subsets plus structured ones (singletons, cyclic-subgroup cosets when the
/// vertices form a group).
VerifyReport verify_cuts_sampled(const CayleyGraph& h, const CayleyGraph& hTilde, double eps,
                                 std::int64_t trials, std::uint64_t seed, int threads = 1,
                                 const Tolerances& tol = Tolerances::global());

}  // namespace cayspar
