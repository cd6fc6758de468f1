#include "cayspar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <string>

#include <nlohmann/json.hpp>

namespace cayspar {
namespace {

Tolerances load_global_tolerances() {
    Tolerances t;
    const char* path = std::getenv("CAYSPAR_TOLERANCES");
    if (!path || !*path) return t;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(std::string("cannot open tolerance config: ") + path);
    nlohmann::json j;
    in >> j;
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("symmetryRel", t.symmetryRel);
    get("orthonormality", t.orthonormality);
    get("reconstructionFactor", t.reconstructionFactor);
    get("zeroThresholdFactor", t.zeroThresholdFactor);
    get("opnormRel", t.opnormRel);
    get("scoreSum", t.scoreSum);
    get("rangeContainmentRel", t.rangeContainmentRel);
    get("verifyBandSlack", t.verifyBandSlack);
    get("cutZero", t.cutZero);
    get("impUpperSlack", t.impUpperSlack);
    get("exhaustiveCutMaxVertices", t.exhaustiveCutMaxVertices);
    return t;
}

void require_symmetric(const Eigen::MatrixXd& m, double rel, const char* what) {
    if (m.rows() != m.cols()) throw NumericalError(std::string(what) + ": matrix not square");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > rel * scale)
        throw NumericalError(std::string(what) + ": input not symmetric (asymmetry " +
                             std::to_string(asym) + ")");
}

}  // namespace

const Tolerances& Tolerances::global() {
    static const Tolerances t = load_global_tolerances();
    return t;
}

int SpectralDecomposition::null_dimension() const {
    int count = 0;
    for (int i = int(eigenvalues.size()) - 1; i >= 0; --i) {
        if (eigenvalues[i] <= zeroThreshold)
            ++count;
        else
            break;
    }
    return count;
}

SpectralDecomposition decompose_symmetric(const Eigen::MatrixXd& m, const Tolerances& tol) {
    require_symmetric(m, tol.symmetryRel, "decompose_symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericalError("decompose_symmetric: eigensolver failed to converge");
    int n = int(m.rows());
    SpectralDecomposition d;
    d.eigenvalues = solver.eigenvalues().reverse();
    d.eigenvectors = solver.eigenvectors().rowwise().reverse();
    double lmax = n > 0 ? std::max(0.0, d.eigenvalues[0]) : 0.0;
    d.zeroThreshold = double(n) * lmax * tol.zeroThresholdFactor;
    return d;
}

Eigen::MatrixXd pinv_sqrt(const Eigen::MatrixXd& m, int componentCount, const Tolerances& tol) {
    auto d = decompose_symmetric(m, tol);
    int n = int(m.rows());
    if (n > 0 && d.eigenvalues[n - 1] < -std::max(d.zeroThreshold, tol.symmetryRel))
        throw NumericalError("pinv_sqrt: matrix has a negative eigenvalue " +
                             std::to_string(d.eigenvalues[n - 1]));
    int nullDim = d.null_dimension();
    if (componentCount >= 0 && nullDim != componentCount)
        throw NumericalError("pinv_sqrt: null-space dimension " + std::to_string(nullDim) +
                             " does not match the expected count " +
                             std::to_string(componentCount));
    Eigen::VectorXd scaled(n);
    for (int i = 0; i < n; ++i)
        scaled[i] = d.eigenvalues[i] > d.zeroThreshold ? 1.0 / std::sqrt(d.eigenvalues[i]) : 0.0;
    return d.eigenvectors * scaled.asDiagonal() * d.eigenvectors.transpose();
}

double opnorm_psd(const Eigen::MatrixXd& m, const Tolerances& tol) {
    require_symmetric(m, tol.symmetryRel, "opnorm_psd");
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("opnorm_psd: eigensolver failed to converge");
    return std::max(0.0, solver.eigenvalues().maxCoeff());
}

namespace detail {

RelativeSpectrum relative_spectrum_from(const SpectralDecomposition& ref,
                                        const Eigen::MatrixXd& lTest, const Tolerances& tol) {
    int n = int(ref.eigenvalues.size());
    int nullDim = ref.null_dimension();
    int r = n - nullDim;

    RelativeSpectrum out;
    double testScale = std::max(1.0, lTest.cwiseAbs().maxCoeff());

    if (nullDim > 0) {
        Eigen::MatrixXd qNull = ref.eigenvectors.rightCols(nullDim);
        Eigen::MatrixXd resid = qNull.transpose() * lTest * qNull;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rs(resid);
        int top;
        out.rangeResidual = rs.eigenvalues().cwiseAbs().maxCoeff(&top);
        if (out.rangeResidual > tol.rangeContainmentRel * testScale) {
            out.rangeOk = false;
            out.rangeWitness = qNull * rs.eigenvectors().col(top);
        }
    }

    if (r == 0) {
        // Reference is identically zero; nothing to compare on its range.
        out.lambdaMin = out.lambdaMax = 1.0;
        return out;
    }

    Eigen::MatrixXd y = ref.eigenvectors.leftCols(r) *
                        ref.eigenvalues.head(r).cwiseSqrt().cwiseInverse().asDiagonal();
    Eigen::MatrixXd compressed = y.transpose() * lTest * y;
    compressed = 0.5 * (compressed + compressed.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(compressed);
    if (solver.info() != Eigen::Success)
        throw NumericalError("relative_spectrum: eigensolver failed to converge");
    out.lambdaMin = solver.eigenvalues()[0];
    out.lambdaMax = solver.eigenvalues()[r - 1];
    out.vectorMin = (y * solver.eigenvectors().col(0)).normalized();
    out.vectorMax = (y * solver.eigenvectors().col(r - 1)).normalized();
    return out;
}

}  // namespace detail

RelativeSpectrum relative_spectrum(const Eigen::MatrixXd& lRef, const Eigen::MatrixXd& lTest,
                                   int componentCount, const Tolerances& tol) {
    require_symmetric(lRef, tol.symmetryRel, "relative_spectrum");
    require_symmetric(lTest, tol.symmetryRel, "relative_spectrum");
    if (lRef.rows() != lTest.rows())
        throw std::invalid_argument("relative_spectrum: dimension mismatch");

    auto d = decompose_symmetric(lRef, tol);
    int nullDim = d.null_dimension();
    if (componentCount >= 0 && nullDim != componentCount)
        throw NumericalError("relative_spectrum: reference null dimension " +
                             std::to_string(nullDim) + " does not match expected " +
                             std::to_string(componentCount));
    return detail::relative_spectrum_from(d, lTest, tol);
}

}  // namespace cayspar
