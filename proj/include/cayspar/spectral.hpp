#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace cayspar {

/// Raised when a numerical gate fails (asymmetric input, negative eigenvalue
/// on a PSD matrix, null-space dimension not matching the combinatorial
/// component count, ...). The CLI maps this to its own exit code.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every tolerance used anywhere in the toolkit, in one record. Defaults can
/// be overridden by pointing the CAYSPAR_TOLERANCES environment variable at a
/// JSON file whose keys match the field names.
struct Tolerances {
    double symmetryRel = 1e-10;          // max asymmetry relative to scale
    double orthonormality = 1e-10;       // eigenvector basis check
    double reconstructionFactor = 1e2;   // n * eps_mach * ||M|| * this
    double zeroThresholdFactor = 1e-12;  // null cutoff = n * ||M|| * this
    double opnormRel = 1e-8;             // operator-norm relative accuracy
    double scoreSum = 1e-8;              // sum-of-scores identity slack
    double rangeContainmentRel = 1e-8;   // range(lTest) within range(lRef)
    double verifyBandSlack = 1e-7;       // added to the (1 +- eps) band
    double cutZero = 1e-9;               // zero-cut classification (relative)
    double impUpperSlack = 1e-8;         // importance may exceed 1 by this
    int exhaustiveCutMaxVertices = 20;

    static const Tolerances& global();
};

/// Dense symmetric eigendecomposition with eigenvalues sorted nonincreasing.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // nonincreasing
    Eigen::MatrixXd eigenvectors;  // columns aligned with eigenvalues
    double zeroThreshold = 0.0;

    int null_dimension() const;
    int rank() const { return int(eigenvalues.size()) - null_dimension(); }
};

/// Decomposes a symmetric matrix; throws NumericalError when the input is
/// asymmetric beyond tolerance.
SpectralDecomposition decompose_symmetric(const Eigen::MatrixXd& m,
                                          const Tolerances& tol = Tolerances::global());

/// Pseudo-inverse square root: eigenvalues below the zero threshold map to 0,
/// the rest to lambda^(-1/2). componentCount pins the expected null-space
/// dimension; a mismatch signals either a tolerance failure or a
/// miscounted disconnected graph and throws NumericalError.
Eigen::MatrixXd pinv_sqrt(const Eigen::MatrixXd& m, int componentCount,
                          const Tolerances& tol = Tolerances::global());

/// Largest eigenvalue of a symmetric PSD matrix (clamped at 0).
double opnorm_psd(const Eigen::MatrixXd& m, const Tolerances& tol = Tolerances::global());

/// Extreme eigenvalues of pinv_sqrt(lRef) * lTest * pinv_sqrt(lRef)
/// restricted to range(lRef), with the attaining vectors mapped back to
/// vertex space. rangeOk reports whether lTest lives inside range(lRef);
/// a violation is a valid failure report (the witness carries the escaping
/// direction), not an exception.
struct RelativeSpectrum {
    double lambdaMin = 0.0;
    double lambdaMax = 0.0;
    Eigen::VectorXd vectorMin;
    Eigen::VectorXd vectorMax;
    bool rangeOk = true;
    double rangeResidual = 0.0;
    Eigen::VectorXd rangeWitness;
};

RelativeSpectrum relative_spectrum(const Eigen::MatrixXd& lRef, const Eigen::MatrixXd& lTest,
                                   int componentCount,
                                   const Tolerances& tol = Tolerances::global());

namespace detail {
/// Shared core of relative_spectrum for callers that already hold the
/// reference decomposition.
RelativeSpectrum relative_spectrum_from(const SpectralDecomposition& ref,
                                        const Eigen::MatrixXd& lTest, const Tolerances& tol);
}  // namespace detail

}  // namespace cayspar
