#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ut {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergentMoment : SolverError {
    using SolverError::SolverError;
};

struct IntegrationFailure : SolverError {
    using SolverError::SolverError;
};

struct QuadratureFailure : SolverError {
    QuadratureFailure(const std::string& msg, std::complex<double> best_value, double estimate)
        : SolverError(msg), best(best_value), error_estimate(estimate) {}
    std::complex<double> best;
    double error_estimate;
};

struct NearZeroWavenumber : SolverError {
    using SolverError::SolverError;
};

struct OverflowRisk : SolverError {
    using SolverError::SolverError;
};

struct PsiZeroAtOrigin : SolverError {
    using SolverError::SolverError;
};

struct PsiXZeroAtOrigin : SolverError {
    using SolverError::SolverError;
};

struct PoleOnContour : SolverError {
    using SolverError::SolverError;
};

struct LinearSolveFailure : SolverError {
    using SolverError::SolverError;
};

struct BoundStatePresent : SolverError {
    using SolverError::SolverError;
};

struct ConfigError : SolverError {
    using SolverError::SolverError;
};

}  // namespace ut
