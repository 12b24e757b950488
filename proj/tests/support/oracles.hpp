#pragma once

// Test-only reference computations. None of these touch the closed-form
// spectra or the analytic derivative state.

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "qwalk/dynamics.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/metrology.hpp"

namespace oracle {

using namespace qwalk;

/// exp(-i H t) psi0 by Pade scaling-and-squaring.
inline ComplexVector expm_evolve(const RealMatrix& h, const ComplexVector& psi0, double t) {
    const ComplexMatrix generator = ComplexMatrix(h.cast<cplx>() * cplx(0.0, -t));
    return generator.exp() * psi0;
}

/// Outcome probabilities at gamma from numerical diagonalisation only.
inline RealVector numeric_probabilities(const GraphSpec& spec, double gamma, const Preparation& prep, double t,
                                        const PositionPovm& povm) {
    const NumericalState s = numerical_state(spec, gamma, prep, t);
    return povm.probabilities(s.state);
}

/// Classical FI from central differences of numerically computed probabilities.
inline double fi_probability_fd(const GraphSpec& spec, double gamma, const Preparation& prep, double t,
                                const PositionPovm& povm, double h = 1e-5) {
    const RealVector p = numeric_probabilities(spec, gamma, prep, t, povm);
    const RealVector pp = numeric_probabilities(spec, gamma + h, prep, t, povm);
    const RealVector pm = numeric_probabilities(spec, gamma - h, prep, t, povm);
    double f = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p(k) < 1e-13) continue;
        const double d = (pp(k) - pm(k)) / (2.0 * h);
        f += d * d / p(k);
    }
    return f;
}

inline Preparation random_preparation(Eigen::Index n, std::mt19937_64& rng, Basis basis = Basis::Energy) {
    std::normal_distribution<double> g;
    ComplexVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = cplx(g(rng), g(rng));
    return Preparation::normalized(basis, v);
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace oracle
