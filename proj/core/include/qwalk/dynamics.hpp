#pragma once

#include <string>
#include <string_view>

#include "qwalk/common.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

enum class Basis { Energy, Position };

/// Initial walker state.
///
/// Energy-basis amplitudes refer to the columns of the closed-form spectrum
/// (ascending order) and stay fixed when gamma changes, so for bipartite
/// graphs the state itself moves with gamma. Position-basis amplitudes
/// define a gamma-independent initial state.
class Preparation {
public:
    static constexpr double kNormTolerance = 1e-12;

    /// Throws DomainError unless sum |a|^2 = 1 within kNormTolerance.
    Preparation(Basis basis, ComplexVector amplitudes);

    /// Rescales `amplitudes` to unit norm first.
    static Preparation normalized(Basis basis, ComplexVector amplitudes);
    static Preparation energy_superposition(Eigen::Index n, Eigen::Index a, Eigen::Index b,
                                            double relative_phase = 0.0);
    static Preparation uniform_position(Eigen::Index n);
    static Preparation ground(Eigen::Index n);

    /// {"basis":"energy"|"position","amplitudes":[x, [re, im], ...]}
    static Preparation from_json(std::string_view text);
    std::string to_json() const;

    Basis basis() const noexcept { return basis_; }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Eigen::Index size() const noexcept { return amplitudes_.size(); }

    /// Energy-outcome probabilities summed over each degenerate group.
    RealVector energy_distribution(const Spectrum& spectrum) const;
    /// Coefficients in the eigenbasis of `spectrum`.
    ComplexVector energy_amplitudes(const Spectrum& spectrum) const;

private:
    Basis basis_;
    ComplexVector amplitudes_;
};

struct EvolvedState {
    ComplexVector state;   // psi_t in the position basis
    ComplexVector dstate;  // d psi_t / d gamma
    double gamma = 0.0;
    double t = 0.0;

    RealVector probabilities() const { return state.cwiseAbs2(); }
};

/// psi_t = sum_k c_k e^{-i xi_k t} |xi_k> and its gamma-derivative, from the
/// closed-form spectrum (including eigenvector derivatives for bipartite graphs).
EvolvedState evolve(const GraphSpec& spec, double gamma, const Preparation& prep, double t);
EvolvedState evolve(const Spectrum& closed_form, double gamma, const Preparation& prep, double t);

/// psi_t alone, for any spectrum whose columns match the preparation basis.
ComplexVector propagate(const ComplexMatrix& eigenvectors, const RealVector& eigenvalues,
                        const ComplexVector& energy_amplitudes, double t);

struct FiniteDifferenceResult {
    ComplexVector dstate;
    bool ok = false;
    double min_overlap = 1.0;
    /// || D(h) - D(h/2) ||, the Richardson consistency check.
    double richardson_gap = 0.0;
    std::string diagnostic;
};

/// Central-difference d psi_t / d gamma from numerical diagonalisations at
/// gamma +- h. Energy-basis preparations are transported with a gauge-aligned
/// numerical eigenbasis; `ok` is false when alignment fails.
FiniteDifferenceResult finite_difference_dstate(const GraphSpec& spec, double gamma,
                                                const Preparation& prep, double t,
                                                double h = 1e-5);

/// psi_t at gamma computed only from numerical diagonalisation (energy
/// amplitudes are interpreted in the closed-form basis via gauge alignment).
/// Returns false in `ok` if the gauge alignment failed.
struct NumericalState {
    ComplexVector state;
    bool ok = false;
    double min_overlap = 1.0;
};
NumericalState numerical_state(const GraphSpec& spec, double gamma, const Preparation& prep, double t);

}  // namespace qwalk
