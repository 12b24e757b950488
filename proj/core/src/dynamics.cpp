#include "qwalk/dynamics.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

namespace qwalk {

using nlohmann::json;

Preparation::Preparation(Basis basis, ComplexVector amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw DomainError("preparation has no amplitudes");
    const double norm2 = amplitudes_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance) {
        throw DomainError("preparation is not normalised (sum |a|^2 = " + std::to_string(norm2) + ")");
    }
}

Preparation Preparation::normalized(Basis basis, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalise a zero preparation");
    amplitudes /= norm;
    return Preparation(basis, std::move(amplitudes));
}

Preparation Preparation::energy_superposition(Eigen::Index n, Eigen::Index a, Eigen::Index b,
                                              double relative_phase) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
        throw DomainError("energy_superposition needs two distinct columns inside 0..n-1");
    }
    ComplexVector amps = ComplexVector::Zero(n);
    amps(a) = 1.0 / std::sqrt(2.0);
    amps(b) = std::polar(1.0 / std::sqrt(2.0), relative_phase);
    return Preparation(Basis::Energy, std::move(amps));
}

Preparation Preparation::uniform_position(Eigen::Index n) {
    return Preparation(Basis::Position, ComplexVector::Constant(n, cplx(1.0 / std::sqrt(double(n)), 0.0)));
}

Preparation Preparation::ground(Eigen::Index n) {
    ComplexVector amps = ComplexVector::Zero(n);
    amps(0) = 1.0;
    return Preparation(Basis::Energy, std::move(amps));
}

Preparation Preparation::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("preparation JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("amplitudes") || !j["amplitudes"].is_array()) {
        throw DomainError("preparation JSON needs an 'amplitudes' array");
    }
    Basis basis = Basis::Energy;
    if (j.contains("basis")) {
        const auto b = j["basis"].get<std::string>();
        if (b == "position") basis = Basis::Position;
        else if (b != "energy") throw DomainError("preparation basis must be 'energy' or 'position'");
    }
    const auto& arr = j["amplitudes"];
    ComplexVector amps(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto& v = arr[k];
        if (v.is_number()) {
            amps(static_cast<Eigen::Index>(k)) = cplx(v.get<double>(), 0.0);
        } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            amps(static_cast<Eigen::Index>(k)) = cplx(v[0].get<double>(), v[1].get<double>());
        } else {
            throw DomainError("amplitude " + std::to_string(k) + " must be a number or [re, im]");
        }
    }
    const bool normalise = j.value("normalize", false);
    return normalise ? normalized(basis, std::move(amps)) : Preparation(basis, std::move(amps));
}

std::string Preparation::to_json() const {
    json amps = json::array();
    for (Eigen::Index k = 0; k < amplitudes_.size(); ++k) {
        amps.push_back({amplitudes_(k).real(), amplitudes_(k).imag()});
    }
    return json{{"basis", basis_ == Basis::Energy ? "energy" : "position"}, {"amplitudes", amps}}.dump();
}

ComplexVector Preparation::energy_amplitudes(const Spectrum& spectrum) const {
    if (spectrum.size() != size()) throw DomainError("preparation and spectrum dimensions differ");
    if (basis_ == Basis::Energy) return amplitudes_;
    return spectrum.eigenvectors.adjoint() * amplitudes_;
}

RealVector Preparation::energy_distribution(const Spectrum& spectrum) const {
    const RealVector w = energy_amplitudes(spectrum).cwiseAbs2();
    RealVector out = RealVector::Zero(static_cast<Eigen::Index>(spectrum.groups.size()));
    for (std::size_t g = 0; g < spectrum.groups.size(); ++g) {
        for (auto c : spectrum.groups[g].columns) out(static_cast<Eigen::Index>(g)) += w(c);
    }
    return out;
}

ComplexVector propagate(const ComplexMatrix& eigenvectors, const RealVector& eigenvalues,
                        const ComplexVector& energy_amplitudes, double t) {
    ComplexVector phased(energy_amplitudes.size());
    for (Eigen::Index k = 0; k < phased.size(); ++k) {
        phased(k) = energy_amplitudes(k) * std::polar(1.0, -eigenvalues(k) * t);
    }
    return eigenvectors * phased;
}

EvolvedState evolve(const Spectrum& s, double gamma, const Preparation& prep, double t) {
    if (!s.has_derivatives()) throw DomainError("evolve needs a closed-form spectrum");
    if (prep.size() != s.size()) {
        throw DomainError("preparation has " + std::to_string(prep.size()) + " amplitudes for a " +
                          std::to_string(s.size()) + "-node graph");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("interrogation time must be finite and >= 0");

    ComplexVector c, dc;
    if (prep.basis() == Basis::Energy) {
        c = prep.amplitudes();
        dc = ComplexVector::Zero(c.size());
    } else {
        c = s.eigenvectors.adjoint() * prep.amplitudes();
        dc = s.eigenvector_derivatives.adjoint() * prep.amplitudes();
    }

    const auto n = s.size();
    ComplexVector phased(n), dphased(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx phase = std::polar(1.0, -s.eigenvalues(k) * t);
        phased(k) = c(k) * phase;
        dphased(k) = (cplx(0.0, -t * s.eigenvalue_derivatives(k)) * c(k) + dc(k)) * phase;
    }
    EvolvedState ev;
    ev.gamma = gamma;
    ev.t = t;
    ev.state = s.eigenvectors * phased;
    ev.dstate = s.eigenvectors * dphased + s.eigenvector_derivatives * phased;
    return ev;
}

EvolvedState evolve(const GraphSpec& spec, double gamma, const Preparation& prep, double t) {
    return evolve(closed_form_spectrum(hamiltonian(spec, gamma)), gamma, prep, t);
}

NumericalState numerical_state(const GraphSpec& spec, double gamma, const Preparation& prep, double t) {
    const auto h = hamiltonian(spec, gamma);
    const Spectrum num = numerical_spectrum(h);
    if (prep.size() != num.size()) throw DomainError("preparation and graph dimensions differ");
    NumericalState out;
    if (prep.basis() == Basis::Position) {
        const ComplexVector c = num.eigenvectors.adjoint() * prep.amplitudes();
        out.state = propagate(num.eigenvectors, num.eigenvalues, c, t);
        out.ok = true;
        return out;
    }
    // Energy amplitudes live in the closed-form gauge; carry them over.
    const Spectrum reference = closed_form_spectrum(h);
    const AlignedBasis aligned = align_to_reference(num, reference.eigenvectors);
    out.ok = aligned.ok;
    out.min_overlap = aligned.min_overlap;
    out.state = propagate(aligned.vectors, aligned.eigenvalues, prep.amplitudes(), t);
    return out;
}

namespace {

struct Central {
    ComplexVector value;
    bool ok;
    double min_overlap;
};

Central central_difference(const GraphSpec& spec, double gamma, const Preparation& prep, double t,
                           double h, const ComplexMatrix* reference) {
    auto state_at = [&](double g) -> std::pair<ComplexVector, double> {
        const Spectrum num = numerical_spectrum(hamiltonian(spec, g));
        if (prep.basis() == Basis::Position) {
            const ComplexVector c = num.eigenvectors.adjoint() * prep.amplitudes();
            return {propagate(num.eigenvectors, num.eigenvalues, c, t), 1.0};
        }
        const AlignedBasis aligned = align_to_reference(num, *reference);
        return {propagate(aligned.vectors, aligned.eigenvalues, prep.amplitudes(), t), aligned.min_overlap};
    };
    const auto [plus, ov_plus] = state_at(gamma + h);
    const auto [minus, ov_minus] = state_at(gamma - h);
    const double ov = std::min(ov_plus, ov_minus);
    return Central{(plus - minus) / (2.0 * h), ov >= 0.5, ov};
}

}  // namespace

FiniteDifferenceResult finite_difference_dstate(const GraphSpec& spec, double gamma, const Preparation& prep,
                                                double t, double h) {
    require_positive_gamma(gamma);
    if (!(h > 0.0)) throw DomainError("finite-difference step must be > 0");
    if (!(gamma - h > 0.0)) throw DomainError("finite-difference step must keep gamma - h > 0");
    if (prep.size() != static_cast<Eigen::Index>(spec.node_count())) {
        throw DomainError("preparation and graph dimensions differ");
    }

    // Gauge reference: the closed-form basis at the midpoint gamma.
    ComplexMatrix reference;
    if (prep.basis() == Basis::Energy) {
        reference = closed_form_spectrum(hamiltonian(spec, gamma)).eigenvectors;
    }
    const Central full = central_difference(spec, gamma, prep, t, h, &reference);
    const Central half = central_difference(spec, gamma, prep, t, h / 2.0, &reference);

    FiniteDifferenceResult out;
    out.dstate = full.value;
    out.ok = full.ok && half.ok;
    out.min_overlap = std::min(full.min_overlap, half.min_overlap);
    out.richardson_gap = (full.value - half.value).norm();
    if (!out.ok) {
        out.diagnostic = "degenerate-subspace rotation detected (min overlap singular value " +
                         std::to_string(out.min_overlap) + "); use the fidelity QFI oracle instead";
    }
    return out;
}

}  // namespace qwalk
