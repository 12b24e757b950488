#include "qwalk/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>

namespace qwalk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FisherResult singular(std::string why) { return FisherResult{kInf, true, std::move(why)}; }

// 1 - |<a|b>| for unit vectors, as 0.5 ||a - e^{i theta} b||^2.
double infidelity(const ComplexVector& a, const ComplexVector& b) {
    const ComplexVector an = a / a.norm();
    const ComplexVector bn = b / b.norm();
    const cplx overlap = an.dot(bn);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
    return 0.5 * (bn - phase * an).squaredNorm();
}

}  // namespace

PositionPovm::PositionPovm(std::vector<std::size_t> monitored, std::size_t node_count)
    : monitored_(std::move(monitored)), nodes_(node_count) {
    if (monitored_.empty()) throw DomainError("position POVM needs at least one monitored node");
    std::set<std::size_t> seen;
    for (auto label : monitored_) {
        if (label < 1 || label > nodes_) {
            throw DomainError("monitored node " + std::to_string(label) + " outside 1.." + std::to_string(nodes_));
        }
        if (!seen.insert(label).second) throw DomainError("monitored node " + std::to_string(label) + " repeated");
    }
}

PositionPovm PositionPovm::complete(std::size_t node_count) { return first_nodes(node_count, node_count); }

PositionPovm PositionPovm::first_nodes(std::size_t m, std::size_t node_count) {
    if (m < 1 || m > node_count) throw DomainError("need 1 <= m <= n for an incomplete measurement");
    std::vector<std::size_t> labels(m);
    for (std::size_t k = 0; k < m; ++k) labels[k] = k + 1;
    return PositionPovm(std::move(labels), node_count);
}

PositionPovm PositionPovm::hypercube_face(std::size_t d, std::size_t delta) {
    if (delta > d) throw DomainError("face dimension must not exceed the hypercube dimension");
    return first_nodes(std::size_t{1} << delta, std::size_t{1} << d);
}

PositionPovm PositionPovm::central(std::size_t node_count) { return PositionPovm({1}, node_count); }

PositionPovm PositionPovm::cycle_parity(std::size_t node_count, std::size_t odd, std::size_t even) {
    if (node_count % 2 != 0) throw DomainError("parity measurement needs an even cycle");
    if (odd > node_count / 2 || even > node_count / 2) throw DomainError("too many monitored nodes of one parity");
    std::vector<std::size_t> labels;
    for (std::size_t k = 0; k < odd; ++k) labels.push_back(2 * k + 1);
    for (std::size_t k = 0; k < even; ++k) labels.push_back(2 * k + 2);
    return PositionPovm(std::move(labels), node_count);
}

RealVector PositionPovm::probabilities(const ComplexVector& state) const {
    if (static_cast<std::size_t>(state.size()) != nodes_) throw DomainError("state and POVM dimensions differ");
    RealVector p(static_cast<Eigen::Index>(element_count()));
    std::vector<bool> hit(nodes_, false);
    for (std::size_t k = 0; k < monitored_.size(); ++k) {
        const auto idx = monitored_[k] - 1;
        hit[idx] = true;
        p(static_cast<Eigen::Index>(k)) = std::norm(state(static_cast<Eigen::Index>(idx)));
    }
    if (!is_complete()) {
        double rest = 0.0;
        for (std::size_t x = 0; x < nodes_; ++x) {
            if (!hit[x]) rest += std::norm(state(static_cast<Eigen::Index>(x)));
        }
        p(p.size() - 1) = rest;
    }
    return p;
}

double qfi_pure(const EvolvedState& ev) {
    const double norm = ev.state.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw DomainError("qfi_pure: state norm " + std::to_string(norm) + " differs from 1");
    }
    const cplx dd = ev.dstate.dot(ev.dstate);  // <d psi|d psi>
    const cplx dp = ev.dstate.dot(ev.state);   // <d psi|psi>
    const cplx q = 4.0 * (dd + dp * dp);
    if (std::abs(q.imag()) > 1e-10 * std::max(1.0, std::abs(q.real()))) {
        throw NumericalError("qfi_pure: imaginary residue " + std::to_string(q.imag()));
    }
    return q.real();
}

double qfi_fidelity_oracle(const GraphSpec& spec, double gamma, const Preparation& prep, double t, double h) {
    require_positive_gamma(gamma);
    if (!(h > 0.0) || !(gamma - h > 0.0)) throw DomainError("fidelity oracle needs 0 < h < gamma");
    const auto at = [&](double g) {
        const NumericalState s = numerical_state(spec, g, prep, t);
        if (!s.ok) throw NumericalError("fidelity oracle: eigenbasis alignment failed at gamma=" + std::to_string(g));
        return s.state;
    };
    const ComplexVector centre = at(gamma);
    // 1 - |<psi(g)|psi(g +- h)>| = Q h^2 / 8 + O(h^4)
    const auto estimate = [&](double step) {
        return 4.0 * (infidelity(centre, at(gamma + step)) + infidelity(centre, at(gamma - step))) / (step * step);
    };
    const double coarse = estimate(h);
    const double fine = estimate(h / 2.0);
    return (4.0 * fine - coarse) / 3.0;
}

FisherResult fi_povm(const EvolvedState& ev, const PositionPovm& povm) {
    const auto n = povm.node_count();
    if (static_cast<std::size_t>(ev.state.size()) != n) throw DomainError("fi_povm: POVM and state sizes differ");
    std::vector<bool> hit(n, false);
    double total = 0.0;

    // Per-outcome term p'^2/p written as 4 (Re <u|d psi>)^2 with u = psi/|psi|.
    // Where the projected state vanishes the term is 0/0; its limit along gamma
    // is 4 |P d psi|^2, which is what continuity of the FI requires.
    const auto term = [](double p, double re_overlap, double dnorm2) -> std::optional<double> {
        const double dp = 2.0 * re_overlap;
        if (p < kProbabilityFloor) {
            if (std::abs(dp) < kDerivativeFloor) return 4.0 * dnorm2;
            return std::nullopt;
        }
        return 4.0 * re_overlap * re_overlap / p;
    };

    for (auto label : povm.monitored()) {
        const auto idx = static_cast<Eigen::Index>(label - 1);
        hit[label - 1] = true;
        const cplx a = ev.state(idx);
        const double p = std::norm(a);
        const double re = (std::conj(a) * ev.dstate(idx)).real();
        const auto c = term(p, re, std::norm(ev.dstate(idx)));
        if (!c) return singular("outcome at node " + std::to_string(label) + " has zero probability but nonzero derivative");
        total += *c;
    }
    if (!povm.is_complete()) {
        double p = 0.0, re = 0.0, dn = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            if (hit[x]) continue;
            const cplx a = ev.state(static_cast<Eigen::Index>(x));
            const cplx da = ev.dstate(static_cast<Eigen::Index>(x));
            p += std::norm(a);
            re += (std::conj(a) * da).real();
            dn += std::norm(da);
        }
        const auto c = term(p, re, dn);
        if (!c) return singular("complement outcome has zero probability but nonzero derivative");
        total += *c;
    }
    return FisherResult{total, false, {}};
}

FisherResult fi_complete_graph_closed(std::size_t n, std::size_t m, double gamma, double t) {
    if (n < 2 || m < 1 || m > n) throw DomainError("fi_complete_graph_closed needs n >= 2 and 1 <= m <= n");
    require_positive_gamma(gamma);
    const double nn = double(n);
    if (m == n) return FisherResult{nn * nn * t * t, false, {}};
    const double x = gamma * nn * t - (double(m) - 1.0) * kPi / nn;
    const double s = std::sin(kPi * double(m) / nn) / std::sin(kPi / nn);
    const double denom = (nn - double(m)) - std::cos(x) * s;
    if (denom < 1e-12) return singular("complement probability vanishes: (n-m) - cos(x) s_{n,m} < 1e-12");
    const double sx = std::sin(x);
    return FisherResult{nn * t * t * (double(m) - std::cos(x) * s + sx * sx * s * s / denom), false, {}};
}

FisherResult fi_cycle_closed(std::size_t n, double bo, double be, double gamma, double t) {
    if (n < 4 || n % 2 != 0) throw DomainError("fi_cycle_closed needs an even cycle");
    require_positive_gamma(gamma);
    const double half = double(n) / 2.0;
    for (double b : {bo, be}) {
        if (!(b >= 0.0 && b <= 1.0)) throw DomainError("monitored fractions must lie in [0, 1]");
        if (std::abs(b * half - std::round(b * half)) > 1e-9) {
            throw DomainError("beta * n / 2 must be an integer number of nodes");
        }
    }
    if (bo + be == 0.0) throw DomainError("at least one node must be monitored");
    const double full = 16.0 * t * t;
    if (bo == 1.0 && be == 1.0) return FisherResult{full, false, {}};
    const double c = std::cos(4.0 * gamma * t);
    const double num = bo + be - 2.0 * bo * be + (be - bo) * c;
    const double den = 2.0 - (bo + be) + (be - bo) * c;
    if (den < 1e-12) {
        // den = (1 - bO)(1 + c) + (1 - bE)(1 - c) vanishes only on the unit-efficiency
        // segments, where num vanishes too and the ratio tends to 1.
        if (num > 1e-12) return singular("complement probability vanishes with nonzero numerator");
        return FisherResult{full, false, "removable 0/0 limit on the unit-efficiency segment"};
    }
    return FisherResult{full * num / den, false, {}};
}

double bipartite_delta(std::size_t p, std::size_t q, double gamma) {
    const double pp = double(p), qq = double(q);
    return (pp - qq) * (pp - qq) + 4.0 * qq * pp * gamma * gamma;
}

double bipartite_f(std::size_t p, std::size_t q, double gamma, double t) {
    const double pp = double(p), qq = double(q);
    const double g2 = gamma * gamma;
    return pp * qq * (16.0 * pp * pp * qq * qq * g2 * g2 * t * t +
                      (pp - qq) * (pp - qq) * (1.0 + 4.0 * pp * qq * g2 * t * t));
}

double bipartite_optimal_phase(std::size_t p, std::size_t q, double gamma, double t) {
    return t * std::sqrt(bipartite_delta(p, q, gamma));
}

double qfi_bipartite_closed(std::size_t p, std::size_t q, cplx am, cplx ap, double gamma, double t) {
    if (p < 1 || q < 1) throw DomainError("qfi_bipartite_closed needs p, q >= 1");
    require_positive_gamma(gamma);
    if (std::abs(std::norm(am) + std::norm(ap) - 1.0) > 1e-12) {
        throw DomainError("|alpha_-|^2 + |alpha_+|^2 must equal 1");
    }
    const double pp = double(p), qq = double(q);
    const double delta = bipartite_delta(p, q, gamma);
    const double root = std::sqrt(delta);
    const double f = bipartite_f(p, q, gamma, t);
    const double g = (std::norm(am) - std::norm(ap)) * pp * qq * gamma * t * root +
                     (std::polar(1.0, t * root) * std::conj(ap) * am).imag() * (pp - qq) * std::sqrt(pp * qq);
    return 4.0 * (f - 4.0 * g * g) / (delta * delta);
}

double efficiency_star(std::size_t n, double phi, double gamma, double t) {
    if (n < 2) throw DomainError("star graph needs n >= 2");
    require_positive_gamma(gamma);
    if (n == 2) return 1.0;
    const double m1 = double(n) - 1.0;
    const double m2 = double(n) - 2.0;
    const double delta = bipartite_delta(1, n - 1, gamma);
    const double f = bipartite_f(1, n - 1, gamma, t);
    const double x = t * std::sqrt(delta) - phi;  // phi_opt - phi
    const double s = std::sin(x);
    const double lead = m2 * m2 * std::cos(x) - 4.0 * m1 * std::sqrt(delta) * gamma * gamma * t * s;
    return m1 * lead * lead / (f * (4.0 * m1 * gamma * gamma * s * s + m2 * m2));
}

FisherResult fi_star_closed(std::size_t n, double phi, double gamma, double t) {
    const double delta = bipartite_delta(1, n - 1, gamma);
    const double qmax = 4.0 * bipartite_f(1, n - 1, gamma, t) / (delta * delta);
    return FisherResult{efficiency_star(n, phi, gamma, t) * qmax, false, {}};
}

double fi_hypercube_face_closed(std::size_t d, std::size_t delta, double t) {
    if (d < 1 || delta < 1 || delta > d) throw DomainError("fi_hypercube_face_closed needs 1 <= delta <= d");
    return std::ldexp(1.0, static_cast<int>(delta) - static_cast<int>(d) + 2) * double(d) * double(d) * t * t;
}

double qfi_complete_closed(std::size_t n, double w0, double t) {
    if (!(w0 >= 0.0 && w0 <= 1.0)) throw DomainError("ground weight must lie in [0, 1]");
    return 4.0 * double(n) * double(n) * t * t * w0 * (1.0 - w0);
}

double qfi_cycle_closed(std::size_t n, const RealVector& weights, double t) {
    if (static_cast<std::size_t>(weights.size()) != n) throw DomainError("need one weight per Fourier index");
    RealVector values(weights.size());
    for (Eigen::Index j = 0; j < values.size(); ++j) values(j) = std::cos(2.0 * kPi * double(j) / double(n));
    return 16.0 * t * t * variance(values, weights);
}

double qfi_hypercube_closed(std::size_t d, const RealVector& weights, double t) {
    if (static_cast<std::size_t>(weights.size()) != d + 1) throw DomainError("need one weight per level 0..d");
    RealVector values(weights.size());
    for (Eigen::Index j = 0; j < values.size(); ++j) values(j) = double(d) - 2.0 * double(j);
    return 4.0 * t * t * variance(values, weights);
}

double variance(const RealVector& values, const RealVector& probs) {
    if (values.size() != probs.size() || values.size() == 0) throw DomainError("values and probs must match");
    if ((probs.array() < 0.0).any() || std::abs(probs.sum() - 1.0) > 1e-9) {
        throw DomainError("probabilities must be non-negative and sum to 1");
    }
    const double mean = probs.dot(values);
    return probs.dot((values.array() - mean).square().matrix());
}

double popoviciu_bound(const RealVector& values, const RealVector& probs) {
    if (values.size() != probs.size() || values.size() == 0) throw DomainError("values and probs must match");
    if ((probs.array() < 0.0).any() || std::abs(probs.sum() - 1.0) > 1e-9) {
        throw DomainError("probabilities must be non-negative and sum to 1");
    }
    const double range = values.maxCoeff() - values.minCoeff();
    return range * range / 4.0;
}

CramerRaoBounds cramer_rao(double fi, double qfi, std::size_t shots) {
    if (shots < 1) throw DomainError("number of repetitions N must be >= 1");
    if (fi < 0.0 || qfi < 0.0) throw DomainError("Fisher information cannot be negative");
    CramerRaoBounds b;
    const double n = double(shots);
    b.identifiable = fi > 0.0;
    if (fi > 0.0) b.crb = 1.0 / (n * fi);
    if (qfi > 0.0) b.qcrb = 1.0 / (n * qfi);
    return b;
}

EstimationReport estimation_report(const GraphSpec& spec, double gamma, const Preparation& prep, double t,
                                   const PositionPovm& povm, std::size_t shots) {
    const EvolvedState ev = evolve(spec, gamma, prep, t);
    EstimationReport r{spec, gamma, t, shots, povm.element_count(), povm.monitored().size(), 0.0, {}, 0.0, {}};
    r.qfi = qfi_pure(ev);
    r.fi = fi_povm(ev, povm);
    const double fi = r.fi.singular ? 0.0 : std::max(0.0, r.fi.value);
    r.efficiency = r.qfi > 0.0 && !r.fi.singular ? fi / r.qfi : 0.0;
    r.bounds = cramer_rao(fi, std::max(0.0, r.qfi), shots);
    if (r.fi.singular) {
        r.bounds.crb = 0.0;
        r.bounds.identifiable = true;
    }
    return r;
}

}  // namespace qwalk
