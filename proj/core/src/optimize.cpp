#include "qwalk/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qwalk/metrology.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {
namespace {

struct Pair {
    Eigen::Index lower = 0;
    Eigen::Index upper = 0;
    double value = -1.0;
};

// Balanced two-level preparations over gamma-independent eigenvectors give
// Q = t^2 (dxi_a - dxi_b)^2; scan every pair and keep the first maximum.
Pair best_balanced_pair(const Spectrum& s, double t) {
    Pair best;
    const auto& slope = s.eigenvalue_derivatives;
    for (Eigen::Index a = 0; a < s.size(); ++a) {
        for (Eigen::Index b = a + 1; b < s.size(); ++b) {
            const double diff = slope(a) - slope(b);
            const double q = t * t * diff * diff;
            if (q > best.value * (1.0 + 1e-14) + 1e-300) best = Pair{a, b, q};
        }
    }
    return best;
}

}  // namespace

double bipartite_max_qfi(std::size_t p, std::size_t q, double gamma, double t) {
    const double delta = bipartite_delta(p, q, gamma);
    return 4.0 * bipartite_f(p, q, gamma, t) / (delta * delta);
}

double max_qfi_value(const GraphSpec& spec, double gamma, double t) {
    require_positive_gamma(gamma);
    if (!(t >= 0.0)) throw DomainError("interrogation time must be >= 0");
    const double n = double(spec.node_count());
    switch (spec.family()) {
        case Family::Complete: return n * n * t * t;
        case Family::Cycle:
            if (spec.node_count() % 2 == 0) return 16.0 * t * t;
            return 4.0 * t * t * std::pow(1.0 + std::cos(kPi / n), 2);
        case Family::Hypercube: {
            const double d = double(spec.dimension());
            return 4.0 * t * t * d * d;
        }
        case Family::CompleteBipartite:
        case Family::Star: return bipartite_max_qfi(spec.part_p(), spec.part_q(), gamma, t);
        case Family::Circulant: {
            const Spectrum s = closed_form_spectrum(hamiltonian(spec, gamma));
            const double range = s.eigenvalue_derivatives.maxCoeff() - s.eigenvalue_derivatives.minCoeff();
            return t * t * range * range;
        }
    }
    throw DomainError("unsupported family");
}

OptimalPreparation max_qfi(const GraphSpec& spec, double gamma, double t) {
    const double value = max_qfi_value(spec, gamma, t);
    const Spectrum s = closed_form_spectrum(hamiltonian(spec, gamma));
    const Eigen::Index n = s.size();

    Eigen::Index lower = 0, upper = n - 1;
    double phase = 0.0;
    std::string recipe;
    switch (spec.family()) {
        case Family::Complete:
            lower = s.find_column("j=0");
            upper = s.find_column("j=1");
            recipe = "balanced ground state and first excited Fourier state";
            break;
        case Family::Hypercube:
            recipe = "balanced ground state and highest excited state";
            break;
        case Family::CompleteBipartite:
        case Family::Star:
            lower = s.find_column("xi-");
            upper = s.find_column("xi+");
            phase = bipartite_optimal_phase(spec.part_p(), spec.part_q(), gamma, t);
            recipe = "balanced xi-/xi+ superposition with relative phase t*sqrt(Delta)";
            break;
        case Family::Cycle:
        case Family::Circulant: {
            const Pair best = best_balanced_pair(s, t == 0.0 ? 1.0 : t);
            lower = best.lower;
            upper = best.upper;
            recipe = spec.family() == Family::Cycle && spec.node_count() % 2 == 0
                         ? "balanced ground state and highest excited state"
                         : "balanced pair of eigenstates with extremal dxi/dgamma (found by pair enumeration)";
            break;
        }
    }
    OptimalPreparation out{recipe,
                           Preparation::energy_superposition(n, lower, upper, phase),
                           lower,
                           upper,
                           s.column_labels[static_cast<std::size_t>(lower)],
                           s.column_labels[static_cast<std::size_t>(upper)],
                           phase,
                           value};
    return out;
}

PrepSearchResult numeric_prep_search(const GraphSpec& spec, double gamma, double t,
                                     const PrepSearchOptions& opt) {
    if (opt.restarts < 1) throw DomainError("numeric_prep_search needs at least one restart");
    if (spec.node_count() > 64) throw DomainError("numeric_prep_search is limited to n <= 64");
    const Spectrum s = closed_form_spectrum(hamiltonian(spec, gamma));
    const Eigen::Index n = s.size();

    ComplexMatrix m(n, n), md(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx ph = std::polar(1.0, -s.eigenvalues(k) * t);
        m.col(k) = s.eigenvectors.col(k) * ph;
        md.col(k) = s.eigenvector_derivatives.col(k) * ph +
                    s.eigenvectors.col(k) * (cplx(0.0, -t * s.eigenvalue_derivatives(k)) * ph);
    }
    const ComplexMatrix a = md.adjoint() * md;
    const ComplexMatrix b = m.adjoint() * md;
    const ComplexMatrix bh = b.adjoint();

    // Q(alpha) = 4 [alpha^+ A alpha - |alpha^+ B alpha|^2]
    const auto qfi_of = [&](const ComplexVector& x) {
        const cplx z = x.dot(b * x);
        return 4.0 * (x.dot(a * x).real() - std::norm(z));
    };

    struct Run {
        ComplexVector best;
        double q = -1.0;
        bool converged = false;
    };
    std::vector<Run> runs(opt.restarts);

    parallel_for(
        opt.restarts,
        [&](std::size_t r) {
            std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                              static_cast<std::uint32_t>(r)};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> gauss;
            ComplexVector x(n);
            for (Eigen::Index k = 0; k < n; ++k) x(k) = cplx(gauss(rng), gauss(rng));
            x.normalize();
            double q = qfi_of(x);
            double step = opt.step;
            bool converged = false;
            for (std::size_t it = 0; it < opt.max_iterations; ++it) {
                const cplx z = x.dot(b * x);
                ComplexVector g = a * x - (std::conj(z) * (b * x) + z * (bh * x));
                g -= x.dot(g).real() * x;
                const double gnorm = g.norm();
                if (gnorm < 1e-12 * (1.0 + std::abs(q)) || step < 1e-12) {
                    converged = true;
                    break;
                }
                ComplexVector cand = (x + (step / gnorm) * g).normalized();
                const double qc = qfi_of(cand);
                if (qc > q) {
                    x = std::move(cand);
                    q = qc;
                    step = std::min(1.0, 1.5 * step);
                } else {
                    step /= 2.0;
                }
            }
            runs[r] = Run{x, q, converged};
        },
        opt.workers);

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].q > runs[best].q) best = r;
    }
    PrepSearchResult out{Preparation::normalized(Basis::Energy, runs[best].best), runs[best].q, best,
                         runs[best].converged, {}};
    if (!out.converged) out.warning = "best restart hit the iteration limit before converging";
    return out;
}

double complete_max_efficiency(std::size_t n, std::size_t m) {
    if (n < 2 || m < 1 || m > n) throw DomainError("complete_max_efficiency needs 1 <= m <= n");
    if (m == n) return 1.0;
    const double s = std::sin(kPi * double(m) / double(n)) / std::sin(kPi / double(n));
    return double(m) / double(n) + s / double(n);
}

double cycle_max_efficiency(double bo, double be) {
    if (!(bo >= 0.0 && bo <= 1.0 && be >= 0.0 && be <= 1.0)) throw DomainError("fractions must lie in [0, 1]");
    return std::max(bo, be);
}

double complete_max_efficiency_grid(std::size_t n, std::size_t m, std::size_t points) {
    if (points < 2) throw DomainError("grid needs at least two points");
    const double qscale = double(n) * double(n);
    double best = 0.0;
    for (std::size_t k = 1; k < points; ++k) {
        const double t = 2.0 * kPi * double(k) / double(points - 1);  // gamma = 1
        const FisherResult f = fi_complete_graph_closed(n, m, 1.0, t);
        if (f.singular) continue;
        best = std::max(best, f.value / (qscale * t * t));
    }
    return best;
}

double cycle_max_efficiency_grid(double bo, double be, std::size_t points) {
    if (points < 2) throw DomainError("grid needs at least two points");
    // The ratio depends on gamma*t only through cos(4 gamma t).
    double best = 0.0;
    for (std::size_t k = 1; k < points; ++k) {
        const double gt = 2.0 * kPi * double(k) / double(points - 1);
        const double c = std::cos(4.0 * gt);
        const double num = bo + be - 2.0 * bo * be + (be - bo) * c;
        const double den = 2.0 - (bo + be) + (be - bo) * c;
        if (den < 1e-12) continue;
        best = std::max(best, num / den);
    }
    return best;
}

std::size_t optimal_bipartition(std::size_t n) {
    if (n < 2) throw DomainError("optimal_bipartition needs n >= 2");
    return n / 2;
}

std::size_t bipartition_scan(std::size_t n, double gamma, double t) {
    if (n < 2) throw DomainError("bipartition_scan needs n >= 2");
    std::size_t best = 1;
    double best_q = -1.0;
    for (std::size_t p = 1; p < n; ++p) {
        const double q = bipartite_max_qfi(p, n - p, gamma, t);
        if (q > best_q * (1.0 + 1e-12)) {
            best = p;
            best_q = q;
        }
    }
    return best;
}

NodeCountOptimum star_n_opt(double gamma, TimeRegime regime) {
    require_positive_gamma(gamma);
    NodeCountOptimum out;
    if (regime == TimeRegime::SmallTime) {
        out.value = 2.0 * (1.0 + gamma * gamma + gamma * std::sqrt(1.0 + gamma));
        return out;
    }
    const double r = 1.0 / (gamma * gamma);
    if (std::abs(r - 2.0) < 1e-9) {
        out.boundary = true;
        out.unbounded = true;
        return out;
    }
    if (r <= 2.0) {
        out.unbounded = true;
        return out;
    }
    out.value = 2.0 * (r - 1.0) / (r - 2.0);
    return out;
}

double star_max_qfi(std::size_t n, double gamma, double t) {
    if (n < 2) throw DomainError("star graph needs n >= 2");
    return bipartite_max_qfi(1, n - 1, gamma, t);
}

StarGridScan star_grid_scan(double gamma, double t, std::size_t n_max) {
    if (n_max < 2) throw DomainError("star_grid_scan needs n_max >= 2");
    StarGridScan out;
    double prev = -1.0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const double q = star_max_qfi(n, gamma, t);
        if (q > out.max_value) {
            out.max_value = q;
            out.argmax = n;
        }
        if (prev >= 0.0 && q < prev * (1.0 - 1e-12)) out.nondecreasing = false;
        prev = q;
    }
    return out;
}

}  // namespace qwalk
