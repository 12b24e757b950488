#include "qwalk/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

namespace qwalk {
namespace {

struct Mode {
    double value;
    double derivative;
    ComplexVector vector;
    ComplexVector dvector;
    std::string group_key;
    std::string label;
    long order;  // tie-break within equal eigenvalues
};

Spectrum assemble(std::vector<Mode> modes, SpectrumSource source) {
    std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        return std::tie(a.value, a.order) < std::tie(b.value, b.order);
    });
    const auto n = static_cast<Eigen::Index>(modes.size());
    Spectrum s;
    s.source = source;
    s.eigenvalues.resize(n);
    s.eigenvalue_derivatives.resize(n);
    s.eigenvectors.resize(n, n);
    s.eigenvector_derivatives.resize(n, n);
    std::map<std::string, std::size_t> group_index;
    for (Eigen::Index k = 0; k < n; ++k) {
        auto& m = modes[static_cast<std::size_t>(k)];
        s.eigenvalues(k) = m.value;
        s.eigenvalue_derivatives(k) = m.derivative;
        s.eigenvectors.col(k) = m.vector;
        s.eigenvector_derivatives.col(k) = m.dvector;
        s.column_labels.push_back(m.label);
        auto [it, inserted] = group_index.try_emplace(m.group_key, s.groups.size());
        if (inserted) s.groups.push_back(EigenGroup{m.group_key, {}});
        s.groups[it->second].columns.push_back(k);
    }
    return s;
}

std::string fourier_group_key(std::size_t n, std::size_t j) {
    const std::size_t a = std::min(j, n - j) % n;
    const std::size_t b = (n - a) % n;
    if (a == b) return "j=" + std::to_string(a);
    return "j=" + std::to_string(a) + "|" + std::to_string(b);
}

std::vector<Mode> circulant_modes(const GraphSpec& spec, double gamma) {
    const std::size_t n = spec.node_count();
    const ComplexVector zero = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    std::vector<Mode> modes;
    modes.reserve(n);
    double degree = 0.0;
    if (spec.family() == Family::Circulant) {
        for (std::size_t k = 1; k < n; ++k) degree += spec.circulant_weight(k) != 0.0 ? 1.0 : 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jr = std::min(j, n - j);  // xi_j = xi_{n-j} exactly
        double value = 0.0;
        double slope = 0.0;
        switch (spec.family()) {
            case Family::Complete:
                value = j == 0 ? (double(n) - 1.0) * (1.0 - gamma) : (double(n) - 1.0) + gamma;
                slope = j == 0 ? -(double(n) - 1.0) : 1.0;
                break;
            case Family::Cycle: {
                const double c = std::cos(2.0 * kPi * double(jr) / double(n));
                value = 2.0 - 2.0 * gamma * c;
                slope = -2.0 * c;
                break;
            }
            case Family::Circulant: {
                double sum = 0.0;
                for (std::size_t k = 1; k < n; ++k) {
                    const double w = spec.circulant_weight(k);
                    if (w != 0.0) sum += w * std::cos(2.0 * kPi * double((jr * k) % n) / double(n));
                }
                value = degree - gamma * sum;
                slope = -sum;
                break;
            }
            default: break;
        }
        std::string key = spec.family() == Family::Complete ? (j == 0 ? "j=0" : "j=1..n-1")
                                                            : fourier_group_key(n, j);
        modes.push_back(Mode{value, slope, fourier_vector(n, j), zero, std::move(key),
                             "j=" + std::to_string(j), static_cast<long>(j)});
    }
    return modes;
}

std::vector<Mode> hypercube_modes(const GraphSpec& spec, double gamma) {
    const std::size_t d = spec.dimension();
    const RealMatrix b = hadamard_matrix(d);
    const auto n = b.rows();
    const ComplexVector zero = ComplexVector::Zero(n);
    std::vector<Mode> modes;
    modes.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < n; ++c) {
        const auto level = static_cast<std::size_t>(std::popcount(static_cast<unsigned long long>(c)));
        const double value = double(d) - gamma * (double(d) - 2.0 * double(level));
        const double slope = -(double(d) - 2.0 * double(level));
        modes.push_back(Mode{value, slope, b.col(c).cast<cplx>(), zero, "level=" + std::to_string(level),
                             "level=" + std::to_string(level) + ":col=" + std::to_string(c),
                             static_cast<long>(c)});
    }
    return modes;
}

// Orthonormal basis of {x in R^m : sum x = 0} from e_1 - e_{k+1} by Gram-Schmidt.
RealMatrix zero_sum_basis(std::size_t m) {
    const auto dim = static_cast<Eigen::Index>(m);
    RealMatrix basis(dim, dim > 0 ? dim - 1 : 0);
    for (Eigen::Index k = 0; k + 1 < dim; ++k) {
        RealVector v = RealVector::Zero(dim);
        v(0) = 1.0;
        v(k + 1) = -1.0;
        for (Eigen::Index prev = 0; prev < k; ++prev) v -= basis.col(prev).dot(v) * basis.col(prev);
        basis.col(k) = v.normalized();
    }
    return basis;
}

std::vector<Mode> bipartite_modes(const GraphSpec& spec, double gamma) {
    const double p = double(spec.part_p());
    const double q = double(spec.part_q());
    const auto pi = static_cast<Eigen::Index>(spec.part_p());
    const auto qi = static_cast<Eigen::Index>(spec.part_q());
    const Eigen::Index n = pi + qi;
    const ComplexVector zero = ComplexVector::Zero(n);
    std::vector<Mode> modes;

    const double delta = (p - q) * (p - q) + 4.0 * q * p * gamma * gamma;
    const double root = std::sqrt(delta);
    const double droot = 4.0 * p * q * gamma / root;  // d sqrt(Delta) / d gamma

    for (int sign : {-1, +1}) {
        const double xi = ((p + q) + sign * root) / 2.0;
        const double dxi = sign * droot / 2.0;
        // |xi_pm> = eta (a 1_p, 1_q), a = (p - xi)/(gamma p), eta = [q(1 + (p-xi)/(q-xi))]^{-1/2}
        const double a = (p - xi) / (gamma * p);
        const double da = -dxi / (gamma * p) - (p - xi) / (gamma * gamma * p);
        const double eta = 1.0 / std::sqrt(q * (1.0 + (p - xi) / (q - xi)));
        const double norm2 = p * a * a + q;
        const double deta = -p * a * da / (norm2 * std::sqrt(norm2));
        ComplexVector v(n), dv(n);
        v.head(pi).setConstant(eta * a);
        v.tail(qi).setConstant(eta);
        dv.head(pi).setConstant(deta * a + eta * da);
        dv.tail(qi).setConstant(deta);
        const std::string name = sign < 0 ? "xi-" : "xi+";
        modes.push_back(Mode{xi, dxi, std::move(v), std::move(dv), name, name, sign < 0 ? 0 : 3});
    }

    const bool merged = spec.part_p() == spec.part_q();
    const RealMatrix a_basis = zero_sum_basis(spec.part_p());
    for (Eigen::Index k = 0; k < a_basis.cols(); ++k) {
        ComplexVector v = zero;
        v.head(pi) = a_basis.col(k).cast<cplx>();
        modes.push_back(Mode{q, 0.0, std::move(v), zero, merged ? "xi1=xi2" : "xi1",
                             "xi1:" + std::to_string(k + 1), 1});
    }
    const RealMatrix b_basis = zero_sum_basis(spec.part_q());
    for (Eigen::Index k = 0; k < b_basis.cols(); ++k) {
        ComplexVector v = zero;
        v.tail(qi) = b_basis.col(k).cast<cplx>();
        modes.push_back(Mode{p, 0.0, std::move(v), zero, merged ? "xi1=xi2" : "xi2",
                             "xi2:" + std::to_string(k + 1), 2});
    }
    return modes;
}

}  // namespace

std::string_view source_name(SpectrumSource s) {
    return s == SpectrumSource::ClosedForm ? "closed_form" : "numerical";
}

std::vector<std::size_t> Spectrum::multiplicities() const {
    std::vector<std::size_t> m;
    m.reserve(groups.size());
    for (const auto& g : groups) m.push_back(g.columns.size());
    return m;
}

std::vector<std::size_t> Spectrum::group_of_column() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(size()), 0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (auto c : groups[g].columns) out[static_cast<std::size_t>(c)] = g;
    }
    return out;
}

Eigen::Index Spectrum::find_column(const std::string& label) const {
    for (std::size_t k = 0; k < column_labels.size(); ++k) {
        if (column_labels[k] == label) return static_cast<Eigen::Index>(k);
    }
    return -1;
}

ComplexVector fourier_vector(std::size_t n, std::size_t j) {
    ComplexVector v(static_cast<Eigen::Index>(n));
    const double scale = 1.0 / std::sqrt(double(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * kPi * double((j * k) % n) / double(n);
        v(static_cast<Eigen::Index>(k)) = std::polar(scale, angle);
    }
    return v;
}

RealMatrix hadamard_matrix(std::size_t d) {
    if (d < 1) throw DomainError("hadamard_matrix needs d >= 1");
    if (d >= 8 * sizeof(std::size_t) - 1 || (std::size_t{1} << d) > max_dimension()) {
        throw DomainError("hadamard_matrix dimension " + std::to_string(d) + " exceeds the node cap");
    }
    const double s = 1.0 / std::sqrt(2.0);
    RealMatrix b(2, 2);
    b << s, s, s, -s;
    for (std::size_t level = 2; level <= d; ++level) {
        const Eigen::Index h = b.rows();
        RealMatrix next(2 * h, 2 * h);
        next.topLeftCorner(h, h) = s * b;
        next.topRightCorner(h, h) = s * b;
        next.bottomLeftCorner(h, h) = s * b;
        next.bottomRightCorner(h, h) = -s * b;
        b = std::move(next);
    }
    return b;
}

Spectrum closed_form_spectrum(const WalkHamiltonian& h) {
    require_positive_gamma(h.gamma);
    switch (h.spec.family()) {
        case Family::Complete:
        case Family::Cycle:
        case Family::Circulant: return assemble(circulant_modes(h.spec, h.gamma), SpectrumSource::ClosedForm);
        case Family::Hypercube: return assemble(hypercube_modes(h.spec, h.gamma), SpectrumSource::ClosedForm);
        case Family::CompleteBipartite:
        case Family::Star: return assemble(bipartite_modes(h.spec, h.gamma), SpectrumSource::ClosedForm);
    }
    throw DomainError("unsupported graph family");
}

Spectrum numerical_spectrum(const WalkHamiltonian& h) {
    const auto n = h.matrix.rows();
    if (static_cast<std::size_t>(n) > max_dimension()) {
        throw DomainError("numerical_spectrum: dimension above cap");
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.matrix);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "symmetric eigensolver failed for " << n << "x" << n << " matrix (||H||_F = "
            << h.matrix.norm() << ", max |H_ij| = " << h.matrix.cwiseAbs().maxCoeff()
            << ", asymmetry = " << (h.matrix - h.matrix.transpose()).norm() << ")";
        throw NumericalError(msg.str());
    }
    Spectrum s;
    s.source = SpectrumSource::Numerical;
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = solver.eigenvectors().cast<cplx>();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (k == 0 || s.eigenvalues(k) - s.eigenvalues(k - 1) > kDegeneracyTolerance) {
            s.groups.push_back(EigenGroup{"group " + std::to_string(s.groups.size()), {}});
        }
        s.groups.back().columns.push_back(k);
        s.column_labels.push_back("k=" + std::to_string(k));
    }
    return s;
}

AlignedBasis align_to_reference(const Spectrum& numeric, const ComplexMatrix& reference,
                                double min_overlap) {
    const auto n = numeric.size();
    if (reference.rows() != n || reference.cols() != n) {
        throw DomainError("align_to_reference: reference basis has the wrong shape");
    }
    AlignedBasis out;
    out.eigenvalues = numeric.eigenvalues;
    out.vectors.resize(n, n);
    out.min_overlap = 1.0;
    for (const auto& group : numeric.groups) {
        const auto k = static_cast<Eigen::Index>(group.columns.size());
        ComplexMatrix num(n, k), ref(n, k);
        for (Eigen::Index c = 0; c < k; ++c) {
            num.col(c) = numeric.eigenvectors.col(group.columns[static_cast<std::size_t>(c)]);
            ref.col(c) = reference.col(group.columns[static_cast<std::size_t>(c)]);
        }
        const ComplexMatrix overlap = num.adjoint() * ref;
        Eigen::JacobiSVD<ComplexMatrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
        out.min_overlap = std::min(out.min_overlap, svd.singularValues().minCoeff());
        const ComplexMatrix aligned = num * svd.matrixU() * svd.matrixV().adjoint();
        for (Eigen::Index c = 0; c < k; ++c) {
            out.vectors.col(group.columns[static_cast<std::size_t>(c)]) = aligned.col(c);
        }
    }
    out.ok = out.min_overlap >= min_overlap;
    return out;
}

}  // namespace qwalk
