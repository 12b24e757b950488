#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qwalk/common.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

enum class SpectrumSource { ClosedForm, Numerical };

std::string_view source_name(SpectrumSource s);

/// A set of column indices sharing one eigenvalue.
struct EigenGroup {
    std::string label;
    std::vector<Eigen::Index> columns;
};

/// Eigen-decomposition of a walk Hamiltonian in the position basis.
///
/// Eigenvalues are ascending; column k of `eigenvectors` is the eigenvector of
/// eigenvalues[k]. Closed-form spectra also carry the gamma-derivatives of
/// both eigenvalues and eigenvectors, which the dynamics module consumes.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
    std::vector<EigenGroup> groups;
    std::vector<std::string> column_labels;
    SpectrumSource source = SpectrumSource::Numerical;

    RealVector eigenvalue_derivatives;
    ComplexMatrix eigenvector_derivatives;

    Eigen::Index size() const noexcept { return eigenvalues.size(); }
    bool has_derivatives() const noexcept { return eigenvalue_derivatives.size() == eigenvalues.size(); }
    std::vector<std::size_t> multiplicities() const;
    /// Group index of each column.
    std::vector<std::size_t> group_of_column() const;
    /// Column index of the first column whose label equals `label`, or -1.
    Eigen::Index find_column(const std::string& label) const;
};

/// Absolute gap below which two sorted eigenvalues are treated as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;

Spectrum closed_form_spectrum(const WalkHamiltonian& h);
Spectrum numerical_spectrum(const WalkHamiltonian& h);

/// Orthogonal Hadamard matrix B_d (entries +-2^{-d/2}); column c is the
/// hypercube eigenvector at Hamming weight popcount(c).
RealMatrix hadamard_matrix(std::size_t d);

/// Unitary gauge fixing of a numerical eigenbasis against a reference basis.
///
/// Inside every degenerate group of `numeric`, the returned columns are the
/// orthonormal vectors of that eigenspace with maximal overlap with the
/// matching reference columns (polar decomposition of the overlap block).
struct AlignedBasis {
    ComplexMatrix vectors;
    RealVector eigenvalues;
    /// Smallest singular value of any overlap block; near 0 means the
    /// reference columns left the numerical eigenspace (gauge rotation).
    double min_overlap = 0.0;
    bool ok = false;
};

AlignedBasis align_to_reference(const Spectrum& numeric, const ComplexMatrix& reference,
                                double min_overlap = 0.5);

/// Fourier vector of index j on n nodes, entries e^{2 pi i j k / n}/sqrt(n).
ComplexVector fourier_vector(std::size_t n, std::size_t j);

}  // namespace qwalk
