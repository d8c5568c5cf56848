#pragma once

#include <complex>

#include <Eigen/Dense>

#include "weakval/basis.hpp"
#include "weakval/errors.hpp"

namespace weakval {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Default absolute tolerance for numeric comparisons; every closed-form
/// value produced by the built-in scenarios is exact well below this.
inline constexpr double kDefaultTol = 1e-10;

/// Threshold on |⟨f|U|in⟩| (unit-normalized states) below which a
/// post-selection counts as orthogonal, and on norms treated as zero.
inline constexpr double kOrthogonalEps = 1e-12;

/// A ket over a labeled basis. Amplitudes must be finite; normalization is
/// never assumed — callers that need a unit vector call normalize().
class StateVector {
public:
    StateVector(Basis basis, CVector amplitudes);

    /// The coordinate ket |label⟩.
    static StateVector basis_ket(const Basis& basis, std::string_view label);

    const Basis& basis() const { return basis_; }
    const CVector& amplitudes() const { return amps_; }
    Complex amplitude(std::string_view label) const;
    int dimension() const { return basis_.dimension(); }
    double squared_norm() const { return amps_.squaredNorm(); }
    double norm() const { return amps_.norm(); }

private:
    Basis basis_;
    CVector amps_;
};

/// A dense complex matrix sending the `domain` basis to the `codomain`
/// basis (entry (i,j) = ⟨codomain_i|M|domain_j⟩). Observables and
/// projectors are the endomorphism case domain == codomain; a beam
/// splitter mapping arm labels to port labels is the general case. The
/// two bases always have equal dimension, so the matrix is square.
class OperatorMatrix {
public:
    /// Endomorphism over one basis.
    OperatorMatrix(Basis basis, CMatrix entries);
    /// Basis-change map; dimensions of the two bases must match.
    OperatorMatrix(Basis domain, Basis codomain, CMatrix entries);

    static OperatorMatrix identity(const Basis& basis);

    const Basis& domain() const { return domain_; }
    const Basis& codomain() const { return codomain_; }
    /// The single basis of an endomorphism; throws BasisMismatch for maps
    /// between distinct bases.
    const Basis& basis() const;
    const CMatrix& matrix() const { return mat_; }
    int dimension() const { return domain_.dimension(); }
    bool is_endomorphism() const { return domain_ == codomain_; }

private:
    Basis domain_;
    Basis codomain_;
    CMatrix mat_;
};

/// ⟨bra|ket⟩, conjugate-linear in the first argument.
Complex inner(const StateVector& bra, const StateVector& ket);

/// |a⟩⊗|b⟩ over Basis::tensor(a.basis, b.basis).
StateVector tensor(const StateVector& a, const StateVector& b);

/// Kronecker product, label convention matching tensor().
OperatorMatrix tensor_op(const OperatorMatrix& a, const OperatorMatrix& b);

/// Matrix-vector product; the state must live on the operator's domain.
StateVector apply(const OperatorMatrix& op, const StateVector& s);

/// |s⟩⟨s| / ⟨s|s⟩.
OperatorMatrix projector_onto(const StateVector& s);

/// Max-entry deviation of U†U from the identity is at most tol.
bool is_unitary(const OperatorMatrix& u, double tol);

/// Max-entry deviation of O from O† is at most tol. A map between two
/// distinct bases is never Hermitian.
bool is_hermitian(const OperatorMatrix& o, double tol);

OperatorMatrix adjoint(const OperatorMatrix& op);

/// a ∘ b (apply b first); b's codomain must equal a's domain.
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);

/// s / ‖s‖; throws ZeroVector when the norm is below kOrthogonalEps.
StateVector normalize(const StateVector& s);

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex scalar, const OperatorMatrix& op);
StateVector operator*(const OperatorMatrix& op, const StateVector& s);
StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(Complex scalar, const StateVector& s);

} // namespace weakval
