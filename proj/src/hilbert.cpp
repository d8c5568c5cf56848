#include "weakval/hilbert.hpp"

#include <stdexcept>

namespace weakval {

namespace {

void require_finite(const CVector& v) {
    if (!v.allFinite()) {
        throw std::invalid_argument("amplitudes must be finite");
    }
}

void require_finite(const CMatrix& m) {
    if (!m.allFinite()) {
        throw std::invalid_argument("matrix entries must be finite");
    }
}

std::string basis_summary(const Basis& b) {
    std::string out = "{";
    for (int i = 0; i < b.dimension(); ++i) {
        if (i > 0) out += ",";
        out += b.label(i);
    }
    return out + "}";
}

[[noreturn]] void throw_mismatch(const char* what, const Basis& a, const Basis& b) {
    throw BasisMismatch(std::string(what) + ": " + basis_summary(a) + " vs " + basis_summary(b));
}

} // namespace

StateVector::StateVector(Basis basis, CVector amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (amps_.size() != basis_.dimension()) {
        throw std::invalid_argument("amplitude count does not match basis dimension");
    }
    require_finite(amps_);
}

StateVector StateVector::basis_ket(const Basis& basis, std::string_view label) {
    auto idx = basis.index_of(label);
    if (!idx) {
        throw std::invalid_argument("no basis label '" + std::string(label) + "'");
    }
    CVector amps = CVector::Zero(basis.dimension());
    amps(*idx) = Complex(1.0, 0.0);
    return StateVector(basis, std::move(amps));
}

Complex StateVector::amplitude(std::string_view label) const {
    auto idx = basis_.index_of(label);
    if (!idx) {
        throw std::out_of_range("no basis label '" + std::string(label) + "'");
    }
    return amps_(*idx);
}

OperatorMatrix::OperatorMatrix(Basis basis, CMatrix entries)
    : domain_(basis), codomain_(std::move(basis)), mat_(std::move(entries)) {
    if (mat_.rows() != domain_.dimension() || mat_.cols() != domain_.dimension()) {
        throw std::invalid_argument("matrix shape does not match basis dimension");
    }
    require_finite(mat_);
}

OperatorMatrix::OperatorMatrix(Basis domain, Basis codomain, CMatrix entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), mat_(std::move(entries)) {
    if (domain_.dimension() != codomain_.dimension()) {
        throw std::invalid_argument("domain and codomain dimensions differ");
    }
    if (mat_.rows() != codomain_.dimension() || mat_.cols() != domain_.dimension()) {
        throw std::invalid_argument("matrix shape does not match basis dimensions");
    }
    require_finite(mat_);
}

OperatorMatrix OperatorMatrix::identity(const Basis& basis) {
    return OperatorMatrix(basis, CMatrix::Identity(basis.dimension(), basis.dimension()));
}

const Basis& OperatorMatrix::basis() const {
    if (!is_endomorphism()) {
        throw_mismatch("operator maps between distinct bases", domain_, codomain_);
    }
    return domain_;
}

Complex inner(const StateVector& bra, const StateVector& ket) {
    if (bra.basis() != ket.basis()) {
        throw_mismatch("inner product needs a shared basis", bra.basis(), ket.basis());
    }
    // Eigen's dot conjugates its left operand.
    return bra.amplitudes().dot(ket.amplitudes());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const int na = a.dimension();
    const int nb = b.dimension();
    CVector amps(na * nb);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            amps(i * nb + j) = a.amplitudes()(i) * b.amplitudes()(j);
        }
    }
    return StateVector(Basis::tensor(a.basis(), b.basis()), std::move(amps));
}

OperatorMatrix tensor_op(const OperatorMatrix& a, const OperatorMatrix& b) {
    const int ra = a.codomain().dimension();
    const int ca = a.domain().dimension();
    const int rb = b.codomain().dimension();
    const int cb = b.domain().dimension();
    CMatrix m(ra * rb, ca * cb);
    for (int i = 0; i < ra; ++i) {
        for (int j = 0; j < ca; ++j) {
            m.block(i * rb, j * cb, rb, cb) = a.matrix()(i, j) * b.matrix();
        }
    }
    return OperatorMatrix(Basis::tensor(a.domain(), b.domain()),
                          Basis::tensor(a.codomain(), b.codomain()), std::move(m));
}

StateVector apply(const OperatorMatrix& op, const StateVector& s) {
    if (op.domain() != s.basis()) {
        throw_mismatch("operator domain does not match state basis", op.domain(), s.basis());
    }
    return StateVector(op.codomain(), op.matrix() * s.amplitudes());
}

OperatorMatrix projector_onto(const StateVector& s) {
    const double n = s.norm();
    if (n < kOrthogonalEps) {
        throw ZeroVector("cannot project onto a zero vector");
    }
    CVector unit = s.amplitudes() / n;
    return OperatorMatrix(s.basis(), unit * unit.adjoint());
}

bool is_unitary(const OperatorMatrix& u, double tol) {
    const int n = u.dimension();
    CMatrix residual = u.matrix().adjoint() * u.matrix() - CMatrix::Identity(n, n);
    return residual.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const OperatorMatrix& o, double tol) {
    if (!o.is_endomorphism()) {
        return false;
    }
    CMatrix residual = o.matrix() - o.matrix().adjoint();
    return residual.cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix adjoint(const OperatorMatrix& op) {
    return OperatorMatrix(op.codomain(), op.domain(), op.matrix().adjoint());
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.domain() != b.codomain()) {
        throw_mismatch("composition needs matching inner bases", a.domain(), b.codomain());
    }
    return OperatorMatrix(b.domain(), a.codomain(), a.matrix() * b.matrix());
}

StateVector normalize(const StateVector& s) {
    const double n = s.norm();
    if (n < kOrthogonalEps) {
        throw ZeroVector("cannot normalize a zero vector");
    }
    return StateVector(s.basis(), s.amplitudes() / n);
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.domain() != b.domain() || a.codomain() != b.codomain()) {
        throw_mismatch("operator sum needs matching bases", a.domain(), b.domain());
    }
    return OperatorMatrix(a.domain(), a.codomain(), a.matrix() + b.matrix());
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a + (Complex(-1.0, 0.0) * b);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    return compose(a, b);
}

OperatorMatrix operator*(Complex scalar, const OperatorMatrix& op) {
    return OperatorMatrix(op.domain(), op.codomain(), scalar * op.matrix());
}

StateVector operator*(const OperatorMatrix& op, const StateVector& s) {
    return apply(op, s);
}

StateVector operator+(const StateVector& a, const StateVector& b) {
    if (a.basis() != b.basis()) {
        throw_mismatch("state sum needs a shared basis", a.basis(), b.basis());
    }
    return StateVector(a.basis(), a.amplitudes() + b.amplitudes());
}

StateVector operator-(const StateVector& a, const StateVector& b) {
    return a + (Complex(-1.0, 0.0) * b);
}

StateVector operator*(Complex scalar, const StateVector& s) {
    return StateVector(s.basis(), scalar * s.amplitudes());
}

} // namespace weakval
