#include "weakval/measure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace weakval {

namespace {

// Eigenvalues closer than this are treated as one degenerate eigenspace.
constexpr double kEigenvalueMergeGap = 1e-8;

double max_abs(const CMatrix& m) {
    return m.cwiseAbs().maxCoeff();
}

} // namespace

SpectralData::SpectralData(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) {
        throw std::invalid_argument("spectral data needs at least one pair");
    }
    const Basis& b = pairs_.front().projector.basis();
    const int n = b.dimension();
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto& pair : pairs_) {
        const OperatorMatrix& p = pair.projector;
        if (p.basis() != b) {
            throw BasisMismatch("spectral projectors must share one basis");
        }
        if (!is_hermitian(p, kDefaultTol)) {
            throw std::invalid_argument("spectral projector is not Hermitian");
        }
        if (max_abs(p.matrix() * p.matrix() - p.matrix()) > kDefaultTol) {
            throw std::invalid_argument("spectral projector is not idempotent");
        }
        if (!std::isfinite(pair.eigenvalue)) {
            throw std::invalid_argument("eigenvalue must be finite");
        }
        sum += p.matrix();
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
            if (std::abs(pairs_[i].eigenvalue - pairs_[j].eigenvalue) <= kOrthogonalEps) {
                throw std::invalid_argument("eigenvalues must be distinct");
            }
            if (max_abs(pairs_[i].projector.matrix() * pairs_[j].projector.matrix()) > kDefaultTol) {
                throw std::invalid_argument("spectral projectors must be mutually orthogonal");
            }
        }
    }
    if (max_abs(sum - CMatrix::Identity(n, n)) > kDefaultTol) {
        throw std::invalid_argument("spectral projectors must sum to the identity");
    }
}

SpectralData SpectralData::from_projector(const OperatorMatrix& p) {
    OperatorMatrix complement = OperatorMatrix::identity(p.basis()) - p;
    return SpectralData({{1.0, p}, {0.0, std::move(complement)}});
}

PrePost::PrePost(StateVector pre, StateVector post)
    : pre_(std::move(pre)),
      post_(std::move(post)),
      evolution_(OperatorMatrix::identity(pre_.basis())) {
    validate();
}

PrePost::PrePost(StateVector pre, StateVector post, OperatorMatrix evolution)
    : pre_(std::move(pre)), post_(std::move(post)), evolution_(std::move(evolution)) {
    validate();
}

void PrePost::validate() const {
    if (pre_.basis() != evolution_.domain()) {
        throw BasisMismatch("pre-selected state must live on the evolution's domain");
    }
    if (post_.basis() != evolution_.codomain()) {
        throw BasisMismatch("post-selected state must live on the evolution's codomain");
    }
    if (!is_unitary(evolution_, kDefaultTol)) {
        throw NotUnitary("evolution is not unitary within 1e-10");
    }
    if (pre_.norm() < kOrthogonalEps) {
        throw ZeroVector("pre-selected state has zero norm");
    }
    if (post_.norm() < kOrthogonalEps) {
        throw ZeroVector("post-selected state has zero norm");
    }
}

double ABLDistribution::probability_of(double eigenvalue, double tol) const {
    for (const auto& entry : entries) {
        if (std::abs(entry.eigenvalue - eigenvalue) <= tol) {
            return entry.probability;
        }
    }
    return 0.0;
}

Complex weak_value(const OperatorMatrix& observable, const PrePost& pp) {
    const StateVector in = normalize(pp.pre());
    const StateVector fin = normalize(pp.post());
    const Complex overlap = inner(fin, apply(pp.evolution(), in));
    if (std::abs(overlap) < kOrthogonalEps) {
        throw PostSelectionOrthogonal("post-selection is orthogonal to the evolved pre-selection");
    }
    const Complex numerator = inner(fin, apply(pp.evolution(), apply(observable, in)));
    return numerator / overlap;
}

ABLDistribution born_probabilities(const SpectralData& spec, const StateVector& s) {
    const StateVector unit = normalize(s); // throws ZeroVector
    ABLDistribution dist;
    dist.entries.reserve(spec.pairs().size());
    for (const auto& pair : spec.pairs()) {
        double p = inner(unit, apply(pair.projector, unit)).real();
        dist.entries.push_back({pair.eigenvalue, std::max(p, 0.0)});
    }
    return dist;
}

double mean_value(const OperatorMatrix& observable, const StateVector& s) {
    if (!is_hermitian(observable, kDefaultTol)) {
        throw NotHermitian("mean value needs a Hermitian observable");
    }
    const StateVector unit = normalize(s);
    return inner(unit, apply(observable, unit)).real();
}

ABLDistribution abl_probability(const SpectralData& spec, const PrePost& pp) {
    const StateVector in = normalize(pp.pre());
    const StateVector fin = normalize(pp.post());
    ABLDistribution dist;
    dist.entries.reserve(spec.pairs().size());
    double denominator = 0.0;
    for (const auto& pair : spec.pairs()) {
        const Complex c = inner(fin, apply(pp.evolution(), apply(pair.projector, in)));
        const double w = std::norm(c);
        dist.entries.push_back({pair.eigenvalue, w});
        denominator += w;
    }
    if (denominator < kOrthogonalEps * kOrthogonalEps) {
        throw NoConsistentHistory("no intermediate outcome connects the pre/post pair");
    }
    for (auto& entry : dist.entries) {
        entry.probability /= denominator;
    }
    return dist;
}

double abl_from_weak(Complex aw, Complex complement_aw) {
    const double a2 = std::norm(aw);
    const double b2 = std::norm(complement_aw);
    if (std::abs(aw) < kOrthogonalEps && std::abs(complement_aw) < kOrthogonalEps) {
        throw DegenerateInput("both weak values vanish; the conditional probability is undefined");
    }
    return a2 / (a2 + b2);
}

AblInversion weak_from_abl(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability must lie in [0, 1]");
    }
    const double sp = std::sqrt(p);
    const double sm = std::sqrt(1.0 - p);
    AblInversion roots;
    roots.plus_root = sp / (sp + sm);
    const double minus_den = sp - sm;
    roots.minus_root_valid = std::abs(minus_den) > kOrthogonalEps;
    roots.minus_root = roots.minus_root_valid ? sp / minus_den
                                              : std::numeric_limits<double>::quiet_NaN();
    return roots;
}

SpectralData eigendecompose_hermitian(const OperatorMatrix& observable) {
    if (!is_hermitian(observable, kDefaultTol)) {
        throw NotHermitian("eigendecomposition needs a Hermitian operator");
    }
    const int n = observable.dimension();
    if (n > 16) {
        throw std::invalid_argument("eigendecomposition is limited to dimension 16");
    }
    // Work on the exactly Hermitian part so the solver sees a clean input.
    CMatrix h = 0.5 * (observable.matrix() + observable.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed to converge");
    }
    const auto& values = solver.eigenvalues();   // ascending
    const auto& vectors = solver.eigenvectors();

    std::vector<SpectralData::Pair> pairs;
    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && values(stop) - values(stop - 1) < kEigenvalueMergeGap) {
            ++stop;
        }
        double eigenvalue = 0.0;
        CMatrix projector = CMatrix::Zero(n, n);
        for (int k = start; k < stop; ++k) {
            eigenvalue += values(k);
            projector += vectors.col(k) * vectors.col(k).adjoint();
        }
        eigenvalue /= static_cast<double>(stop - start);
        pairs.push_back({eigenvalue, OperatorMatrix(observable.basis(), std::move(projector))});
        start = stop;
    }
    std::reverse(pairs.begin(), pairs.end()); // descending eigenvalues
    return SpectralData(std::move(pairs));
}

} // namespace weakval
