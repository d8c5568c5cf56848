#pragma once

#include <vector>

#include "weakval/hilbert.hpp"

namespace weakval {

/// Spectral decomposition of a Hermitian observable: distinct real
/// eigenvalues paired with mutually orthogonal projectors that sum to the
/// identity. Construction validates all of that at kDefaultTol.
class SpectralData {
public:
    struct Pair {
        double eigenvalue;
        OperatorMatrix projector;
    };

    explicit SpectralData(std::vector<Pair> pairs);

    /// {1: P, 0: I−P} for a projector P (number-operator observable).
    static SpectralData from_projector(const OperatorMatrix& p);

    const std::vector<Pair>& pairs() const { return pairs_; }
    const Basis& basis() const { return pairs_.front().projector.basis(); }
    int size() const { return static_cast<int>(pairs_.size()); }

private:
    std::vector<Pair> pairs_;
};

/// A pre-selected state, a post-selected state, and the unitary evolution
/// between the intermediate measurement time and the post-selection
/// (identity when omitted). The pre state and any intermediate observable
/// live on the evolution's domain basis; the post state on its codomain.
class PrePost {
public:
    PrePost(StateVector pre, StateVector post);
    PrePost(StateVector pre, StateVector post, OperatorMatrix evolution);

    const StateVector& pre() const { return pre_; }
    const StateVector& post() const { return post_; }
    const OperatorMatrix& evolution() const { return evolution_; }

private:
    void validate() const;

    StateVector pre_;
    StateVector post_;
    OperatorMatrix evolution_;
};

/// Conditional (or unconditional Born) probabilities per eigenvalue.
struct ABLDistribution {
    struct Entry {
        double eigenvalue;
        double probability;

        bool operator==(const Entry&) const = default;
    };

    std::vector<Entry> entries;

    /// Probability attached to the given eigenvalue (0 if absent).
    double probability_of(double eigenvalue, double tol = kDefaultTol) const;

    bool operator==(const ABLDistribution&) const = default;
};

/// ⟨f|U·O|in⟩ / ⟨f|U|in⟩ with unit-normalized pre/post. Throws
/// PostSelectionOrthogonal when |⟨f|U|in⟩| < kOrthogonalEps.
Complex weak_value(const OperatorMatrix& observable, const PrePost& pp);

/// Born rule: probability of eigenvalue o_k is ⟨s|P_k|s⟩/⟨s|s⟩.
ABLDistribution born_probabilities(const SpectralData& spec, const StateVector& s);

/// ⟨s|O|s⟩/⟨s|s⟩ for Hermitian O; the (tiny) imaginary residue is dropped.
double mean_value(const OperatorMatrix& observable, const StateVector& s);

/// Conditional probability of each eigenvalue for a strong intermediate
/// measurement between pre- and post-selection:
///   prob(o_i) = |⟨f|U·P_i|in⟩|² / Σ_j |⟨f|U·P_j|in⟩|².
/// Throws NoConsistentHistory when the denominator vanishes.
ABLDistribution abl_probability(const SpectralData& spec, const PrePost& pp);

/// Conditional probability of outcome 1 for a projector observable from the
/// weak values of the projector and of its complement:
///   |aw|² / (|aw|² + |complement_aw|²).
double abl_from_weak(Complex aw, Complex complement_aw);

/// The two real weak values consistent with a projector's conditional
/// probability p: √p/(√p ± √(1−p)). The minus root diverges at p = 1/2 and
/// is flagged invalid (NaN) there.
struct AblInversion {
    double plus_root;
    double minus_root;
    bool minus_root_valid;
};
AblInversion weak_from_abl(double p);

/// Spectral decomposition of a Hermitian operator (dimension ≤ 16).
/// Eigenvalues closer than 1e-8 are merged into one eigenspace projector;
/// pairs come back in descending eigenvalue order.
SpectralData eigendecompose_hermitian(const OperatorMatrix& observable);

} // namespace weakval
