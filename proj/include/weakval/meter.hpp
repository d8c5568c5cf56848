#pragma once

#include <vector>

#include "weakval/measure.hpp"

namespace weakval {

/// Gaussian pointer parameters for the impulsive von Neumann coupling: the
/// interaction displaces the pointer by g per unit eigenvalue, and the
/// pointer starts in a real Gaussian amplitude of width sigma.
class PointerModel {
public:
    PointerModel(double g, double sigma);

    double g() const { return g_; }
    double sigma() const { return sigma_; }

private:
    double g_;
    double sigma_;
};

/// One post-selected pointer branch: a Gaussian centered at g·eigenvalue
/// carrying the transition amplitude ⟨f|U·P_k|in⟩.
struct MeterComponent {
    double eigenvalue;
    double center;
    Complex amplitude;
};

/// Analytic readout of the post-selected pointer wavefunction
/// φ(x) = Σ_k c_k·G(x − g·o_k).
struct MeterOutcome {
    double post_selection_probability;
    double pointer_mean;
    double pointer_variance;
    std::vector<MeterComponent> components;
};

/// Evaluates ∫|φ|², ∫x|φ|²/∫|φ|² and the variance in closed form via the
/// Gaussian overlaps ⟨G_a|G_b⟩ = exp(−(a−b)²/8σ²) and
/// ⟨G_a|x|G_b⟩ = ((a+b)/2)·⟨G_a|G_b⟩. Throws NoConsistentHistory when the
/// post-selection never succeeds.
MeterOutcome simulate_pointer(const SpectralData& spec, const PrePost& pp,
                              const PointerModel& model);

/// pointer_mean / g — converges to Re(weak value) as g/σ → 0.
double weak_shift_ratio(const SpectralData& spec, const PrePost& pp,
                        const PointerModel& model);

} // namespace weakval
