#include "weakval/meter.hpp"

#include <cmath>
#include <stdexcept>

namespace weakval {

PointerModel::PointerModel(double g, double sigma) : g_(g), sigma_(sigma) {
    if (!(std::isfinite(g) && g > 0.0)) {
        throw std::invalid_argument("coupling strength g must be positive and finite");
    }
    if (!(std::isfinite(sigma) && sigma > 0.0)) {
        throw std::invalid_argument("pointer width sigma must be positive and finite");
    }
}

MeterOutcome simulate_pointer(const SpectralData& spec, const PrePost& pp,
                              const PointerModel& model) {
    const StateVector in = normalize(pp.pre());
    const StateVector fin = normalize(pp.post());
    const double sigma2 = model.sigma() * model.sigma();

    MeterOutcome outcome;
    outcome.components.reserve(spec.pairs().size());
    for (const auto& pair : spec.pairs()) {
        const Complex c = inner(fin, apply(pp.evolution(), apply(pair.projector, in)));
        outcome.components.push_back({pair.eigenvalue, model.g() * pair.eigenvalue, c});
    }

    // Gram sums over Gaussian branches. The (k,l) and (l,k) terms are
    // conjugate, so everything is assembled from real parts directly.
    double total = 0.0;       // ∫|φ|²
    double first = 0.0;       // ∫x|φ|²
    double second = 0.0;      // ∫x²|φ|²
    const int n = static_cast<int>(outcome.components.size());
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            const auto& ck = outcome.components[k];
            const auto& cl = outcome.components[l];
            const double gap = ck.center - cl.center;
            const double overlap = std::exp(-gap * gap / (8.0 * sigma2));
            const double mid = 0.5 * (ck.center + cl.center);
            double w = (std::conj(ck.amplitude) * cl.amplitude).real() * overlap;
            if (l != k) {
                w *= 2.0;
            }
            total += w;
            first += w * mid;
            second += w * (sigma2 + mid * mid);
        }
    }

    if (total < kOrthogonalEps * kOrthogonalEps) {
        throw NoConsistentHistory("post-selection never succeeds for this meter setup");
    }
    outcome.post_selection_probability = total;
    outcome.pointer_mean = first / total;
    outcome.pointer_variance =
        std::max(second / total - outcome.pointer_mean * outcome.pointer_mean, 0.0);
    return outcome;
}

double weak_shift_ratio(const SpectralData& spec, const PrePost& pp,
                        const PointerModel& model) {
    return simulate_pointer(spec, pp, model).pointer_mean / model.g();
}

} // namespace weakval
