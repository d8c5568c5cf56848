#pragma once

#include <vector>

#include "weakval/meter.hpp"
#include "weakval/report.hpp"

namespace weakval {

/// Parameters of the general two-port beam splitter
///   |arm0⟩ → q|port0⟩ + i·r·e^{iβ}|port1⟩
///   |arm1⟩ → i·r·e^{−iβ}|port0⟩ + q|port1⟩
/// with q² + r² = 1. Arm slot 0 is the interacting/I-style arm and slot 1
/// the free/N-style arm; port slot 0 is the bright port, slot 1 the dark
/// port. The constructor enforces the unitarity constraint at kDefaultTol.
struct BeamSplitter {
    BeamSplitter(double q, double r, double beta);

    /// Derives r = √(1−q²) ≥ 0; requires q ∈ [0, 1].
    static BeamSplitter from_q(double q, double beta);

    double q;
    double r;
    double beta;
};

/// The beam-splitter unitary from a 2-dim arm basis to a 2-dim port basis,
/// following the slot convention documented on BeamSplitter.
OperatorMatrix beam_splitter_matrix(const BeamSplitter& bs, const Basis& arms,
                                    const Basis& ports);

/// Pre/post pair of the three-box scenario: (|A⟩+|B⟩+|C⟩)/√3 into
/// (|A⟩+|B⟩−|C⟩)/√3 with identity evolution.
PrePost three_box_prepost();

/// Occupation projector of box "A", "B" or "C".
OperatorMatrix three_box_projector(std::string_view box);

/// Three boxes, pre-selection (|A⟩+|B⟩+|C⟩)/√3, post-selection
/// (|A⟩+|B⟩−|C⟩)/√3; weak values and ABL distributions of the three box
/// occupation projectors. `tol` only affects the self-check notes.
ScenarioReport three_box(double tol = kDefaultTol);

/// Two-particle state between the beam-splitter layers of the double
/// interferometer: 50-50 splitters feed each particle into (|N⟩+i|I⟩)/√2,
/// and the joint I⊗I component is annihilated (removed and renormalized).
StateVector hardy_intermediate_state();

/// Pre/post pair of the coincidence scenario: the intermediate state into
/// |Dp⟩⊗|De⟩ through the tensor product of the two second splitters.
PrePost hardy_prepost();

/// Pair occupation projector, e.g. ("Np", "Ie") for the positron in its
/// free arm and the electron in its interacting arm.
OperatorMatrix hardy_pair_projector(std::string_view p_arm, std::string_view e_arm);

/// Double-interferometer coincidence scenario: post-selects both dark
/// ports after 50-50 second splitters and reports the four pair-occupation
/// weak values, their ABL distributions, and the evolved port amplitudes.
ScenarioReport hardy(double tol = kDefaultTol);

/// Single interferometer with a 50-50 first splitter and a general second
/// splitter; weak values and ABL distributions of the arm occupations for
/// both port post-selections. A dark port yields an error marker for its
/// weak values, not a failure.
ScenarioReport mzi(const BeamSplitter& bs, double tol = kDefaultTol);

/// One mzi() report per (q, beta) pair, q-major, in input order.
/// Each q must lie in (0, 1); r is derived.
std::vector<ScenarioReport> mzi_sweep(const std::vector<double>& q_values,
                                      const std::vector<double>& beta_values,
                                      double tol = kDefaultTol);

} // namespace weakval
