// Verifier for energy-preserving sequences (each vector orthogonal to the
// sum of all later ones) and empirical probes that classify decomposition
// systems by linearity and shift invariance. Probes treat the system as a
// black box mapping a signal to an ordered component list, so anything with
// that signature can be tested, not just the in-repo decompositions.
//
// Shift invariance is probed with circular shifts, matching the circular
// DFT-domain filtering used throughout this library.
#pragma once

#include <functional>
#include <string>

#include "fmdkit/signal.hpp"

namespace fmd {

enum class SequenceClass {
    orthogonal,
    linoep,                        // linearly independent, non-orthogonal, energy preserving
    dependent_energy_preserving,
    not_energy_preserving,
};

const char* to_string(SequenceClass c);

struct SequenceVerdict {
    bool is_energy_preserving = false;
    // |<x_k, sum_{l>k} x_l>| / (|x_k| |sum_{l>k} x_l|) for k = 1..n-1
    std::vector<double> per_index_residuals;
    SequenceClass classification = SequenceClass::not_energy_preserving;
    // | |sum x_k|^2 - sum |x_k|^2 | / |sum x_k|^2
    double energy_identity_gap = 0.0;
};

SequenceVerdict verify_sequence(const std::vector<Signal>& xs,
                                double eps = default_orthogonality_eps);

enum class ProbeProperty { additivity, homogeneity, time_invariance };

const char* to_string(ProbeProperty p);

using DecompositionSystem = std::function<std::vector<Signal>(const Signal&)>;

struct ProbeReport {
    ProbeProperty property = ProbeProperty::additivity;
    std::string system_name;
    double max_violation = 0.0;  // normalized; 1.0 flags a component-count mismatch
    std::string witness;
    double tolerance = 0.0;
    bool passed = false;
};

// max_i |S(x1+x2)_i - S(x1)_i - S(x2)_i| / |x1+x2|
ProbeReport probe_additivity(const DecompositionSystem& system, const std::string& system_name,
                             const Signal& x1, const Signal& x2, double tol = 1e-9);

// max_i |S(a x)_i - a S(x)_i| / (|a| |x|)
ProbeReport probe_homogeneity(const DecompositionSystem& system, const std::string& system_name,
                              const Signal& x, double scale, double tol = 1e-9);

// max_i |S(shift_tau x)_i - shift_tau S(x)_i| / |x|, circular shift, 1D only.
ProbeReport probe_time_invariance(const DecompositionSystem& system, const std::string& system_name,
                                  const Signal& x, long tau, double tol = 1e-9);

}  // namespace fmd
