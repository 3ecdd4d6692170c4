#pragma once

#include <vector>

#include "qhc/simulator.hpp"

namespace qhc::circuits {

enum class FeatureMapKind { AmplitudeEncoding, U2Reuploading, PauliZZ };

// Descriptor for a data-encoding circuit. expected_dim is the number of
// features consumed per encode: 2^n_qubits for amplitude encoding (at most),
// 16 for the 8-qubit re-uploading map, 4 for the 4-qubit Pauli-ZZ map.
struct FeatureMapSpec {
    FeatureMapKind kind = FeatureMapKind::AmplitudeEncoding;
    int n_qubits = 4;
    int reps = 2; // PauliZZ only
    int expected_dim = 16;

    static FeatureMapSpec amplitude(int n_qubits, int dim = -1);
    static FeatureMapSpec u2_reuploading();
    static FeatureMapSpec pauli_zz(int reps = 2);
};

struct VariationalFormSpec {
    int n_qubits = 4;
    int rotation_layers = 2;

    int params_per_instance() const { return n_qubits * rotation_layers; }
};

// L2-normalizes x, zero-pads to 2^n_qubits and assigns as amplitudes.
sim::StateVector amplitude_encode(const std::vector<double>& x, int n_qubits);

// 8-qubit map over 16 features in [0,1]. Two blocks; block r gives qubit q a
// U2(2*pi*x[(2q+8r) mod 16], 2*pi*x[(2q+1+8r) mod 16]) followed by a linear
// CNOT cascade. Every feature is uploaded exactly twice.
sim::Circuit u2_reuploading_map(const std::vector<double>& x);

// 4-qubit map over 4 features in [0,1]. Per repetition: H on every qubit,
// RZ(2*pi*x[q]) on qubit q, then CNOT-conjugated pairwise RZ with angle
// 2*(pi - pi*x[q])*(pi - pi*x[q+1]) on each adjacent pair.
sim::Circuit pauli_zz_feature_map(const std::vector<double>& x, int reps);

// RY rotation layers alternating with linear CNOT cascades. theta holds
// n_qubits angles per layer; entanglers sit between consecutive layers.
sim::Circuit variational_form(const std::vector<double>& theta, int n_qubits,
                              int rotation_layers = 2);

// Encoded state for any map kind, from |0...0> where a circuit is involved.
sim::StateVector encode_state(const FeatureMapSpec& spec, const std::vector<double>& x);

} // namespace qhc::circuits
