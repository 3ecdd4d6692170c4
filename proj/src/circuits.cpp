#include "qhc/circuits.hpp"

#include <cmath>
#include <string>

namespace qhc::circuits {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

FeatureMapSpec FeatureMapSpec::amplitude(int n_qubits, int dim) {
    if (n_qubits < 1 || n_qubits > sim::kMaxQubits)
        throw ConfigError("amplitude map: unsupported qubit count " + std::to_string(n_qubits));
    const int full = 1 << n_qubits;
    if (dim < 0) dim = full;
    if (dim < 1 || dim > full)
        throw ConfigError("amplitude map: expected_dim must be in [1, 2^n_qubits]");
    return {FeatureMapKind::AmplitudeEncoding, n_qubits, 1, dim};
}

FeatureMapSpec FeatureMapSpec::u2_reuploading() {
    return {FeatureMapKind::U2Reuploading, 8, 1, 16};
}

FeatureMapSpec FeatureMapSpec::pauli_zz(int reps) {
    if (reps < 1) throw ConfigError("pauli_zz map: reps must be >= 1");
    return {FeatureMapKind::PauliZZ, 4, reps, 4};
}

sim::StateVector amplitude_encode(const std::vector<double>& x, int n_qubits) {
    if (n_qubits < 1 || n_qubits > sim::kMaxQubits)
        throw ConfigError("amplitude_encode: n_qubits out of range");
    const std::size_t full = std::size_t{1} << n_qubits;
    if (x.empty() || x.size() > full)
        throw UsageError("amplitude_encode: feature count " + std::to_string(x.size()) +
                         " does not fit " + std::to_string(n_qubits) + " qubits");
    double sq = 0.0;
    for (double v : x) sq += v * v;
    const double norm = std::sqrt(sq);
    if (!(norm > 1e-12))
        throw DataError("amplitude_encode: input vector has (near-)zero norm");

    sim::StateVector s;
    s.n_qubits = n_qubits;
    s.amps.assign(full, sim::cd(0.0, 0.0));
    for (std::size_t k = 0; k < x.size(); ++k) s.amps[k] = sim::cd(x[k] / norm, 0.0);
    return s;
}

sim::Circuit u2_reuploading_map(const std::vector<double>& x) {
    if (x.size() != 16)
        throw UsageError("u2_reuploading_map: expected 16 features, got " +
                         std::to_string(x.size()));
    sim::Circuit c;
    c.n_qubits = 8;
    for (int r = 0; r < 2; ++r) {
        for (int q = 0; q < 8; ++q) {
            const int ip = (2 * q + 8 * r) % 16;
            const int il = (2 * q + 1 + 8 * r) % 16;
            c.add(sim::Gate::u2(q, kTwoPi * x[ip], kTwoPi * x[il]));
        }
        for (int q = 0; q < 7; ++q) c.add(sim::Gate::cnot(q, q + 1));
    }
    return c;
}

sim::Circuit pauli_zz_feature_map(const std::vector<double>& x, int reps) {
    if (x.size() != 4)
        throw UsageError("pauli_zz_feature_map: expected 4 features, got " +
                         std::to_string(x.size()));
    if (reps < 1) throw UsageError("pauli_zz_feature_map: reps must be >= 1");
    sim::Circuit c;
    c.n_qubits = 4;
    for (int r = 0; r < reps; ++r) {
        for (int q = 0; q < 4; ++q) c.add(sim::Gate::h(q));
        for (int q = 0; q < 4; ++q) c.add(sim::Gate::rz(q, kTwoPi * x[q]));
        for (int q = 0; q < 3; ++q) {
            const double angle = 2.0 * (M_PI - M_PI * x[q]) * (M_PI - M_PI * x[q + 1]);
            c.add(sim::Gate::cnot(q, q + 1));
            c.add(sim::Gate::rz(q + 1, angle));
            c.add(sim::Gate::cnot(q, q + 1));
        }
    }
    return c;
}

sim::Circuit variational_form(const std::vector<double>& theta, int n_qubits,
                              int rotation_layers) {
    if (n_qubits < 1 || rotation_layers < 1)
        throw UsageError("variational_form: invalid layout");
    if (theta.size() != static_cast<std::size_t>(n_qubits) * rotation_layers)
        throw UsageError("variational_form: expected " +
                         std::to_string(n_qubits * rotation_layers) + " parameters, got " +
                         std::to_string(theta.size()));
    sim::Circuit c;
    c.n_qubits = n_qubits;
    for (int l = 0; l < rotation_layers; ++l) {
        if (l > 0)
            for (int q = 0; q < n_qubits - 1; ++q) c.add(sim::Gate::cnot(q, q + 1));
        for (int q = 0; q < n_qubits; ++q)
            c.add(sim::Gate::ry(q, theta[static_cast<std::size_t>(l) * n_qubits + q]));
    }
    return c;
}

sim::StateVector encode_state(const FeatureMapSpec& spec, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != spec.expected_dim)
        throw UsageError("encode_state: map expects " + std::to_string(spec.expected_dim) +
                         " features, got " + std::to_string(x.size()));
    switch (spec.kind) {
        case FeatureMapKind::AmplitudeEncoding:
            return amplitude_encode(x, spec.n_qubits);
        case FeatureMapKind::U2Reuploading:
            return sim::run_from_zero(u2_reuploading_map(x));
        case FeatureMapKind::PauliZZ:
            return sim::run_from_zero(pauli_zz_feature_map(x, spec.reps));
    }
    throw UsageError("encode_state: unknown feature map kind");
}

} // namespace qhc::circuits
