#include "qhc/simulator.hpp"

#include <cmath>
#include <string>

namespace qhc::sim {

double StateVector::norm() const {
    double s = 0.0;
    for (const cd& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

Gate Gate::u2(int q, double phi, double lambda) {
    return {GateKind::U2, phi, lambda, 0, q};
}

Gate Gate::cnot(int control, int target) {
    if (control == target)
        throw UsageError("cnot: control and target must differ");
    return {GateKind::CNOT, 0, 0, 0, control, target};
}

namespace {

std::array<cd, 4> u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cd i(0.0, 1.0);
    return {cd(c, 0.0), -std::exp(i * lambda) * s,
            std::exp(i * phi) * s, std::exp(i * (phi + lambda)) * c};
}

} // namespace

std::array<cd, 4> Gate::matrix() const {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    switch (kind) {
        case GateKind::RY: {
            const double c = std::cos(p0 / 2.0), s = std::sin(p0 / 2.0);
            return {cd(c, 0), cd(-s, 0), cd(s, 0), cd(c, 0)};
        }
        case GateKind::RZ: {
            const cd i(0.0, 1.0);
            return {std::exp(-i * (p0 / 2.0)), cd(0, 0), cd(0, 0), std::exp(i * (p0 / 2.0))};
        }
        case GateKind::H:
            return {cd(inv_sqrt2, 0), cd(inv_sqrt2, 0), cd(inv_sqrt2, 0), cd(-inv_sqrt2, 0)};
        case GateKind::X:
            return {cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0)};
        case GateKind::U3:
            return u3_matrix(p0, p1, p2);
        case GateKind::U2:
            return u3_matrix(M_PI / 2.0, p0, p1);
        case GateKind::CNOT:
            break;
    }
    throw UsageError("matrix(): not a single-qubit gate");
}

StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw ConfigError("zero_state: n_qubits must be in [1, " +
                          std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
    StateVector s;
    s.n_qubits = n_qubits;
    s.amps.assign(std::size_t{1} << n_qubits, cd(0.0, 0.0));
    s.amps[0] = cd(1.0, 0.0);
    return s;
}

namespace {

void check_target(const StateVector& state, int q, const char* what) {
    if (q < 0 || q >= state.n_qubits)
        throw UsageError(std::string(what) + ": qubit index " + std::to_string(q) +
                         " out of range for " + std::to_string(state.n_qubits) + " qubits");
}

void apply_single(StateVector& state, int q, const std::array<cd, 4>& u) {
    const std::size_t n = state.dim();
    const std::size_t mask = std::size_t{1} << q;
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & mask) == 0) {
            const cd a = state.amps[i];
            const cd b = state.amps[i | mask];
            state.amps[i] = u[0] * a + u[1] * b;
            state.amps[i | mask] = u[2] * a + u[3] * b;
        }
    }
}

void apply_cnot(StateVector& state, int control, int target) {
    const std::size_t n = state.dim();
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0)
            std::swap(state.amps[i], state.amps[i | tmask]);
    }
}

} // namespace

void apply_gate(StateVector& state, const Gate& gate) {
    if (gate.kind == GateKind::CNOT) {
        check_target(state, gate.q0, "apply_gate");
        check_target(state, gate.q1, "apply_gate");
        apply_cnot(state, gate.q0, gate.q1);
    } else {
        check_target(state, gate.q0, "apply_gate");
        apply_single(state, gate.q0, gate.matrix());
    }
}

void run_circuit(const Circuit& circuit, StateVector& state) {
    if (circuit.n_qubits != state.n_qubits)
        throw UsageError("run_circuit: circuit has " + std::to_string(circuit.n_qubits) +
                         " qubits but state has " + std::to_string(state.n_qubits));
    for (const Gate& g : circuit.gates) apply_gate(state, g);
}

StateVector run_from_zero(const Circuit& circuit) {
    StateVector s = zero_state(circuit.n_qubits);
    run_circuit(circuit, s);
    return s;
}

double prob_qubit_one(const StateVector& state, int qubit) {
    check_target(state, qubit, "prob_qubit_one");
    const std::size_t mask = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if (i & mask) p += std::norm(state.amps[i]);
    return p;
}

cd inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits)
        throw UsageError("inner_product: qubit counts differ");
    cd acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

} // namespace qhc::sim
