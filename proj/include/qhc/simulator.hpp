#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "qhc/errors.hpp"

namespace qhc::sim {

using cd = std::complex<double>;

inline constexpr int kMaxQubits = 10;

// Full statevector of an n-qubit register, little-endian: qubit 0 is the
// least-significant bit of the basis index.
struct StateVector {
    int n_qubits = 0;
    std::vector<cd> amps;

    std::size_t dim() const { return amps.size(); }
    double norm() const;
};

enum class GateKind { RY, RZ, H, X, U3, U2, CNOT };

// One gate application. Single-qubit kinds use q0; CNOT uses q0 as control
// and q1 as target. Angles are radians.
struct Gate {
    GateKind kind;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    int q0 = 0, q1 = -1;

    static Gate ry(int q, double theta) { return {GateKind::RY, theta, 0, 0, q}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, theta, 0, 0, q}; }
    static Gate h(int q) { return {GateKind::H, 0, 0, 0, q}; }
    static Gate x(int q) { return {GateKind::X, 0, 0, 0, q}; }
    static Gate u3(int q, double theta, double phi, double lambda) {
        return {GateKind::U3, theta, phi, lambda, q};
    }
    // U2(phi, lambda) == U3(pi/2, phi, lambda)
    static Gate u2(int q, double phi, double lambda);
    static Gate cnot(int control, int target);

    bool is_cnot() const { return kind == GateKind::CNOT; }

    // 2x2 unitary, row-major, for the single-qubit kinds.
    // U3(theta,phi,lambda) = [[cos(t/2), -e^{i l} sin(t/2)],
    //                         [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]]
    std::array<cd, 4> matrix() const;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    void add(const Gate& g) { gates.push_back(g); }
};

StateVector zero_state(int n_qubits);

// In-place application; norm is preserved (gates are unitary).
void apply_gate(StateVector& state, const Gate& gate);

void run_circuit(const Circuit& circuit, StateVector& state);

// Convenience: run from |0...0>.
StateVector run_from_zero(const Circuit& circuit);

// P(qubit = 1): sum of |amp|^2 over basis indices with the qubit's bit set.
double prob_qubit_one(const StateVector& state, int qubit);

// <a|b> = sum_k conj(a_k) * b_k
cd inner_product(const StateVector& a, const StateVector& b);

} // namespace qhc::sim
