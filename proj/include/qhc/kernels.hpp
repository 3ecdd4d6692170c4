#pragma once

#include <Eigen/Core>
#include <vector>

#include "qhc/circuits.hpp"

namespace qhc::kernels {

enum class KernelKind { QuantumFidelity, RBF, Linear };

struct KernelSpec {
    KernelKind kind = KernelKind::QuantumFidelity;
    double gamma = 0.0; // RBF only; <= 0 means "use 1/d at evaluation time"
    circuits::FeatureMapSpec map; // QuantumFidelity only

    static KernelSpec quantum_fidelity(const circuits::FeatureMapSpec& map);
    static KernelSpec rbf(double gamma = 0.0);
    static KernelSpec linear();

    double effective_gamma(int d) const;
};

using KernelMatrix = Eigen::MatrixXd;

// |<phi(x_j)|phi(x_i)>|^2 on the exact simulator. Equal to the |0..0>
// probability of U(x_j)^dagger U(x_i), without simulating the composed circuit.
double fidelity_kernel_entry(const std::vector<double>& x_i, const std::vector<double>& x_j,
                             const circuits::FeatureMapSpec& map);

// Symmetric Gram matrix; upper triangle computed and mirrored. Diagonal is
// set to 1 analytically for QuantumFidelity and RBF.
KernelMatrix kernel_matrix(const Eigen::MatrixXd& X, const KernelSpec& spec);

// Entry i = k(X_train row i, x); used for scoring unseen points.
Eigen::VectorXd kernel_vector(const std::vector<double>& x, const Eigen::MatrixXd& X_train,
                              const KernelSpec& spec);

// n_test x n_train cross-kernel; encodes each row once, so scoring many test
// points does not re-run the training-row circuits per point.
Eigen::MatrixXd kernel_cross(const Eigen::MatrixXd& X_test, const Eigen::MatrixXd& X_train,
                             const KernelSpec& spec);

} // namespace qhc::kernels
