#include "qhc/kernels.hpp"

#include <cmath>
#include <string>

namespace qhc::kernels {

KernelSpec KernelSpec::quantum_fidelity(const circuits::FeatureMapSpec& map) {
    KernelSpec s;
    s.kind = KernelKind::QuantumFidelity;
    s.map = map;
    return s;
}

KernelSpec KernelSpec::rbf(double gamma) {
    if (gamma < 0.0) throw ConfigError("rbf kernel: gamma must be positive");
    KernelSpec s;
    s.kind = KernelKind::RBF;
    s.gamma = gamma;
    return s;
}

KernelSpec KernelSpec::linear() {
    KernelSpec s;
    s.kind = KernelKind::Linear;
    return s;
}

double KernelSpec::effective_gamma(int d) const {
    if (gamma > 0.0) return gamma;
    return 1.0 / static_cast<double>(d);
}

double fidelity_kernel_entry(const std::vector<double>& x_i, const std::vector<double>& x_j,
                             const circuits::FeatureMapSpec& map) {
    const sim::StateVector si = circuits::encode_state(map, x_i);
    const sim::StateVector sj = circuits::encode_state(map, x_j);
    return std::norm(sim::inner_product(sj, si));
}

namespace {

std::vector<double> row_of(const Eigen::MatrixXd& X, Eigen::Index i) {
    std::vector<double> r(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index j = 0; j < X.cols(); ++j) r[static_cast<std::size_t>(j)] = X(i, j);
    return r;
}

double classical_entry(const Eigen::MatrixXd& A, Eigen::Index i, const Eigen::MatrixXd& B,
                       Eigen::Index j, const KernelSpec& spec) {
    if (spec.kind == KernelKind::Linear) return A.row(i).dot(B.row(j));
    const double g = spec.effective_gamma(static_cast<int>(A.cols()));
    return std::exp(-g * (A.row(i) - B.row(j)).squaredNorm());
}

// Encoded states for every row, computed once; the Gram fill is then plain
// inner products.
std::vector<sim::StateVector> encode_rows(const Eigen::MatrixXd& X,
                                          const circuits::FeatureMapSpec& map) {
    std::vector<sim::StateVector> states;
    states.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        try {
            states.push_back(circuits::encode_state(map, row_of(X, i)));
        } catch (const std::runtime_error& e) {
            throw DataError("kernel: row " + std::to_string(i) + ": " + e.what());
        }
    }
    return states;
}

} // namespace

KernelMatrix kernel_matrix(const Eigen::MatrixXd& X, const KernelSpec& spec) {
    const Eigen::Index n = X.rows();
    if (n == 0) throw DataError("kernel_matrix: empty input");
    if (!X.allFinite()) throw DataError("kernel_matrix: non-finite feature values");
    KernelMatrix K(n, n);

    if (spec.kind == KernelKind::QuantumFidelity) {
        const auto states = encode_rows(X, spec.map);
        for (Eigen::Index i = 0; i < n; ++i) {
            K(i, i) = 1.0;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double v = std::norm(sim::inner_product(
                    states[static_cast<std::size_t>(j)], states[static_cast<std::size_t>(i)]));
                K(i, j) = v;
                K(j, i) = v;
            }
        }
        return K;
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = spec.kind == KernelKind::RBF ? 1.0 : classical_entry(X, i, X, i, spec);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = classical_entry(X, i, X, j, spec);
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

Eigen::MatrixXd kernel_cross(const Eigen::MatrixXd& X_test, const Eigen::MatrixXd& X_train,
                             const KernelSpec& spec) {
    if (X_test.cols() != X_train.cols())
        throw UsageError("kernel_cross: feature dimensions differ");
    Eigen::MatrixXd K(X_test.rows(), X_train.rows());

    if (spec.kind == KernelKind::QuantumFidelity) {
        const auto train_states = encode_rows(X_train, spec.map);
        const auto test_states = encode_rows(X_test, spec.map);
        for (Eigen::Index i = 0; i < X_test.rows(); ++i)
            for (Eigen::Index j = 0; j < X_train.rows(); ++j)
                K(i, j) = std::norm(sim::inner_product(test_states[static_cast<std::size_t>(i)],
                                                       train_states[static_cast<std::size_t>(j)]));
        return K;
    }

    for (Eigen::Index i = 0; i < X_test.rows(); ++i)
        for (Eigen::Index j = 0; j < X_train.rows(); ++j)
            K(i, j) = classical_entry(X_test, i, X_train, j, spec);
    return K;
}

Eigen::VectorXd kernel_vector(const std::vector<double>& x, const Eigen::MatrixXd& X_train,
                              const KernelSpec& spec) {
    const Eigen::Index n = X_train.rows();
    Eigen::VectorXd k(n);

    if (spec.kind == KernelKind::QuantumFidelity) {
        const sim::StateVector sx = circuits::encode_state(spec.map, x);
        const auto states = encode_rows(X_train, spec.map);
        for (Eigen::Index i = 0; i < n; ++i)
            k(i) = std::norm(sim::inner_product(sx, states[static_cast<std::size_t>(i)]));
        return k;
    }

    if (static_cast<Eigen::Index>(x.size()) != X_train.cols())
        throw UsageError("kernel_vector: dimension mismatch");
    Eigen::Map<const Eigen::RowVectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    const double g = spec.effective_gamma(static_cast<int>(X_train.cols()));
    for (Eigen::Index i = 0; i < n; ++i) {
        if (spec.kind == KernelKind::Linear)
            k(i) = X_train.row(i).dot(xv);
        else
            k(i) = std::exp(-g * (X_train.row(i) - xv).squaredNorm());
    }
    return k;
}

} // namespace qhc::kernels
