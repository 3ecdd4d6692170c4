#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "qhc/kernels.hpp"

namespace qhc::svm {

// Box constant C = 1/(2*n*lambda) unless c_override is set, in which case C
// is taken directly.
struct SvmConfig {
    double lambda = 0.2;
    std::optional<double> c_override;
    double tol = 1e-3;        // KKT tolerance
    int max_passes = 200;     // sweeps without progress before aborting

    double box_constant(int n) const;
};

struct FeatureMeta {
    std::vector<std::string> feature_names;
    std::optional<Eigen::VectorXd> scaler_mins;
    std::optional<Eigen::VectorXd> scaler_maxs;
};

struct SvmModel {
    Eigen::VectorXd coefficients;       // c_i >= 0
    Eigen::VectorXd labels;             // y_i in {-1,+1}
    double bias = 0.0;
    std::vector<int> support_indices;   // c_i > 1e-9
    kernels::KernelSpec kernel_spec;
    Eigen::MatrixXd training_data;      // retained for kernel evaluation
    FeatureMeta feature_meta;
    double lambda = 0.2;
    double box_c = 0.0;
    bool converged = true;

    // Dual objective L(c) = sum c - 1/2 sum_ij c_i c_j y_i y_j K_ij
    double dual_objective(const kernels::KernelMatrix& K) const;
};

// Data-layer labels {0,1} map to {-1,+1} at the SVM boundary.
Eigen::VectorXd to_pm_one(const std::vector<int>& labels01);

// Sequential Minimal Optimization over a precomputed kernel matrix.
// Pair selection: first index is the maximal KKT violator, second maximizes
// |E_i - E_j|; full-set sweeps alternate with non-bound sweeps until no
// violator exceeds tol.
SvmModel smo_train(const kernels::KernelMatrix& K, const Eigen::VectorXd& y,
                   const SvmConfig& config);

double decision_value(const SvmModel& model, const Eigen::VectorXd& k_vec);

Eigen::VectorXd predict_scores(const SvmModel& model, const Eigen::MatrixXd& X_test);

} // namespace qhc::svm
