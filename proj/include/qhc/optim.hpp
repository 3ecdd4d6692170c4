#pragma once

#include <Eigen/Core>

#include "qhc/errors.hpp"

namespace qhc::optim {

struct AdamParams {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    Eigen::VectorXd m;
    Eigen::VectorXd v;
    long t = 0;

    static AdamState zeros(Eigen::Index dim) {
        return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim), 0};
    }
};

// Standard bias-corrected Adam update, in place.
void adam_step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad, AdamState& state,
               const AdamParams& params);

} // namespace qhc::optim
