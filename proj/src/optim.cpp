#include "qhc/optim.hpp"

#include <cmath>

namespace qhc::optim {

void adam_step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad, AdamState& state,
               const AdamParams& params) {
    if (theta.size() != grad.size() || theta.size() != state.m.size())
        throw UsageError("adam_step: dimension mismatch");
    state.t += 1;
    state.m = params.beta1 * state.m + (1.0 - params.beta1) * grad;
    state.v = params.beta2 * state.v + (1.0 - params.beta2) * grad.cwiseProduct(grad);
    const double bc1 = 1.0 - std::pow(params.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(params.beta2, static_cast<double>(state.t));
    const Eigen::VectorXd m_hat = state.m / bc1;
    const Eigen::VectorXd v_hat = state.v / bc2;
    theta.array() -= params.learning_rate * m_hat.array() /
                     (v_hat.array().sqrt() + params.eps);
}

} // namespace qhc::optim
