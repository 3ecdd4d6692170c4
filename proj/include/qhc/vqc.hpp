#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "qhc/circuits.hpp"
#include "qhc/data.hpp"
#include "qhc/optim.hpp"

namespace qhc::vqc {

// 4-qubit classifier with data re-uploading: the 8 inputs are loaded four at
// a time, each load followed by its own variational-form instance. The
// output is P(qubit 0 = 1), read as p(signal).
struct VqcModel {
    Eigen::VectorXd theta; // 2 instances x params_per_instance
    circuits::FeatureMapSpec fm_spec = circuits::FeatureMapSpec::pauli_zz(2);
    circuits::VariationalFormSpec vf_spec{4, 2};
    int input_dim = 8;

    int n_params() const { return 2 * vf_spec.params_per_instance(); }
};

struct TrainConfig {
    double learning_rate = 5e-3;
    int batch_size = 50;
    int epochs = 70;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;

    optim::AdamParams adam() const {
        return {learning_rate, adam_beta1, adam_beta2, adam_eps};
    }
};

struct TrainResult {
    VqcModel model;
    std::vector<double> epoch_loss; // mean training loss per epoch
};

double vqc_forward(const std::vector<double>& x, const VqcModel& model);

// p > 0.5 is signal (1); ties classify as background (0).
int classify(double p);

// -mean(y log p + (1-y) log(1-p)), probabilities clamped to
// [1e-12, 1-1e-12].
double bce_loss(const std::vector<double>& probs, const std::vector<int>& labels);

// dL/dtheta for one sample via the parameter-shift rule,
// dp/dtheta_k = (p(theta_k + pi/2) - p(theta_k - pi/2)) / 2, chained through
// the analytic BCE derivative (p - y)/(p(1-p)) with the loss clamp.
Eigen::VectorXd param_shift_grad(const std::vector<double>& x, int y, const VqcModel& model);

// Convenience re-export of the shared optimizer with this module's config.
void adam_step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad, optim::AdamState& state,
               const TrainConfig& config);

// Mini-batch Adam training; theta starts uniform in [-pi, pi] from the
// seeded generator and the data is reshuffled (seeded) every epoch.
TrainResult vqc_train(const data::Dataset& train, const TrainConfig& config);

} // namespace qhc::vqc
