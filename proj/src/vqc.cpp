#include "qhc/vqc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qhc::vqc {

namespace {

constexpr double kClamp = 1e-12;

double clamp_prob(double p) { return std::clamp(p, kClamp, 1.0 - kClamp); }

std::vector<double> slice(const std::vector<double>& x, std::size_t from, std::size_t to) {
    return {x.begin() + static_cast<std::ptrdiff_t>(from),
            x.begin() + static_cast<std::ptrdiff_t>(to)};
}

std::vector<double> theta_slice(const Eigen::VectorXd& theta, int from, int to) {
    std::vector<double> out(static_cast<std::size_t>(to - from));
    for (int k = from; k < to; ++k) out[static_cast<std::size_t>(k - from)] = theta(k);
    return out;
}

double forward_theta(const std::vector<double>& x, const VqcModel& model,
                     const Eigen::VectorXd& theta) {
    const int ppi = model.vf_spec.params_per_instance();
    sim::StateVector s = sim::zero_state(model.fm_spec.n_qubits);

    const std::size_t half = static_cast<std::size_t>(model.input_dim) / 2;
    sim::Circuit fm1 = circuits::pauli_zz_feature_map(slice(x, 0, half), model.fm_spec.reps);
    sim::run_circuit(fm1, s);
    sim::Circuit vf1 = circuits::variational_form(theta_slice(theta, 0, ppi),
                                                  model.vf_spec.n_qubits,
                                                  model.vf_spec.rotation_layers);
    sim::run_circuit(vf1, s);
    sim::Circuit fm2 = circuits::pauli_zz_feature_map(slice(x, half, 2 * half),
                                                      model.fm_spec.reps);
    sim::run_circuit(fm2, s);
    sim::Circuit vf2 = circuits::variational_form(theta_slice(theta, ppi, 2 * ppi),
                                                  model.vf_spec.n_qubits,
                                                  model.vf_spec.rotation_layers);
    sim::run_circuit(vf2, s);

    return sim::prob_qubit_one(s, 0);
}

} // namespace

double vqc_forward(const std::vector<double>& x, const VqcModel& model) {
    if (static_cast<int>(x.size()) != model.input_dim)
        throw UsageError("vqc_forward: expected " + std::to_string(model.input_dim) +
                         " features, got " + std::to_string(x.size()));
    if (model.theta.size() != model.n_params())
        throw UsageError("vqc_forward: theta has wrong length");
    return forward_theta(x, model, model.theta);
}

int classify(double p) { return p > 0.5 ? 1 : 0; }

double bce_loss(const std::vector<double>& probs, const std::vector<int>& labels) {
    if (probs.size() != labels.size())
        throw UsageError("bce_loss: length mismatch");
    if (probs.empty()) throw UsageError("bce_loss: empty batch");
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = clamp_prob(probs[i]);
        acc += labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
    }
    return -acc / static_cast<double>(probs.size());
}

Eigen::VectorXd param_shift_grad(const std::vector<double>& x, int y, const VqcModel& model) {
    const double p = clamp_prob(vqc_forward(x, model));
    const double dl_dp = (p - static_cast<double>(y)) / (p * (1.0 - p));

    Eigen::VectorXd grad(model.n_params());
    Eigen::VectorXd shifted = model.theta;
    for (int k = 0; k < model.n_params(); ++k) {
        const double orig = shifted(k);
        shifted(k) = orig + M_PI / 2.0;
        const double plus = forward_theta(x, model, shifted);
        shifted(k) = orig - M_PI / 2.0;
        const double minus = forward_theta(x, model, shifted);
        shifted(k) = orig;
        grad(k) = dl_dp * 0.5 * (plus - minus);
    }
    return grad;
}

void adam_step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad, optim::AdamState& state,
               const TrainConfig& config) {
    optim::adam_step(theta, grad, state, config.adam());
}

TrainResult vqc_train(const data::Dataset& train, const TrainConfig& config) {
    if (train.cols() != 8)
        throw ConfigError("vqc_train: expected 8 features, got " + std::to_string(train.cols()));
    if (train.rows() < 1) throw DataError("vqc_train: empty training set");
    if (config.batch_size < 1 || config.learning_rate < 0.0)
        throw ConfigError("vqc_train: invalid training config");

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> init(-M_PI, M_PI);

    VqcModel model;
    model.theta.resize(model.n_params());
    for (int k = 0; k < model.n_params(); ++k) model.theta(k) = init(rng);

    optim::AdamState adam = optim::AdamState::zeros(model.n_params());
    const auto n = static_cast<std::size_t>(train.rows());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    TrainResult result;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        for (std::size_t at = 0; at < n; at += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t stop = std::min(n, at + static_cast<std::size_t>(config.batch_size));
            Eigen::VectorXd grad = Eigen::VectorXd::Zero(model.n_params());
            for (std::size_t r = at; r < stop; ++r) {
                const auto x = train.row(static_cast<Eigen::Index>(order[r]));
                const int y = train.labels[order[r]];
                const double p = clamp_prob(vqc_forward(x, model));
                loss_sum -= y == 1 ? std::log(p) : std::log(1.0 - p);
                grad += param_shift_grad(x, y, model);
            }
            grad /= static_cast<double>(stop - at);
            adam_step(model.theta, grad, adam, config);
        }
        result.epoch_loss.push_back(loss_sum / static_cast<double>(n));
    }
    result.model = model;
    return result;
}

} // namespace qhc::vqc
