#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "qhc/optim.hpp"

namespace qhc::ae {

// Dense autoencoder. layer_sizes describes the encoder half
// (input -> ... -> latent); the decoder mirrors it exactly. Hidden layers
// are ReLU; the latent layer and the final output layer are sigmoid, so
// latent features and reconstructions stay in (0,1).
struct AeArchitecture {
    std::vector<int> layer_sizes;

    int input_dim() const { return layer_sizes.front(); }
    int latent_dim() const { return layer_sizes.back(); }
    // Sizes of the full encoder+decoder chain, e.g. [8,4] -> [8,4,8].
    std::vector<int> chain() const;
    void validate() const;
};

struct AeModel {
    std::vector<Eigen::MatrixXd> weights; // weights[l]: out_l x in_l
    std::vector<Eigen::VectorXd> biases;
    AeArchitecture architecture;

    std::size_t n_layers() const { return weights.size(); }
    std::size_t latent_layer() const { return architecture.layer_sizes.size() - 1; }
};

struct AeTrainConfig {
    double learning_rate = 2e-3;
    int batch_size = 128;
    int epochs = 80;
    std::uint64_t seed = 0;
    double train_fraction = 0.8;
    double valid_fraction = 0.1;
    double test_fraction = 0.1;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;

    void validate() const;
};

struct AeTrainResult {
    AeModel model;                 // epoch snapshot with minimal validation MSE
    std::vector<double> valid_mse; // after each epoch
    double initial_valid_mse = 0.0;
    double test_mse = 0.0;         // selected model on the held-out split
    int best_epoch = 0;            // 1-based; 0 means the untrained model won
};

struct ForwardResult {
    Eigen::VectorXd reconstruction;
    Eigen::VectorXd latent;
};

// Glorot-uniform initialization from the given seed.
AeModel init_model(const AeArchitecture& arch, std::uint64_t seed);

ForwardResult ae_forward(const Eigen::VectorXd& x, const AeModel& model);

// MSE gradient for a batch, averaged over rows and output components.
// Returns the per-layer weight and bias gradients.
struct AeGradients {
    std::vector<Eigen::MatrixXd> d_weights;
    std::vector<Eigen::VectorXd> d_biases;
};
AeGradients ae_backprop(const Eigen::MatrixXd& batch, const AeModel& model);

double reconstruction_mse(const Eigen::MatrixXd& rows, const AeModel& model);

// Seeded shuffle of [0, n) sliced into train/valid/test per the config
// fractions. ae_train uses exactly this split.
struct AeSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> valid;
    std::vector<std::size_t> test;
};
AeSplit ae_split_indices(std::size_t n_rows, const AeTrainConfig& config);

AeTrainResult ae_train(const Eigen::MatrixXd& data, const AeArchitecture& arch,
                       const AeTrainConfig& config);

// Training core on explicit splits; reseeds from config.seed for the weight
// init and epoch shuffles.
AeTrainResult ae_train_split(const Eigen::MatrixXd& train, const Eigen::MatrixXd& valid,
                             const Eigen::MatrixXd& test, const AeArchitecture& arch,
                             const AeTrainConfig& config);

// Row-wise encoder-half evaluation.
Eigen::MatrixXd encode_latent(const Eigen::MatrixXd& X, const AeModel& model);

} // namespace qhc::ae
