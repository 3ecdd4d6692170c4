#include "qhc/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace qhc::ae {

std::vector<int> AeArchitecture::chain() const {
    std::vector<int> sizes = layer_sizes;
    for (auto it = layer_sizes.rbegin() + 1; it != layer_sizes.rend(); ++it)
        sizes.push_back(*it);
    return sizes;
}

void AeArchitecture::validate() const {
    if (layer_sizes.size() < 2)
        throw ConfigError("autoencoder: need at least input and latent sizes");
    for (int s : layer_sizes)
        if (s < 1) throw ConfigError("autoencoder: layer sizes must be positive");
    if (latent_dim() >= input_dim())
        throw ConfigError("autoencoder: latent size must be below input size");
}

void AeTrainConfig::validate() const {
    if (learning_rate < 0.0 || batch_size < 1 || epochs < 1)
        throw ConfigError("autoencoder: invalid training config");
    const double sum = train_fraction + valid_fraction + test_fraction;
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("autoencoder: split fractions must sum to 1");
    if (train_fraction <= 0.0 || valid_fraction <= 0.0)
        throw ConfigError("autoencoder: train and valid fractions must be positive");
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Activation per layer index l (1-based over affine steps): sigmoid on the
// latent layer and the final layer, ReLU elsewhere.
void activate(Eigen::VectorXd& z, bool sigmoid_layer) {
    if (sigmoid_layer)
        z = z.unaryExpr([](double v) { return sigmoid(v); });
    else
        z = z.cwiseMax(0.0);
}

} // namespace

AeModel init_model(const AeArchitecture& arch, std::uint64_t seed) {
    arch.validate();
    AeModel model;
    model.architecture = arch;
    std::mt19937_64 rng(seed);
    const auto chain = arch.chain();
    for (std::size_t l = 0; l + 1 < chain.size(); ++l) {
        const int fan_in = chain[l], fan_out = chain[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> u(-bound, bound);
        Eigen::MatrixXd w(fan_out, fan_in);
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = u(rng);
        model.weights.push_back(std::move(w));
        model.biases.push_back(Eigen::VectorXd::Zero(fan_out));
    }
    return model;
}

ForwardResult ae_forward(const Eigen::VectorXd& x, const AeModel& model) {
    if (x.size() != model.architecture.input_dim())
        throw UsageError("ae_forward: expected " +
                         std::to_string(model.architecture.input_dim()) +
                         " inputs, got " + std::to_string(x.size()));
    ForwardResult out;
    Eigen::VectorXd a = x;
    for (std::size_t l = 0; l < model.n_layers(); ++l) {
        Eigen::VectorXd z = model.weights[l] * a + model.biases[l];
        activate(z, l + 1 == model.latent_layer() || l + 1 == model.n_layers());
        a = std::move(z);
        if (l + 1 == model.latent_layer()) out.latent = a;
    }
    out.reconstruction = a;
    return out;
}

AeGradients ae_backprop(const Eigen::MatrixXd& batch, const AeModel& model) {
    const auto L = model.n_layers();
    AeGradients g;
    for (std::size_t l = 0; l < L; ++l) {
        g.d_weights.emplace_back(Eigen::MatrixXd::Zero(model.weights[l].rows(),
                                                       model.weights[l].cols()));
        g.d_biases.emplace_back(Eigen::VectorXd::Zero(model.biases[l].size()));
    }

    const auto n_rows = batch.rows();
    const double out_dim = static_cast<double>(model.architecture.input_dim());
    for (Eigen::Index r = 0; r < n_rows; ++r) {
        const Eigen::VectorXd x = batch.row(r).transpose();

        // Forward pass keeping activations per layer.
        std::vector<Eigen::VectorXd> acts{x};
        for (std::size_t l = 0; l < L; ++l) {
            Eigen::VectorXd z = model.weights[l] * acts.back() + model.biases[l];
            activate(z, l + 1 == model.latent_layer() || l + 1 == L);
            acts.push_back(std::move(z));
        }

        // MSE over components: dL/da_out = 2 (a - x) / out_dim.
        Eigen::VectorXd delta = 2.0 * (acts[L] - x) / out_dim;
        for (std::size_t l = L; l-- > 0;) {
            const Eigen::VectorXd& a_out = acts[l + 1];
            const bool sig = l + 1 == model.latent_layer() || l + 1 == L;
            Eigen::VectorXd dz(a_out.size());
            if (sig)
                dz = delta.cwiseProduct(a_out.cwiseProduct(
                    (Eigen::VectorXd::Ones(a_out.size()) - a_out)));
            else
                dz = delta.cwiseProduct(
                    a_out.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; }));
            g.d_weights[l] += dz * acts[l].transpose();
            g.d_biases[l] += dz;
            if (l > 0) delta = model.weights[l].transpose() * dz;
        }
    }

    const double inv_n = 1.0 / static_cast<double>(n_rows);
    for (std::size_t l = 0; l < L; ++l) {
        g.d_weights[l] *= inv_n;
        g.d_biases[l] *= inv_n;
    }
    return g;
}

double reconstruction_mse(const Eigen::MatrixXd& rows, const AeModel& model) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        const auto fwd = ae_forward(rows.row(r).transpose(), model);
        acc += (fwd.reconstruction - rows.row(r).transpose()).squaredNorm();
    }
    return acc / (static_cast<double>(rows.rows()) * static_cast<double>(rows.cols()));
}

namespace {

// Flattened parameter view so the shared Adam optimizer drives every layer.
Eigen::VectorXd flatten(const std::vector<Eigen::MatrixXd>& ws,
                        const std::vector<Eigen::VectorXd>& bs) {
    Eigen::Index total = 0;
    for (const auto& w : ws) total += w.size();
    for (const auto& b : bs) total += b.size();
    Eigen::VectorXd flat(total);
    Eigen::Index at = 0;
    for (const auto& w : ws) {
        flat.segment(at, w.size()) = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
        at += w.size();
    }
    for (const auto& b : bs) {
        flat.segment(at, b.size()) = b;
        at += b.size();
    }
    return flat;
}

void unflatten(const Eigen::VectorXd& flat, std::vector<Eigen::MatrixXd>& ws,
               std::vector<Eigen::VectorXd>& bs) {
    Eigen::Index at = 0;
    for (auto& w : ws) {
        Eigen::Map<Eigen::VectorXd>(w.data(), w.size()) = flat.segment(at, w.size());
        at += w.size();
    }
    for (auto& b : bs) {
        b = flat.segment(at, b.size());
        at += b.size();
    }
}

} // namespace

AeSplit ae_split_indices(std::size_t n_rows, const AeTrainConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> idx(n_rows);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);

    auto n_train = static_cast<std::size_t>(std::floor(config.train_fraction * n_rows));
    auto n_valid = static_cast<std::size_t>(std::floor(config.valid_fraction * n_rows));
    n_train = std::max<std::size_t>(n_train, 1);
    n_valid = std::max<std::size_t>(n_valid, 1);
    if (n_train + n_valid > n_rows) throw DataError("ae_train: too few rows for the split");

    AeSplit split;
    split.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.valid.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                       idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid));
    split.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid), idx.end());
    return split;
}

AeTrainResult ae_train(const Eigen::MatrixXd& data, const AeArchitecture& arch,
                       const AeTrainConfig& config) {
    if (data.rows() < 10) throw DataError("ae_train: need at least 10 rows");
    const auto split = ae_split_indices(static_cast<std::size_t>(data.rows()), config);

    auto take = [&](const std::vector<std::size_t>& which) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(which.size()), data.cols());
        for (std::size_t r = 0; r < which.size(); ++r)
            m.row(static_cast<Eigen::Index>(r)) = data.row(static_cast<Eigen::Index>(which[r]));
        return m;
    };
    return ae_train_split(take(split.train), take(split.valid), take(split.test), arch, config);
}

AeTrainResult ae_train_split(const Eigen::MatrixXd& train, const Eigen::MatrixXd& valid,
                             const Eigen::MatrixXd& test, const AeArchitecture& arch,
                             const AeTrainConfig& config) {
    arch.validate();
    config.validate();
    if (train.rows() < 1 || valid.rows() < 1)
        throw DataError("ae_train: train and validation splits must be non-empty");
    if (train.cols() != arch.input_dim())
        throw ConfigError("ae_train: data has " + std::to_string(train.cols()) +
                          " columns but architecture expects " +
                          std::to_string(arch.input_dim()));
    const auto n_train = static_cast<std::size_t>(train.rows());

    std::mt19937_64 rng(config.seed);
    AeModel model = init_model(arch, rng());
    Eigen::VectorXd flat = flatten(model.weights, model.biases);
    optim::AdamState adam = optim::AdamState::zeros(flat.size());
    const optim::AdamParams adam_params{config.learning_rate, config.adam_beta1,
                                        config.adam_beta2, config.adam_eps};

    AeTrainResult result;
    result.initial_valid_mse = reconstruction_mse(valid, model);
    result.model = model;
    double best = result.initial_valid_mse;

    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t at = 0; at < n_train; at += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t stop =
                std::min(n_train, at + static_cast<std::size_t>(config.batch_size));
            Eigen::MatrixXd batch(static_cast<Eigen::Index>(stop - at), train.cols());
            for (std::size_t r = at; r < stop; ++r)
                batch.row(static_cast<Eigen::Index>(r - at)) =
                    train.row(static_cast<Eigen::Index>(order[r]));
            const AeGradients g = ae_backprop(batch, model);
            const Eigen::VectorXd grad = flatten(g.d_weights, g.d_biases);
            optim::adam_step(flat, grad, adam, adam_params);
            unflatten(flat, model.weights, model.biases);
        }
        const double mse = reconstruction_mse(valid, model);
        result.valid_mse.push_back(mse);
        if (mse < best) {
            best = mse;
            result.model = model;
            result.best_epoch = epoch;
        }
    }

    result.test_mse = test.rows() > 0 ? reconstruction_mse(test, result.model) : 0.0;
    return result;
}

Eigen::MatrixXd encode_latent(const Eigen::MatrixXd& X, const AeModel& model) {
    if (X.cols() != model.architecture.input_dim())
        throw UsageError("encode_latent: input dimension mismatch");
    Eigen::MatrixXd out(X.rows(), model.architecture.latent_dim());
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        Eigen::VectorXd a = X.row(r).transpose();
        for (std::size_t l = 0; l < model.latent_layer(); ++l) {
            Eigen::VectorXd z = model.weights[l] * a + model.biases[l];
            activate(z, l + 1 == model.latent_layer());
            a = std::move(z);
        }
        out.row(r) = a.transpose();
    }
    return out;
}

} // namespace qhc::ae
