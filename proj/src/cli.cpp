#include "qhc/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qhc/autoencoder.hpp"
#include "qhc/data.hpp"
#include "qhc/model_io.hpp"
#include "qhc/svm.hpp"
#include "qhc/vqc.hpp"

namespace qhc::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- config

const json& schema() {
    static const json s = {
        {"seed", json::object()},
        {"label_column", json::object()},
        {"out_dir", json::object()},
        {"data", json::object()},
        {"svm", {{"lambda", json::object()}, {"C", json::object()},
                 {"tol", json::object()}, {"max_passes", json::object()}}},
        {"vqc", {{"learning_rate", json::object()}, {"batch_size", json::object()},
                 {"epochs", json::object()}, {"adam_beta1", json::object()},
                 {"adam_beta2", json::object()}, {"adam_eps", json::object()}}},
        {"ae", {{"learning_rate", json::object()}, {"batch_size", json::object()},
                {"epochs", json::object()}, {"train_fraction", json::object()},
                {"valid_fraction", json::object()}, {"test_fraction", json::object()},
                {"hidden", json::object()}, {"latent", json::object()}}},
        {"feature_map", {{"kind", json::object()}, {"n_qubits", json::object()},
                         {"reps", json::object()}}},
        {"kernel", {{"kind", json::object()}, {"gamma", json::object()}}},
        {"split", {{"train_size", json::object()}, {"n_folds", json::object()},
                   {"fold_size", json::object()}}},
        {"gen", {{"n", json::object()}, {"d", json::object()},
                 {"separation", json::object()}}},
    };
    return s;
}

void check_keys(const json& doc, const json& allowed, const std::string& where) {
    for (const auto& [key, value] : doc.items()) {
        auto it = allowed.find(key);
        if (it == allowed.end())
            throw ConfigError("config: unknown key '" + where + key + "'");
        if (it->is_object() && !it->empty()) {
            if (!value.is_object())
                throw ConfigError("config: '" + where + key + "' must be an object");
            check_keys(value, *it, where + key + ".");
        }
    }
}

} // namespace

void validate_run_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(j, schema(), "");
}

json load_run_config(const std::string& path) {
    const json j = io::read_json(path);
    validate_run_config(j);
    return j;
}

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value, const json& config) {
    if (flag_given) return flag_value;
    if (config.contains("seed")) return config["seed"].get<std::uint64_t>();
    if (const char* env = std::getenv("QHC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("QHC_SEED is not a valid integer: " + std::string(env));
        }
    }
    return 0;
}

namespace {

// Any section value: flag wins when given, then config, then the default.
template <typename T>
T resolve(const CLI::Option* opt, const T& flag_value, const json& config,
          const std::string& section, const std::string& key, const T& fallback) {
    if (opt && opt->count() > 0) return flag_value;
    if (config.contains(section) && config[section].contains(key))
        return config[section][key].get<T>();
    return fallback;
}

std::string resolve_top(const CLI::Option* opt, const std::string& flag_value,
                        const json& config, const std::string& key,
                        const std::string& fallback) {
    if (opt && opt->count() > 0) return flag_value;
    if (config.contains(key)) return config[key].get<std::string>();
    return fallback;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

data::MinMaxScaler scaler_from_meta(const svm::FeatureMeta& meta) {
    data::MinMaxScaler s;
    if (meta.scaler_mins) {
        s.mins = *meta.scaler_mins;
        s.maxs = *meta.scaler_maxs;
    }
    return s;
}

svm::FeatureMeta meta_from_dataset(const data::Dataset& scaled) {
    svm::FeatureMeta meta;
    meta.feature_names = scaled.feature_names;
    if (scaled.scaler) {
        meta.scaler_mins = scaled.scaler->mins;
        meta.scaler_maxs = scaled.scaler->maxs;
    }
    return meta;
}

// ---------------------------------------------------------------- helpers

struct FoldScores {
    std::vector<std::pair<std::vector<double>, std::vector<int>>> folds;

    void add(const Eigen::VectorXd& scores, const std::vector<int>& labels) {
        std::vector<double> s(scores.data(), scores.data() + scores.size());
        folds.emplace_back(std::move(s), labels);
    }

    metrics::AucSummary summary() const {
        if (folds.size() >= 2) return metrics::auc_mean_std(folds);
        metrics::AucSummary one;
        one.per_fold = {metrics::auc(folds[0].first, folds[0].second)};
        one.mean = one.per_fold[0];
        one.std_dev = 0.0;
        one.concatenated_auc = one.per_fold[0];
        return one;
    }

    metrics::RocCurve concatenated_roc() const {
        std::vector<double> s;
        std::vector<int> y;
        for (const auto& [fs, fy] : folds) {
            s.insert(s.end(), fs.begin(), fs.end());
            y.insert(y.end(), fy.begin(), fy.end());
        }
        return metrics::roc_curve(s, y);
    }
};

void write_metrics(const std::string& out_dir, const metrics::AucSummary& summary,
                   const json& effective_config, const json& extra = json::object()) {
    json j{{"auc", io::auc_summary_to_json(summary)}, {"config", effective_config}};
    for (const auto& [k, v] : extra.items()) j[k] = v;
    io::write_json(join_path(out_dir, "metrics.json"), j);
}

void report_summary(const metrics::AucSummary& summary) {
    std::cout << "auc per fold:";
    for (double a : summary.per_fold) std::cout << " " << a;
    std::cout << "\nauc mean=" << summary.mean << " std=" << summary.std_dev
              << " concatenated=" << summary.concatenated_auc << "\n";
}

// ---------------------------------------------------------------- gen-data

struct GenDataArgs {
    int n = 1000, d = 16;
    double sep = 1.5;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out, config_path, label_col;
};

int cmd_gen_data(const GenDataArgs& a, const json& config) {
    const int n = a.n, d = a.d;
    const auto ds = data::gen_synthetic(n, d, a.sep, a.seed);
    data::save_csv(ds, a.out, a.label_col);
    std::cout << "wrote " << a.out << ": " << ds.rows() << " rows, " << ds.cols()
              << " feature columns\n";
    (void)config;
    return 0;
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
    std::string mode, in, out, model_out, trace_out, label_col;
    int k = 16, latent = 8;
    std::vector<int> hidden;
    std::string preset;
    double lr = 2e-3;
    int batch = 128, epochs = 80;
    std::uint64_t seed = 0;
};

std::vector<int> geometric_hidden(int input_dim, int latent, int n_hidden) {
    std::vector<int> sizes;
    const double ratio = static_cast<double>(latent) / input_dim;
    for (int i = 1; i <= n_hidden; ++i) {
        const double f = static_cast<double>(i) / (n_hidden + 1);
        int s = static_cast<int>(std::lround(input_dim * std::pow(ratio, f)));
        sizes.push_back(std::max(s, latent));
    }
    return sizes;
}

int cmd_reduce(ReduceArgs& a, const json& config) {
    const auto ds = data::load_csv(a.in, a.label_col);

    if (a.mode == "auc") {
        const auto reduced = data::select_features(ds, a.k);
        data::save_csv(reduced, a.out, a.label_col);
        std::cout << "wrote " << a.out << ": kept " << reduced.cols() << " of " << ds.cols()
                  << " features by per-feature AUC\n";
        return 0;
    }
    if (a.mode != "ae") throw ConfigError("reduce: --mode must be 'auc' or 'ae'");

    ae::AeTrainConfig tc;
    tc.learning_rate = a.lr;
    tc.batch_size = a.batch;
    tc.epochs = a.epochs;
    tc.seed = a.seed;
    if (config.contains("ae")) {
        const json& c = config["ae"];
        tc.train_fraction = c.value("train_fraction", tc.train_fraction);
        tc.valid_fraction = c.value("valid_fraction", tc.valid_fraction);
        tc.test_fraction = c.value("test_fraction", tc.test_fraction);
    }

    if (a.preset == "ae16") {
        a.latent = 16;
        a.hidden = geometric_hidden(static_cast<int>(ds.cols()), 16, 6);
        tc.learning_rate = 2e-3;
        tc.batch_size = 128;
        tc.epochs = 80;
    } else if (a.preset == "ae8") {
        a.latent = 8;
        a.hidden = geometric_hidden(static_cast<int>(ds.cols()), 8, 7);
        tc.learning_rate = std::sqrt(3.0) * 1e-3;
        tc.batch_size = 93;
        tc.epochs = 30;
    } else if (!a.preset.empty()) {
        throw ConfigError("reduce: unknown preset '" + a.preset + "'");
    }

    ae::AeArchitecture arch;
    arch.layer_sizes.push_back(static_cast<int>(ds.cols()));
    for (int h : a.hidden) arch.layer_sizes.push_back(h);
    arch.layer_sizes.push_back(a.latent);
    arch.validate();

    // Scale with statistics from the AE's own training split, then train.
    const auto split = ae::ae_split_indices(static_cast<std::size_t>(ds.rows()), tc);
    data::Dataset train_rows;
    train_rows.features.resize(static_cast<Eigen::Index>(split.train.size()), ds.cols());
    train_rows.labels.assign(split.train.size(), 0);
    for (std::size_t r = 0; r < split.train.size(); ++r)
        train_rows.features.row(static_cast<Eigen::Index>(r)) =
            ds.features.row(static_cast<Eigen::Index>(split.train[r]));
    const auto scaler = data::fit_minmax(train_rows);
    const auto scaled = data::apply_minmax(ds, scaler);

    const auto result = ae::ae_train(scaled.features, arch, tc);
    std::cout << "autoencoder: best epoch " << result.best_epoch << ", validation mse "
              << (result.valid_mse.empty() ? result.initial_valid_mse
                                           : *std::min_element(result.valid_mse.begin(),
                                                               result.valid_mse.end()))
              << ", test mse " << result.test_mse << "\n";

    data::Dataset latent_ds;
    latent_ds.features = ae::encode_latent(scaled.features, result.model);
    latent_ds.labels = ds.labels;
    for (int j = 0; j < a.latent; ++j) latent_ds.feature_names.push_back("z" + std::to_string(j));
    data::save_csv(latent_ds, a.out, a.label_col);
    std::cout << "wrote " << a.out << ": " << latent_ds.cols() << " latent features\n";

    if (!a.model_out.empty()) io::save_ae_model(a.model_out, result.model);
    if (!a.trace_out.empty()) {
        std::vector<double> trace{result.initial_valid_mse};
        trace.insert(trace.end(), result.valid_mse.begin(), result.valid_mse.end());
        io::write_trace_csv(a.trace_out, "epoch", "valid_mse", trace, 0);
    }
    return 0;
}

// ---------------------------------------------------------------- train

struct SplitArgs {
    int train_size = 576, n_folds = 5, fold_size = 720;
};

struct TrainCommon {
    std::string data_path, out_dir, label_col = "label";
    std::uint64_t seed = 0;
    SplitArgs split;
};

struct ScaledFolds {
    data::FoldSet raw;
    data::Dataset train_scaled;
    std::vector<data::Dataset> folds_scaled;
};

ScaledFolds prepare_folds(const data::Dataset& ds, const TrainCommon& c) {
    ScaledFolds out;
    out.raw = data::split_folds(ds, c.split.train_size, c.split.n_folds, c.split.fold_size,
                                c.seed);
    const auto scaler = data::fit_minmax(out.raw.train);
    out.train_scaled = data::apply_minmax(out.raw.train, scaler);
    for (const auto& fold : out.raw.test_folds)
        out.folds_scaled.push_back(data::apply_minmax(fold, scaler));
    return out;
}

void write_folds(const std::string& out_dir, const data::FoldSet& folds,
                 const std::string& label_col) {
    for (std::size_t f = 0; f < folds.test_folds.size(); ++f)
        data::save_csv(folds.test_folds[f],
                       join_path(out_dir, "fold_" + std::to_string(f) + ".csv"), label_col);
}

json split_to_json(const SplitArgs& s) {
    return {{"train_size", s.train_size}, {"n_folds", s.n_folds}, {"fold_size", s.fold_size}};
}

int train_svm_like(const TrainCommon& c, const kernels::KernelSpec& spec_in,
                   const svm::SvmConfig& svm_cfg, const json& effective_base,
                   const std::string& model_kind) {
    Timer timer;
    const auto ds = data::load_csv(c.data_path, c.label_col);

    kernels::KernelSpec spec = spec_in;
    if (spec.kind == kernels::KernelKind::QuantumFidelity) {
        if (static_cast<int>(ds.cols()) != spec.map.expected_dim)
            throw ConfigError("train " + model_kind + ": data has " +
                              std::to_string(ds.cols()) + " features but the feature map expects " +
                              std::to_string(spec.map.expected_dim));
    } else if (spec.kind == kernels::KernelKind::RBF) {
        spec.gamma = spec.effective_gamma(static_cast<int>(ds.cols()));
    }

    const auto prepared = prepare_folds(ds, c);
    const double C = svm_cfg.box_constant(c.split.train_size);
    std::cout << "training " << model_kind << " on " << c.split.train_size
              << " samples, C = " << C << "\n";

    const auto K = kernels::kernel_matrix(prepared.train_scaled.features, spec);
    const auto y = svm::to_pm_one(prepared.train_scaled.labels);
    auto model = svm::smo_train(K, y, svm_cfg);
    if (!model.converged)
        std::cout << "warning: SMO stopped after " << svm_cfg.max_passes
                  << " sweeps without progress; KKT conditions may be violated\n";
    model.kernel_spec = spec;
    model.training_data = prepared.train_scaled.features;
    model.feature_meta = meta_from_dataset(prepared.train_scaled);

    FoldScores scores;
    for (const auto& fold : prepared.folds_scaled)
        scores.add(svm::predict_scores(model, fold.features), fold.labels);

    const auto summary = scores.summary();
    json effective = effective_base;
    effective["svm"]["C"] = C;
    effective["split"] = split_to_json(c.split);
    effective["seed"] = c.seed;
    effective["data"] = c.data_path;

    io::save_svm_model(join_path(c.out_dir, "model.json"), model);
    write_metrics(c.out_dir, summary, effective,
                  json{{"model_type", "svm"}, {"converged", model.converged}});
    io::write_roc_csv(join_path(c.out_dir, "roc.csv"), scores.concatenated_roc());
    write_folds(c.out_dir, prepared.raw, c.label_col);

    report_summary(summary);
    std::cout << "wall time " << timer.seconds() << " s\n";
    return 0;
}

int train_vqc(const TrainCommon& c, const vqc::TrainConfig& tc, const json& effective_base) {
    Timer timer;
    const auto ds = data::load_csv(c.data_path, c.label_col);
    if (ds.cols() != 8)
        throw ConfigError("train vqc: data has " + std::to_string(ds.cols()) +
                          " features but the model expects 8");

    const auto prepared = prepare_folds(ds, c);
    std::cout << "training vqc on " << c.split.train_size << " samples, " << tc.epochs
              << " epochs, lr " << tc.learning_rate << ", batch " << tc.batch_size << "\n";

    data::Dataset train = prepared.train_scaled;
    const auto result = vqc::vqc_train(train, tc);

    FoldScores scores;
    for (const auto& fold : prepared.folds_scaled) {
        Eigen::VectorXd s(fold.rows());
        for (Eigen::Index i = 0; i < fold.rows(); ++i)
            s(i) = vqc::vqc_forward(fold.row(i), result.model);
        scores.add(s, fold.labels);
    }

    const auto summary = scores.summary();
    json effective = effective_base;
    effective["split"] = split_to_json(c.split);
    effective["seed"] = c.seed;
    effective["data"] = c.data_path;

    const double final_loss = result.epoch_loss.empty() ? 0.0 : result.epoch_loss.back();
    io::save_vqc_model(join_path(c.out_dir, "model.json"), result.model, tc, final_loss,
                       meta_from_dataset(prepared.train_scaled));
    write_metrics(c.out_dir, summary, effective,
                  json{{"model_type", "vqc"}, {"final_epoch_loss", final_loss}});
    io::write_roc_csv(join_path(c.out_dir, "roc.csv"), scores.concatenated_roc());
    io::write_trace_csv(join_path(c.out_dir, "loss_trace.csv"), "epoch", "loss",
                        result.epoch_loss, 1);
    write_folds(c.out_dir, prepared.raw, c.label_col);

    report_summary(summary);
    std::cout << "final training loss " << final_loss << "\n";
    std::cout << "wall time " << timer.seconds() << " s\n";
    return 0;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const std::string& model_path, const std::vector<std::string>& data_paths,
                 const std::string& out_dir, const std::string& label_col) {
    const std::string type = io::model_type_of(model_path);

    FoldScores scores;
    if (type == "svm") {
        const auto model = io::load_svm_model(model_path);
        const auto scaler = scaler_from_meta(model.feature_meta);
        for (const auto& path : data_paths) {
            auto fold = data::load_csv(path, label_col);
            if (fold.cols() != model.training_data.cols())
                throw ConfigError("evaluate: " + path + " has " + std::to_string(fold.cols()) +
                                  " features but the model expects " +
                                  std::to_string(model.training_data.cols()));
            if (scaler.fitted()) fold = data::apply_minmax(fold, scaler);
            scores.add(svm::predict_scores(model, fold.features), fold.labels);
        }
    } else if (type == "vqc") {
        const auto doc = io::load_vqc_model(model_path);
        const auto scaler = scaler_from_meta(doc.feature_meta);
        for (const auto& path : data_paths) {
            auto fold = data::load_csv(path, label_col);
            if (static_cast<int>(fold.cols()) != doc.model.input_dim)
                throw ConfigError("evaluate: " + path + " has " + std::to_string(fold.cols()) +
                                  " features but the model expects " +
                                  std::to_string(doc.model.input_dim));
            if (scaler.fitted()) fold = data::apply_minmax(fold, scaler);
            Eigen::VectorXd s(fold.rows());
            for (Eigen::Index i = 0; i < fold.rows(); ++i)
                s(i) = vqc::vqc_forward(fold.row(i), doc.model);
            scores.add(s, fold.labels);
        }
    } else {
        throw ConfigError("evaluate: unsupported model type '" + type + "' in " + model_path);
    }

    const auto summary = scores.summary();
    json effective{{"model", model_path}, {"data", data_paths}};
    write_metrics(out_dir, summary, effective, json{{"model_type", type}});
    io::write_roc_csv(join_path(out_dir, "roc.csv"), scores.concatenated_roc());
    report_summary(summary);
    return 0;
}

// ---------------------------------------------------------------- kernel-dump

int cmd_kernel_dump(const std::string& data_path, const kernels::KernelSpec& spec_in,
                    const std::string& out, const std::string& label_col) {
    const auto ds = data::load_csv(data_path, label_col);
    kernels::KernelSpec spec = spec_in;
    if (spec.kind == kernels::KernelKind::QuantumFidelity &&
        static_cast<int>(ds.cols()) != spec.map.expected_dim)
        throw ConfigError("kernel-dump: data has " + std::to_string(ds.cols()) +
                          " features but the feature map expects " +
                          std::to_string(spec.map.expected_dim));
    const auto scaler = data::fit_minmax(ds);
    const auto scaled = data::apply_minmax(ds, scaler);
    if (spec.kind == kernels::KernelKind::RBF)
        spec.gamma = spec.effective_gamma(static_cast<int>(ds.cols()));
    const auto K = kernels::kernel_matrix(scaled.features, spec);
    io::write_matrix_csv(out, K);
    std::cout << "wrote " << out << ": " << K.rows() << "x" << K.cols() << " kernel matrix\n";
    return 0;
}

kernels::KernelSpec make_map_spec(const std::string& map, int qubits, int dim) {
    if (map == "amplitude")
        return kernels::KernelSpec::quantum_fidelity(
            circuits::FeatureMapSpec::amplitude(qubits, dim));
    if (map == "u2" || map == "u2_reuploading" || map == "u2-reuploading") {
        if (qubits != 8)
            throw ConfigError("the u2 re-uploading map runs on 8 qubits, got " +
                              std::to_string(qubits));
        return kernels::KernelSpec::quantum_fidelity(circuits::FeatureMapSpec::u2_reuploading());
    }
    throw ConfigError("unknown feature map '" + map + "' (expected amplitude or u2)");
}

} // namespace

// ---------------------------------------------------------------- wiring

int run(const std::vector<std::string>& args) {
    CLI::App app{"quantum and classical binary classifiers on an exact statevector simulator"};
    app.require_subcommand(1);

    // Shared flag storage. Each subcommand registers only the flags it uses.
    std::string config_path, label_col = "label";
    std::uint64_t seed_flag = 0;
    json config = json::object();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run-config file");
        cmd->add_option("--label-col", label_col, "label column name");
        return cmd->add_option("--seed", seed_flag, "RNG seed");
    };

    int exit_code = 0;
    auto finish = [&](std::function<int()> body) {
        return [&, body]() {
            if (!config_path.empty()) config = load_run_config(config_path);
            exit_code = body();
        };
    };

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "generate a synthetic two-class CSV");
    GenDataArgs ga;
    gen->add_option("--n", ga.n, "total sample count (even)");
    gen->add_option("--d", ga.d, "feature count");
    gen->add_option("--sep", ga.sep, "class mean separation");
    gen->add_option("--out", ga.out, "output CSV path")->required();
    auto* gen_seed = add_common(gen);
    gen->callback(finish([&]() {
        ga.seed = resolve_seed(gen_seed->count() > 0, seed_flag, config);
        ga.label_col = label_col;
        if (config.contains("gen")) {
            const json& g = config["gen"];
            if (gen->get_option("--n")->count() == 0 && g.contains("n")) ga.n = g["n"];
            if (gen->get_option("--d")->count() == 0 && g.contains("d")) ga.d = g["d"];
            if (gen->get_option("--sep")->count() == 0 && g.contains("separation"))
                ga.sep = g["separation"];
        }
        return cmd_gen_data(ga, config);
    }));

    // reduce
    auto* red = app.add_subcommand("reduce", "feature reduction (auc selection or autoencoder)");
    ReduceArgs ra;
    red->add_option("--mode", ra.mode, "auc | ae")->required();
    red->add_option("--in", ra.in, "input CSV")->required();
    red->add_option("--out", ra.out, "output CSV")->required();
    red->add_option("--k", ra.k, "features kept in auc mode");
    red->add_option("--latent", ra.latent, "latent dimension in ae mode");
    red->add_option("--hidden", ra.hidden, "encoder hidden layer sizes")->delimiter(',');
    red->add_option("--preset", ra.preset, "ae16 | ae8 architecture preset");
    auto* red_lr = red->add_option("--lr", ra.lr, "ae learning rate");
    auto* red_batch = red->add_option("--batch", ra.batch, "ae batch size");
    auto* red_epochs = red->add_option("--epochs", ra.epochs, "ae epochs");
    red->add_option("--model-out", ra.model_out, "ae model JSON path");
    red->add_option("--trace-out", ra.trace_out, "ae validation-MSE trace CSV path");
    auto* red_seed = add_common(red);
    red->callback(finish([&]() {
        ra.seed = resolve_seed(red_seed->count() > 0, seed_flag, config);
        ra.label_col = label_col;
        ra.lr = resolve(red_lr, ra.lr, config, "ae", "learning_rate", ra.lr);
        ra.batch = resolve(red_batch, ra.batch, config, "ae", "batch_size", ra.batch);
        ra.epochs = resolve(red_epochs, ra.epochs, config, "ae", "epochs", ra.epochs);
        if (red->get_option("--latent")->count() == 0 && config.contains("ae") &&
            config["ae"].contains("latent"))
            ra.latent = config["ae"]["latent"];
        if (red->get_option("--hidden")->count() == 0 && config.contains("ae") &&
            config["ae"].contains("hidden"))
            ra.hidden = config["ae"]["hidden"].get<std::vector<int>>();
        return cmd_reduce(ra, config);
    }));

    // train
    auto* train = app.add_subcommand("train", "train a classifier");
    train->require_subcommand(1);

    TrainCommon tcommon;
    svm::SvmConfig svm_cfg;
    std::string map_name = "amplitude";
    int qubits = 4;
    double gamma = 0.0;
    std::string kernel_name = "rbf";
    vqc::TrainConfig vqc_cfg;

    auto add_train_common = [&](CLI::App* cmd) {
        cmd->add_option("--data", tcommon.data_path, "training CSV")->required();
        cmd->add_option("--out-dir", tcommon.out_dir, "output directory")->required();
        cmd->add_option("--train-size", tcommon.split.train_size, "training sample count");
        cmd->add_option("--folds", tcommon.split.n_folds, "number of test folds");
        cmd->add_option("--fold-size", tcommon.split.fold_size, "samples per test fold");
        return add_common(cmd);
    };

    auto resolve_train_common = [&](CLI::App* cmd, CLI::Option* seed_opt) {
        tcommon.seed = resolve_seed(seed_opt->count() > 0, seed_flag, config);
        tcommon.label_col = label_col;
        tcommon.split.train_size = resolve(cmd->get_option("--train-size"),
                                           tcommon.split.train_size, config, "split",
                                           "train_size", tcommon.split.train_size);
        tcommon.split.n_folds = resolve(cmd->get_option("--folds"), tcommon.split.n_folds,
                                        config, "split", "n_folds", tcommon.split.n_folds);
        tcommon.split.fold_size = resolve(cmd->get_option("--fold-size"),
                                          tcommon.split.fold_size, config, "split",
                                          "fold_size", tcommon.split.fold_size);
    };

    auto* qsvm = train->add_subcommand("qsvm", "fidelity-kernel SVM");
    qsvm->add_option("--map", map_name, "feature map: amplitude | u2");
    qsvm->add_option("--qubits", qubits, "qubit count for the feature map");
    auto* qsvm_lambda = qsvm->add_option("--lambda", svm_cfg.lambda, "regularization lambda");
    auto* qsvm_tol = qsvm->add_option("--tol", svm_cfg.tol, "KKT tolerance");
    auto* qsvm_seed = add_train_common(qsvm);
    qsvm->callback(finish([&]() {
        resolve_train_common(qsvm, qsvm_seed);
        svm_cfg.lambda = resolve(qsvm_lambda, svm_cfg.lambda, config, "svm", "lambda",
                                 svm_cfg.lambda);
        svm_cfg.tol = resolve(qsvm_tol, svm_cfg.tol, config, "svm", "tol", svm_cfg.tol);
        if (config.contains("svm") && config["svm"].contains("C"))
            svm_cfg.c_override = config["svm"]["C"].get<double>();
        if (config.contains("svm") && config["svm"].contains("max_passes"))
            svm_cfg.max_passes = config["svm"]["max_passes"].get<int>();
        int dim = -1;
        if (config.contains("feature_map")) {
            const json& fm = config["feature_map"];
            if (qsvm->get_option("--map")->count() == 0 && fm.contains("kind"))
                map_name = fm["kind"] == "u2_reuploading" ? "u2" : fm["kind"].get<std::string>();
            if (qsvm->get_option("--qubits")->count() == 0 && fm.contains("n_qubits"))
                qubits = fm["n_qubits"];
        }
        const auto spec = make_map_spec(map_name, qubits, dim);
        json effective{{"svm", {{"lambda", svm_cfg.lambda}, {"tol", svm_cfg.tol},
                                {"max_passes", svm_cfg.max_passes}}},
                       {"feature_map", io::fm_spec_to_json(spec.map)}};
        return train_svm_like(tcommon, spec, svm_cfg, effective, "qsvm");
    }));

    auto* csvm = train->add_subcommand("svm", "classical-kernel SVM baseline");
    csvm->add_option("--kernel", kernel_name, "rbf | linear");
    auto* csvm_gamma = csvm->add_option("--gamma", gamma, "rbf gamma (default 1/d)");
    auto* csvm_lambda = csvm->add_option("--lambda", svm_cfg.lambda, "regularization lambda");
    auto* csvm_tol = csvm->add_option("--tol", svm_cfg.tol, "KKT tolerance");
    auto* csvm_seed = add_train_common(csvm);
    csvm->callback(finish([&]() {
        resolve_train_common(csvm, csvm_seed);
        svm_cfg.lambda = resolve(csvm_lambda, svm_cfg.lambda, config, "svm", "lambda",
                                 svm_cfg.lambda);
        svm_cfg.tol = resolve(csvm_tol, svm_cfg.tol, config, "svm", "tol", svm_cfg.tol);
        if (config.contains("svm") && config["svm"].contains("C"))
            svm_cfg.c_override = config["svm"]["C"].get<double>();
        if (config.contains("svm") && config["svm"].contains("max_passes"))
            svm_cfg.max_passes = config["svm"]["max_passes"].get<int>();
        gamma = resolve(csvm_gamma, gamma, config, "kernel", "gamma", gamma);
        if (csvm->get_option("--kernel")->count() == 0 && config.contains("kernel") &&
            config["kernel"].contains("kind"))
            kernel_name = config["kernel"]["kind"].get<std::string>();
        kernels::KernelSpec spec;
        if (kernel_name == "rbf") spec = kernels::KernelSpec::rbf(gamma);
        else if (kernel_name == "linear") spec = kernels::KernelSpec::linear();
        else throw ConfigError("train svm: unknown kernel '" + kernel_name + "'");
        json effective{{"svm", {{"lambda", svm_cfg.lambda}, {"tol", svm_cfg.tol},
                                {"max_passes", svm_cfg.max_passes}}},
                       {"kernel", io::kernel_spec_to_json(spec)}};
        return train_svm_like(tcommon, spec, svm_cfg, effective, "svm");
    }));

    auto* vq = train->add_subcommand("vqc", "variational quantum classifier");
    auto* vq_epochs = vq->add_option("--epochs", vqc_cfg.epochs, "training epochs");
    auto* vq_lr = vq->add_option("--lr", vqc_cfg.learning_rate, "learning rate");
    auto* vq_batch = vq->add_option("--batch", vqc_cfg.batch_size, "batch size");
    tcommon.split.train_size = 576;
    auto* vq_seed = add_train_common(vq);
    vq->callback(finish([&]() {
        resolve_train_common(vq, vq_seed);
        vqc_cfg.epochs = resolve(vq_epochs, vqc_cfg.epochs, config, "vqc", "epochs",
                                 vqc_cfg.epochs);
        vqc_cfg.learning_rate = resolve(vq_lr, vqc_cfg.learning_rate, config, "vqc",
                                        "learning_rate", vqc_cfg.learning_rate);
        vqc_cfg.batch_size = resolve(vq_batch, vqc_cfg.batch_size, config, "vqc",
                                     "batch_size", vqc_cfg.batch_size);
        if (config.contains("vqc")) {
            const json& v = config["vqc"];
            vqc_cfg.adam_beta1 = v.value("adam_beta1", vqc_cfg.adam_beta1);
            vqc_cfg.adam_beta2 = v.value("adam_beta2", vqc_cfg.adam_beta2);
            vqc_cfg.adam_eps = v.value("adam_eps", vqc_cfg.adam_eps);
        }
        vqc_cfg.seed = tcommon.seed;
        json effective{{"vqc", {{"learning_rate", vqc_cfg.learning_rate},
                                {"batch_size", vqc_cfg.batch_size},
                                {"epochs", vqc_cfg.epochs}}}};
        return train_vqc(tcommon, vqc_cfg, effective);
    }));

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "score a saved model on test CSVs");
    std::string model_path, ev_out_dir;
    std::vector<std::string> ev_data;
    ev->add_option("--model", model_path, "model JSON")->required();
    ev->add_option("--data", ev_data, "test CSV(s), one per fold")->required();
    ev->add_option("--out-dir", ev_out_dir, "output directory")->required();
    add_common(ev);
    ev->callback(finish([&]() {
        return cmd_evaluate(model_path, ev_data, ev_out_dir, label_col);
    }));

    // kernel-dump
    auto* kd = app.add_subcommand("kernel-dump", "write a Gram matrix as headerless CSV");
    std::string kd_data, kd_out, kd_kernel = "fidelity";
    kd->add_option("--data", kd_data, "input CSV")->required();
    kd->add_option("--out", kd_out, "output CSV")->required();
    kd->add_option("--kernel", kd_kernel, "fidelity | rbf | linear");
    kd->add_option("--map", map_name, "feature map for fidelity: amplitude | u2");
    kd->add_option("--qubits", qubits, "qubit count for the feature map");
    kd->add_option("--gamma", gamma, "rbf gamma (default 1/d)");
    add_common(kd);
    kd->callback(finish([&]() {
        kernels::KernelSpec spec;
        if (kd_kernel == "fidelity") spec = make_map_spec(map_name, qubits, -1);
        else if (kd_kernel == "rbf") spec = kernels::KernelSpec::rbf(gamma);
        else if (kd_kernel == "linear") spec = kernels::KernelSpec::linear();
        else throw ConfigError("kernel-dump: unknown kernel '" + kd_kernel + "'");
        return cmd_kernel_dump(kd_data, spec, kd_out, label_col);
    }));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

} // namespace qhc::cli
