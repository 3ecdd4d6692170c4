#include "qhc/model_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace qhc::io {

using nlohmann::json;

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out << content;
        if (!out.good()) {
            out.close();
            fs::remove(tmp);
            throw DataError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

namespace {

json vec_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Eigen::VectorXd vec_from_json(const json& a) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    return v;
}

json mat_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd mat_from_json(const json& rows) {
    if (rows.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw DataError("model json: ragged matrix");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
    }
    return m;
}

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw DataError(std::string("model json: missing key '") + key + "'");
    return *it;
}

} // namespace

json fm_spec_to_json(const circuits::FeatureMapSpec& spec) {
    const char* kind = nullptr;
    switch (spec.kind) {
        case circuits::FeatureMapKind::AmplitudeEncoding: kind = "amplitude"; break;
        case circuits::FeatureMapKind::U2Reuploading: kind = "u2_reuploading"; break;
        case circuits::FeatureMapKind::PauliZZ: kind = "pauli_zz"; break;
    }
    return {{"kind", kind}, {"n_qubits", spec.n_qubits}, {"reps", spec.reps},
            {"expected_dim", spec.expected_dim}};
}

circuits::FeatureMapSpec fm_spec_from_json(const json& j) {
    const std::string kind = require(j, "kind").get<std::string>();
    const int n_qubits = require(j, "n_qubits").get<int>();
    const int reps = j.value("reps", 2);
    if (kind == "amplitude") {
        const int dim = j.value("expected_dim", -1);
        return circuits::FeatureMapSpec::amplitude(n_qubits, dim);
    }
    if (kind == "u2_reuploading") {
        if (n_qubits != 8) throw ConfigError("u2_reuploading map requires 8 qubits");
        return circuits::FeatureMapSpec::u2_reuploading();
    }
    if (kind == "pauli_zz") {
        if (n_qubits != 4) throw ConfigError("pauli_zz map requires 4 qubits");
        return circuits::FeatureMapSpec::pauli_zz(reps);
    }
    throw ConfigError("unknown feature map kind '" + kind + "'");
}

json kernel_spec_to_json(const kernels::KernelSpec& spec) {
    switch (spec.kind) {
        case kernels::KernelKind::QuantumFidelity:
            return {{"kind", "quantum_fidelity"}, {"map", fm_spec_to_json(spec.map)}};
        case kernels::KernelKind::RBF:
            return {{"kind", "rbf"}, {"gamma", spec.gamma}};
        case kernels::KernelKind::Linear:
            return {{"kind", "linear"}};
    }
    throw UsageError("kernel_spec_to_json: unknown kind");
}

kernels::KernelSpec kernel_spec_from_json(const json& j) {
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "quantum_fidelity")
        return kernels::KernelSpec::quantum_fidelity(fm_spec_from_json(require(j, "map")));
    if (kind == "rbf") return kernels::KernelSpec::rbf(j.value("gamma", 0.0));
    if (kind == "linear") return kernels::KernelSpec::linear();
    throw ConfigError("unknown kernel kind '" + kind + "'");
}

json feature_meta_to_json(const svm::FeatureMeta& meta) {
    json j{{"feature_names", meta.feature_names}};
    if (meta.scaler_mins) {
        j["scaler"] = {{"mins", vec_to_json(*meta.scaler_mins)},
                       {"maxs", vec_to_json(*meta.scaler_maxs)}};
    }
    return j;
}

svm::FeatureMeta feature_meta_from_json(const json& j) {
    svm::FeatureMeta meta;
    meta.feature_names = j.value("feature_names", std::vector<std::string>{});
    if (j.contains("scaler")) {
        meta.scaler_mins = vec_from_json(require(j["scaler"], "mins"));
        meta.scaler_maxs = vec_from_json(require(j["scaler"], "maxs"));
    }
    return meta;
}

json auc_summary_to_json(const metrics::AucSummary& summary) {
    return {{"per_fold", summary.per_fold},
            {"mean", summary.mean},
            {"std", summary.std_dev},
            {"concatenated_auc", summary.concatenated_auc}};
}

void write_json(const std::string& path, const json& j) {
    atomic_write(path, j.dump(2) + "\n");
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError(path + ": " + e.what());
    }
    return j;
}

void save_svm_model(const std::string& path, const svm::SvmModel& model) {
    json j{{"model_type", "svm"},
           {"lambda", model.lambda},
           {"C", model.box_c},
           {"bias", model.bias},
           {"coefficients", vec_to_json(model.coefficients)},
           {"labels", vec_to_json(model.labels)},
           {"support_indices", model.support_indices},
           {"kernel_spec", kernel_spec_to_json(model.kernel_spec)},
           {"training_data", mat_to_json(model.training_data)},
           {"feature_meta", feature_meta_to_json(model.feature_meta)},
           {"converged", model.converged}};
    write_json(path, j);
}

svm::SvmModel load_svm_model(const std::string& path) {
    const json j = read_json(path);
    if (j.value("model_type", "") != "svm")
        throw DataError(path + ": not an svm model document");
    svm::SvmModel m;
    m.lambda = require(j, "lambda").get<double>();
    m.box_c = require(j, "C").get<double>();
    m.bias = require(j, "bias").get<double>();
    m.coefficients = vec_from_json(require(j, "coefficients"));
    m.labels = vec_from_json(require(j, "labels"));
    m.support_indices = j.value("support_indices", std::vector<int>{});
    m.kernel_spec = kernel_spec_from_json(require(j, "kernel_spec"));
    m.training_data = mat_from_json(require(j, "training_data"));
    m.feature_meta = feature_meta_from_json(require(j, "feature_meta"));
    m.converged = j.value("converged", true);
    if (m.coefficients.size() != m.labels.size() ||
        m.coefficients.size() != m.training_data.rows())
        throw DataError(path + ": inconsistent model dimensions");
    return m;
}

void save_vqc_model(const std::string& path, const vqc::VqcModel& model,
                    const vqc::TrainConfig& config, double final_epoch_loss,
                    const svm::FeatureMeta& meta) {
    json j{{"model_type", "vqc"},
           {"theta", vec_to_json(model.theta)},
           {"fm_spec", fm_spec_to_json(model.fm_spec)},
           {"vf_spec", {{"n_qubits", model.vf_spec.n_qubits},
                        {"rotation_layers", model.vf_spec.rotation_layers}}},
           {"input_dim", model.input_dim},
           {"train_config", {{"learning_rate", config.learning_rate},
                             {"batch_size", config.batch_size},
                             {"epochs", config.epochs},
                             {"adam_beta1", config.adam_beta1},
                             {"adam_beta2", config.adam_beta2},
                             {"adam_eps", config.adam_eps},
                             {"seed", config.seed}}},
           {"final_epoch_loss", final_epoch_loss},
           {"feature_meta", feature_meta_to_json(meta)}};
    write_json(path, j);
}

VqcDocument load_vqc_model(const std::string& path) {
    const json j = read_json(path);
    if (j.value("model_type", "") != "vqc")
        throw DataError(path + ": not a vqc model document");
    VqcDocument doc;
    doc.model.theta = vec_from_json(require(j, "theta"));
    doc.model.fm_spec = fm_spec_from_json(require(j, "fm_spec"));
    const json& vf = require(j, "vf_spec");
    doc.model.vf_spec.n_qubits = require(vf, "n_qubits").get<int>();
    doc.model.vf_spec.rotation_layers = require(vf, "rotation_layers").get<int>();
    doc.model.input_dim = j.value("input_dim", 8);
    const json& tc = require(j, "train_config");
    doc.config.learning_rate = tc.value("learning_rate", 5e-3);
    doc.config.batch_size = tc.value("batch_size", 50);
    doc.config.epochs = tc.value("epochs", 70);
    doc.config.adam_beta1 = tc.value("adam_beta1", 0.9);
    doc.config.adam_beta2 = tc.value("adam_beta2", 0.999);
    doc.config.adam_eps = tc.value("adam_eps", 1e-8);
    doc.config.seed = tc.value("seed", std::uint64_t{0});
    doc.final_epoch_loss = j.value("final_epoch_loss", 0.0);
    doc.feature_meta = feature_meta_from_json(require(j, "feature_meta"));
    if (doc.model.theta.size() != doc.model.n_params())
        throw DataError(path + ": theta length inconsistent with architecture");
    return doc;
}

void save_ae_model(const std::string& path, const ae::AeModel& model) {
    json weights = json::array();
    json biases = json::array();
    for (const auto& w : model.weights) weights.push_back(mat_to_json(w));
    for (const auto& b : model.biases) biases.push_back(vec_to_json(b));
    json j{{"model_type", "autoencoder"},
           {"layer_sizes", model.architecture.layer_sizes},
           {"weights", std::move(weights)},
           {"biases", std::move(biases)}};
    write_json(path, j);
}

ae::AeModel load_ae_model(const std::string& path) {
    const json j = read_json(path);
    if (j.value("model_type", "") != "autoencoder")
        throw DataError(path + ": not an autoencoder model document");
    ae::AeModel m;
    m.architecture.layer_sizes = require(j, "layer_sizes").get<std::vector<int>>();
    m.architecture.validate();
    for (const auto& w : require(j, "weights")) m.weights.push_back(mat_from_json(w));
    for (const auto& b : require(j, "biases")) m.biases.push_back(vec_from_json(b));
    const auto chain = m.architecture.chain();
    if (m.weights.size() != chain.size() - 1 || m.biases.size() != m.weights.size())
        throw DataError(path + ": layer count mismatch");
    for (std::size_t l = 0; l + 1 < chain.size(); ++l)
        if (m.weights[l].rows() != chain[l + 1] || m.weights[l].cols() != chain[l] ||
            m.biases[l].size() != chain[l + 1])
            throw DataError(path + ": layer shape mismatch");
    return m;
}

std::string model_type_of(const std::string& path) {
    return read_json(path).value("model_type", "");
}

void write_trace_csv(const std::string& path, const std::string& col0,
                     const std::string& col1, const std::vector<double>& values,
                     int first_index) {
    std::string out = col0 + "," + col1 + "\n";
    char buf[32];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g\n",
                      first_index + static_cast<int>(i), values[i]);
        out += buf;
    }
    atomic_write(path, out);
}

void write_roc_csv(const std::string& path, const metrics::RocCurve& curve) {
    std::string out = "fpr,tpr\n";
    char buf[64];
    for (const auto& [fpr, tpr] : curve.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", fpr, tpr);
        out += buf;
    }
    atomic_write(path, out);
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::string out;
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out += buf;
            out += j + 1 < m.cols() ? ',' : '\n';
        }
    }
    atomic_write(path, out);
}

} // namespace qhc::io
