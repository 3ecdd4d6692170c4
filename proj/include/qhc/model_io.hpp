#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qhc/autoencoder.hpp"
#include "qhc/evalmetrics.hpp"
#include "qhc/svm.hpp"
#include "qhc/vqc.hpp"

namespace qhc::io {

// Writes to a temp file in the same directory and renames on success, so a
// failed run never leaves a partial artifact behind.
void atomic_write(const std::string& path, const std::string& content);

nlohmann::json fm_spec_to_json(const circuits::FeatureMapSpec& spec);
circuits::FeatureMapSpec fm_spec_from_json(const nlohmann::json& j);

nlohmann::json kernel_spec_to_json(const kernels::KernelSpec& spec);
kernels::KernelSpec kernel_spec_from_json(const nlohmann::json& j);

nlohmann::json feature_meta_to_json(const svm::FeatureMeta& meta);
svm::FeatureMeta feature_meta_from_json(const nlohmann::json& j);

nlohmann::json auc_summary_to_json(const metrics::AucSummary& summary);

// Model documents carry "model_type": "svm" | "vqc" | "autoencoder".
void save_svm_model(const std::string& path, const svm::SvmModel& model);
svm::SvmModel load_svm_model(const std::string& path);

void save_vqc_model(const std::string& path, const vqc::VqcModel& model,
                    const vqc::TrainConfig& config, double final_epoch_loss,
                    const svm::FeatureMeta& meta);
struct VqcDocument {
    vqc::VqcModel model;
    vqc::TrainConfig config;
    double final_epoch_loss = 0.0;
    svm::FeatureMeta feature_meta;
};
VqcDocument load_vqc_model(const std::string& path);

void save_ae_model(const std::string& path, const ae::AeModel& model);
ae::AeModel load_ae_model(const std::string& path);

std::string model_type_of(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// Two-column CSV with a header row.
void write_trace_csv(const std::string& path, const std::string& col0,
                     const std::string& col1, const std::vector<double>& values,
                     int first_index);
void write_roc_csv(const std::string& path, const metrics::RocCurve& curve);

// Headerless row-major CSV of a full matrix, for kernel dumps.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

} // namespace qhc::io
