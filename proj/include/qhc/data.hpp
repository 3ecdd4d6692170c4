#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhc/errors.hpp"

namespace qhc::data {

// Per-feature (min, max) pairs fitted on training data. apply() maps each
// feature to [0,1]; constant features map to 0.5 and out-of-range values clip.
struct MinMaxScaler {
    Eigen::VectorXd mins;
    Eigen::VectorXd maxs;

    bool fitted() const { return mins.size() > 0; }
};

struct Dataset {
    Eigen::MatrixXd features; // n x d
    std::vector<int> labels;  // {0,1}, 1 = signal
    std::vector<std::string> feature_names;
    std::optional<MinMaxScaler> scaler; // set once scaling has been applied

    Eigen::Index rows() const { return features.rows(); }
    Eigen::Index cols() const { return features.cols(); }
    std::vector<double> row(Eigen::Index i) const;
};

struct FoldSet {
    Dataset train;
    std::vector<Dataset> test_folds;
};

// CSV: UTF-8, comma-separated, header row, decimal floats, label column
// (default "label") holding 0/1. Parse errors carry the 1-based line number.
Dataset load_csv(const std::string& path, const std::string& label_column = "label");
void save_csv(const Dataset& ds, const std::string& path,
              const std::string& label_column = "label");

MinMaxScaler fit_minmax(const Dataset& train);
Dataset apply_minmax(const Dataset& ds, const MinMaxScaler& scaler);

// Per feature: max(AUC, 1-AUC) using the raw feature as a score, sorted
// descending (ties broken by column index).
std::vector<std::pair<int, double>> feature_auc_rank(const Dataset& ds);

// Keeps the k most discriminating features, in rank order.
Dataset select_features(const Dataset& ds, int k);

FoldSet split_folds(const Dataset& ds, int train_size, int n_folds, int fold_size,
                    std::uint64_t seed);

// Two isotropic unit-variance Gaussian classes with means
// +-(separation/2)*(1..1)/sqrt(d); first half background, second half signal.
Dataset gen_synthetic(int n, int d, double separation, std::uint64_t seed);

} // namespace qhc::data
