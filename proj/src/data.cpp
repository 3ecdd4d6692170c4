#include "qhc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "qhc/evalmetrics.hpp"
#include "qhc/model_io.hpp"

namespace qhc::data {

std::vector<double> Dataset::row(Eigen::Index i) const {
    std::vector<double> out(static_cast<std::size_t>(cols()));
    for (Eigen::Index j = 0; j < cols(); ++j) out[static_cast<std::size_t>(j)] = features(i, j);
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    while (p < e && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (ec != std::errc() || p != e)
        throw DataError("csv line " + std::to_string(line_no) + ": non-numeric cell '" + s + "'");
    return v;
}

} // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_line(line);
    int label_idx = -1;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) {
            if (label_idx >= 0)
                throw DataError(path + ": duplicate label column '" + label_column + "'");
            label_idx = static_cast<int>(j);
        } else {
            names.push_back(header[j]);
        }
    }
    if (label_idx < 0)
        throw DataError(path + ": missing label column '" + label_column + "'");

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != header.size())
            throw DataError("csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(names.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (static_cast<int>(j) == label_idx) {
                const double y = parse_double(fields[j], line_no);
                if (y != 0.0 && y != 1.0)
                    throw DataError("csv line " + std::to_string(line_no) +
                                    ": label must be 0 or 1, got '" + fields[j] + "'");
                labels.push_back(static_cast<int>(y));
            } else {
                row.push_back(parse_double(fields[j], line_no));
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError(path + ": no data rows");

    Dataset ds;
    ds.feature_names = std::move(names);
    ds.labels = std::move(labels);
    ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(ds.feature_names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path, const std::string& label_column) {
    std::string out;
    for (std::size_t j = 0; j < ds.feature_names.size(); ++j) {
        out += ds.feature_names[j];
        out += ',';
    }
    out += label_column;
    out += '\n';

    char buf[32];
    for (Eigen::Index i = 0; i < ds.rows(); ++i) {
        for (Eigen::Index j = 0; j < ds.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.features(i, j));
            out += buf;
            out += ',';
        }
        out += std::to_string(ds.labels[static_cast<std::size_t>(i)]);
        out += '\n';
    }
    io::atomic_write(path, out);
}

MinMaxScaler fit_minmax(const Dataset& train) {
    if (train.rows() == 0) throw DataError("fit_minmax: empty dataset");
    MinMaxScaler s;
    s.mins = train.features.colwise().minCoeff();
    s.maxs = train.features.colwise().maxCoeff();
    return s;
}

Dataset apply_minmax(const Dataset& ds, const MinMaxScaler& scaler) {
    if (!scaler.fitted()) throw UsageError("apply_minmax: scaler not fitted");
    if (scaler.mins.size() != ds.cols())
        throw UsageError("apply_minmax: scaler dimension mismatch");
    Dataset out = ds;
    for (Eigen::Index j = 0; j < ds.cols(); ++j) {
        const double lo = scaler.mins(j);
        const double range = scaler.maxs(j) - lo;
        for (Eigen::Index i = 0; i < ds.rows(); ++i) {
            double v = range > 0.0 ? (ds.features(i, j) - lo) / range : 0.5;
            out.features(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    out.scaler = scaler;
    return out;
}

std::vector<std::pair<int, double>> feature_auc_rank(const Dataset& ds) {
    std::vector<std::pair<int, double>> ranked;
    for (Eigen::Index j = 0; j < ds.cols(); ++j) {
        std::vector<double> scores(static_cast<std::size_t>(ds.rows()));
        for (Eigen::Index i = 0; i < ds.rows(); ++i)
            scores[static_cast<std::size_t>(i)] = ds.features(i, j);
        const double a = metrics::auc(scores, ds.labels);
        ranked.emplace_back(static_cast<int>(j), std::max(a, 1.0 - a));
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second > b.second; // ties keep column order via stability
    });
    return ranked;
}

Dataset select_features(const Dataset& ds, int k) {
    if (k < 1 || k > ds.cols())
        throw UsageError("select_features: k=" + std::to_string(k) + " out of range for " +
                         std::to_string(ds.cols()) + " features");
    const auto ranked = feature_auc_rank(ds);
    Dataset out;
    out.labels = ds.labels;
    out.features.resize(ds.rows(), k);
    for (int r = 0; r < k; ++r) {
        const int j = ranked[static_cast<std::size_t>(r)].first;
        out.features.col(r) = ds.features.col(j);
        out.feature_names.push_back(ds.feature_names[static_cast<std::size_t>(j)]);
    }
    return out;
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& idx, std::size_t begin,
                  std::size_t count) {
    Dataset out;
    out.feature_names = ds.feature_names;
    out.features.resize(static_cast<Eigen::Index>(count), ds.cols());
    out.labels.resize(count);
    for (std::size_t r = 0; r < count; ++r) {
        const auto src = static_cast<Eigen::Index>(idx[begin + r]);
        out.features.row(static_cast<Eigen::Index>(r)) = ds.features.row(src);
        out.labels[r] = ds.labels[static_cast<std::size_t>(src)];
    }
    return out;
}

} // namespace

FoldSet split_folds(const Dataset& ds, int train_size, int n_folds, int fold_size,
                    std::uint64_t seed) {
    if (train_size < 1 || n_folds < 1 || fold_size < 1)
        throw UsageError("split_folds: sizes must be positive");
    const std::size_t need = static_cast<std::size_t>(train_size) +
                             static_cast<std::size_t>(n_folds) * fold_size;
    if (need > static_cast<std::size_t>(ds.rows()))
        throw DataError("split_folds: need " + std::to_string(need) + " rows, have " +
                        std::to_string(ds.rows()));

    std::vector<std::size_t> idx(static_cast<std::size_t>(ds.rows()));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);

    FoldSet folds;
    folds.train = take_rows(ds, idx, 0, static_cast<std::size_t>(train_size));
    std::size_t at = static_cast<std::size_t>(train_size);
    for (int f = 0; f < n_folds; ++f) {
        folds.test_folds.push_back(take_rows(ds, idx, at, static_cast<std::size_t>(fold_size)));
        at += static_cast<std::size_t>(fold_size);
    }
    return folds;
}

Dataset gen_synthetic(int n, int d, double separation, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw UsageError("gen_synthetic: n must be even and >= 2");
    if (d < 1) throw UsageError("gen_synthetic: d must be >= 1");
    if (separation < 0.0) throw UsageError("gen_synthetic: separation must be >= 0");

    const double shift = separation / 2.0 / std::sqrt(static_cast<double>(d));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Dataset ds;
    ds.features.resize(n, d);
    ds.labels.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < d; ++j) ds.feature_names.push_back("f" + std::to_string(j));
    for (int i = 0; i < n; ++i) {
        const int label = i < n / 2 ? 0 : 1;
        const double mu = label == 1 ? shift : -shift;
        ds.labels[static_cast<std::size_t>(i)] = label;
        for (int j = 0; j < d; ++j) ds.features(i, j) = mu + gauss(rng);
    }
    return ds;
}

} // namespace qhc::data
