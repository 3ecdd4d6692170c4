#include "qhc/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace qhc::metrics {

namespace {

void check_two_classes(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw UsageError("metrics: scores and labels differ in length");
    if (scores.empty()) throw DataError("metrics: empty input");
    std::int64_t n1 = 0;
    for (int y : labels) {
        if (y != 0 && y != 1) throw DataError("metrics: labels must be 0 or 1");
        n1 += y;
    }
    if (n1 == 0 || n1 == static_cast<std::int64_t>(labels.size()))
        throw DataError("metrics: both classes must be present");
}

// Indices sorted by ascending score.
std::vector<std::size_t> order_by_score(const std::vector<double>& scores) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    return idx;
}

} // namespace

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_two_classes(scores, labels);
    const auto idx = order_by_score(scores);

    // Walk tie groups in ascending score order. A positive outscoring a
    // negative is concordant; equal scores count half.
    std::int64_t conc = 0, tied = 0, neg_below = 0;
    std::int64_t n1 = 0, n0 = 0;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        std::int64_t pos_g = 0, neg_g = 0;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
            if (labels[idx[j]] == 1) ++pos_g; else ++neg_g;
            ++j;
        }
        conc += pos_g * neg_below;
        tied += pos_g * neg_g;
        neg_below += neg_g;
        n1 += pos_g;
        n0 += neg_g;
        i = j;
    }
    const double denom = static_cast<double>(n1) * static_cast<double>(n0);
    return (static_cast<double>(conc) + 0.5 * static_cast<double>(tied)) / denom;
}

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_two_classes(scores, labels);
    auto idx = order_by_score(scores);
    std::reverse(idx.begin(), idx.end()); // descending thresholds

    std::int64_t n1 = 0, n0 = 0;
    for (int y : labels) (y == 1 ? n1 : n0)++;

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    std::int64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
            if (labels[idx[j]] == 1) ++tp; else ++fp;
            ++j;
        }
        curve.points.emplace_back(static_cast<double>(fp) / static_cast<double>(n0),
                                  static_cast<double>(tp) / static_cast<double>(n1));
        i = j;
    }
    return curve;
}

double RocCurve::trapezoid_area() const {
    double area = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k) {
        const auto& [x0, y0] = points[k - 1];
        const auto& [x1, y1] = points[k];
        area += (x1 - x0) * 0.5 * (y0 + y1);
    }
    return area;
}

AucSummary auc_mean_std(
    const std::vector<std::pair<std::vector<double>, std::vector<int>>>& fold_scores) {
    if (fold_scores.size() < 2)
        throw UsageError("auc_mean_std: need at least 2 folds");

    AucSummary summary;
    std::vector<double> all_scores;
    std::vector<int> all_labels;
    for (std::size_t f = 0; f < fold_scores.size(); ++f) {
        const auto& [s, y] = fold_scores[f];
        try {
            summary.per_fold.push_back(auc(s, y));
        } catch (const DataError& e) {
            throw DataError("fold " + std::to_string(f) + ": " + e.what());
        }
        all_scores.insert(all_scores.end(), s.begin(), s.end());
        all_labels.insert(all_labels.end(), y.begin(), y.end());
    }

    const double n = static_cast<double>(summary.per_fold.size());
    double mean = 0.0;
    for (double a : summary.per_fold) mean += a;
    mean /= n;
    double var = 0.0;
    for (double a : summary.per_fold) var += (a - mean) * (a - mean);
    summary.mean = mean;
    summary.std_dev = std::sqrt(var / n);
    summary.concatenated_auc = auc(all_scores, all_labels);
    return summary;
}

} // namespace qhc::metrics
