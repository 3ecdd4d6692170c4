#pragma once

#include <utility>
#include <vector>

#include "qhc/errors.hpp"

namespace qhc::metrics {

// ROC as ordered (fpr, tpr) points from (0,0) to (1,1), thresholds swept
// over distinct score values descending.
struct RocCurve {
    std::vector<std::pair<double, double>> points;

    double trapezoid_area() const;
};

struct AucSummary {
    std::vector<double> per_fold;
    double mean = 0.0;
    double std_dev = 0.0; // population std over folds
    double concatenated_auc = 0.0;
};

// Mann-Whitney statistic: (#concordant pairs + 0.5 * #tied pairs) / (n1*n0).
// Labels are {0,1}; both classes must be present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& labels);

AucSummary auc_mean_std(
    const std::vector<std::pair<std::vector<double>, std::vector<int>>>& fold_scores);

} // namespace qhc::metrics
