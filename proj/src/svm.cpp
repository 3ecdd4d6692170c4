#include "qhc/svm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace qhc::svm {

double SvmConfig::box_constant(int n) const {
    if (c_override) {
        if (*c_override <= 0.0) throw ConfigError("svm: C must be positive");
        return *c_override;
    }
    if (lambda <= 0.0) throw ConfigError("svm: lambda must be positive");
    return 1.0 / (2.0 * static_cast<double>(n) * lambda);
}

Eigen::VectorXd to_pm_one(const std::vector<int>& labels01) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(labels01.size()));
    for (std::size_t i = 0; i < labels01.size(); ++i)
        y(static_cast<Eigen::Index>(i)) = labels01[i] == 1 ? 1.0 : -1.0;
    return y;
}

double SvmModel::dual_objective(const kernels::KernelMatrix& K) const {
    const Eigen::VectorXd cy = coefficients.cwiseProduct(labels);
    return coefficients.sum() - 0.5 * cy.dot(K * cy);
}

namespace {

constexpr double kStepEps = 1e-12;
constexpr double kBoundEps = 1e-9;

// SMO working state: coefficients, running bias and the error cache
// E_i = f(x_i) - y_i.
struct Smo {
    const kernels::KernelMatrix& K;
    const Eigen::VectorXd& y;
    const double C;
    const double tol;
    Eigen::VectorXd c;
    Eigen::VectorXd E;
    double b = 0.0;
#ifndef NDEBUG
    double last_objective = 0.0;
#endif

    Smo(const kernels::KernelMatrix& K_, const Eigen::VectorXd& y_, double C_, double tol_)
        : K(K_), y(y_), C(C_), tol(tol_), c(Eigen::VectorXd::Zero(y_.size())), E(-y_) {}

    int n() const { return static_cast<int>(y.size()); }

    bool at_lower(int i) const { return c(i) <= kBoundEps; }
    bool at_upper(int i) const { return c(i) >= C - kBoundEps; }
    bool is_free(int i) const { return !at_lower(i) && !at_upper(i); }

    // Magnitude of the KKT violation at i; 0 when satisfied within tol.
    double violation(int i) const {
        const double r = E(i) * y(i);
        if (r < -tol && !at_upper(i)) return -r;
        if (r > tol && !at_lower(i)) return r;
        return 0.0;
    }

    double objective() const {
        const Eigen::VectorXd cy = c.cwiseProduct(y);
        return c.sum() - 0.5 * cy.dot(K * cy);
    }

    // One pair update; returns false when the step is degenerate or makes no
    // progress. The paired update keeps sum(c_i y_i) = 0 exact.
    bool take_step(int i1, int i2) {
        if (i1 == i2) return false;
        const double y1 = y(i1), y2 = y(i2);
        const double c1 = c(i1), c2 = c(i2);
        const double s = y1 * y2;

        double lo, hi;
        if (s < 0.0) {
            lo = std::max(0.0, c2 - c1);
            hi = std::min(C, C + c2 - c1);
        } else {
            lo = std::max(0.0, c1 + c2 - C);
            hi = std::min(C, c1 + c2);
        }
        if (hi - lo < kStepEps) return false;

        const double eta = K(i1, i1) + K(i2, i2) - 2.0 * K(i1, i2);
        if (eta <= 0.0) return false; // non-PD direction, skipped

        double c2_new = c2 + y2 * (E(i1) - E(i2)) / eta;
        c2_new = std::clamp(c2_new, lo, hi);
        if (std::abs(c2_new - c2) < kStepEps * (c2_new + c2 + kStepEps)) return false;
        const double c1_new = c1 + s * (c2 - c2_new);

        const double d1 = c1_new - c1, d2 = c2_new - c2;
        const double b1 = b - E(i1) - y1 * d1 * K(i1, i1) - y2 * d2 * K(i1, i2);
        const double b2 = b - E(i2) - y1 * d1 * K(i1, i2) - y2 * d2 * K(i2, i2);
        double b_new;
        if (c1_new > kBoundEps && c1_new < C - kBoundEps)
            b_new = b1;
        else if (c2_new > kBoundEps && c2_new < C - kBoundEps)
            b_new = b2;
        else
            b_new = 0.5 * (b1 + b2);

        const double db = b_new - b;
        for (int k = 0; k < n(); ++k)
            E(k) += y1 * d1 * K(i1, k) + y2 * d2 * K(i2, k) + db;
        c(i1) = c1_new;
        c(i2) = c2_new;
        b = b_new;

#ifndef NDEBUG
        if (n() <= 64) {
            const double obj = objective();
            assert(obj >= last_objective - 1e-9 && "dual objective must not decrease");
            last_objective = obj;
        }
#endif
        return true;
    }

    // Second-choice heuristic: candidates ordered by |E_i1 - E_j| descending,
    // free points first.
    bool examine(int i1) {
        std::vector<int> cand;
        cand.reserve(static_cast<std::size_t>(n()) - 1);
        for (int j = 0; j < n(); ++j)
            if (j != i1) cand.push_back(j);
        std::stable_sort(cand.begin(), cand.end(), [&](int a, int bnd) {
            const bool fa = is_free(a), fb = is_free(bnd);
            if (fa != fb) return fa;
            return std::abs(E(i1) - E(a)) > std::abs(E(i1) - E(bnd));
        });
        for (int j : cand)
            if (take_step(i1, j)) return true;
        return false;
    }

    // Repeatedly picks the maximal violator in the candidate set and tries a
    // step; exhausts the set. Returns (violators seen, steps taken).
    std::pair<int, int> work_set(bool full) {
        int seen = 0, steps = 0;
        std::vector<char> excluded(static_cast<std::size_t>(n()), 0);
        while (true) {
            int best = -1;
            double best_v = tol;
            for (int i = 0; i < n(); ++i) {
                if (excluded[static_cast<std::size_t>(i)]) continue;
                if (!full && !is_free(i)) continue;
                const double v = violation(i);
                if (v > best_v) {
                    best_v = v;
                    best = i;
                }
            }
            if (best < 0) break;
            ++seen;
            if (examine(best)) {
                ++steps;
                std::fill(excluded.begin(), excluded.end(), 0);
            } else {
                excluded[static_cast<std::size_t>(best)] = 1;
            }
        }
        return {seen, steps};
    }
};

double final_bias(const Smo& smo) {
    // f0_i = f(x_i) - b; KKT equality on free vectors gives b = y_i - f0_i.
    const Eigen::VectorXd f0 = smo.E + smo.y - Eigen::VectorXd::Constant(smo.y.size(), smo.b);
    double sum = 0.0;
    int free_count = 0;
    for (int i = 0; i < smo.n(); ++i) {
        if (smo.is_free(i)) {
            sum += smo.y(i) - f0(i);
            ++free_count;
        }
    }
    if (free_count > 0) return sum / free_count;

    // No free vectors: midpoint of the feasible bias interval. Lower bounds
    // come from {c=0, y=+1} and {c=C, y=-1}; upper bounds from the mirror set.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < smo.n(); ++i) {
        const double v = smo.y(i) - f0(i);
        const bool positive = smo.y(i) > 0.0;
        if ((smo.at_lower(i) && positive) || (smo.at_upper(i) && !positive))
            lo = std::max(lo, v);
        else
            hi = std::min(hi, v);
    }
    if (!std::isfinite(lo)) return std::isfinite(hi) ? hi : 0.0;
    if (!std::isfinite(hi)) return lo;
    return 0.5 * (lo + hi);
}

} // namespace

SvmModel smo_train(const kernels::KernelMatrix& K, const Eigen::VectorXd& y,
                   const SvmConfig& config) {
    const int n = static_cast<int>(y.size());
    if (n < 2 || K.rows() != n || K.cols() != n)
        throw UsageError("smo_train: kernel matrix and labels are inconsistent");
    if (!K.allFinite()) throw DataError("smo_train: non-finite kernel entries");
    bool has_pos = false, has_neg = false;
    for (int i = 0; i < n; ++i) {
        if (y(i) == 1.0) has_pos = true;
        else if (y(i) == -1.0) has_neg = true;
        else throw UsageError("smo_train: labels must be -1 or +1");
    }
    if (!has_pos || !has_neg) throw DataError("smo_train: both classes must be present");

    const double C = config.box_constant(n);
    Smo smo(K, y, C, config.tol);

    bool converged = false;
    int stagnant = 0;
    while (stagnant < config.max_passes) {
        const auto [seen_full, steps_full] = smo.work_set(true);
        if (seen_full == 0) {
            converged = true;
            break;
        }
        const auto [seen_nb, steps_nb] = smo.work_set(false);
        (void)seen_nb;
        if (steps_full + steps_nb == 0) ++stagnant;
        else stagnant = 0;
    }

    SvmModel model;
    model.coefficients = smo.c;
    model.labels = y;
    model.bias = final_bias(smo);
    model.lambda = config.lambda;
    model.box_c = C;
    model.converged = converged;
    for (int i = 0; i < n; ++i)
        if (smo.c(i) > kBoundEps) model.support_indices.push_back(i);
    return model;
}

double decision_value(const SvmModel& model, const Eigen::VectorXd& k_vec) {
    if (k_vec.size() != model.coefficients.size())
        throw UsageError("decision_value: kernel vector length mismatch");
    return model.coefficients.cwiseProduct(model.labels).dot(k_vec) + model.bias;
}

Eigen::VectorXd predict_scores(const SvmModel& model, const Eigen::MatrixXd& X_test) {
    if (X_test.rows() == 0) return Eigen::VectorXd(0);
    if (X_test.cols() != model.training_data.cols())
        throw UsageError("predict_scores: feature dimension mismatch");
    const Eigen::MatrixXd K = kernels::kernel_cross(X_test, model.training_data,
                                                    model.kernel_spec);
    const Eigen::VectorXd cy = model.coefficients.cwiseProduct(model.labels);
    return (K * cy).array() + model.bias;
}

} // namespace qhc::svm
