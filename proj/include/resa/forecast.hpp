#pragma once

#include "resa/model.hpp"
#include "resa/synthgen.hpp"

namespace resa {

// One training/query row. Feature layout is fixed per model:
//   transport price models: [1, distance_km, days_before_departure, sin_day, cos_day, is_peak]
//   hotel price model:      [1, days_before_departure, sin_day, cos_day, is_peak]
// (hotels have no distance; an all-zero column would make the design singular).
struct FeatureRow {
    std::vector<double> features;
    double label = 0.0;
};

std::vector<double> transport_features(double distance_km, int64_t days_before, int day_of_year,
                                       bool is_peak);
std::vector<double> hotel_features(int64_t days_before, int day_of_year, bool is_peak);
FeatureRow observation_features(const PriceObservation& obs);

struct RegressionModel {
    std::vector<double> coefficients;
    double rmse = 0.0;
    bool clip_negative = true;
};

struct SingularDesign : std::runtime_error {
    SingularDesign() : std::runtime_error("singular design matrix") {}
};

// Normal equations with partial pivoting. Throws SingularDesign on
// rank-deficient input; ridge > 0 adds ridge to the diagonal (off the
// intercept) if the caller wants to force a solution.
RegressionModel fit_ols(const std::vector<FeatureRow>& rows, double ridge = 0.0);

double predict_price(const RegressionModel& model, const std::vector<double>& features);

// --- price-range decision tree ---

struct TreeNode {
    int feature = -1;      // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;         // node indexes (preorder list)
    int right = -1;
    int leaf_class = -1;
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    int max_depth = 0;
    std::vector<double> class_edges;  // ascending price boundaries

    size_t n_classes() const { return class_edges.size() + 1; }
};

// Class of a price under ascending edges: price < edges[0] -> 0, ... ,
// price >= edges.back() -> edges.size().
int price_class_of(double price, const std::vector<double>& edges);

// Greedy CART: at each node the (feature, threshold) minimizing weighted Gini
// impurity, thresholds at midpoints of consecutive sorted values, ties going
// to the lowest feature index / lowest threshold. Leaves predict the majority
// class, ties to the lower class id.
TreeModel fit_tree(const std::vector<FeatureRow>& rows, const std::vector<double>& class_edges,
                   int max_depth, size_t min_samples = 2);

int classify_price_range(const TreeModel& tree, const std::vector<double>& features);

// --- seasonal demand ---

// 0-based day index -> (day-of-week, season) cell; seasons are 4 blocks of
// the 366-day year.
int day_of_week(int64_t day_index);
int season_of(int day_of_year);

struct DemandModel {
    double cell_means[7][4] = {};
    bool cell_seen[7][4] = {};
    double alpha = 0.3;      // weight on the recent moving average
    double recent_ma = 0.0;  // moving average over the trailing window at fit time
    int window = 7;
};

// counts[i] is the request count for day index i (day_of_year = i % 366 + 1).
// Requires at least one full 366-day cycle.
DemandModel fit_demand(const std::vector<double>& counts, double alpha = 0.3, int window = 7);

double forecast_demand(const DemandModel& model, int dow, int season);

// --- accuracy (the "100 - MAPE" reading of accuracy) ---

// MAPE over points with nonzero truth; throws if every truth is zero.
double eval_accuracy(const std::vector<double>& predicted, const std::vector<double>& truth);
// Classification accuracy percent of the tree over a holdout.
double eval_accuracy(const TreeModel& tree, const std::vector<FeatureRow>& holdout,
                     const std::vector<double>& class_edges);

void to_json(json& j, const RegressionModel& m);
void from_json(const json& j, RegressionModel& m);
void to_json(json& j, const TreeModel& t);
void from_json(const json& j, TreeModel& t);
void to_json(json& j, const DemandModel& d);
void from_json(const json& j, DemandModel& d);

}  // namespace resa
