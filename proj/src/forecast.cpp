#include "resa/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace resa {

std::vector<double> transport_features(double distance_km, int64_t days_before, int day_of_year,
                                       bool is_peak) {
    return {1.0, distance_km, static_cast<double>(days_before), seasonal_sin(day_of_year),
            seasonal_cos(day_of_year), is_peak ? 1.0 : 0.0};
}

std::vector<double> hotel_features(int64_t days_before, int day_of_year, bool is_peak) {
    return {1.0, static_cast<double>(days_before), seasonal_sin(day_of_year),
            seasonal_cos(day_of_year), is_peak ? 1.0 : 0.0};
}

FeatureRow observation_features(const PriceObservation& obs) {
    FeatureRow row;
    row.features = obs.kind == Kind::Hotel
                       ? hotel_features(obs.days_before_departure, obs.day_of_year, obs.is_peak)
                       : transport_features(obs.distance_km, obs.days_before_departure,
                                            obs.day_of_year, obs.is_peak);
    row.label = obs.observed_price;
    return row;
}

// Solve A x = b (A symmetric positive semi-definite) by Gaussian elimination
// with partial pivoting; a vanishing pivot signals rank deficiency.
static std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
    size_t n = a.size();
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][i]));
    if (scale == 0.0) throw SingularDesign();

    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-10 * scale) throw SingularDesign();
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

RegressionModel fit_ols(const std::vector<FeatureRow>& rows, double ridge) {
    if (rows.empty()) throw std::invalid_argument("no observations");
    size_t dim = rows[0].features.size();
    if (rows.size() < dim) throw std::invalid_argument("fewer observations than features");
    for (const auto& r : rows)
        if (r.features.size() != dim) throw std::invalid_argument("feature dimension mismatch");

    std::vector<std::vector<double>> xtx(dim, std::vector<double>(dim, 0.0));
    std::vector<double> xty(dim, 0.0);
    for (const auto& r : rows) {
        for (size_t i = 0; i < dim; ++i) {
            xty[i] += r.features[i] * r.label;
            for (size_t j = i; j < dim; ++j) xtx[i][j] += r.features[i] * r.features[j];
        }
    }
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < i; ++j) xtx[i][j] = xtx[j][i];
    if (ridge > 0.0)
        for (size_t i = 1; i < dim; ++i) xtx[i][i] += ridge;

    RegressionModel model;
    model.coefficients = solve_linear(std::move(xtx), std::move(xty));

    double sq = 0.0;
    for (const auto& r : rows) {
        double pred = std::inner_product(r.features.begin(), r.features.end(),
                                         model.coefficients.begin(), 0.0);
        sq += (pred - r.label) * (pred - r.label);
    }
    model.rmse = std::sqrt(sq / rows.size());
    return model;
}

double predict_price(const RegressionModel& model, const std::vector<double>& features) {
    if (features.size() != model.coefficients.size())
        throw std::invalid_argument("feature dimension mismatch");
    double p = std::inner_product(features.begin(), features.end(), model.coefficients.begin(),
                                  0.0);
    return model.clip_negative ? std::max(0.0, p) : p;
}

int price_class_of(double price, const std::vector<double>& edges) {
    int cls = 0;
    for (double e : edges) {
        if (price < e) break;
        ++cls;
    }
    return cls;
}

namespace {

struct TreeBuilder {
    const std::vector<FeatureRow>& rows;
    std::vector<int> labels;
    size_t n_classes;
    int max_depth;
    size_t min_samples;
    std::vector<TreeNode> nodes;

    double gini(const std::vector<size_t>& counts, size_t total) const {
        if (total == 0) return 0.0;
        double g = 1.0;
        for (size_t c : counts) {
            double p = static_cast<double>(c) / total;
            g -= p * p;
        }
        return g;
    }

    int majority(const std::vector<size_t>& idx) const {
        std::vector<size_t> counts(n_classes, 0);
        for (size_t i : idx) counts[labels[i]]++;
        // ties to the lower class id
        return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    }

    bool pure(const std::vector<size_t>& idx) const {
        for (size_t i : idx)
            if (labels[i] != labels[idx[0]]) return false;
        return true;
    }

    int make_leaf(const std::vector<size_t>& idx) {
        TreeNode leaf;
        leaf.leaf_class = majority(idx);
        nodes.push_back(leaf);
        return static_cast<int>(nodes.size() - 1);
    }

    int build(const std::vector<size_t>& idx, int depth) {
        if (depth >= max_depth || idx.size() < min_samples || pure(idx)) return make_leaf(idx);

        size_t dim = rows[idx[0]].features.size();
        double best_impurity = std::numeric_limits<double>::infinity();
        int best_feature = -1;
        double best_threshold = 0.0;

        for (size_t f = 0; f < dim; ++f) {
            std::vector<std::pair<double, int>> vals;
            vals.reserve(idx.size());
            for (size_t i : idx) vals.emplace_back(rows[i].features[f], labels[i]);
            std::sort(vals.begin(), vals.end());

            std::vector<size_t> left_counts(n_classes, 0), right_counts(n_classes, 0);
            for (const auto& [v, lbl] : vals) right_counts[lbl]++;
            size_t n_left = 0, n = vals.size();

            for (size_t i = 0; i + 1 < n; ++i) {
                left_counts[vals[i].second]++;
                right_counts[vals[i].second]--;
                ++n_left;
                if (vals[i].first == vals[i + 1].first) continue;
                double threshold = (vals[i].first + vals[i + 1].first) / 2.0;
                double impurity = (n_left * gini(left_counts, n_left) +
                                   (n - n_left) * gini(right_counts, n - n_left)) /
                                  n;
                // strictly-better keeps the lowest feature index / threshold on ties
                if (impurity < best_impurity - 1e-12) {
                    best_impurity = impurity;
                    best_feature = static_cast<int>(f);
                    best_threshold = threshold;
                }
            }
        }

        if (best_feature < 0) return make_leaf(idx);  // all feature values identical

        std::vector<size_t> left, right;
        for (size_t i : idx)
            (rows[i].features[best_feature] <= best_threshold ? left : right).push_back(i);
        if (left.empty() || right.empty()) return make_leaf(idx);

        nodes.emplace_back();
        int me = static_cast<int>(nodes.size() - 1);
        nodes[me].feature = best_feature;
        nodes[me].threshold = best_threshold;
        int l = build(left, depth + 1);
        int r = build(right, depth + 1);
        nodes[me].left = l;
        nodes[me].right = r;
        return me;
    }
};

}  // namespace

TreeModel fit_tree(const std::vector<FeatureRow>& rows, const std::vector<double>& class_edges,
                   int max_depth, size_t min_samples) {
    if (rows.empty()) throw std::invalid_argument("no observations");
    for (size_t i = 1; i < class_edges.size(); ++i)
        if (class_edges[i] <= class_edges[i - 1])
            throw std::invalid_argument("class edges not ascending");
    if (max_depth < 0) throw std::invalid_argument("max_depth negative");
    for (const auto& r : rows)
        if (r.features.size() != rows[0].features.size())
            throw std::invalid_argument("feature dimension mismatch");

    TreeBuilder builder{rows, {}, class_edges.size() + 1, max_depth, min_samples, {}};
    builder.labels.reserve(rows.size());
    for (const auto& r : rows) builder.labels.push_back(price_class_of(r.label, class_edges));

    std::vector<size_t> all(rows.size());
    std::iota(all.begin(), all.end(), size_t{0});
    builder.build(all, 0);

    TreeModel model;
    model.nodes = std::move(builder.nodes);
    model.max_depth = max_depth;
    model.class_edges = class_edges;
    return model;
}

int classify_price_range(const TreeModel& tree, const std::vector<double>& features) {
    if (tree.nodes.empty()) throw std::invalid_argument("empty tree");
    int n = 0;
    while (tree.nodes[n].feature >= 0) {
        const TreeNode& node = tree.nodes[n];
        if (static_cast<size_t>(node.feature) >= features.size())
            throw std::invalid_argument("feature dimension mismatch");
        n = features[node.feature] <= node.threshold ? node.left : node.right;
    }
    return tree.nodes[n].leaf_class;
}

int day_of_week(int64_t day_index) { return static_cast<int>(day_index % 7); }

int season_of(int day_of_year) { return std::min(3, (day_of_year - 1) / 92); }

DemandModel fit_demand(const std::vector<double>& counts, double alpha, int window) {
    if (counts.empty()) throw std::invalid_argument("empty request log");
    if (counts.size() < 366)
        throw std::invalid_argument("need at least one full seasonal cycle (366 days)");
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha outside [0,1]");
    if (window < 1) throw std::invalid_argument("window < 1");

    DemandModel model;
    model.alpha = alpha;
    model.window = window;

    double sums[7][4] = {};
    int64_t n[7][4] = {};
    for (size_t i = 0; i < counts.size(); ++i) {
        int dow = day_of_week(static_cast<int64_t>(i));
        int season = season_of(static_cast<int>(i % 366) + 1);
        sums[dow][season] += counts[i];
        n[dow][season]++;
    }
    for (int d = 0; d < 7; ++d)
        for (int s = 0; s < 4; ++s)
            if (n[d][s] > 0) {
                model.cell_means[d][s] = sums[d][s] / n[d][s];
                model.cell_seen[d][s] = true;
            }

    size_t w = std::min(static_cast<size_t>(window), counts.size());
    model.recent_ma =
        std::accumulate(counts.end() - w, counts.end(), 0.0) / static_cast<double>(w);
    return model;
}

double forecast_demand(const DemandModel& model, int dow, int season) {
    if (dow < 0 || dow > 6 || season < 0 || season > 3)
        throw std::invalid_argument("bad interval descriptor");
    return model.alpha * model.recent_ma + (1.0 - model.alpha) * model.cell_means[dow][season];
}

double eval_accuracy(const std::vector<double>& predicted, const std::vector<double>& truth) {
    if (predicted.size() != truth.size() || truth.empty())
        throw std::invalid_argument("holdout size mismatch");
    double sum = 0.0;
    size_t n = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 0.0) continue;
        sum += std::abs(predicted[i] - truth[i]) / std::abs(truth[i]);
        ++n;
    }
    if (n == 0) throw std::invalid_argument("MAPE undefined: all truths zero");
    return 100.0 - 100.0 * sum / n;
}

double eval_accuracy(const TreeModel& tree, const std::vector<FeatureRow>& holdout,
                     const std::vector<double>& class_edges) {
    if (holdout.empty()) throw std::invalid_argument("empty holdout");
    size_t correct = 0;
    for (const auto& row : holdout)
        if (classify_price_range(tree, row.features) == price_class_of(row.label, class_edges))
            ++correct;
    return 100.0 * correct / holdout.size();
}

// --- JSON ---

void to_json(json& j, const RegressionModel& m) {
    j = json{{"coefficients", m.coefficients}, {"rmse", m.rmse}, {"clip_negative", m.clip_negative}};
}

void from_json(const json& j, RegressionModel& m) {
    j.at("coefficients").get_to(m.coefficients);
    j.at("rmse").get_to(m.rmse);
    m.clip_negative = j.value("clip_negative", true);
}

void to_json(json& j, const TreeModel& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes)
        nodes.push_back(json{{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"leaf_class", n.leaf_class}});
    j = json{{"nodes", nodes}, {"max_depth", t.max_depth}, {"class_edges", t.class_edges}};
}

void from_json(const json& j, TreeModel& t) {
    t.nodes.clear();
    for (const auto& n : j.at("nodes")) {
        TreeNode node;
        n.at("feature").get_to(node.feature);
        n.at("threshold").get_to(node.threshold);
        n.at("left").get_to(node.left);
        n.at("right").get_to(node.right);
        n.at("leaf_class").get_to(node.leaf_class);
        t.nodes.push_back(node);
    }
    j.at("max_depth").get_to(t.max_depth);
    j.at("class_edges").get_to(t.class_edges);
}

void to_json(json& j, const DemandModel& d) {
    json means = json::array();
    for (int dow = 0; dow < 7; ++dow) {
        json row = json::array();
        for (int s = 0; s < 4; ++s) row.push_back(d.cell_means[dow][s]);
        means.push_back(row);
    }
    j = json{{"cell_means", means},
             {"alpha", d.alpha},
             {"recent_ma", d.recent_ma},
             {"window", d.window}};
}

void from_json(const json& j, DemandModel& d) {
    const auto& means = j.at("cell_means");
    for (int dow = 0; dow < 7; ++dow)
        for (int s = 0; s < 4; ++s) {
            d.cell_means[dow][s] = means.at(dow).at(s).get<double>();
            d.cell_seen[dow][s] = true;
        }
    j.at("alpha").get_to(d.alpha);
    j.at("recent_ma").get_to(d.recent_ma);
    j.at("window").get_to(d.window);
}

}  // namespace resa
