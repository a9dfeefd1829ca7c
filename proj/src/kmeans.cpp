#include "fakmct/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fakmct/errors.hpp"

namespace fakmct {

void KMeansParams::validate() const {
    if (k == 0) throw InputError("k must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate < 1.0)) throw InputError("learning rate out of range (0, 1)");
    if (!(convergence_tol > 0.0)) throw InputError("convergence tolerance must be > 0");
    if (max_passes == 0) throw InputError("max_passes must be >= 1");
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

std::size_t assign(std::span<const double> x, const SeedPoints& seeds) {
    if (seeds.empty()) throw InputError("no seed points");
    std::size_t best = 0;
    double best_distance = squared_distance(x, seeds[0]);
    for (std::size_t r = 1; r < seeds.size(); ++r) {
        const double d = squared_distance(x, seeds[r]);
        if (d < best_distance) {
            best = r;
            best_distance = d;
        }
    }
    return best;
}

std::size_t update_winner(SeedPoints& seeds, std::span<const double> x, double rate) {
    const std::size_t w = assign(x, seeds);
    auto& m = seeds[w];
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += rate * (x[i] - m[i]);
    return w;
}

SeedPoints farthest_point_seeds(const std::vector<Point>& data, std::size_t k) {
    if (data.empty()) throw InputError("k-means needs at least one point");
    if (k > data.size()) throw InputError("more seeds requested than points");
    const Point origin(data.front().size(), 0.0);

    std::size_t first = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double n = squared_distance(data[i], origin);
        if (n > best_norm) {
            best_norm = n;
            first = i;
        }
    }
    SeedPoints seeds{data[first]};
    std::vector<double> nearest(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) nearest[i] = squared_distance(data[i], seeds[0]);

    while (seeds.size() < k) {
        std::size_t pick = 0;
        for (std::size_t i = 1; i < data.size(); ++i) {
            if (nearest[i] > nearest[pick]) pick = i;
        }
        seeds.push_back(data[pick]);
        for (std::size_t i = 0; i < data.size(); ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(data[i], seeds.back()));
        }
    }
    return seeds;
}

namespace {

void check_data(const std::vector<Point>& data) {
    if (data.empty()) throw InputError("k-means needs at least one point");
    for (const auto& x : data) {
        if (x.size() != data.front().size()) throw InputError("k-means points have inconsistent dimensions");
    }
}

KMeansFit run_online(const std::vector<Point>& data, const KMeansParams& params, KMeansFit result, SeedPoints seeds) {
    while (result.passes < params.max_passes) {
        const SeedPoints before = seeds;
        std::vector<std::size_t> hits(result.k, 0);
        for (const auto& x : data) ++hits[update_winner(seeds, x, params.learning_rate)];
        ++result.passes;

        bool reseeded = false;
        for (std::size_t r = 0; r < result.k; ++r) {
            if (hits[r] != 0) continue;
            std::size_t far = 0;
            for (std::size_t i = 1; i < data.size(); ++i) {
                if (squared_distance(data[i], seeds[r]) > squared_distance(data[far], seeds[r])) far = i;
            }
            seeds[r] = data[far];
            reseeded = true;
        }
        if (reseeded) {
            result.repaired = true;
            continue;
        }

        double displacement = 0.0;
        for (std::size_t r = 0; r < result.k; ++r) {
            displacement = std::max(displacement, std::sqrt(squared_distance(before[r], seeds[r])));
        }
        if (displacement < params.convergence_tol) {
            result.converged = true;
            break;
        }
    }

    result.labels.reserve(data.size());
    for (const auto& x : data) result.labels.push_back(assign(x, seeds));
    result.seeds = std::move(seeds);
    return result;
}

}  // namespace

KMeansFit fit(const std::vector<Point>& data, const KMeansParams& params) {
    params.validate();
    check_data(data);
    if (params.k > data.size()) {
        throw InputError("k = " + std::to_string(params.k) + " exceeds the number of points (" +
                         std::to_string(data.size()) + ")");
    }

    KMeansFit result;
    result.k = params.k;
    const std::size_t distinct = std::set<Point>(data.begin(), data.end()).size();
    if (result.k > distinct) {
        result.warnings.push_back("k reduced from " + std::to_string(params.k) + " to " + std::to_string(distinct) +
                                  " (number of distinct points)");
        result.k = distinct;
    }
    auto seeds = farthest_point_seeds(data, result.k);
    return run_online(data, params, std::move(result), std::move(seeds));
}

KMeansFit fit(const std::vector<Point>& data, const KMeansParams& params, SeedPoints initial) {
    KMeansParams p = params;
    p.k = initial.size();
    p.validate();
    check_data(data);
    for (const auto& s : initial) {
        if (s.size() != data.front().size()) throw InputError("seed dimension does not match the data");
    }
    KMeansFit result;
    result.k = p.k;
    return run_online(data, p, std::move(result), std::move(initial));
}

double within_cluster_ss(const std::vector<Point>& data, std::span<const std::size_t> labels) {
    if (labels.size() != data.size()) throw InputError("label count does not match point count");
    std::map<std::size_t, std::pair<Point, std::size_t>> sums;
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto& [sum, count] = sums[labels[i]];
        if (sum.empty()) sum.assign(data[i].size(), 0.0);
        for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += data[i][d];
        ++count;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& [sum, count] = sums[labels[i]];
        for (std::size_t d = 0; d < sum.size(); ++d) {
            const double diff = data[i][d] - sum[d] / static_cast<double>(count);
            total += diff * diff;
        }
    }
    return total;
}

void to_json(nlohmann::json& j, const KMeansParams& params) {
    j = nlohmann::json{{"k", params.k},
                       {"learning_rate", params.learning_rate},
                       {"convergence_tol", params.convergence_tol},
                       {"max_passes", params.max_passes}};
}

nlohmann::json dump(const KMeansFit& fit) {
    return nlohmann::json{{"k", fit.k},
                          {"seeds", fit.seeds},
                          {"labels", fit.labels},
                          {"passes", fit.passes},
                          {"converged", fit.converged},
                          {"repaired", fit.repaired},
                          {"warnings", fit.warnings}};
}

}  // namespace fakmct
