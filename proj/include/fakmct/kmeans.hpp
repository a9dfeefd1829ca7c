#ifndef FAKMCT_KMEANS_HPP
#define FAKMCT_KMEANS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace fakmct {

using Point = std::vector<double>;
using SeedPoints = std::vector<Point>;

struct KMeansParams {
    std::size_t k = 2;
    double learning_rate = 0.1;
    double convergence_tol = 1e-6;  // max seed displacement over one pass
    std::size_t max_passes = 500;

    void validate() const;

    friend bool operator==(const KMeansParams&, const KMeansParams&) = default;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Index of the nearest seed by squared Euclidean distance, lowest index on ties.
std::size_t assign(std::span<const double> x, const SeedPoints& seeds);

/// Moves the winning seed toward x by rate (x - m_w); other seeds stay put. Returns the winner.
std::size_t update_winner(SeedPoints& seeds, std::span<const double> x, double rate);

/// Greedy farthest-point initialisation: the first seed is the lowest-index point of
/// maximal norm, each next one the point farthest from its nearest chosen seed.
SeedPoints farthest_point_seeds(const std::vector<Point>& data, std::size_t k);

struct KMeansFit {
    SeedPoints seeds;
    std::vector<std::size_t> labels;  // 0-based cluster per point
    std::size_t k = 0;                // effective cluster count after any reduction
    std::size_t passes = 0;
    bool converged = false;
    bool repaired = false;            // an empty cluster was reseeded at least once
    std::vector<std::string> warnings;
};

/// Online K-Means: cycles through data in order applying assign + update_winner
/// until seeds move less than convergence_tol in a pass, then labels every point
/// against the final seeds.
KMeansFit fit(const std::vector<Point>& data, const KMeansParams& params);

/// Same, starting from caller-supplied seeds (params.k is taken from their count).
KMeansFit fit(const std::vector<Point>& data, const KMeansParams& params, SeedPoints initial);

/// Sum over points of the squared distance to their cluster mean.
double within_cluster_ss(const std::vector<Point>& data, std::span<const std::size_t> labels);

void to_json(nlohmann::json& j, const KMeansParams& params);
nlohmann::json dump(const KMeansFit& fit);

}  // namespace fakmct

#endif  // FAKMCT_KMEANS_HPP
