#ifndef FAKMCT_PIPELINE_HPP
#define FAKMCT_PIPELINE_HPP

#include <cstddef>
#include <vector>

#include "fakmct/fuzzy_art.hpp"
#include "fakmct/groups.hpp"
#include "fakmct/kmeans.hpp"
#include "fakmct/matrix.hpp"
#include "fakmct/metrics.hpp"

namespace fakmct {

/// Row i holds, per family f, the total time machine i spends on parts of f.
std::vector<Point> machine_features(const WorkloadMatrix& matrix, const PartFamilies& families);

/// Total workload between the given part labels and machine labels, as a
/// (part label) x (machine label) table indexed from 0.
std::vector<std::vector<double>> cross_workload(const WorkloadMatrix& matrix, std::span<const std::size_t> part_label,
                                                std::size_t part_labels, std::span<const std::size_t> machine_label,
                                                std::size_t machine_labels);

struct FakmctResult {
    CellConfiguration config;
    PartFamilies families;
    MachineGroups groups;
    ArtTraining training;
    KMeansFit machine_fit;
    /// Machine group attached to each family (1-based, before cell compaction).
    std::vector<std::size_t> family_group;
};

/// Fuzzy-ART part families, K-Means machine groups over machine_features, then each
/// family attached to the group it exchanges the most workload with.
FakmctResult run_fakmct(const WorkloadMatrix& matrix, const FuzzyArtParams& art_params,
                        const KMeansParams& km_params);

/// Same as run_fakmct but reuses an already trained network.
FakmctResult run_fakmct(const WorkloadMatrix& matrix, const ArtTraining& training, const KMeansParams& km_params);

struct BaselineResult {
    CellConfiguration config;
    MachineGroups groups;
    KMeansFit machine_fit;
};

/// K-Means over raw machine rows; each part joins the group it loads most.
BaselineResult run_kmeans_baseline(const WorkloadMatrix& matrix, std::size_t k, KMeansParams km_params);

struct SweepRow {
    std::size_t k = 0;
    CellConfiguration config;
    GroupingMetrics metrics;
    bool optimal = false;
};

/// run_fakmct for every k in [k_min, k_max] with one shared Fuzzy-ART training.
/// The optimum maximises MGE, then minimises EE, then k.
std::vector<SweepRow> sweep_cells(const WorkloadMatrix& matrix, std::size_t k_min, std::size_t k_max,
                                  const FuzzyArtParams& art_params, const KMeansParams& km_params);

}  // namespace fakmct

#endif  // FAKMCT_PIPELINE_HPP
