#ifndef FAKMCT_METRICS_HPP
#define FAKMCT_METRICS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "fakmct/errors.hpp"
#include "fakmct/matrix.hpp"

namespace fakmct {

struct CellMetrics {
    std::size_t machines = 0;
    std::size_t parts = 0;
    double processing_time = 0.0;  // T_ptk
    std::size_t voids = 0;         // N_vk, zero entries inside the block
    std::size_t elements = 0;      // N_ek, machines x parts

    friend bool operator==(const CellMetrics&, const CellMetrics&) = default;
};

struct GroupingMetrics {
    double time_inside = 0.0;   // T_pti
    double time_outside = 0.0;  // T_pto
    std::vector<CellMetrics> cells;
    std::size_t exceptional_elements = 0;
    std::size_t voids = 0;
    double mge = 0.0;           // modified grouping efficiency in [0, 1]

    friend bool operator==(const GroupingMetrics&, const GroupingMetrics&) = default;
};

/// Exceptional elements, voids, per-cell processing time and modified grouping
/// efficiency T_pti / (T_pto + sum T_ptk + sum T_ptk N_vk / N_ek).
GroupingMetrics evaluate(const WorkloadMatrix& matrix, const CellConfiguration& config);

void to_json(nlohmann::json& j, const GroupingMetrics& metrics);

/// "68.56%"
std::string format_percent(double fraction);

/// One way of cutting a displayed ordering into contiguous blocks.
struct BlockCandidate {
    std::vector<std::size_t> row_cuts;  // block starts in display order, first is 0
    std::vector<std::size_t> col_cuts;
    CellConfiguration config;
    GroupingMetrics metrics;
};

struct ReconstructionTarget {
    std::vector<std::size_t> row_order;  // machine shown at each display row
    std::vector<std::size_t> col_order;  // part shown at each display column
    std::size_t cells = 1;
    std::size_t exceptional_elements = 0;
    double mge = 0.0;
    double mge_tolerance = 0.0005;
};

class ReconstructionError : public FixtureError {
public:
    ReconstructionError(const std::string& what, std::vector<BlockCandidate> candidates)
        : FixtureError(what), candidates_(std::move(candidates)) {}
    /// Nearest misses, or every match when the target is ambiguous.
    const std::vector<BlockCandidate>& candidates() const noexcept { return candidates_; }

private:
    std::vector<BlockCandidate> candidates_;
};

/// Enumerates every split of the displayed row and column orders into `cells`
/// contiguous blocks, paired in display order, and returns the unique split whose
/// exceptional elements equal the target and whose MGE lies within tolerance.
BlockCandidate reconstruct_block_config(const WorkloadMatrix& matrix, const ReconstructionTarget& target);

}  // namespace fakmct

#endif  // FAKMCT_METRICS_HPP
