#include "fakmct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace fakmct {

namespace {

double sorted_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
}

}  // namespace

GroupingMetrics evaluate(const WorkloadMatrix& matrix, const CellConfiguration& config) {
    config.validate(matrix.machine_count(), matrix.part_count());

    GroupingMetrics m;
    m.cells.resize(config.cell_count);
    for (auto c : config.machine_cell) ++m.cells[c - 1].machines;
    for (auto c : config.part_cell) ++m.cells[c - 1].parts;
    for (auto& cell : m.cells) cell.elements = cell.machines * cell.parts;

    // Sums run over sorted terms so that reordering rows or columns cannot change a bit.
    std::vector<std::vector<double>> inside(config.cell_count);
    std::vector<double> outside;
    for (std::size_t i = 0; i < matrix.machine_count(); ++i) {
        for (std::size_t j = 0; j < matrix.part_count(); ++j) {
            const double v = matrix(i, j);
            if (config.machine_cell[i] == config.part_cell[j]) {
                inside[config.machine_cell[i] - 1].push_back(v);
                if (v == 0.0) ++m.cells[config.machine_cell[i] - 1].voids;
            } else {
                outside.push_back(v);
                if (v > 0.0) ++m.exceptional_elements;
            }
        }
    }
    std::vector<double> all_inside;
    for (std::size_t k = 0; k < inside.size(); ++k) {
        m.cells[k].processing_time = sorted_sum(inside[k]);
        all_inside.insert(all_inside.end(), inside[k].begin(), inside[k].end());
    }
    m.time_inside = sorted_sum(all_inside);
    m.time_outside = sorted_sum(outside);

    // Denominator kept in its printed form rather than collapsed to the grand total.
    double cell_time = 0.0;
    double void_penalty = 0.0;
    for (const auto& cell : m.cells) {
        m.voids += cell.voids;
        cell_time += cell.processing_time;
        void_penalty += cell.processing_time * static_cast<double>(cell.voids) / static_cast<double>(cell.elements);
    }
    const double denominator = m.time_outside + cell_time + void_penalty;
    m.mge = denominator > 0.0 ? m.time_inside / denominator : 0.0;
    return m;
}

void to_json(nlohmann::json& j, const GroupingMetrics& metrics) {
    auto cells = nlohmann::json::array();
    for (const auto& c : metrics.cells) {
        cells.push_back({{"machines", c.machines},
                         {"parts", c.parts},
                         {"t_ptk", c.processing_time},
                         {"n_vk", c.voids},
                         {"n_ek", c.elements}});
    }
    j = nlohmann::json{{"mge", metrics.mge},
                       {"ee", metrics.exceptional_elements},
                       {"voids_total", metrics.voids},
                       {"cells", std::move(cells)},
                       {"t_pti", metrics.time_inside},
                       {"t_pto", metrics.time_outside}};
}

std::string format_percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", fraction * 100.0);
    return buf;
}

namespace {

// Calls visit(cuts) for every strictly increasing cuts[0] = 0 < cuts[1] < ... < cuts[parts-1] < n.
void for_each_split(std::size_t n, std::size_t parts, const std::function<void(const std::vector<std::size_t>&)>& visit) {
    if (parts == 0 || parts > n) return;
    std::vector<std::size_t> cuts(parts);
    for (std::size_t i = 0; i < parts; ++i) cuts[i] = i;
    while (true) {
        visit(cuts);
        // Advance the rightmost cut that still has room.
        std::size_t i = parts;
        while (i > 1 && cuts[i - 1] == n - (parts - (i - 1))) --i;
        if (i == 1) return;
        ++cuts[i - 1];
        for (std::size_t t = i; t < parts; ++t) cuts[t] = cuts[t - 1] + 1;
    }
}

std::vector<std::size_t> block_labels(const std::vector<std::size_t>& order, const std::vector<std::size_t>& cuts) {
    std::vector<std::size_t> labels(order.size());
    std::size_t block = 0;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        while (block + 1 < cuts.size() && pos >= cuts[block + 1]) ++block;
        labels[order[pos]] = block + 1;
    }
    return labels;
}

void require_order(const std::vector<std::size_t>& order, std::size_t n, const char* what) {
    std::vector<bool> seen(n, false);
    if (order.size() != n) throw InputError(std::string(what) + " order has wrong length");
    for (auto idx : order) {
        if (idx >= n || seen[idx]) throw InputError(std::string(what) + " order is not a permutation");
        seen[idx] = true;
    }
}

}  // namespace

BlockCandidate reconstruct_block_config(const WorkloadMatrix& matrix, const ReconstructionTarget& target) {
    require_order(target.row_order, matrix.machine_count(), "row");
    require_order(target.col_order, matrix.part_count(), "column");
    if (target.cells == 0) throw InputError("cell count must be >= 1");

    std::vector<BlockCandidate> all;
    for_each_split(matrix.machine_count(), target.cells, [&](const std::vector<std::size_t>& rows) {
        const auto machine_cell = block_labels(target.row_order, rows);
        for_each_split(matrix.part_count(), target.cells, [&](const std::vector<std::size_t>& cols) {
            CellConfiguration config{target.cells, machine_cell, block_labels(target.col_order, cols)};
            auto metrics = evaluate(matrix, config);
            all.push_back(BlockCandidate{rows, cols, std::move(config), std::move(metrics)});
        });
    });

    std::vector<BlockCandidate> matches;
    for (const auto& c : all) {
        if (c.metrics.exceptional_elements == target.exceptional_elements &&
            std::abs(c.metrics.mge - target.mge) <= target.mge_tolerance) {
            matches.push_back(c);
        }
    }
    if (matches.size() == 1) return matches.front();

    const std::string label = std::to_string(target.cells) + " cells, EE " +
                              std::to_string(target.exceptional_elements) + ", MGE " + format_percent(target.mge);
    if (matches.size() > 1) {
        const std::string what = std::to_string(matches.size()) + " block splits match " + label;
        throw ReconstructionError(what, std::move(matches));
    }
    // Nearest by MGE distance, exact-EE candidates first.
    std::stable_sort(all.begin(), all.end(), [&](const BlockCandidate& a, const BlockCandidate& b) {
        const bool a_ee = a.metrics.exceptional_elements == target.exceptional_elements;
        const bool b_ee = b.metrics.exceptional_elements == target.exceptional_elements;
        if (a_ee != b_ee) return a_ee;
        return std::abs(a.metrics.mge - target.mge) < std::abs(b.metrics.mge - target.mge);
    });
    all.resize(std::min<std::size_t>(all.size(), 5));
    throw ReconstructionError("no block split matches " + label, std::move(all));
}

}  // namespace fakmct
