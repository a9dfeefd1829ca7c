#include "fakmct/pipeline.hpp"

#include <string>

#include "fakmct/errors.hpp"

namespace fakmct {

namespace {

struct CompactGroups {
    MachineGroups groups;
    SeedPoints seeds;  // seed of group g at index g - 1
};

CompactGroups compact_fit(const KMeansFit& fit) {
    CompactGroups out;
    out.groups.group_count = compact_labels(fit.labels, out.groups.machine_group);
    out.seeds.resize(out.groups.group_count);
    for (std::size_t i = 0; i < fit.labels.size(); ++i) {
        out.seeds[out.groups.machine_group[i] - 1] = fit.seeds[fit.labels[i]];
    }
    return out;
}

struct Join {
    CellConfiguration config;
    std::vector<std::size_t> item_group;  // 1-based
};

// Attaches each item (a family, or a single part) to the machine group it shares the
// most workload with, folds item-less groups into the nearest attached group and
// compacts the surviving group labels into cell labels.
Join join_cells(const WorkloadMatrix& matrix, std::span<const std::size_t> part_item, std::size_t items,
                const CompactGroups& compact) {
    const auto& groups = compact.groups;
    const auto load = cross_workload(matrix, part_item, items, groups.machine_group, groups.group_count);

    Join join;
    join.item_group.resize(items);
    std::vector<bool> attached(groups.group_count, false);
    for (std::size_t f = 0; f < items; ++f) {
        std::size_t best = 0;
        for (std::size_t g = 1; g < groups.group_count; ++g) {
            if (load[f][g] > load[f][best]) best = g;
        }
        join.item_group[f] = best + 1;
        attached[best] = true;
    }

    std::vector<std::size_t> target(groups.group_count);
    for (std::size_t g = 0; g < groups.group_count; ++g) {
        if (attached[g]) {
            target[g] = g;
            continue;
        }
        std::size_t best = groups.group_count;
        double best_distance = 0.0;
        for (std::size_t h = 0; h < groups.group_count; ++h) {
            if (!attached[h]) continue;
            const double d = squared_distance(compact.seeds[g], compact.seeds[h]);
            if (best == groups.group_count || d < best_distance) {
                best = h;
                best_distance = d;
            }
        }
        target[g] = best;
    }

    std::vector<std::size_t> cell_of_group(groups.group_count, 0);
    std::size_t cells = 0;
    for (std::size_t g = 0; g < groups.group_count; ++g) {
        if (attached[g]) cell_of_group[g] = ++cells;
    }

    join.config.cell_count = cells;
    join.config.machine_cell.reserve(matrix.machine_count());
    for (auto g : groups.machine_group) join.config.machine_cell.push_back(cell_of_group[target[g - 1]]);
    join.config.part_cell.reserve(matrix.part_count());
    for (auto item : part_item) join.config.part_cell.push_back(cell_of_group[join.item_group[item - 1] - 1]);
    join.config.validate(matrix.machine_count(), matrix.part_count());
    return join;
}

}  // namespace

std::vector<Point> machine_features(const WorkloadMatrix& matrix, const PartFamilies& families) {
    if (families.part_family.size() != matrix.part_count()) {
        throw InputError("part families cover " + std::to_string(families.part_family.size()) + " parts, matrix has " +
                         std::to_string(matrix.part_count()));
    }
    std::vector<Point> features(matrix.machine_count(), Point(families.family_count, 0.0));
    for (std::size_t i = 0; i < matrix.machine_count(); ++i) {
        for (std::size_t p = 0; p < matrix.part_count(); ++p) {
            const auto f = families.part_family[p];
            if (f < 1 || f > families.family_count) throw InputError("family label out of range");
            features[i][f - 1] += matrix(i, p);
        }
    }
    return features;
}

std::vector<std::vector<double>> cross_workload(const WorkloadMatrix& matrix, std::span<const std::size_t> part_label,
                                                std::size_t part_labels, std::span<const std::size_t> machine_label,
                                                std::size_t machine_labels) {
    if (part_label.size() != matrix.part_count() || machine_label.size() != matrix.machine_count()) {
        throw InputError("label maps do not match matrix dimensions");
    }
    std::vector<std::vector<double>> load(part_labels, std::vector<double>(machine_labels, 0.0));
    for (std::size_t i = 0; i < matrix.machine_count(); ++i) {
        for (std::size_t p = 0; p < matrix.part_count(); ++p) {
            load.at(part_label[p] - 1).at(machine_label[i] - 1) += matrix(i, p);
        }
    }
    return load;
}

FakmctResult run_fakmct(const WorkloadMatrix& matrix, const FuzzyArtParams& art_params,
                        const KMeansParams& km_params) {
    km_params.validate();
    if (km_params.k > matrix.machine_count()) {
        throw InputError("k = " + std::to_string(km_params.k) + " exceeds the machine count (" +
                         std::to_string(matrix.machine_count()) + ")");
    }
    return run_fakmct(matrix, train(matrix, art_params), km_params);
}

FakmctResult run_fakmct(const WorkloadMatrix& matrix, const ArtTraining& training, const KMeansParams& km_params) {
    km_params.validate();
    if (km_params.k > matrix.machine_count()) {
        throw InputError("k = " + std::to_string(km_params.k) + " exceeds the machine count (" +
                         std::to_string(matrix.machine_count()) + ")");
    }
    if (training.families.part_family.size() != matrix.part_count()) {
        throw InputError("training does not belong to this matrix");
    }

    auto fit_result = fit(machine_features(matrix, training.families), km_params);
    const auto compact = compact_fit(fit_result);
    auto join = join_cells(matrix, training.families.part_family, training.families.family_count, compact);
    return FakmctResult{std::move(join.config), training.families, compact.groups, training, std::move(fit_result),
                        std::move(join.item_group)};
}

BaselineResult run_kmeans_baseline(const WorkloadMatrix& matrix, std::size_t k, KMeansParams km_params) {
    if (k == 0 || k > std::min(matrix.machine_count(), matrix.part_count())) {
        throw InputError("baseline k must lie in [1, min(machines, parts)]");
    }
    km_params.k = k;
    std::vector<Point> rows;
    rows.reserve(matrix.machine_count());
    for (std::size_t i = 0; i < matrix.machine_count(); ++i) {
        const auto r = matrix.row(i);
        rows.emplace_back(r.begin(), r.end());
    }
    auto fit_result = fit(rows, km_params);
    const auto compact = compact_fit(fit_result);

    std::vector<std::size_t> part_self(matrix.part_count());
    for (std::size_t p = 0; p < part_self.size(); ++p) part_self[p] = p + 1;
    auto join = join_cells(matrix, part_self, matrix.part_count(), compact);
    return BaselineResult{std::move(join.config), compact.groups, std::move(fit_result)};
}

std::vector<SweepRow> sweep_cells(const WorkloadMatrix& matrix, std::size_t k_min, std::size_t k_max,
                                  const FuzzyArtParams& art_params, const KMeansParams& km_params) {
    if (k_min < 1 || k_min > k_max || k_max > matrix.machine_count()) {
        throw InputError("invalid k range [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                         "] for " + std::to_string(matrix.machine_count()) + " machines");
    }
    const auto training = train(matrix, art_params);

    std::vector<SweepRow> rows;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        KMeansParams params = km_params;
        params.k = k;
        auto result = run_fakmct(matrix, training, params);
        auto metrics = evaluate(matrix, result.config);
        rows.push_back(SweepRow{k, std::move(result.config), std::move(metrics), false});
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& a = rows[r].metrics;
        const auto& b = rows[best].metrics;
        if (a.mge > b.mge || (a.mge == b.mge && a.exceptional_elements < b.exceptional_elements)) best = r;
    }
    rows[best].optimal = true;
    return rows;
}

}  // namespace fakmct
