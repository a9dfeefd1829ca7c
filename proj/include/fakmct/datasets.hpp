#ifndef FAKMCT_DATASETS_HPP
#define FAKMCT_DATASETS_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "fakmct/matrix.hpp"
#include "fakmct/metrics.hpp"

namespace fakmct {

/// Benchmark cell-formation problems known by size. Only dataset 4 ships with values.
struct DatasetInfo {
    int number;
    std::string source;
    std::size_t machines;
    std::size_t parts;
    bool bundled;
};

const std::vector<DatasetInfo>& dataset_catalog();

/// The 8 x 12 workload matrix of Seifoddini and Wolfe (1986), in natural m1..m8 / p1..p12 order.
WorkloadMatrix dataset4();

/// A published block-diagonal arrangement of dataset 4 and the metrics reported for it.
struct FigureFixture {
    int figure = 0;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    ReconstructionTarget target;
};

/// Built-in fixtures for the 2-, 3- and 4-cell arrangements.
std::vector<FigureFixture> dataset4_figures();

/// Reads fixtures from JSON, resolving labels against matrix.
std::vector<FigureFixture> load_figure_fixtures(const std::filesystem::path& path, const WorkloadMatrix& matrix);

}  // namespace fakmct

#endif  // FAKMCT_DATASETS_HPP
