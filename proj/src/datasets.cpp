#include "fakmct/datasets.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "fakmct/errors.hpp"

namespace fakmct {

namespace {

std::vector<std::size_t> resolve(const std::vector<std::string>& wanted, const std::vector<std::string>& labels,
                                 const char* what) {
    std::vector<std::size_t> order;
    order.reserve(wanted.size());
    for (const auto& name : wanted) {
        const auto it = std::find(labels.begin(), labels.end(), name);
        if (it == labels.end()) throw FixtureError(std::string("unknown ") + what + " label '" + name + "'");
        order.push_back(static_cast<std::size_t>(it - labels.begin()));
    }
    return order;
}

FigureFixture make_fixture(int figure, std::vector<std::string> rows, std::vector<std::string> cols,
                           std::size_t cells, std::size_t ee, double mge, const WorkloadMatrix& matrix) {
    FigureFixture f;
    f.figure = figure;
    f.target.row_order = resolve(rows, matrix.machine_labels(), "machine");
    f.target.col_order = resolve(cols, matrix.part_labels(), "part");
    f.target.cells = cells;
    f.target.exceptional_elements = ee;
    f.target.mge = mge;
    f.row_labels = std::move(rows);
    f.col_labels = std::move(cols);
    return f;
}

}  // namespace

const std::vector<DatasetInfo>& dataset_catalog() {
    static const std::vector<DatasetInfo> catalog{
        {1, "King and Nakornchai (1982)", 5, 7, false},
        {2, "Seifoddini (1989)", 5, 18, false},
        {3, "Kusiak (1987)", 7, 11, false},
        {4, "Seifoddini and Wolfe (1986)", 8, 12, true},
        {5, "Chandrasekharan et al. (1986)", 8, 20, false},
        {6, "Mosier et al. (1985)", 10, 10, false},
        {7, "Askin et al. (1987)", 14, 23, false},
        {8, "Srinivasan et al. (1990)", 16, 30, false},
        {9, "Chandrasekharan et al. (1989)", 24, 40, false},
        {10, "Stanfel (1985)", 30, 50, false},
    };
    return catalog;
}

WorkloadMatrix dataset4() {
    //          p1    p2    p3    p4    p5    p6    p7    p8    p9    p10   p11   p12
    return WorkloadMatrix::from_rows({
        {0.53, 0.99, 0.83, 0.91, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00},  // m1
        {0.82, 0.00, 0.83, 0.91, 0.92, 0.86, 0.97, 0.00, 0.00, 0.79, 0.00, 0.00},  // m2
        {0.00, 0.00, 0.56, 0.88, 0.53, 0.51, 0.98, 0.83, 0.71, 0.00, 0.00, 0.00},  // m3
        {0.00, 0.00, 0.00, 0.00, 0.00, 0.58, 0.54, 0.54, 0.74, 0.63, 0.00, 0.00},  // m4
        {0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.63, 0.53, 0.69, 0.63, 0.00, 0.00},  // m5
        {0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.68, 0.51, 0.61, 0.00, 0.94, 0.00},  // m6
        {0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.68, 0.67},  // m7
        {0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.70, 0.84},  // m8
    });
}

std::vector<FigureFixture> dataset4_figures() {
    const auto matrix = dataset4();
    const std::vector<std::string> cols{"p1", "p2", "p11", "p12", "p3", "p4", "p5", "p6", "p7", "p10", "p8", "p9"};
    const std::vector<std::string> rows_2_3{"m1", "m7", "m8", "m5", "m6", "m2", "m3", "m4"};
    const std::vector<std::string> rows_4{"m1", "m7", "m8", "m2", "m3", "m5", "m6", "m4"};
    return {
        make_fixture(5, rows_2_3, cols, 2, 4, 0.6415, matrix),
        make_fixture(6, rows_2_3, cols, 3, 4, 0.6856, matrix),
        make_fixture(7, rows_4, cols, 4, 10, 0.6586, matrix),
    };
}

std::vector<FigureFixture> load_figure_fixtures(const std::filesystem::path& path, const WorkloadMatrix& matrix) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        std::vector<FigureFixture> fixtures;
        for (const auto& f : doc.at("figures")) {
            fixtures.push_back(make_fixture(f.at("figure").get<int>(), f.at("row_order").get<std::vector<std::string>>(),
                                            f.at("col_order").get<std::vector<std::string>>(),
                                            f.at("cells").get<std::size_t>(), f.at("ee").get<std::size_t>(),
                                            f.at("mge").get<double>(), matrix));
        }
        return fixtures;
    } catch (const nlohmann::json::exception& e) {
        throw FixtureError("malformed fixture " + path.string() + ": " + e.what());
    }
}

}  // namespace fakmct
