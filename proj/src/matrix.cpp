#include "fakmct/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "fakmct/errors.hpp"

namespace fakmct {

namespace {

std::vector<std::string> default_labels(char prefix, std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
    return labels;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.emplace_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

WorkloadMatrix::WorkloadMatrix(std::size_t machines, std::size_t parts, std::vector<double> values,
                               std::vector<std::string> machine_labels,
                               std::vector<std::string> part_labels)
    : machines_(machines),
      parts_(parts),
      values_(std::move(values)),
      machine_labels_(std::move(machine_labels)),
      part_labels_(std::move(part_labels)) {
    if (machines_ == 0 || parts_ == 0) throw InputError("workload matrix must have at least one machine and one part");
    if (values_.size() != machines_ * parts_) {
        throw InputError("workload matrix expects " + std::to_string(machines_ * parts_) + " values, got " +
                         std::to_string(values_.size()));
    }
    if (machine_labels_.empty()) machine_labels_ = default_labels('m', machines_);
    if (part_labels_.empty()) part_labels_ = default_labels('p', parts_);
    if (machine_labels_.size() != machines_) throw InputError("machine label count does not match machine count");
    if (part_labels_.size() != parts_) throw InputError("part label count does not match part count");

    for (std::size_t i = 0; i < machines_; ++i) {
        for (std::size_t j = 0; j < parts_; ++j) {
            const double v = values_[i * parts_ + j];
            if (!std::isfinite(v) || v < 0.0) {
                throw InputError("invalid workload " + std::to_string(v) + " at machine " + machine_labels_[i] +
                                 ", part " + part_labels_[j]);
            }
        }
    }
    for (std::size_t i = 0; i < machines_; ++i) {
        const auto r = row(i);
        if (std::none_of(r.begin(), r.end(), [](double v) { return v > 0.0; })) {
            throw InputError("machine " + machine_labels_[i] + " processes no part (empty row)");
        }
    }
    for (std::size_t j = 0; j < parts_; ++j) {
        bool visited = false;
        for (std::size_t i = 0; i < machines_ && !visited; ++i) visited = (*this)(i, j) > 0.0;
        if (!visited) throw InputError("part " + part_labels_[j] + " visits no machine (empty column)");
    }
}

WorkloadMatrix WorkloadMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InputError("workload matrix must have at least one machine and one part");
    const std::size_t parts = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * parts);
    for (const auto& r : rows) {
        if (r.size() != parts) throw InputError("ragged rows in workload matrix");
        values.insert(values.end(), r.begin(), r.end());
    }
    return WorkloadMatrix(rows.size(), parts, std::move(values));
}

double WorkloadMatrix::at(std::size_t machine, std::size_t part) const {
    if (machine >= machines_ || part >= parts_) throw InputError("workload matrix index out of range");
    return (*this)(machine, part);
}

std::span<const double> WorkloadMatrix::row(std::size_t machine) const {
    return std::span<const double>(values_).subspan(machine * parts_, parts_);
}

std::vector<double> WorkloadMatrix::column(std::size_t part) const {
    std::vector<double> col(machines_);
    for (std::size_t i = 0; i < machines_; ++i) col[i] = (*this)(i, part);
    return col;
}

double WorkloadMatrix::max_value() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

double WorkloadMatrix::total() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

std::size_t WorkloadMatrix::nonzero_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](double v) { return v > 0.0; }));
}

WorkloadMatrix WorkloadMatrix::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw InputError("scale factor must be positive");
    std::vector<double> values = values_;
    for (auto& v : values) v *= factor;
    return WorkloadMatrix(machines_, parts_, std::move(values), machine_labels_, part_labels_);
}

void CellConfiguration::validate(std::size_t machines, std::size_t parts) const {
    if (machine_cell.size() != machines || part_cell.size() != parts) {
        throw InputError("cell configuration covers " + std::to_string(machine_cell.size()) + "x" +
                         std::to_string(part_cell.size()) + ", matrix is " + std::to_string(machines) + "x" +
                         std::to_string(parts));
    }
    if (cell_count == 0) throw InputError("cell configuration has no cells");
    std::vector<std::size_t> machines_in(cell_count, 0), parts_in(cell_count, 0);
    for (auto c : machine_cell) {
        if (c < 1 || c > cell_count) throw InputError("machine cell label " + std::to_string(c) + " out of range");
        ++machines_in[c - 1];
    }
    for (auto c : part_cell) {
        if (c < 1 || c > cell_count) throw InputError("part cell label " + std::to_string(c) + " out of range");
        ++parts_in[c - 1];
    }
    for (std::size_t k = 0; k < cell_count; ++k) {
        if (machines_in[k] == 0 || parts_in[k] == 0) {
            throw InputError("cell " + std::to_string(k + 1) + " is empty (" + std::to_string(machines_in[k]) +
                             " machines, " + std::to_string(parts_in[k]) + " parts)");
        }
    }
}

Permutation Permutation::inverse() const {
    Permutation inv{std::vector<std::size_t>(rows.size()), std::vector<std::size_t>(cols.size())};
    for (std::size_t r = 0; r < rows.size(); ++r) inv.rows[rows[r]] = r;
    for (std::size_t c = 0; c < cols.size(); ++c) inv.cols[cols[c]] = c;
    return inv;
}

WorkloadMatrix parse_csv(std::istream& in, const CsvOptions& options, const std::string& source) {
    std::vector<std::vector<std::string>> grid;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        grid.push_back(split_line(line));
    }
    if (grid.empty()) throw InputError(source + ": empty CSV");

    double scratch = 0.0;
    bool has_label_column = false;
    for (std::size_t r = grid.size() > 1 ? 1 : 0; r < grid.size(); ++r) {
        if (!grid[r].empty() && !parse_number(grid[r][0], scratch)) has_label_column = true;
    }
    const std::size_t first_col = has_label_column ? 1 : 0;
    bool has_header = false;
    if (grid.size() > 1) {
        for (std::size_t c = first_col; c < grid[0].size(); ++c) {
            if (!parse_number(grid[0][c], scratch)) has_header = true;
        }
        if (has_label_column && grid[0].size() == 1) has_header = true;
    }

    const std::size_t width = grid[has_header ? 1 : 0].size();
    for (std::size_t r = 0; r < grid.size(); ++r) {
        if (grid[r].size() != width) {
            throw InputError(source + ": ragged rows (line " + std::to_string(r + 1) + " has " +
                             std::to_string(grid[r].size()) + " cells, expected " + std::to_string(width) + ")");
        }
    }
    if (width <= first_col) throw InputError(source + ": no numeric columns");

    const std::size_t first_row = has_header ? 1 : 0;
    const std::size_t machines = grid.size() - first_row;
    const std::size_t parts = width - first_col;
    if (machines == 0) throw InputError(source + ": header without data rows");

    std::vector<double> values;
    values.reserve(machines * parts);
    std::vector<std::string> machine_labels, part_labels;
    if (has_header) part_labels.assign(grid[0].begin() + static_cast<std::ptrdiff_t>(first_col), grid[0].end());
    for (std::size_t r = first_row; r < grid.size(); ++r) {
        if (has_label_column) machine_labels.push_back(grid[r][0]);
        for (std::size_t c = first_col; c < width; ++c) {
            double v = 0.0;
            if (!parse_number(grid[r][c], v)) {
                throw InputError(source + ": non-numeric cell '" + grid[r][c] + "' at line " + std::to_string(r + 1) +
                                 ", column " + std::to_string(c + 1));
            }
            values.push_back(v);
        }
    }

    const double max_value = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    if (max_value > 1.0) {
        if (!options.normalize) {
            throw InputError(source + ": value exceeds 1 (max " + std::to_string(max_value) +
                             "); pass normalize to divide by the maximum");
        }
        for (auto& v : values) v /= max_value;
    }
    return WorkloadMatrix(machines, parts, std::move(values), std::move(machine_labels), std::move(part_labels));
}

WorkloadMatrix load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_csv(in, options, path.string());
}

void write_csv(std::ostream& out, const WorkloadMatrix& matrix) {
    out << "machine";
    for (const auto& label : matrix.part_labels()) out << ',' << label;
    out << '\n';
    const auto old_precision = out.precision(6);
    const auto old_flags = out.flags();
    out.unsetf(std::ios::floatfield);
    for (std::size_t i = 0; i < matrix.machine_count(); ++i) {
        out << matrix.machine_labels()[i];
        for (double v : matrix.row(i)) out << ',' << v;
        out << '\n';
    }
    out.precision(old_precision);
    out.flags(old_flags);
}

void save_csv(const std::filesystem::path& path, const WorkloadMatrix& matrix) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    write_csv(out, matrix);
}

Permutation block_order(const CellConfiguration& config) {
    Permutation perm;
    perm.rows.resize(config.machine_cell.size());
    perm.cols.resize(config.part_cell.size());
    std::iota(perm.rows.begin(), perm.rows.end(), std::size_t{0});
    std::iota(perm.cols.begin(), perm.cols.end(), std::size_t{0});
    std::stable_sort(perm.rows.begin(), perm.rows.end(),
                     [&](std::size_t a, std::size_t b) { return config.machine_cell[a] < config.machine_cell[b]; });
    std::stable_sort(perm.cols.begin(), perm.cols.end(),
                     [&](std::size_t a, std::size_t b) { return config.part_cell[a] < config.part_cell[b]; });
    return perm;
}

WorkloadMatrix apply(const WorkloadMatrix& matrix, const Permutation& perm) {
    if (perm.rows.size() != matrix.machine_count() || perm.cols.size() != matrix.part_count()) {
        throw InputError("permutation does not match matrix dimensions");
    }
    std::vector<double> values;
    values.reserve(matrix.machine_count() * matrix.part_count());
    std::vector<std::string> machine_labels, part_labels;
    for (auto r : perm.rows) {
        machine_labels.push_back(matrix.machine_labels().at(r));
        for (auto c : perm.cols) values.push_back(matrix.at(r, c));
    }
    for (auto c : perm.cols) part_labels.push_back(matrix.part_labels().at(c));
    return WorkloadMatrix(matrix.machine_count(), matrix.part_count(), std::move(values), std::move(machine_labels),
                          std::move(part_labels));
}

CellConfiguration apply(const CellConfiguration& config, const Permutation& perm) {
    if (perm.rows.size() != config.machine_cell.size() || perm.cols.size() != config.part_cell.size()) {
        throw InputError("permutation does not match configuration dimensions");
    }
    CellConfiguration out{config.cell_count, {}, {}};
    for (auto r : perm.rows) out.machine_cell.push_back(config.machine_cell.at(r));
    for (auto c : perm.cols) out.part_cell.push_back(config.part_cell.at(c));
    return out;
}

WorkloadMatrix permute(const WorkloadMatrix& matrix, const CellConfiguration& config) {
    config.validate(matrix.machine_count(), matrix.part_count());
    return apply(matrix, block_order(config));
}

void to_json(nlohmann::json& j, const CellConfiguration& config) {
    j = nlohmann::json{{"cells", config.cell_count},
                       {"machine_cell", config.machine_cell},
                       {"part_cell", config.part_cell}};
}

void from_json(const nlohmann::json& j, CellConfiguration& config) {
    j.at("cells").get_to(config.cell_count);
    j.at("machine_cell").get_to(config.machine_cell);
    j.at("part_cell").get_to(config.part_cell);
}

}  // namespace fakmct
