#ifndef FAKMCT_MATRIX_HPP
#define FAKMCT_MATRIX_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace fakmct {

/// Dense machines x parts matrix of operation times, row-major by machine.
///
/// A zero entry means the part does not visit the machine. Construction
/// validates the shape, rejects negative or non-finite values and any
/// machine or part without a single operation. Values above 1 are allowed
/// here (scaled copies are useful for analysis) but rejected by load_csv and
/// by complement coding.
class WorkloadMatrix {
public:
    WorkloadMatrix(std::size_t machines, std::size_t parts, std::vector<double> values,
                   std::vector<std::string> machine_labels = {},
                   std::vector<std::string> part_labels = {});

    /// Builds from nested rows (one inner vector per machine).
    static WorkloadMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t machine_count() const noexcept { return machines_; }
    std::size_t part_count() const noexcept { return parts_; }

    double at(std::size_t machine, std::size_t part) const;
    double operator()(std::size_t machine, std::size_t part) const noexcept {
        return values_[machine * parts_ + part];
    }

    std::span<const double> row(std::size_t machine) const;
    std::vector<double> column(std::size_t part) const;
    std::span<const double> values() const noexcept { return values_; }

    const std::vector<std::string>& machine_labels() const noexcept { return machine_labels_; }
    const std::vector<std::string>& part_labels() const noexcept { return part_labels_; }

    double max_value() const noexcept;
    double total() const noexcept;
    std::size_t nonzero_count() const noexcept;

    /// Every value multiplied by factor (> 0).
    WorkloadMatrix scaled(double factor) const;

    friend bool operator==(const WorkloadMatrix&, const WorkloadMatrix&) = default;

private:
    std::size_t machines_;
    std::size_t parts_;
    std::vector<double> values_;
    std::vector<std::string> machine_labels_;
    std::vector<std::string> part_labels_;
};

/// Joint assignment of machines and parts to cells labelled 1..cell_count.
struct CellConfiguration {
    std::size_t cell_count = 0;
    std::vector<std::size_t> machine_cell;
    std::vector<std::size_t> part_cell;

    /// Throws InputError unless sizes match the matrix, labels lie in 1..cell_count
    /// and every cell holds at least one machine and one part.
    void validate(std::size_t machines, std::size_t parts) const;

    friend bool operator==(const CellConfiguration&, const CellConfiguration&) = default;
};

/// Row and column orders: entry r of `rows` is the original machine shown at position r.
struct Permutation {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    Permutation inverse() const;
};

struct CsvOptions {
    bool normalize = false;
};

/// Parses a workload CSV. A non-numeric cell in row 0 marks a header of part
/// labels; a non-numeric cell in column 0 marks machine labels.
WorkloadMatrix parse_csv(std::istream& in, const CsvOptions& options = {},
                         const std::string& source = "<stream>");
WorkloadMatrix load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes labels and values with 6 significant digits.
void write_csv(std::ostream& out, const WorkloadMatrix& matrix);
void save_csv(const std::filesystem::path& path, const WorkloadMatrix& matrix);

/// Rows ordered by (machine cell, original index), columns by (part cell, original index).
Permutation block_order(const CellConfiguration& config);

WorkloadMatrix apply(const WorkloadMatrix& matrix, const Permutation& perm);
CellConfiguration apply(const CellConfiguration& config, const Permutation& perm);

/// Block-diagonal presentation of matrix under config.
WorkloadMatrix permute(const WorkloadMatrix& matrix, const CellConfiguration& config);

void to_json(nlohmann::json& j, const CellConfiguration& config);
void from_json(const nlohmann::json& j, CellConfiguration& config);

}  // namespace fakmct

#endif  // FAKMCT_MATRIX_HPP
