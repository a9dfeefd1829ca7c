#ifndef FAKMCT_CLI_HPP
#define FAKMCT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fakmct/fuzzy_art.hpp"
#include "fakmct/kmeans.hpp"
#include "fakmct/matrix.hpp"
#include "fakmct/metrics.hpp"
#include "fakmct/pipeline.hpp"

namespace fakmct::cli {

enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kInputError = 2,
    kAlgorithmError = 3,
    kFixtureError = 4,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Report for one FAKMCT run; "duration_ms" is the only non-deterministic field.
nlohmann::json make_report(const std::string& input_path, const WorkloadMatrix& matrix,
                           const FuzzyArtParams& art_params, const KMeansParams& km_params,
                           const FakmctResult& result, const GroupingMetrics& metrics);

/// Permuted matrix with '|' between part blocks and a rule between machine blocks.
std::string render_blocks(const WorkloadMatrix& matrix, const CellConfiguration& config);

}  // namespace fakmct::cli

#endif  // FAKMCT_CLI_HPP
