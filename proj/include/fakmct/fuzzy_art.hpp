#ifndef FAKMCT_FUZZY_ART_HPP
#define FAKMCT_FUZZY_ART_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "fakmct/groups.hpp"
#include "fakmct/matrix.hpp"

namespace fakmct {

struct FuzzyArtParams {
    double vigilance = 0.75;        // rho
    double choice = 1e-6;           // alpha
    double learning_rate = 1.0;     // beta, 1 = fast learning
    std::size_t max_categories = 100;
    std::size_t max_epochs = 200;

    /// Throws InputError naming the first parameter out of range.
    void validate() const;

    friend bool operator==(const FuzzyArtParams&, const FuzzyArtParams&) = default;
};

/// A part's machine-time column interleaved with its complement: (x1, 1-x1, x2, 1-x2, ...).
class CodedVector {
public:
    /// Complement-codes one column; every value must lie in [0, 1].
    explicit CodedVector(std::span<const double> column);

    std::span<const double> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    /// City-block norm, equal to the original column length.
    double norm() const noexcept;

    friend bool operator==(const CodedVector&, const CodedVector&) = default;

private:
    std::vector<double> entries_;
};

/// One coded vector per part, in column order.
std::vector<CodedVector> complement_code(const WorkloadMatrix& matrix);

/// |a ^ b|: city-block norm of the component-wise minimum.
double fuzzy_and_norm(std::span<const double> a, std::span<const double> b);

/// Category choice |I ^ w| / (alpha + |w|).
double choice(std::span<const double> input, std::span<const double> weight, double alpha);

/// Resonance quantity |I ^ w| / |I|.
double match(std::span<const double> input, std::span<const double> weight);

/// Learning law beta (I ^ w) + (1 - beta) w.
std::vector<double> learn(std::span<const double> weight, std::span<const double> input, double beta);

/// Emitted whenever a category weight is written, for tracing and replay.
struct LearnEvent {
    std::size_t epoch;
    std::size_t part;
    std::size_t category;
    bool committed;  // true when the category was created by this input
    std::span<const double> before;
    std::span<const double> after;
};

using LearnObserver = std::function<void(const LearnEvent&)>;

class FuzzyArtNetwork {
public:
    FuzzyArtNetwork(FuzzyArtParams params, std::size_t input_dimension);

    const FuzzyArtParams& params() const noexcept { return params_; }
    std::size_t input_dimension() const noexcept { return dimension_; }
    std::size_t category_count() const noexcept { return weights_.size(); }
    std::span<const double> weight(std::size_t category) const { return weights_.at(category); }
    const std::vector<std::vector<double>>& weights() const noexcept { return weights_; }

    /// Categories are searched by descending choice (lowest index on ties); the first
    /// whose match reaches the vigilance wins and, with learning enabled, is updated.
    /// With learning enabled and no resonance a new category is committed while
    /// capacity remains. Returns nullopt (reject) otherwise. The observer sees every
    /// weight write; its epoch and part fields are left zero.
    std::optional<std::size_t> present(const CodedVector& input, bool learn_enabled,
                                       const LearnObserver& observer = {});

    /// Classification without learning; never commits.
    std::optional<std::size_t> classify(const CodedVector& input) const;

    friend bool operator==(const FuzzyArtNetwork&, const FuzzyArtNetwork&) = default;

private:
    std::optional<std::size_t> resonate(std::span<const double> input) const;

    FuzzyArtParams params_;
    std::size_t dimension_;
    std::vector<std::vector<double>> weights_;
};

struct ArtTraining {
    FuzzyArtNetwork network;
    PartFamilies families;
    std::size_t epochs = 0;
    bool converged = false;
};

/// Presents every part in column order, epoch after epoch, until an epoch changes no
/// weight by more than 1e-12 and no label, or max_epochs is reached. A final pass
/// without learning yields the part families, compacted in order of first appearance.
ArtTraining train(const WorkloadMatrix& matrix, const FuzzyArtParams& params,
                  const LearnObserver& observer = {});

void to_json(nlohmann::json& j, const FuzzyArtParams& params);
/// Diagnostic dump: parameters, category weights and family labels.
nlohmann::json dump(const ArtTraining& training);

}  // namespace fakmct

#endif  // FAKMCT_FUZZY_ART_HPP
