#include "fakmct/fuzzy_art.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fakmct/errors.hpp"

namespace fakmct {

namespace {

constexpr double kEquilibriumTolerance = 1e-12;

void require_same_size(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
}

double city_block(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

void FuzzyArtParams::validate() const {
    if (!(vigilance >= 0.0 && vigilance <= 1.0)) throw InputError("vigilance out of range [0, 1]");
    if (!(choice > 0.0) || !std::isfinite(choice)) throw InputError("choice parameter alpha must be > 0");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) throw InputError("learning rate beta out of range (0, 1]");
    if (max_categories == 0) throw InputError("max_categories must be >= 1");
    if (max_epochs == 0) throw InputError("max_epochs must be >= 1");
}

CodedVector::CodedVector(std::span<const double> column) {
    entries_.reserve(2 * column.size());
    for (double x : column) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw InputError("complement coding needs values in [0, 1], got " + std::to_string(x));
        }
        entries_.push_back(x);
        entries_.push_back(1.0 - x);
    }
}

double CodedVector::norm() const noexcept { return city_block(entries_); }

std::vector<CodedVector> complement_code(const WorkloadMatrix& matrix) {
    std::vector<CodedVector> coded;
    coded.reserve(matrix.part_count());
    for (std::size_t j = 0; j < matrix.part_count(); ++j) coded.emplace_back(matrix.column(j));
    return coded;
}

double fuzzy_and_norm(std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::min(a[i], b[i]);
    return sum;
}

double choice(std::span<const double> input, std::span<const double> weight, double alpha) {
    if (!(alpha > 0.0)) throw InputError("choice parameter alpha must be > 0");
    return fuzzy_and_norm(input, weight) / (alpha + city_block(weight));
}

double match(std::span<const double> input, std::span<const double> weight) {
    const double overlap = fuzzy_and_norm(input, weight);
    const double norm = city_block(input);
    if (!(norm > 0.0)) throw InputError("match undefined for an input of zero norm");
    return overlap / norm;
}

std::vector<double> learn(std::span<const double> weight, std::span<const double> input, double beta) {
    require_same_size(weight, input);
    if (!(beta > 0.0 && beta <= 1.0)) throw InputError("learning rate beta out of range (0, 1]");
    std::vector<double> updated(weight.size());
    for (std::size_t i = 0; i < weight.size(); ++i) {
        const double conj = std::min(input[i], weight[i]);
        // Written as w - beta (w - I^w) so rounding never lifts a weight above its old value.
        updated[i] = beta == 1.0 ? conj : weight[i] - beta * (weight[i] - conj);
    }
    return updated;
}

FuzzyArtNetwork::FuzzyArtNetwork(FuzzyArtParams params, std::size_t input_dimension)
    : params_(params), dimension_(input_dimension) {
    params_.validate();
    if (dimension_ == 0) throw InputError("network input dimension must be positive");
}

std::optional<std::size_t> FuzzyArtNetwork::resonate(std::span<const double> input) const {
    if (input.size() != dimension_) {
        throw InputError("dimension mismatch: network expects " + std::to_string(dimension_) + ", input has " +
                         std::to_string(input.size()));
    }
    std::vector<double> activation(weights_.size());
    for (std::size_t j = 0; j < weights_.size(); ++j) activation[j] = choice(input, weights_[j], params_.choice);

    std::vector<std::size_t> ranked(weights_.size());
    std::iota(ranked.begin(), ranked.end(), std::size_t{0});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](std::size_t a, std::size_t b) { return activation[a] > activation[b]; });

    for (auto j : ranked) {
        if (match(input, weights_[j]) >= params_.vigilance) return j;
    }
    return std::nullopt;
}

std::optional<std::size_t> FuzzyArtNetwork::present(const CodedVector& input, bool learn_enabled,
                                                     const LearnObserver& observer) {
    const auto entries = input.entries();
    auto winner = resonate(entries);
    if (!learn_enabled) return winner;

    if (winner) {
        auto updated = learn(weights_[*winner], entries, params_.learning_rate);
        if (observer) observer(LearnEvent{0, 0, *winner, false, weights_[*winner], updated});
        weights_[*winner] = std::move(updated);
        return winner;
    }
    if (weights_.size() >= params_.max_categories) return std::nullopt;

    const std::vector<double> uncommitted(dimension_, 1.0);
    weights_.push_back(learn(uncommitted, entries, params_.learning_rate));
    const std::size_t created = weights_.size() - 1;
    if (observer) observer(LearnEvent{0, 0, created, true, uncommitted, weights_.back()});
    return created;
}

std::optional<std::size_t> FuzzyArtNetwork::classify(const CodedVector& input) const {
    return resonate(input.entries());
}

ArtTraining train(const WorkloadMatrix& matrix, const FuzzyArtParams& params, const LearnObserver& observer) {
    params.validate();
    const auto inputs = complement_code(matrix);
    FuzzyArtNetwork network(params, 2 * matrix.machine_count());

    std::vector<std::optional<std::size_t>> labels(inputs.size());
    std::size_t epoch = 0;
    bool converged = false;
    while (epoch < params.max_epochs && !converged) {
        const auto previous_weights = network.weights();
        const auto previous_labels = labels;
        for (std::size_t p = 0; p < inputs.size(); ++p) {
            LearnObserver traced;
            if (observer) {
                traced = [&](const LearnEvent& e) {
                    LearnEvent tagged = e;
                    tagged.epoch = epoch;
                    tagged.part = p;
                    observer(tagged);
                };
            }
            labels[p] = network.present(inputs[p], true, traced);
        }
        ++epoch;

        bool changed = previous_weights.size() != network.category_count() || previous_labels != labels;
        for (std::size_t j = 0; j < previous_weights.size() && !changed; ++j) {
            for (std::size_t i = 0; i < network.input_dimension() && !changed; ++i) {
                changed = std::abs(previous_weights[j][i] - network.weights()[j][i]) > kEquilibriumTolerance;
            }
        }
        converged = !changed;
    }

    std::vector<std::size_t> raw(inputs.size());
    for (std::size_t p = 0; p < inputs.size(); ++p) {
        const auto category = network.classify(inputs[p]);
        if (!category) {
            throw AlgorithmError("part " + matrix.part_labels()[p] + " rejected by every category in the final pass (" +
                                 std::to_string(network.category_count()) + " of " +
                                 std::to_string(params.max_categories) + " categories committed)");
        }
        raw[p] = *category;
    }
    PartFamilies families;
    families.family_count = compact_labels(raw, families.part_family);
    return ArtTraining{std::move(network), std::move(families), epoch, converged};
}

void to_json(nlohmann::json& j, const FuzzyArtParams& params) {
    j = nlohmann::json{{"vigilance", params.vigilance},
                       {"alpha", params.choice},
                       {"beta", params.learning_rate},
                       {"max_categories", params.max_categories},
                       {"max_epochs", params.max_epochs}};
}

nlohmann::json dump(const ArtTraining& training) {
    return nlohmann::json{{"params", training.network.params()},
                          {"categories", training.network.category_count()},
                          {"weights", training.network.weights()},
                          {"part_family", training.families.part_family},
                          {"epochs", training.epochs},
                          {"converged", training.converged}};
}

}  // namespace fakmct
