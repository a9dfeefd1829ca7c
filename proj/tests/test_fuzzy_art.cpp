#include <doctest.h>

#include <cmath>
#include <map>

#include "fakmct/datasets.hpp"
#include "fakmct/errors.hpp"
#include "fakmct/fuzzy_art.hpp"
#include "test_support.hpp"

using namespace fakmct;

namespace {

std::vector<double> entries(const CodedVector& v) { return {v.entries().begin(), v.entries().end()}; }

CodedVector coded(std::vector<double> column) { return CodedVector(column); }

}  // namespace

TEST_CASE("complement coding interleaves each value with its complement") {
    CHECK(entries(coded({0.53, 0.82})) == std::vector<double>{0.53, 1.0 - 0.53, 0.82, 1.0 - 0.82});
    CHECK(entries(coded({0.53, 0.82}))[1] == doctest::Approx(0.47));
    CHECK(entries(coded({0.0, 0.0})) == std::vector<double>{0, 1, 0, 1});
    CHECK_THROWS_AS(coded({0.5, 1.2}), InputError);
    CHECK_THROWS_AS(complement_code(dataset4().scaled(1.5)), InputError);
}

TEST_CASE("every coded dataset 4 part has norm 8") {
    const auto m = dataset4();
    const auto coded_parts = complement_code(m);
    REQUIRE(coded_parts.size() == 12);
    for (std::size_t p = 0; p < coded_parts.size(); ++p) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.machine_count(); ++i) sum += m(i, p) + (1.0 - m(i, p));
        CHECK(sum == doctest::Approx(8.0).epsilon(1e-15));
        CHECK(std::abs(coded_parts[p].norm() - 8.0) <= 1e-12);
    }
}

TEST_CASE("choice function") {
    const std::vector<double> half{0.5, 0.5}, ones{1, 1};
    CHECK(choice(half, ones, 1e-6) == doctest::Approx(1.0 / (2.0 + 1e-6)).epsilon(1e-15));
    CHECK(choice(std::vector<double>{0.2, 0.8}, std::vector<double>{0.6, 0.1}, 0.5) == doctest::Approx(0.25));

    const std::vector<double> I{0.3, 0.7, 0.9, 0.1};
    CHECK(choice(I, I, 0.01) == doctest::Approx(2.0 / (0.01 + 2.0)));
    CHECK_THROWS_AS(choice(I, half, 0.1), InputError);
}

TEST_CASE("match function") {
    const auto I = coded({0.53, 0.82, 0.1});
    CHECK(match(I.entries(), std::vector<double>(6, 1.0)) == 1.0);
    CHECK(match(I.entries(), I.entries()) == 1.0);

    // p1 against p2 of dataset 4, summed by hand over the coded columns:
    // (min(.53,.99) + min(.47,.01)) + (min(.82,0) + min(.18,1)) + 6 * (0 + 1) = 6.72
    const auto m = dataset4();
    const auto parts = complement_code(m);
    double overlap = 0.0;
    for (std::size_t i = 0; i < m.machine_count(); ++i) {
        overlap += std::min(m(i, 0), m(i, 1)) + std::min(1.0 - m(i, 0), 1.0 - m(i, 1));
    }
    CHECK(overlap == doctest::Approx(6.72));
    CHECK(match(parts[0].entries(), parts[1].entries()) == doctest::Approx(6.72 / 8.0));
}

TEST_CASE("learning law") {
    CHECK(learn(std::vector<double>{1, 1}, std::vector<double>{0.3, 0.7}, 1.0) == std::vector<double>{0.3, 0.7});
    const auto half = learn(std::vector<double>{0.8, 0.4}, std::vector<double>{0.2, 0.9}, 0.5);
    CHECK(half[0] == doctest::Approx(0.5));
    CHECK(half[1] == doctest::Approx(0.4));
    CHECK_THROWS_AS(learn(std::vector<double>{1, 1}, std::vector<double>{0.3, 0.7}, 0.0), InputError);
    CHECK_THROWS_AS(learn(std::vector<double>{1}, std::vector<double>{0.3, 0.7}, 1.0), InputError);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> w(6), I(6);
        for (auto& x : w) x = u(rng);
        for (auto& x : I) x = u(rng);
        const double beta = trial % 2 ? 1.0 : std::max(1e-3, u(rng));
        const auto next = learn(w, I, beta);
        for (std::size_t i = 0; i < w.size(); ++i) REQUIRE(next[i] <= w[i]);
    }
}

TEST_CASE("present commits, resonates and rejects") {
    FuzzyArtParams params;
    SUBCASE("first input commits category 0 with weight = input") {
        FuzzyArtNetwork net(params, 4);
        const auto I = coded({0.3, 0.8});
        CHECK(net.present(I, true) == std::optional<std::size_t>(0));
        CHECK(net.category_count() == 1);
        CHECK(std::vector<double>(net.weight(0).begin(), net.weight(0).end()) == entries(I));
    }
    SUBCASE("vigilance 0 always resonates with the winner") {
        params.vigilance = 0.0;
        FuzzyArtNetwork net(params, 4);
        net.present(coded({0.9, 0.0}), true);
        CHECK(net.present(coded({0.0, 0.9}), true) == std::optional<std::size_t>(0));
        CHECK(net.category_count() == 1);
    }
    SUBCASE("a distant input opens a new category") {
        FuzzyArtNetwork net(params, 4);
        net.present(coded({0.9, 0.0}), true);
        CHECK(net.present(coded({0.0, 0.9}), true) == std::optional<std::size_t>(1));
    }
    SUBCASE("no learning means no commit") {
        FuzzyArtNetwork net(params, 4);
        CHECK_FALSE(net.present(coded({0.9, 0.0}), false).has_value());
        CHECK(net.category_count() == 0);
    }
    SUBCASE("full capacity rejects") {
        params.max_categories = 1;
        FuzzyArtNetwork net(params, 4);
        net.present(coded({0.9, 0.0}), true);
        CHECK_FALSE(net.present(coded({0.0, 0.9}), true).has_value());
        CHECK(net.category_count() == 1);
    }
    SUBCASE("slow learning blends the commit with the all-ones prototype") {
        params.learning_rate = 0.5;
        FuzzyArtNetwork net(params, 4);
        net.present(coded({0.2, 0.6}), true);
        const auto w = net.weight(0);
        CHECK(w[0] == doctest::Approx(0.6));
        CHECK(w[1] == doctest::Approx(0.9));
        CHECK(w[2] == doctest::Approx(0.8));
        CHECK(w[3] == doctest::Approx(0.7));
    }
    SUBCASE("dimension mismatch") {
        FuzzyArtNetwork net(params, 6);
        CHECK_THROWS_AS(net.present(coded({0.2, 0.6}), true), InputError);
    }
}

TEST_CASE("ties in activation go to the lowest category index") {
    FuzzyArtParams params;
    params.vigilance = 0.85;
    FuzzyArtNetwork net(params, 2);
    net.present(coded({0.4}), true);  // w0 = (0.4, 0.6)
    net.present(coded({0.6}), true);  // match 0.8 < 0.85, so w1 = (0.6, 0.4)
    REQUIRE(net.category_count() == 2);

    // (0.5, 0.5) activates both equally and resonates with both (match 0.9).
    const auto I = coded({0.5});
    REQUIRE(choice(I.entries(), net.weight(0), params.choice) == choice(I.entries(), net.weight(1), params.choice));
    CHECK(net.classify(I) == std::optional<std::size_t>(0));
    CHECK(net.present(I, true) == std::optional<std::size_t>(0));
}

TEST_CASE("dataset 4 families agree with the step-by-step reference") {
    const auto m = dataset4();
    const auto trained = train(m, FuzzyArtParams{});
    const auto reference = testing::reference_families(m, 0.75);
    CHECK(trained.families.part_family == reference);
    // Frozen from the reference procedure.
    CHECK(reference == std::vector<std::size_t>{1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 5, 5});
    CHECK(trained.families.family_count == 5);
    CHECK(trained.converged);
    CHECK(trained.epochs == 2);
}

TEST_CASE("perfect 2-block matrix yields the two blocks") {
    const auto m = WorkloadMatrix::from_rows({{0.9, 0.9, 0, 0}, {0.9, 0.9, 0, 0}, {0, 0, 0.9, 0.9}, {0, 0, 0.9, 0.9}});
    const auto trained = train(m, FuzzyArtParams{});
    CHECK(trained.families.part_family == std::vector<std::size_t>{1, 1, 2, 2});
    CHECK(testing::reference_families(m, 0.75) == trained.families.part_family);
}

TEST_CASE("identical columns share a family") {
    const auto m = WorkloadMatrix::from_rows({{0.4, 0.9, 0.4}, {0.7, 0.0, 0.7}, {0.0, 0.3, 0.0}});
    const auto trained = train(m, FuzzyArtParams{});
    CHECK(trained.families.part_family[0] == trained.families.part_family[2]);
}

TEST_CASE("train agrees with the reference on random matrices") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const auto m = testing::random_matrix(rng, 2 + rng() % 12, 2 + rng() % 20);
        const double rho = std::uniform_real_distribution<double>(0.3, 0.95)(rng);
        FuzzyArtParams params;
        params.vigilance = rho;
        const auto reference = testing::reference_families(m, rho);
        REQUIRE_FALSE(reference.empty());
        CHECK(train(m, params).families.part_family == reference);
    }
}

TEST_CASE("capacity exhaustion names the rejected part") {
    FuzzyArtParams params;
    params.vigilance = 1.0;
    params.max_categories = 1;
    const auto m = WorkloadMatrix::from_rows({{0.9, 0.1}, {0.2, 0.8}});
    try {
        train(m, params);
        FAIL("expected AlgorithmError");
    } catch (const AlgorithmError& e) {
        CHECK(std::string(e.what()).find("part p2") != std::string::npos);
    }
}

TEST_CASE("parameter validation") {
    auto bad = [](auto mutate) {
        FuzzyArtParams p;
        mutate(p);
        return p;
    };
    CHECK_THROWS_WITH_AS(bad([](auto& p) { p.vigilance = 1.5; }).validate(), doctest::Contains("vigilance"), InputError);
    CHECK_THROWS_AS(bad([](auto& p) { p.vigilance = -0.1; }).validate(), InputError);
    CHECK_THROWS_AS(bad([](auto& p) { p.choice = 0.0; }).validate(), InputError);
    CHECK_THROWS_AS(bad([](auto& p) { p.learning_rate = 0.0; }).validate(), InputError);
    CHECK_THROWS_AS(bad([](auto& p) { p.learning_rate = 1.01; }).validate(), InputError);
    CHECK_THROWS_AS(bad([](auto& p) { p.max_categories = 0; }).validate(), InputError);
    CHECK_THROWS_AS(bad([](auto& p) { p.max_epochs = 0; }).validate(), InputError);
    CHECK_NOTHROW(bad([](auto& p) { p.vigilance = 0.0; }).validate());
    CHECK_NOTHROW(bad([](auto& p) { p.vigilance = 1.0; }).validate());
}

TEST_CASE("learning trace properties") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = testing::random_matrix(rng, 2 + rng() % 10, 2 + rng() % 16);
        FuzzyArtParams params;
        params.vigilance = std::uniform_real_distribution<double>(0.0, 0.95)(rng);
        params.learning_rate = trial % 3 == 0 ? 0.6 : 1.0;

        std::map<std::size_t, std::vector<double>> replay;  // fuzzy AND of resonating inputs
        const auto coded_parts = complement_code(m);
        bool monotone = true;
        bool replay_ok = true;
        const auto result = train(m, params, [&](const LearnEvent& e) {
            for (std::size_t i = 0; i < e.after.size(); ++i) monotone = monotone && e.after[i] <= e.before[i];
            const auto I = coded_parts[e.part].entries();
            auto& acc = replay[e.category];
            if (acc.empty()) acc.assign(I.begin(), I.end());
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::min(acc[i], I[i]);
            if (params.learning_rate == 1.0) {
                for (std::size_t i = 0; i < acc.size(); ++i) replay_ok = replay_ok && e.after[i] == acc[i];
            }
        });
        CHECK(monotone);
        CHECK(replay_ok);

        for (const auto& I : coded_parts) {
            CHECK(match(I.entries(), std::vector<double>(I.size(), 1.0)) == 1.0);
            for (const auto& w : result.network.weights()) {
                const double t = choice(I.entries(), w, params.choice);
                CHECK(t >= 0.0);
                CHECK(t <= I.norm() / params.choice);
                for (double x : w) REQUIRE((x >= 0.0 && x <= 1.0));
            }
        }
    }
}

TEST_CASE("vigilance 0 gives a single family") {
    std::mt19937 rng(5);
    FuzzyArtParams params;
    params.vigilance = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = testing::random_matrix(rng, 2 + rng() % 10, 2 + rng() % 20);
        CHECK(train(m, params).families.family_count == 1);
    }
}

TEST_CASE("training is deterministic and dumps as JSON") {
    const auto m = dataset4();
    const auto a = train(m, FuzzyArtParams{});
    const auto b = train(m, FuzzyArtParams{});
    CHECK(a.network == b.network);
    CHECK(a.families == b.families);
    const auto dumped = dump(a);
    CHECK(dumped.dump() == dump(b).dump());
    CHECK(dumped["params"]["vigilance"] == 0.75);
    CHECK(dumped["weights"].size() == a.network.category_count());
    CHECK(dumped["part_family"].size() == 12);
}
