#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fakmct/datasets.hpp"
#include "fakmct/errors.hpp"
#include "fakmct/matrix.hpp"
#include "test_support.hpp"

using namespace fakmct;

namespace {

WorkloadMatrix parse(const std::string& text, bool normalize = false) {
    std::istringstream in(text);
    return parse_csv(in, CsvOptions{normalize});
}

std::string error_of(const std::string& text, bool normalize = false) {
    try {
        parse(text, normalize);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("load_csv parses a bare numeric matrix") {
    const auto m = parse("0.5,0\n0,0.9\n");
    CHECK(m.machine_count() == 2);
    CHECK(m.part_count() == 2);
    CHECK(std::vector<double>(m.values().begin(), m.values().end()) == std::vector<double>{0.5, 0, 0, 0.9});
    CHECK(m.machine_labels() == std::vector<std::string>{"m1", "m2"});
    CHECK(m.part_labels() == std::vector<std::string>{"p1", "p2"});
}

TEST_CASE("dataset 4 fixture file matches the printed values") {
    const auto m = load_csv(testing::data_dir() / "dataset4.csv");
    REQUIRE(m.machine_count() == 8);
    REQUIRE(m.part_count() == 12);
    CHECK(m.at(0, 0) == 0.53);
    CHECK(m.at(1, 0) == 0.82);
    CHECK(m.at(3, 8) == 0.74);
    CHECK(m == dataset4());
}

TEST_CASE("values above 1 need normalization") {
    CHECK(error_of("0.5,2.0\n0.1,0.3\n").find("value exceeds 1") != std::string::npos);

    const auto m = parse("0.5,2.0\n0.1,0.4\n", true);
    CHECK(m.at(0, 1) == 1.0);
    CHECK(m.at(0, 0) == doctest::Approx(0.25));
    CHECK(m.at(1, 1) == doctest::Approx(0.2));
}

TEST_CASE("malformed CSV is rejected with a location") {
    CHECK(error_of("0.5,0.2\n0.1\n").find("ragged") != std::string::npos);
    CHECK(error_of("0.5,0.2\n0.1,abc\n").find("non-numeric") != std::string::npos);
    CHECK(error_of("").find("empty") != std::string::npos);
    CHECK(error_of("-0.5,0.2\n0.1,0.3\n").find("invalid workload") != std::string::npos);
}

TEST_CASE("empty machines and parts are named") {
    CHECK(error_of("0.5,0.2\n0,0\n").find("machine m2") != std::string::npos);
    CHECK(error_of("0.5,0\n0.3,0\n").find("part p2") != std::string::npos);
    CHECK(error_of("machine,a,b\nlathe,0.5,0.2\nmill,0,0\n").find("machine mill") != std::string::npos);
}

TEST_CASE("labels are detected in the first row and column") {
    SUBCASE("header only") {
        const auto m = parse("a,b\n0.5,0.1\n0.2,0.3\n");
        CHECK(m.machine_count() == 2);
        CHECK(m.part_labels() == std::vector<std::string>{"a", "b"});
        CHECK(m.machine_labels() == std::vector<std::string>{"m1", "m2"});
    }
    SUBCASE("label column only") {
        const auto m = parse("lathe,0.5,0.1\nmill,0.2,0.3\n");
        CHECK(m.part_count() == 2);
        CHECK(m.machine_labels() == std::vector<std::string>{"lathe", "mill"});
    }
    SUBCASE("both, with empty corner") {
        const auto m = parse(",a,b\nlathe,0.5,0.1\nmill,0.2,0.3\n");
        CHECK(m.machine_labels() == std::vector<std::string>{"lathe", "mill"});
        CHECK(m.part_labels() == std::vector<std::string>{"a", "b"});
        CHECK(m.at(1, 1) == 0.3);
    }
    SUBCASE("windows line endings and spaces") {
        const auto m = parse(" 0.5 , 0.1\r\n0.2,0.3\r\n");
        CHECK(m.at(0, 0) == 0.5);
        CHECK(m.at(1, 1) == 0.3);
    }
}

TEST_CASE("save then load keeps values to 6 significant digits") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const auto m = testing::random_matrix(rng, 1 + rng() % 9, 1 + rng() % 12);
        std::vector<double> v(m.values().begin(), m.values().end());
        for (auto& x : v) x *= 0.987654321;  // force more digits than are written
        const WorkloadMatrix src(m.machine_count(), m.part_count(), v);
        std::stringstream ss;
        write_csv(ss, src);
        const auto back = parse_csv(ss);
        REQUIRE(back.machine_count() == src.machine_count());
        REQUIRE(back.part_count() == src.part_count());
        CHECK(back.machine_labels() == src.machine_labels());
        CHECK(back.part_labels() == src.part_labels());
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK(std::abs(back.values()[i] - v[i]) <= 5e-6 * std::max(v[i], 1e-300));
        }
    }
}

TEST_CASE("permute with a single cell is the identity") {
    const auto m = dataset4();
    CellConfiguration one{1, std::vector<std::size_t>(8, 1), std::vector<std::size_t>(12, 1)};
    CHECK(permute(m, one) == m);
}

TEST_CASE("permute reverses a 2x2 diagonal when cells are swapped") {
    const auto m = WorkloadMatrix::from_rows({{0.5, 0.0}, {0.0, 0.9}});
    const auto p = permute(m, CellConfiguration{2, {2, 1}, {2, 1}});
    CHECK(p.at(0, 0) == 0.9);
    CHECK(p.at(1, 1) == 0.5);
    CHECK(p.at(0, 1) == 0.0);
    CHECK(p.machine_labels() == std::vector<std::string>{"m2", "m1"});
    CHECK(p.part_labels() == std::vector<std::string>{"p2", "p1"});
}

TEST_CASE("permute groups dataset 4 rows by the 3-cell arrangement") {
    // Cells recovered from the 3-cell figure: {m1 | p1 p2}, {m7 m8 | p11 p12}, rest.
    const auto m = dataset4();
    CellConfiguration c{3, {1, 3, 3, 3, 3, 3, 2, 2}, {1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 2, 2}};
    const auto p = permute(m, c);
    CHECK(p.machine_labels() == std::vector<std::string>{"m1", "m7", "m8", "m2", "m3", "m4", "m5", "m6"});
    CHECK(p.part_labels() ==
          std::vector<std::string>{"p1", "p2", "p11", "p12", "p3", "p4", "p5", "p6", "p7", "p8", "p9", "p10"});
    CHECK(p.at(1, 2) == 0.68);  // m7, p11
}

TEST_CASE("permutation round trip restores the original") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t machines = 2 + rng() % 10, parts = 2 + rng() % 15;
        const auto m = testing::random_matrix(rng, machines, parts);
        const auto c = testing::random_config(rng, machines, parts, 1 + rng() % std::min(machines, parts));
        const auto perm = block_order(c);
        const auto shown = apply(m, perm);

        auto a = std::vector<double>(m.values().begin(), m.values().end());
        auto b = std::vector<double>(shown.values().begin(), shown.values().end());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        for (std::size_t r = 0; r < machines; ++r) {
            for (std::size_t col = 0; col < parts; ++col) {
                REQUIRE(shown(r, col) == m(perm.rows[r], perm.cols[col]));
            }
        }
        CHECK(apply(shown, perm.inverse()) == m);
        CHECK(apply(apply(c, perm), perm.inverse()) == c);
    }
}

TEST_CASE("cell configuration validation") {
    CellConfiguration ok{2, {1, 2}, {2, 1, 1}};
    CHECK_NOTHROW(ok.validate(2, 3));
    CHECK_THROWS_AS(ok.validate(3, 3), InputError);
    CHECK_THROWS_AS((CellConfiguration{2, {1, 1}, {1, 2, 2}}.validate(2, 3)), InputError);
    CHECK_THROWS_AS((CellConfiguration{2, {1, 3}, {1, 2, 2}}.validate(2, 3)), InputError);
    CHECK_THROWS_AS(permute(dataset4(), ok), InputError);
}

TEST_CASE("cell configuration JSON layout") {
    CellConfiguration c{2, {1, 2, 2}, {2, 1}};
    const nlohmann::json j = c;
    CHECK(j.dump() == R"({"cells":2,"machine_cell":[1,2,2],"part_cell":[2,1]})");
    CHECK(j.get<CellConfiguration>() == c);
}

TEST_CASE("scaled matrices") {
    const auto m = dataset4().scaled(2.0);
    CHECK(m.at(0, 1) == 1.98);
    CHECK_THROWS_AS(dataset4().scaled(0.0), InputError);
}
