#include "fakmct/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fakmct/datasets.hpp"
#include "fakmct/errors.hpp"

#ifndef FAKMCT_DATA_DIR
#define FAKMCT_DATA_DIR "data"
#endif

namespace fakmct::cli {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string input;
    bool normalize = false;
    FuzzyArtParams art;
    KMeansParams km;
    std::string out_dir;
    std::string format = "json";
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--input", o.input, "Workload matrix CSV (machines in rows, parts in columns)")->required();
    cmd.add_flag("--normalize", o.normalize, "Divide by the global maximum when values exceed 1");
    cmd.add_option("--vigilance", o.art.vigilance, "Fuzzy-ART vigilance rho")->capture_default_str();
    cmd.add_option("--alpha", o.art.choice, "Fuzzy-ART choice parameter")->capture_default_str();
    cmd.add_option("--beta", o.art.learning_rate, "Fuzzy-ART learning rate")->capture_default_str();
    cmd.add_option("--epochs", o.art.max_epochs, "Fuzzy-ART epoch budget")->capture_default_str();
    cmd.add_option("--max-categories", o.art.max_categories, "Fuzzy-ART category capacity")->capture_default_str();
    cmd.add_option("--learning-rate", o.km.learning_rate, "K-Means seed learning rate")->capture_default_str();
    cmd.add_option("--tolerance", o.km.convergence_tol, "K-Means convergence tolerance")->capture_default_str();
    cmd.add_option("--max-passes", o.km.max_passes, "K-Means pass budget")->capture_default_str();
    cmd.add_option("--out", o.out_dir, "Directory for output files");
    cmd.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void validate_common(const CommonOptions& o) {
    o.art.validate();
    KMeansParams km = o.km;
    km.k = 1;
    km.validate();
}

std::string join_labels(const std::vector<std::string>& labels, const std::vector<std::size_t>& order,
                        const std::vector<std::size_t>& cuts) {
    std::string s;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (pos > 0) s += std::find(cuts.begin(), cuts.end(), pos) != cuts.end() ? " | " : " ";
        s += labels[order[pos]];
    }
    return s;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path.string());
    f << text;
}

fs::path prepare_out_dir(const std::string& dir) {
    const fs::path path = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw InputError("cannot create output directory " + path.string() + ": " + ec.message());
    return path;
}

std::string summary_line(const std::string& method, std::size_t k, const GroupingMetrics& m) {
    std::ostringstream s;
    s << method << " k=" << k << ": cells=" << m.cells.size() << " EE=" << m.exceptional_elements
      << " voids=" << m.voids << " MGE=" << format_percent(m.mge);
    return s.str();
}

int cmd_cluster(const CommonOptions& o, std::size_t k, const std::string& baseline, std::ostream& out) {
    validate_common(o);
    const auto start = std::chrono::steady_clock::now();
    const auto matrix = load_csv(o.input, CsvOptions{o.normalize});
    KMeansParams km = o.km;
    km.k = k;
    km.validate();
    if (k > matrix.machine_count()) {
        throw InputError("k = " + std::to_string(k) + " exceeds the machine count (" +
                         std::to_string(matrix.machine_count()) + ")");
    }

    const auto result = run_fakmct(matrix, o.art, km);
    const auto metrics = evaluate(matrix, result.config);
    auto report = make_report(o.input, matrix, o.art, km, result, metrics);
    for (const auto& w : result.machine_fit.warnings) out << "warning: " << w << '\n';
    out << summary_line("FAKMCT", k, metrics) << '\n';

    std::string csv_report = "method,k,cells,ee,voids,mge,t_pti,t_pto\n";
    auto csv_row = [&](const std::string& method, const GroupingMetrics& m) {
        std::ostringstream s;
        s << std::setprecision(17) << method << ',' << k << ',' << m.cells.size() << ',' << m.exceptional_elements
          << ',' << m.voids << ',' << m.mge << ',' << m.time_inside << ',' << m.time_outside << '\n';
        csv_report += s.str();
    };
    csv_row("fakmct", metrics);

    if (!baseline.empty()) {
        const auto base = run_kmeans_baseline(matrix, k, km);
        const auto base_metrics = evaluate(matrix, base.config);
        report["baseline"] = {{"method", "kmeans"},
                              {"machine_groups", base.groups},
                              {"configuration", base.config},
                              {"metrics", base_metrics}};
        out << summary_line("K-Means", k, base_metrics) << '\n';
        csv_row("kmeans", base_metrics);
    }

    const auto dir = prepare_out_dir(o.out_dir);
    report["duration_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.format == "json") {
        write_file(dir / "report.json", report.dump(2) + "\n");
    } else {
        write_file(dir / "report.csv", csv_report);
    }
    save_csv(dir / "permuted.csv", permute(matrix, result.config));
    write_file(dir / "blocks.txt", render_blocks(matrix, result.config));
    out << render_blocks(matrix, result.config);
    return kOk;
}

int cmd_sweep(const CommonOptions& o, std::size_t k_min, std::size_t k_max, const std::string& plot,
              std::ostream& out) {
    validate_common(o);
    if (k_min < 1 || k_min > k_max) {
        throw InputError("invalid k range [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "]");
    }
    const auto matrix = load_csv(o.input, CsvOptions{o.normalize});
    const auto rows = sweep_cells(matrix, k_min, k_max, o.art, o.km);

    std::ostringstream csv;
    csv << "k,cells,ee,voids,mge,optimal\n";
    nlohmann::json table = nlohmann::json::array();
    std::ostringstream dat;
    dat << "# k mge_percent ee\n";
    std::size_t optimum = 0;
    for (const auto& r : rows) {
        csv << r.k << ',' << r.metrics.cells.size() << ',' << r.metrics.exceptional_elements << ','
            << r.metrics.voids << ',' << format_percent(r.metrics.mge) << ',' << (r.optimal ? 1 : 0) << '\n';
        table.push_back({{"k", r.k},
                         {"cells", r.metrics.cells.size()},
                         {"ee", r.metrics.exceptional_elements},
                         {"mge", r.metrics.mge},
                         {"optimal", r.optimal},
                         {"configuration", r.config}});
        dat << r.k << ' ' << std::setprecision(10) << r.metrics.mge * 100.0 << ' ' << r.metrics.exceptional_elements
            << '\n';
        if (r.optimal) optimum = r.k;
    }
    out << csv.str() << "optimum: k=" << optimum << '\n';

    if (!o.out_dir.empty()) {
        const auto dir = prepare_out_dir(o.out_dir);
        if (o.format == "json") {
            write_file(dir / "sweep.json", nlohmann::json{{"rows", table}, {"optimum", optimum}}.dump(2) + "\n");
        } else {
            write_file(dir / "sweep.csv", csv.str());
        }
    }
    if (!plot.empty()) write_file(plot, dat.str());
    return kOk;
}

int cmd_verify_fixture(const std::string& data_dir, std::string matrix_path, std::string fixture_path,
                       const std::vector<int>& only, std::ostream& out, std::ostream& err) {
    if (matrix_path.empty()) matrix_path = (fs::path(data_dir) / "dataset4.csv").string();
    if (fixture_path.empty()) fixture_path = (fs::path(data_dir) / "dataset4_figures.json").string();

    WorkloadMatrix matrix = [&] {
        try {
            return load_csv(matrix_path);
        } catch (const InputError& e) {
            throw FixtureError(e.what());
        }
    }();
    auto fixtures = load_figure_fixtures(fixture_path, matrix);

    bool ok = true;
    std::size_t checked = 0;
    for (const auto& f : fixtures) {
        if (!only.empty() && std::find(only.begin(), only.end(), f.figure) == only.end()) continue;
        ++checked;
        try {
            const auto found = reconstruct_block_config(matrix, f.target);
            const auto again = evaluate(matrix, found.config);
            if (again.exceptional_elements != f.target.exceptional_elements ||
                std::abs(again.mge - f.target.mge) > f.target.mge_tolerance) {
                throw FixtureError("re-evaluation disagrees with the recovered split");
            }
            out << "figure " << f.figure << ": " << f.target.cells << " cells, EE " << again.exceptional_elements
                << ", MGE " << format_percent(again.mge) << " (target " << format_percent(f.target.mge) << ")\n"
                << "  machines: " << join_labels(matrix.machine_labels(), f.target.row_order, found.row_cuts) << '\n'
                << "  parts:    " << join_labels(matrix.part_labels(), f.target.col_order, found.col_cuts) << '\n';
        } catch (const ReconstructionError& e) {
            ok = false;
            err << "figure " << f.figure << ": " << e.what() << '\n';
            for (const auto& c : e.candidates()) {
                err << "  candidate EE " << c.metrics.exceptional_elements << ", MGE "
                    << std::setprecision(6) << c.metrics.mge * 100.0 << "%\n"
                    << "    machines: " << join_labels(matrix.machine_labels(), f.target.row_order, c.row_cuts) << '\n'
                    << "    parts:    " << join_labels(matrix.part_labels(), f.target.col_order, c.col_cuts) << '\n';
            }
        }
    }
    if (checked == 0) throw FixtureError("no fixture matches the requested figure");
    return ok ? kOk : kFixtureError;
}

int cmd_datasets(std::ostream& out) {
    out << "no,machines,parts,bundled,source\n";
    for (const auto& d : dataset_catalog()) {
        out << d.number << ',' << d.machines << ',' << d.parts << ',' << (d.bundled ? "yes" : "no") << ','
            << d.source << '\n';
    }
    return kOk;
}

}  // namespace

nlohmann::json make_report(const std::string& input_path, const WorkloadMatrix& matrix,
                           const FuzzyArtParams& art_params, const KMeansParams& km_params,
                           const FakmctResult& result, const GroupingMetrics& metrics) {
    nlohmann::json params = {{"fuzzy_art", art_params}, {"kmeans", km_params}};
    return nlohmann::json{
        {"input", {{"path", input_path}, {"machines", matrix.machine_count()}, {"parts", matrix.part_count()}}},
        {"parameters", std::move(params)},
        {"method", "fakmct"},
        {"training", {{"epochs", result.training.epochs}, {"converged", result.training.converged},
                      {"categories", result.training.network.category_count()}}},
        {"part_families", result.families},
        {"machine_groups", result.groups},
        {"configuration", result.config},
        {"machine_labels", matrix.machine_labels()},
        {"part_labels", matrix.part_labels()},
        {"metrics", metrics},
    };
}

std::string render_blocks(const WorkloadMatrix& matrix, const CellConfiguration& config) {
    const auto perm = block_order(config);
    std::ostringstream s;
    s << std::fixed << std::setprecision(2);
    const int width = 5;

    auto rule = [&] {
        s << std::string(6, '-');
        for (std::size_t c = 0; c < perm.cols.size(); ++c) {
            if (c > 0 && config.part_cell[perm.cols[c]] != config.part_cell[perm.cols[c - 1]]) s << "-+";
            s << std::string(width + 1, '-');
        }
        s << '\n';
    };

    s << std::setw(6) << std::left << "" << std::right;
    for (std::size_t c = 0; c < perm.cols.size(); ++c) {
        if (c > 0 && config.part_cell[perm.cols[c]] != config.part_cell[perm.cols[c - 1]]) s << " |";
        s << ' ' << std::setw(width) << matrix.part_labels()[perm.cols[c]];
    }
    s << '\n';
    for (std::size_t r = 0; r < perm.rows.size(); ++r) {
        if (r > 0 && config.machine_cell[perm.rows[r]] != config.machine_cell[perm.rows[r - 1]]) rule();
        s << std::setw(6) << std::left << matrix.machine_labels()[perm.rows[r]] << std::right;
        for (std::size_t c = 0; c < perm.cols.size(); ++c) {
            if (c > 0 && config.part_cell[perm.cols[c]] != config.part_cell[perm.cols[c - 1]]) s << " |";
            const double v = matrix(perm.rows[r], perm.cols[c]);
            s << ' ' << std::setw(width);
            if (v == 0.0) {
                s << '.';
            } else {
                s << v;
            }
        }
        s << '\n';
    }
    return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cell formation with Fuzzy-ART part families and K-Means machine groups"};
    app.require_subcommand(1);

    CommonOptions cluster_opts;
    std::size_t k = 0;
    std::string baseline;
    auto* cluster = app.add_subcommand("cluster", "Form cells for a fixed number of machine groups");
    add_common(*cluster, cluster_opts);
    cluster->add_option("--k", k, "Number of machine groups")->required();
    cluster->add_option("--baseline", baseline, "Also run a comparator")->check(CLI::IsMember({"kmeans"}));

    CommonOptions sweep_opts;
    std::size_t k_min = 0, k_max = 0;
    std::string plot;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a range of cell counts and flag the best");
    add_common(*sweep, sweep_opts);
    sweep->add_option("--k-min", k_min, "Smallest k")->required();
    sweep->add_option("--k-max", k_max, "Largest k")->required();
    sweep->add_option("--plot", plot, "Write gnuplot data (k, MGE %, EE) to this file");

    std::string data_dir = FAKMCT_DATA_DIR, matrix_path, fixture_path;
    std::vector<int> figures;
    auto* verify = app.add_subcommand("verify-fixture", "Recover the published dataset-4 block splits");
    verify->add_option("--data-dir", data_dir, "Directory holding dataset4.csv and dataset4_figures.json")
        ->capture_default_str();
    verify->add_option("--matrix", matrix_path, "Override the dataset-4 matrix CSV");
    verify->add_option("--fixture", fixture_path, "Override the figure fixture JSON");
    verify->add_option("--figure", figures, "Check only these figures (5, 6, 7)");

    auto* datasets = app.add_subcommand("datasets", "List the benchmark catalogue");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    try {
        if (cluster->parsed()) return cmd_cluster(cluster_opts, k, baseline, out);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, k_min, k_max, plot, out);
        if (verify->parsed()) return cmd_verify_fixture(data_dir, matrix_path, fixture_path, figures, out, err);
        if (datasets->parsed()) return cmd_datasets(out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const AlgorithmError& e) {
        err << "error: " << e.what() << '\n';
        return kAlgorithmError;
    } catch (const FixtureError& e) {
        err << "error: " << e.what() << '\n';
        return kFixtureError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUnexpected;
    }
    return kUnexpected;
}

}  // namespace fakmct::cli
