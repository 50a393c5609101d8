#include "mcdm/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcdm/bench.hpp"
#include "mcdm/io.hpp"
#include "mcdm/pairwise.hpp"
#include "mcdm/ranking.hpp"
#include "mcdm/stratified.hpp"
#include "mcdm/text.hpp"
#include "mcdm/weighting.hpp"

namespace mcdm::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string input;
    std::string method;
    std::string directions;
    std::string weights;
    std::string weights_method;
    std::string format = "csv";
    std::string output;
    std::string tree;
    std::string radar;
    double v = 0.5;
    int power = 1;
    bool independent = false;
    bool intervals = false;
    std::string bench_methods = "bwm,smcdm,sbwm,ahp";
    std::string sizes = "4,8,16,32,64,128,256";
    std::uint64_t seed = 1;
    double budget_seconds = 0.0;
    int repetitions = 9;
};

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    while (true) {
        const auto cut = text.find(',');
        out.emplace_back(trim(text.substr(0, cut)));
        if (cut == std::string_view::npos) break;
        text.remove_prefix(cut + 1);
    }
    return out;
}

std::vector<double> parse_reals(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        const auto v = parse_double(item);
        if (!v) throw UsageError(std::string(what) + ": '" + item + "' is not a number");
        out.push_back(*v);
    }
    return out;
}

OutputFormat output_format(const CliConfig& cfg) {
    return cfg.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    f << text;
}

void emit(const CliConfig& cfg, std::string_view text, std::ostream& out) {
    if (cfg.output.empty()) {
        out << text;
    } else {
        write_file(cfg.output, text);
    }
}

std::vector<Direction> parse_directions(const CliConfig& cfg, std::ostream& err) {
    if (cfg.directions.empty() || lowercase(cfg.directions) == "all-benefit") {
        if (cfg.directions.empty()) err << "note: no --directions given; treating every criterion as benefit\n";
        return {};
    }
    std::vector<Direction> out;
    for (const auto& item : split_list(cfg.directions)) {
        const std::string d = lowercase(item);
        if (d == "benefit") {
            out.push_back(Direction::Benefit);
        } else if (d == "cost") {
            out.push_back(Direction::Cost);
        } else {
            throw UsageError("--directions: '" + item + "' is neither benefit nor cost");
        }
    }
    return out;
}

json parse_json(const std::string& text) { return json::parse(text); }

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void require_input(const CliConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("--input is required");
}

void reject_tree(const CliConfig& cfg, std::string_view command) {
    if (!cfg.tree.empty()) throw UsageError("--tree is not available for '" + std::string(command) + "'");
}

WeightVector weights_for(const CliConfig& cfg, const DecisionMatrix& matrix, std::ostream& err) {
    if (!cfg.weights.empty() && !cfg.weights_method.empty()) {
        throw UsageError("--weights and --weights-method are mutually exclusive");
    }
    if (!cfg.weights.empty()) {
        return WeightVector(parse_reals(cfg.weights, "--weights"), matrix.criterion_names());
    }
    const std::string wm = cfg.weights_method;
    if (wm.empty() || wm == "uniform") return WeightVector::uniform(matrix.criterion_names());
    if (wm == "entropy") return apply_entropy(matrix);
    if (wm == "critic") return apply_critic(matrix);
    if (wm.rfind("bwm:", 0) == 0) {
        const BwmProblem problem = read_bwm_csv(read_csv_blocks(wm.substr(4)));
        if (problem.size() != matrix.criteria()) {
            throw Error(ErrorKind::LengthMismatch, "BWM file has " + std::to_string(problem.size()) +
                                                       " criteria, decision matrix has " +
                                                       std::to_string(matrix.criteria()));
        }
        const BwmSolution sol = apply_bwm(problem);
        err << "note: BWM consistency objective xi = " << format_double(sol.xi) << "\n";
        return WeightVector(sol.weights.weights(), matrix.criterion_names());
    }
    throw UsageError("--weights-method must be entropy, critic, uniform or bwm:<file>, got '" + wm + "'");
}

int cmd_rank(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    require_input(cfg);
    reject_tree(cfg, "rank");
    const RegisteredMethod& method = registry_lookup(cfg.method);
    const DecisionMatrix matrix = read_decision_matrix_csv(read_csv_blocks(cfg.input), parse_directions(cfg, err));
    const WeightVector weights = weights_for(cfg, matrix, err);
    RankingOptions options;
    options.vikor_v = cfg.v;
    const RankResult result = method.run(matrix, weights, options);
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    emit(cfg, write_result(result, output_format(cfg)), out);
    if (!cfg.radar.empty()) emit_radar(result.names, result.scores, method.descriptor.name, cfg.radar);
    return kExitOk;
}

int cmd_weights(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    require_input(cfg);
    reject_tree(cfg, "weights");
    const std::string method = lowercase(cfg.method);
    if (method != "bwm" && method != "entropy" && method != "critic" && method != "uniform") {
        throw Error(ErrorKind::UnknownMethod,
                    "unknown weighting method '" + cfg.method + "'; available: entropy, critic, bwm, uniform");
    }
    const CsvBlockFile file = read_csv_blocks(cfg.input);
    std::optional<WeightVector> weights;
    json extra;
    if (method == "bwm") {
        const BwmProblem problem = read_bwm_csv(file);
        const BwmSolution sol = apply_bwm(problem);
        weights = sol.weights;
        extra["xi"] = sol.xi;
        if (cfg.intervals) {
            json iv = json::array();
            for (const auto& i : bwm_weight_intervals(problem)) iv.push_back({i.lower, i.upper});
            extra["intervals"] = std::move(iv);
        }
        if (output_format(cfg) == OutputFormat::Csv) {
            err << "note: BWM consistency objective xi = " << format_double(sol.xi) << "\n";
        }
    } else {
        const DecisionMatrix matrix = read_decision_matrix_csv(file, parse_directions(cfg, err));
        weights = method == "entropy"  ? apply_entropy(matrix)
                  : method == "critic" ? apply_critic(matrix)
                                       : WeightVector::uniform(matrix.criterion_names());
    }
    if (output_format(cfg) == OutputFormat::Json) {
        json j = parse_json(write_result(*weights, OutputFormat::Json));
        for (auto& [k, v] : extra.items()) j[k] = v;
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        emit(cfg, write_result(*weights, OutputFormat::Csv), out);
    }
    if (!cfg.radar.empty()) emit_radar(weights->criterion_names(), weights->weights(), method, cfg.radar);
    return kExitOk;
}

int cmd_ahp(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    require_input(cfg);
    const AhpInput input = read_ahp_csv(read_csv_blocks(cfg.input));
    const std::vector<double> ri = random_index_from_env();
    const AhpResult r = apply_ahp(input.criteria, input.alternatives, ri);
    const std::vector<double> report = ahp_consistency_report(input.criteria, input.alternatives, ri);
    const bool acceptable = r.consistency_ratio < kAcceptableConsistency;

    RankResult ranking = rank_from_scores(r.final_scores, ScoreDirection::HigherIsBetter, r.alternative_names);
    if (output_format(cfg) == OutputFormat::Json) {
        json j;
        j["consistency_ratio"] = r.consistency_ratio;
        j["consistency_acceptable"] = acceptable;
        j["consistency_report"] = report;
        j["criteria_weights"] = parse_json(write_result(r.criteria_weights, OutputFormat::Json));
        j["unweighted_scores"] = matrix_json(r.unweighted_scores);
        j["weighted_scores"] = matrix_json(r.weighted_scores);
        j["ranking"] = parse_json(write_result(ranking, OutputFormat::Json));
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        err << "consistency ratio: " << format_double(r.consistency_ratio)
            << (acceptable ? " (acceptable)\n" : " (not acceptable, >= 0.1)\n");
        emit(cfg, write_result(ranking, OutputFormat::Csv), out);
    }
    if (!cfg.tree.empty()) write_file(cfg.tree, emit_decision_tree(input.criteria, input.alternatives));
    if (!cfg.radar.empty()) {
        emit_radar(r.criteria_weights.criterion_names(), r.criteria_weights.weights(), "criteria weights", cfg.radar);
    }
    return kExitOk;
}

int cmd_anp(const CliConfig& cfg, std::ostream& out, std::ostream&) {
    require_input(cfg);
    if (!cfg.radar.empty()) throw UsageError("--radar is not available for 'anp'");
    const AhpInput input = read_ahp_csv(read_csv_blocks(cfg.input));
    const Matrix s = apply_anp(input.criteria, input.alternatives, cfg.power);
    std::vector<std::string> labels{"Goal"};
    labels.insert(labels.end(), input.criteria.labels().begin(), input.criteria.labels().end());
    const auto& alts = input.alternatives.front().labels();
    labels.insert(labels.end(), alts.begin(), alts.end());
    if (output_format(cfg) == OutputFormat::Json) {
        json j;
        j["power"] = cfg.power;
        j["labels"] = labels;
        j["supermatrix"] = matrix_json(s);
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        emit(cfg, write_matrix_csv(s, labels, labels), out);
    }
    if (!cfg.tree.empty()) write_file(cfg.tree, emit_decision_tree(input.criteria, input.alternatives));
    return kExitOk;
}

void emit_stratified(const CliConfig& cfg, const RankResult& ranking, const WeightVector& aggregate, json extra,
                     std::ostream& out) {
    if (output_format(cfg) == OutputFormat::Json) {
        json j;
        j["ranking"] = parse_json(write_result(ranking, OutputFormat::Json));
        j["aggregate_weights"] = parse_json(write_result(aggregate, OutputFormat::Json));
        for (auto& [k, v] : extra.items()) j[k] = v;
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        emit(cfg, write_result(ranking, OutputFormat::Csv), out);
    }
    if (!cfg.radar.empty()) {
        emit_radar(aggregate.criterion_names(), aggregate.weights(), "aggregate criterion weights", cfg.radar);
    }
}

int cmd_smcdm(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    require_input(cfg);
    const StratifiedModel model = read_smcdm_csv(
        read_csv_blocks(cfg.input),
        cfg.independent ? ProbabilityMode::IndependentEvents : ProbabilityMode::GivenProbabilities);
    for (const auto& w : model.warnings()) err << "warning: " << w << "\n";
    const SmcdmResult r = apply_smcdm(model);
    json extra;
    extra["state_names"] = model.state_names();
    extra["probabilities"] = r.probabilities;
    emit_stratified(cfg, r.ranking, r.aggregate_weights, std::move(extra), out);
    if (!cfg.tree.empty()) write_file(cfg.tree, emit_state_tree(model));
    return kExitOk;
}

int cmd_sbwm(const CliConfig& cfg, std::ostream& out, std::ostream&) {
    require_input(cfg);
    const SbwmModel model = read_sbwm_csv(read_csv_blocks(cfg.input));
    const SbwmResult r = apply_sbwm(model);
    json extra;
    extra["state_names"] = model.state_names();
    extra["state_weights"] = matrix_json(r.state_weights);
    extra["state_xi"] = r.state_xi;
    emit_stratified(cfg, r.ranking, r.aggregate_weights, std::move(extra), out);
    if (!cfg.tree.empty()) {
        const StratifiedModel view(model.comparison(), r.state_weights, model.likelihood(),
                                   ProbabilityMode::GivenProbabilities, model.alternative_names(),
                                   model.criterion_names(), model.state_names());
        write_file(cfg.tree, emit_state_tree(view));
    }
    return kExitOk;
}

int cmd_bench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    bench::BenchConfig bc;
    bc.methods = split_list(cfg.bench_methods);
    bc.sizes.clear();
    for (double s : parse_reals(cfg.sizes, "--sizes")) {
        if (s < 2 || s != std::floor(s)) throw UsageError("--sizes entries must be integers >= 2");
        bc.sizes.push_back(static_cast<int>(s));
    }
    if (cfg.repetitions < bench::kMinRepetitions) {
        throw UsageError("--repetitions must be at least " + std::to_string(bench::kMinRepetitions));
    }
    for (const auto& m : bc.methods) {
        const auto& known = bench::benchmark_methods();
        if (std::find(known.begin(), known.end(), m) == known.end()) {
            throw Error(ErrorKind::UnknownMethod, "unknown benchmark method '" + m + "'; available: bwm, smcdm, sbwm, ahp");
        }
    }
    bc.repetitions = cfg.repetitions;
    bc.seed = cfg.seed;
    bc.budget_seconds = cfg.budget_seconds;
    const bench::BenchReport report = bench::run_benchmark(bc, [&](const bench::BenchRecord& r) {
        err << r.method << " n=" << r.n_criteria << " median=" << format_double(r.median_seconds) << " s\n";
    });
    emit(cfg, bench::write_records_csv(report.records), out);
    for (const auto& note : report.notes) err << "note: " << note << "\n";
    for (const auto& m : bc.methods) {
        try {
            const auto fit = bench::fit_scaling(bench::records_for(report.records, m));
            err << m << ": slope " << format_double(fit.slope) << ", r^2 " << format_double(fit.r_squared) << "\n";
        } catch (const Error& e) {
            err << m << ": no fit (" << e.what() << ")\n";
        }
    }
    return kExitOk;
}

int cmd_list_methods(std::ostream& out) {
    out << "ranking methods:\n";
    for (const auto& m : registered_methods()) {
        out << "  " << m.descriptor.name << " (" << to_string(m.descriptor.score_direction) << ")\n";
    }
    out << "weighting methods:\n  entropy\n  critic\n  bwm\n  uniform\n";
    out << "pipelines:\n  ahp\n  anp\n  smcdm\n  sbwm\n";
    out << "benchmarks:\n";
    for (const auto& m : bench::benchmark_methods()) out << "  " << m << "\n";
    return kExitOk;
}

}  // namespace

std::vector<double> random_index_from_env() {
    const char* env = std::getenv("MCDM_RI_TABLE");
    if (env == nullptr || trim(env).empty()) return saaty_random_index();
    std::vector<double> table = parse_reals(env, "MCDM_RI_TABLE");
    for (double v : table) {
        if (v < 0.0) throw UsageError("MCDM_RI_TABLE entries must be nonnegative");
    }
    return table;
}

std::string radar_json(const std::vector<std::string>& axes, const std::vector<double>& values,
                       std::string_view series_name) {
    if (axes.size() < 3) {
        throw Error(ErrorKind::TooFewAxes, "a radar plot needs at least 3 axes, got " + std::to_string(axes.size()) +
                                               "; use a bar chart for fewer");
    }
    if (values.size() != axes.size()) {
        throw Error(ErrorKind::LengthMismatch, "radar series length does not match the axis count");
    }
    json j;
    j["axes"] = axes;
    j["series"] = json::array({json{{"name", series_name}, {"values", values}}});
    return j.dump(2) + "\n";
}

void emit_radar(const std::vector<std::string>& axes, const std::vector<double>& values, std::string_view series_name,
                const std::filesystem::path& path) {
    write_file(path, radar_json(axes, values, series_name));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-criteria decision analysis toolkit", "mcdm"};
    app.require_subcommand(1);
    CliConfig cfg;

    const auto add_io = [&](CLI::App* sub) {
        sub->add_option("--input,-i", cfg.input, "Input CSV file");
        sub->add_option("--format,-f", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output,-o", cfg.output, "Write results to this file instead of standard output");
    };
    const auto add_radar = [&](CLI::App* sub) {
        sub->add_option("--radar", cfg.radar, "Write radar-plot JSON to this file");
    };
    const auto add_tree = [&](CLI::App* sub) {
        sub->add_option("--tree", cfg.tree, "Write a Graphviz DOT tree to this file");
    };

    auto* rank = app.add_subcommand("rank", "Rank alternatives of a decision matrix");
    add_io(rank);
    add_radar(rank);
    add_tree(rank);
    rank->add_option("--method,-m", cfg.method, "Ranking method (see list-methods)")->required();
    rank->add_option("--directions", cfg.directions, "Comma list of benefit|cost, or all-benefit");
    rank->add_option("--weights", cfg.weights, "Comma list of criterion weights summing to 1");
    rank->add_option("--weights-method", cfg.weights_method, "entropy, critic, uniform or bwm:<file>");
    rank->add_option("--v", cfg.v, "VIKOR group-utility weight")->check(CLI::Range(0.0, 1.0));

    auto* weights = app.add_subcommand("weights", "Derive criterion weights");
    add_io(weights);
    add_radar(weights);
    add_tree(weights);
    weights->add_option("--method,-m", cfg.method, "entropy, critic, bwm or uniform")->required();
    weights->add_option("--directions", cfg.directions, "Comma list of benefit|cost, or all-benefit");
    weights->add_flag("--intervals", cfg.intervals, "BWM: include the optimal-face weight intervals (JSON)");

    auto* ahp = app.add_subcommand("ahp", "Analytic hierarchy process");
    add_io(ahp);
    add_radar(ahp);
    add_tree(ahp);

    auto* anp = app.add_subcommand("anp", "Analytic network process supermatrix");
    add_io(anp);
    add_radar(anp);
    add_tree(anp);
    anp->add_option("--power", cfg.power, "Supermatrix exponent")->check(CLI::PositiveNumber);

    auto* smcdm = app.add_subcommand("smcdm", "Stratified MCDM");
    add_io(smcdm);
    add_radar(smcdm);
    add_tree(smcdm);
    smcdm->add_flag("--independent", cfg.independent, "Treat the likelihood as baseline and single-event weights");

    auto* sbwm = app.add_subcommand("sbwm", "Stratified best-worst method");
    add_io(sbwm);
    add_radar(sbwm);
    add_tree(sbwm);

    auto* bench = app.add_subcommand("bench", "Runtime scaling benchmark");
    bench->add_option("--methods", cfg.bench_methods, "Comma list of bwm, smcdm, sbwm, ahp");
    bench->add_option("--sizes", cfg.sizes, "Comma list of criterion counts");
    bench->add_option("--seed", cfg.seed, "Random seed");
    bench->add_option("--budget-seconds", cfg.budget_seconds, "Wall-clock budget per method (0 = none)");
    bench->add_option("--repetitions", cfg.repetitions, "Timed repetitions per size");
    bench->add_option("--output,-o", cfg.output, "Write the timing CSV to this file");

    auto* list = app.add_subcommand("list-methods", "List available methods");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rank->parsed()) return cmd_rank(cfg, out, err);
        if (weights->parsed()) return cmd_weights(cfg, out, err);
        if (ahp->parsed()) return cmd_ahp(cfg, out, err);
        if (anp->parsed()) return cmd_anp(cfg, out, err);
        if (smcdm->parsed()) return cmd_smcdm(cfg, out, err);
        if (sbwm->parsed()) return cmd_sbwm(cfg, out, err);
        if (bench->parsed()) return cmd_bench(cfg, out, err);
        if (list->parsed()) return cmd_list_methods(out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::UnknownMethod ? kExitUsage : kExitDataError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitUsage;
}

}  // namespace mcdm::cli
