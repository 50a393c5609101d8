#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "dot_parser.hpp"
#include "mcdm/bench.hpp"
#include "mcdm/cli.hpp"
#include "mcdm/io.hpp"
#include "mcdm/ranking.hpp"
#include "oracles.hpp"

using namespace mcdm;
using nlohmann::json;
using oracle::error_kind_of;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return oracle::fixture(name).string(); }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mcdm_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

DecisionMatrix laptops() {
    return read_decision_matrix_csv(read_csv_blocks(oracle::fixture("decision_matrix.csv")),
                                    {Direction::Cost, Direction::Benefit, Direction::Cost, Direction::Benefit});
}

const std::string kDirs = "cost,benefit,cost,benefit";

struct EnvGuard {
    explicit EnvGuard(const char* value) {
        if (value) {
            setenv("MCDM_RI_TABLE", value, 1);
        } else {
            unsetenv("MCDM_RI_TABLE");
        }
    }
    ~EnvGuard() { unsetenv("MCDM_RI_TABLE"); }
};

}  // namespace

TEST_CASE("rank: every method reproduces the library scores bit-exactly through CSV") {
    const auto dm = laptops();
    const WeightVector w({0.4, 0.3, 0.2, 0.1}, dm.criterion_names());
    for (const auto& method : registered_methods()) {
        CAPTURE(method.descriptor.name);
        const auto r = run({"rank", "--method", method.descriptor.name, "--input", fx("decision_matrix.csv"),
                            "--directions", kDirs, "--weights", "0.4,0.3,0.2,0.1"});
        REQUIRE(r.code == cli::kExitOk);
        const auto parsed = read_rank_result(r.out, OutputFormat::Csv);
        const auto expect = method.run(dm, w, {});
        CHECK(parsed.scores == expect.scores);
        CHECK(parsed.names == expect.names);
        CHECK(parsed.ordering == expect.ordering);

        const auto j = run({"rank", "--method", method.descriptor.name, "--input", fx("decision_matrix.csv"),
                            "--directions", kDirs, "--weights", "0.4,0.3,0.2,0.1", "--format", "json"});
        REQUIRE(j.code == cli::kExitOk);
        CHECK(read_rank_result(j.out, OutputFormat::Json).scores == expect.scores);
    }
}

TEST_CASE("rank: weight pipelines") {
    const auto dm = laptops();
    const auto entropy = run({"rank", "-m", "topsis", "-i", fx("decision_matrix.csv"), "--directions", kDirs,
                              "--weights-method", "entropy"});
    REQUIRE(entropy.code == 0);
    CHECK(read_rank_result(entropy.out, OutputFormat::Csv).scores == apply_topsis(dm, apply_entropy(dm)).scores);

    const auto critic = run({"rank", "-m", "saw", "-i", fx("decision_matrix.csv"), "--directions", kDirs,
                             "--weights-method", "critic"});
    REQUIRE(critic.code == 0);
    CHECK(read_rank_result(critic.out, OutputFormat::Csv).scores == apply_saw(dm, apply_critic(dm)).scores);

    const auto bwm = run({"rank", "-m", "wpm", "-i", fx("decision_matrix.csv"), "--directions", kDirs,
                          "--weights-method", "bwm:" + fx("bwm_example.csv")});
    REQUIRE(bwm.code == 0);
    const auto bw = apply_bwm(read_bwm_csv(read_csv_blocks(oracle::fixture("bwm_example.csv")))).weights;
    CHECK(read_rank_result(bwm.out, OutputFormat::Csv).scores == apply_wpm(dm, bw).scores);

    const auto uniform = run({"rank", "-m", "moora", "-i", fx("decision_matrix.csv"), "--directions", kDirs});
    REQUIRE(uniform.code == 0);
    CHECK(read_rank_result(uniform.out, OutputFormat::Csv).scores ==
          apply_moora(dm, WeightVector::uniform(dm.criterion_names())).scores);

    CHECK(run({"rank", "-m", "topsis", "-i", fx("decision_matrix.csv"), "--weights", "0.5,0.5,0,0",
               "--weights-method", "entropy"})
              .code == cli::kExitUsage);
    CHECK(run({"rank", "-m", "topsis", "-i", fx("decision_matrix.csv"), "--weights-method", "magic"}).code ==
          cli::kExitUsage);
}

TEST_CASE("rank: directions default and validation") {
    const auto r = run({"rank", "-m", "topsis", "-i", fx("decision_matrix.csv")});
    CHECK(r.code == 0);
    CHECK(r.err.find("benefit") != std::string::npos);
    CHECK(run({"rank", "-m", "topsis", "-i", fx("decision_matrix.csv"), "--directions", "all-benefit"}).err.empty());
    CHECK(run({"rank", "-m", "topsis", "-i", fx("decision_matrix.csv"), "--directions", "up,down,up,up"}).code ==
          cli::kExitUsage);
    CHECK(run({"rank", "-m", "topsis", "-i", fx("decision_matrix.csv"), "--directions", "cost,benefit"}).code ==
          cli::kExitDataError);
}

TEST_CASE("exit codes") {
    const auto unknown = run({"rank", "--method", "electre", "--input", fx("decision_matrix.csv")});
    CHECK(unknown.code == cli::kExitUsage);
    CHECK(unknown.err.find("UnknownMethod") != std::string::npos);
    CHECK(unknown.err.find("topsis") != std::string::npos);

    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"rank", "--input", fx("decision_matrix.csv")}).code == cli::kExitUsage);
    CHECK(run({"rank", "--method", "topsis"}).code == cli::kExitUsage);
    CHECK(run({"rank", "--method", "topsis", "--input", fx("decision_matrix.csv"), "--format", "xml"}).code ==
          cli::kExitUsage);
    CHECK(run({"rank", "--method", "topsis", "--input", fx("decision_matrix.csv"), "--tree", "x.dot"}).code ==
          cli::kExitUsage);
    CHECK(run({"rank", "--method", "vikor", "--input", fx("decision_matrix.csv"), "--v", "2"}).code ==
          cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({"list-methods"}).code == cli::kExitOk);

    CHECK(run({"rank", "--method", "topsis", "--input", fx("no_such_file.csv")}).code == cli::kExitDataError);
    const auto bad = run({"smcdm", "--input", fx("malformed/smcdm_bad_number.csv")});
    CHECK(bad.code == cli::kExitDataError);
    CHECK(bad.err.find("block 1, line 3, column 3") != std::string::npos);
    CHECK(run({"ahp", "--input", fx("malformed/ahp_not_reciprocal.csv")}).code == cli::kExitDataError);
    CHECK(run({"weights", "--method", "nope", "--input", fx("no_such_file.csv")}).code == cli::kExitUsage);
}

TEST_CASE("exit codes of the installed binary") {
    const char* exe = std::getenv("MCDM_CLI");
    if (exe == nullptr) {
        MESSAGE("MCDM_CLI not set; skipping process-level checks");
        return;
    }
    const auto status = [&](const std::string& args) {
        const int raw = std::system((std::string("\"") + exe + "\" " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("list-methods") == 0);
    CHECK(status("rank --method topsis --input \"" + fx("decision_matrix.csv") + "\"") == 0);
    CHECK(status("rank --method electre --input \"" + fx("decision_matrix.csv") + "\"") == 2);
    CHECK(status("smcdm --input \"" + fx("malformed/smcdm_likelihood_sum.csv") + "\"") == 1);
}

TEST_CASE("weights command") {
    const auto dm = laptops();
    const auto e = run({"weights", "--method", "entropy", "-i", fx("decision_matrix.csv")});
    REQUIRE(e.code == 0);
    CHECK(read_weight_vector(e.out, OutputFormat::Csv).weights() == apply_entropy(dm).weights());

    const auto c = run({"weights", "--method", "critic", "-i", fx("decision_matrix.csv"), "--directions", kDirs,
                        "--format", "json"});
    REQUIRE(c.code == 0);
    CHECK(read_weight_vector(c.out, OutputFormat::Json).weights() == apply_critic(dm).weights());

    const auto b = run({"weights", "--method", "bwm", "-i", fx("bwm_example.csv"), "--format", "json", "--intervals"});
    REQUIRE(b.code == 0);
    const auto j = json::parse(b.out);
    const auto w = j.at("weights").get<std::vector<double>>();
    CHECK(w[0] == doctest::Approx(0.2666666667).epsilon(1e-9));
    CHECK(w[1] == doctest::Approx(0.5333333333).epsilon(1e-9));
    CHECK(std::abs(j.at("xi").get<double>()) < 1e-12);
    CHECK(j.at("intervals").size() == 4);

    const auto u = run({"weights", "--method", "uniform", "-i", fx("decision_matrix.csv")});
    REQUIRE(u.code == 0);
    CHECK(read_weight_vector(u.out, OutputFormat::Csv).weights() == std::vector<double>(4, 0.25));
}

TEST_CASE("ahp command") {
    const auto in = read_ahp_csv(read_csv_blocks(oracle::fixture("ahp_computers.csv")));
    const auto lib = apply_ahp(in.criteria, in.alternatives);
    const auto tree = scratch("ahp.dot");
    const auto radar = scratch("ahp_radar.json");
    const auto r = run({"ahp", "-i", fx("ahp_computers.csv"), "--format", "json", "--tree", tree.string(), "--radar",
                        radar.string()});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("consistency_ratio").get<double>() == lib.consistency_ratio);
    CHECK(j.at("consistency_acceptable").get<bool>());
    CHECK(j.at("consistency_report").size() == 4);
    CHECK(j.at("ranking").at("scores").get<std::vector<double>>() == lib.final_scores);

    const auto g = dot::parse(oracle::read_text(tree));
    CHECK(g.nodes.size() == 13);
    const auto rj = json::parse(oracle::read_text(radar));
    CHECK(rj.at("axes").get<std::vector<std::string>>() == lib.criteria_weights.criterion_names());
    CHECK(rj.at("series").at(0).at("values").get<std::vector<double>>() == lib.criteria_weights.weights());

    const auto above = run({"ahp", "-i", fx("ahp_cr_above.csv")});
    CHECK(above.code == 0);
    CHECK(above.err.find("not acceptable") != std::string::npos);
    const auto below = run({"ahp", "-i", fx("ahp_cr_below.csv")});
    CHECK(below.err.find("(acceptable)") != std::string::npos);
}

TEST_CASE("MCDM_RI_TABLE overrides the random index") {
    const auto in = read_ahp_csv(read_csv_blocks(oracle::fixture("ahp_cr_above.csv")));
    const double lambda = oracle::principal_eigenpair(in.criteria.values()).lambda;
    {
        EnvGuard env("0,0,2.0");
        const auto r = run({"ahp", "-i", fx("ahp_cr_above.csv"), "--format", "json"});
        REQUIRE(r.code == 0);
        CHECK(json::parse(r.out).at("consistency_ratio").get<double>() ==
              doctest::Approx((lambda - 3) / 2 / 2.0).epsilon(1e-9));
    }
    {
        EnvGuard env("0,0,abc");
        CHECK(run({"ahp", "-i", fx("ahp_cr_above.csv")}).code == cli::kExitUsage);
    }
    {
        EnvGuard env("0,0,-1");
        CHECK(run({"ahp", "-i", fx("ahp_cr_above.csv")}).code == cli::kExitUsage);
    }
    {
        EnvGuard env(nullptr);
        CHECK(cli::random_index_from_env() == saaty_random_index());
    }
}

TEST_CASE("anp command") {
    const auto in = read_ahp_csv(read_csv_blocks(oracle::fixture("ahp_computers.csv")));
    const auto r = run({"anp", "-i", fx("ahp_computers.csv"), "--power", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("power").get<int>() == 2);
    const auto rows = j.at("supermatrix").get<std::vector<std::vector<double>>>();
    const Matrix s2 = apply_anp(in.criteria, in.alternatives, 2);
    REQUIRE(rows.size() == 7);
    for (Eigen::Index i = 0; i < 7; ++i) {
        for (Eigen::Index k = 0; k < 7; ++k) CHECK(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] == s2(i, k));
    }
    const auto csv = run({"anp", "-i", fx("ahp_computers.csv")});
    REQUIRE(csv.code == 0);
    const auto m = block_matrix(parse_csv_blocks(csv.out).blocks.at(0), 1);
    CHECK(m.values == apply_anp(in.criteria, in.alternatives, 1));
    CHECK(m.row_labels.front() == "Goal");
    CHECK(run({"anp", "-i", fx("ahp_computers.csv"), "--power", "0"}).code == cli::kExitUsage);
}

TEST_CASE("smcdm command") {
    const auto model = read_smcdm_csv(read_csv_blocks(oracle::fixture("smcdm_house.csv")));
    const auto lib = apply_smcdm(model);
    const auto r = run({"smcdm", "-i", fx("smcdm_house.csv"), "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("ranking").at("scores").get<std::vector<double>>() == lib.ranking.scores);
    CHECK(j.at("probabilities").get<std::vector<double>>() == lib.probabilities);

    const auto tree = scratch("smcdm.dot");
    const auto ind = run({"smcdm", "-i", fx("smcdm_house.csv"), "--independent", "--format", "json", "--tree",
                          tree.string()});
    REQUIRE(ind.code == 0);
    const auto p = json::parse(ind.out).at("probabilities").get<std::vector<double>>();
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-9);
    CHECK(p == state_probabilities(enumerate_states(3), std::vector<double>{0.17, 0.42, 0.17, 0.08}));
    const auto g = dot::parse(oracle::read_text(tree));
    CHECK(g.nodes.size() == 8);
    CHECK(g.edges.size() == 7);

    const auto csv = run({"smcdm", "-i", fx("smcdm_house.csv")});
    REQUIRE(csv.code == 0);
    CHECK(read_rank_result(csv.out, OutputFormat::Csv).scores == lib.ranking.scores);
}

TEST_CASE("sbwm command") {
    const auto model = read_sbwm_csv(read_csv_blocks(oracle::fixture("sbwm_illustrative.csv")));
    const auto lib = apply_sbwm(model);
    const auto tree = scratch("sbwm.dot");
    const auto r = run({"sbwm", "-i", fx("sbwm_illustrative.csv"), "--format", "json", "--tree", tree.string()});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("ranking").at("scores").get<std::vector<double>>() == lib.ranking.scores);
    CHECK(j.at("state_xi").get<std::vector<double>>() == lib.state_xi);
    CHECK(j.at("state_weights").size() == 4);
    CHECK(dot::parse(oracle::read_text(tree)).nodes.size() == 4);
}

TEST_CASE("radar JSON") {
    const std::vector<std::string> axes{"a", "b", "c"};
    const std::vector<double> values{0.2, 0.3, 0.5};
    const auto j = json::parse(cli::radar_json(axes, values, "w"));
    CHECK(j.at("axes").get<std::vector<std::string>>() == axes);
    CHECK(j.at("series").at(0).at("name").get<std::string>() == "w");
    CHECK(j.at("series").at(0).at("values").get<std::vector<double>>() == values);
    CHECK(error_kind_of([] { cli::radar_json({"a", "b"}, {0.5, 0.5}, "w"); }) == ErrorKind::TooFewAxes);
    CHECK(error_kind_of([&] { cli::radar_json(axes, {0.5, 0.5}, "w"); }) == ErrorKind::LengthMismatch);

    const auto path = scratch("bwm_radar.json");
    const auto r = run({"weights", "--method", "bwm", "-i", fx("bwm_example.csv"), "--radar", path.string()});
    REQUIRE(r.code == 0);
    const auto rj = json::parse(oracle::read_text(path));
    CHECK(rj.at("axes").size() == 4);

    const auto two = scratch("two.csv");
    {
        std::ofstream f(two);
        f << "Alt,C1,C2\nA,1,2\nB,3,1\n";
    }
    const auto few = run({"weights", "--method", "entropy", "-i", two.string(), "--radar", scratch("x.json").string()});
    CHECK(few.code == cli::kExitDataError);
    CHECK(few.err.find("TooFewAxes") != std::string::npos);
}

TEST_CASE("output is deterministic and --output matches stdout") {
    const std::vector<std::string> args{"smcdm", "-i", fx("smcdm_house.csv"), "--format", "json"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.out == b.out);
    const auto path = scratch("smcdm_out.json");
    auto with_output = args;
    with_output.insert(with_output.end(), {"--output", path.string()});
    const auto c = run(with_output);
    REQUIRE(c.code == 0);
    CHECK(c.out.empty());
    CHECK(oracle::read_text(path) == a.out);
}

TEST_CASE("bench command") {
    const auto path = scratch("bench.csv");
    const auto r = run({"bench", "--methods", "ahp,smcdm", "--sizes", "4,8", "--repetitions", "5", "--output",
                        path.string()});
    REQUIRE(r.code == 0);
    const auto records = bench::read_records_csv(oracle::read_text(path));
    CHECK(records.size() == 4);
    for (const auto& rec : records) {
        CHECK(rec.repetitions == 5);
        CHECK(rec.all_samples.size() == 5);
        CHECK(rec.median_seconds > 0.0);
    }
    CHECK(r.err.find("no fit") != std::string::npos);
    CHECK(run({"bench", "--methods", "quantum"}).code == cli::kExitUsage);
    CHECK(run({"bench", "--methods", "ahp", "--repetitions", "2"}).code == cli::kExitUsage);
    CHECK(run({"bench", "--methods", "ahp", "--sizes", "1"}).code == cli::kExitUsage);
}
