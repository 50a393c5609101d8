#include "mcdm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "mcdm/io.hpp"
#include "mcdm/text.hpp"

namespace mcdm::bench {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(Clock::is_steady);

volatile double g_sink = 0.0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Judgments derived from hidden weights in [1, 9] with +-10% multiplicative noise, clamped to [1, 9].
struct Judgments {
    std::vector<double> best_to_others;
    std::vector<double> others_to_worst;
    std::size_t best = 0;
    std::size_t worst = 0;
};

Judgments random_judgments(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> level(1.0, 9.0);
    std::uniform_real_distribution<double> noise(0.9, 1.1);
    std::vector<double> v(n);
    for (double& x : v) x = level(rng);
    Judgments j;
    j.best = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    j.worst = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
    if (j.best == j.worst) j.worst = (j.best + 1) % n;
    j.best_to_others.resize(n);
    j.others_to_worst.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        j.best_to_others[i] = std::clamp(v[j.best] / v[i] * noise(rng), 1.0, 9.0);
        j.others_to_worst[i] = std::clamp(v[i] / v[j.worst] * noise(rng), 1.0, 9.0);
    }
    j.best_to_others[j.best] = 1.0;
    j.others_to_worst[j.worst] = 1.0;
    return j;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
    }
    return m;
}

Matrix column_normalized(Matrix m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) /= m.col(j).sum();
    return m;
}

std::vector<double> random_simplex(std::size_t s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<double> p(s);
    for (double& x : p) x = u(rng);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= total;
    return p;
}

// Reciprocal matrix from random weights with log-normal noise on the upper triangle.
PairwiseMatrix random_reciprocal(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> level(1.0, 9.0);
    std::lognormal_distribution<double> noise(0.0, 0.1);
    std::vector<double> w(n);
    for (double& x : w) x = level(rng);
    Matrix a = Matrix::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = w[i] / w[j] * noise(rng);
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0 / v;
        }
    }
    return PairwiseMatrix(std::move(a));
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

const std::vector<std::string>& benchmark_methods() {
    static const std::vector<std::string> methods{"bwm", "smcdm", "sbwm", "ahp"};
    return methods;
}

Problem generate_random_problem(std::string_view method, int n, std::uint64_t seed) {
    const auto& known = benchmark_methods();
    if (std::find(known.begin(), known.end(), method) == known.end()) {
        throw Error(ErrorKind::UnknownMethod, "unknown benchmark method '" + std::string(method) +
                                                  "'; available: bwm, smcdm, sbwm, ahp");
    }
    if (n < 2) {
        throw Error(ErrorKind::InvalidArgument, "benchmark problems need at least 2 criteria, got " + std::to_string(n));
    }
    std::mt19937_64 rng(seed);
    const auto nn = static_cast<std::size_t>(n);
    const Eigen::Index m = kBenchAlternatives;
    const std::size_t states = std::size_t{1} << kBenchEvents;

    if (method == "bwm") {
        Judgments j = random_judgments(nn, rng);
        return BwmProblem(std::move(j.best_to_others), std::move(j.others_to_worst), j.best, j.worst);
    }
    if (method == "smcdm") {
        Matrix comparison = column_normalized(random_matrix(m, n, rng));
        Matrix state_criteria = column_normalized(random_matrix(n, static_cast<Eigen::Index>(states), rng));
        return StratifiedModel(std::move(comparison), std::move(state_criteria), random_simplex(states, rng),
                               ProbabilityMode::GivenProbabilities);
    }
    if (method == "sbwm") {
        Matrix comparison = column_normalized(random_matrix(m, n, rng));
        Matrix to_worst(n, static_cast<Eigen::Index>(states));
        Matrix to_best(n, static_cast<Eigen::Index>(states));
        std::vector<std::size_t> worst(states), best(states);
        for (std::size_t t = 0; t < states; ++t) {
            Judgments j = random_judgments(nn, rng);
            const auto col = static_cast<Eigen::Index>(t);
            to_best.col(col) = Eigen::Map<const Eigen::VectorXd>(j.best_to_others.data(), n);
            to_worst.col(col) = Eigen::Map<const Eigen::VectorXd>(j.others_to_worst.data(), n);
            best[t] = j.best;
            worst[t] = j.worst;
        }
        return SbwmModel(std::move(comparison), std::move(to_worst), std::move(to_best), std::move(worst),
                         std::move(best), random_simplex(states, rng));
    }
    AhpProblem ahp{random_reciprocal(nn, rng), {}};
    ahp.alternatives.reserve(nn);
    for (std::size_t c = 0; c < nn; ++c) ahp.alternatives.push_back(random_reciprocal(kBenchAlternatives, rng));
    return ahp;
}

void solve_problem(const Problem& problem) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BwmProblem>) {
                g_sink = apply_bwm(p).xi;
            } else if constexpr (std::is_same_v<T, StratifiedModel>) {
                g_sink = apply_smcdm(p).ranking.scores.front();
            } else if constexpr (std::is_same_v<T, SbwmModel>) {
                g_sink = apply_sbwm(p).ranking.scores.front();
            } else {
                // Priority synthesis only: the consistency ratio has no random index beyond n = 10.
                const auto w = priority_vector(p.criteria).weights.weights();
                Eigen::VectorXd total = Eigen::VectorXd::Zero(kBenchAlternatives);
                for (std::size_t j = 0; j < w.size(); ++j) {
                    const auto local = priority_vector(p.alternatives[j]).weights.weights();
                    total += w[j] * Eigen::Map<const Eigen::VectorXd>(local.data(), kBenchAlternatives);
                }
                g_sink = total[0];
            }
        },
        problem);
}

ScalingFit fit_scaling(const std::vector<BenchRecord>& records) {
    std::set<int> distinct;
    for (const auto& r : records) {
        if (r.n_criteria <= 0 || !(r.median_seconds > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "scaling fit needs positive n and positive timings");
        }
        distinct.insert(r.n_criteria);
    }
    if (distinct.size() < 5 || *distinct.rbegin() < 10 * *distinct.begin()) {
        throw Error(ErrorKind::InsufficientPoints, "scaling fit needs at least 5 distinct n spanning a factor of 10, got " +
                                                       std::to_string(distinct.size()) + " distinct values");
    }
    const double count = static_cast<double>(records.size());
    double mx = 0.0, my = 0.0;
    for (const auto& r : records) {
        mx += std::log(static_cast<double>(r.n_criteria));
        my += std::log(r.median_seconds);
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& r : records) {
        const double dx = std::log(static_cast<double>(r.n_criteria)) - mx;
        const double dy = std::log(r.median_seconds) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

BenchRecord time_callable(const std::function<void()>& body, int repetitions, double min_sample_seconds) {
    if (repetitions < kMinRepetitions) {
        throw Error(ErrorKind::InvalidArgument, "at least " + std::to_string(kMinRepetitions) + " repetitions required");
    }
    auto start = Clock::now();
    body();
    const double first = seconds_since(start);
    long loops = first > 0.0 ? static_cast<long>(std::ceil(min_sample_seconds / first)) : 1000;
    loops = std::clamp(loops, 1L, 100'000'000L);

    BenchRecord record;
    record.repetitions = repetitions;
    for (int rep = 0; rep <= repetitions; ++rep) {
        start = Clock::now();
        for (long i = 0; i < loops; ++i) body();
        const double per_call = seconds_since(start) / static_cast<double>(loops);
        if (rep > 0) record.all_samples.push_back(per_call);
    }
    record.median_seconds = median(record.all_samples);
    return record;
}

BenchReport run_benchmark(const BenchConfig& config, const ProgressFn& progress) {
    BenchReport report;
    for (const auto& method : config.methods) {
        const auto start = Clock::now();
        for (int n : config.sizes) {
            if (config.budget_seconds > 0.0 && seconds_since(start) > config.budget_seconds) {
                report.notes.push_back("budget exhausted for " + method + "; skipped n >= " + std::to_string(n));
                break;
            }
            const Problem problem = generate_random_problem(method, n, config.seed + static_cast<std::uint64_t>(n));
            BenchRecord record =
                time_callable([&] { solve_problem(problem); }, config.repetitions, config.min_sample_seconds);
            record.method = method;
            record.n_criteria = n;
            if (progress) progress(record);
            report.records.push_back(std::move(record));
        }
    }

    report.overhead_seconds =
        time_callable([] { g_sink = g_sink + 0.0; }, config.repetitions, config.min_sample_seconds).median_seconds;
    double smallest = 0.0;
    for (const auto& method : config.methods) {
        const auto subset = records_for(report.records, method);
        if (subset.empty()) continue;
        const auto largest = std::max_element(subset.begin(), subset.end(), [](const auto& a, const auto& b) {
            return a.n_criteria < b.n_criteria;
        });
        if (smallest == 0.0 || largest->median_seconds < smallest) smallest = largest->median_seconds;
    }
    if (smallest > 0.0 && report.overhead_seconds >= 0.01 * smallest) {
        report.unreliable = true;
        report.notes.push_back("harness overhead " + format_double(report.overhead_seconds) +
                               " s exceeds 1% of the smallest largest-n median " + format_double(smallest) + " s");
    }
    return report;
}

std::string write_records_csv(const std::vector<BenchRecord>& records) {
    std::string out = "method,n_criteria,repetitions,median_seconds,all_samples\n";
    for (const auto& r : records) {
        std::string samples;
        for (double s : r.all_samples) samples += (samples.empty() ? "" : ";") + format_double(s);
        out += r.method + "," + std::to_string(r.n_criteria) + "," + std::to_string(r.repetitions) + "," +
               format_double(r.median_seconds) + "," + samples + "\n";
    }
    return out;
}

std::vector<BenchRecord> read_records_csv(std::string_view text) {
    const CsvBlockFile file = parse_csv_blocks(text, "<bench>");
    const std::vector<std::string> header{"method", "n_criteria", "repetitions", "median_seconds", "all_samples"};
    if (file.blocks.size() != 1 || file.blocks[0].cells.empty() || file.blocks[0].cells[0] != header) {
        throw Error(ErrorKind::ParseError,
                    "benchmark CSV must be one block with header method,n_criteria,repetitions,median_seconds,all_samples");
    }
    const auto number = [](const std::string& cell, std::size_t line) {
        const auto v = parse_double(cell);
        if (!v) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": '" + cell + "' is not a number");
        return *v;
    };
    std::vector<BenchRecord> records;
    const auto& cells = file.blocks[0].cells;
    for (std::size_t r = 1; r < cells.size(); ++r) {
        const std::size_t line = file.blocks[0].first_line + r;
        const auto& row = cells[r];
        BenchRecord rec;
        rec.method = row[0];
        rec.n_criteria = static_cast<int>(number(row[1], line));
        rec.repetitions = static_cast<int>(number(row[2], line));
        rec.median_seconds = number(row[3], line);
        std::string_view rest = row.size() > 4 ? std::string_view(row[4]) : std::string_view{};
        while (!rest.empty()) {
            const auto cut = rest.find(';');
            rec.all_samples.push_back(number(std::string(rest.substr(0, cut)), line));
            rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<BenchRecord> records_for(const std::vector<BenchRecord>& records, std::string_view method) {
    std::vector<BenchRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                 [&](const BenchRecord& r) { return r.method == method; });
    return out;
}

}  // namespace mcdm::bench
