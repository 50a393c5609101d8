#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcdm/pairwise.hpp"
#include "mcdm/stratified.hpp"
#include "mcdm/weighting.hpp"

namespace mcdm::bench {

inline constexpr int kMinRepetitions = 5;

struct BenchRecord {
    std::string method;
    int n_criteria = 0;
    int repetitions = 0;
    double median_seconds = 0.0;
    /// Seconds per call for every repetition, warm-up run excluded.
    std::vector<double> all_samples;
};

struct AhpProblem {
    PairwiseMatrix criteria;
    std::vector<PairwiseMatrix> alternatives;
};

using Problem = std::variant<BwmProblem, StratifiedModel, SbwmModel, AhpProblem>;

/// Alternatives used by generated SMCDM, SBWM and AHP problems, held fixed so n is the only growing dimension.
inline constexpr int kBenchAlternatives = 16;
/// Events of generated SMCDM and SBWM problems (2^3 = 8 states).
inline constexpr int kBenchEvents = 3;

/// Methods accepted by generate_random_problem.
const std::vector<std::string>& benchmark_methods();

/**
 * Deterministic random input for `method` (bwm, smcdm, sbwm, ahp) with n
 * criteria. Throws UnknownMethod, InvalidArgument for n < 2.
 */
Problem generate_random_problem(std::string_view method, int n, std::uint64_t seed);

/// Runs the method the problem belongs to once.
void solve_problem(const Problem& problem);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// OLS of ln(median_seconds) on ln(n_criteria). Needs 5 distinct n spanning a factor of 10 (InsufficientPoints).
ScalingFit fit_scaling(const std::vector<BenchRecord>& records);

struct BenchConfig {
    std::vector<std::string> methods{"bwm", "smcdm", "sbwm", "ahp"};
    std::vector<int> sizes{4, 8, 16, 32, 64, 128, 256};
    int repetitions = 9;
    std::uint64_t seed = 1;
    /// Wall-clock budget per method; larger n are skipped once it is spent. <= 0 disables the cap.
    double budget_seconds = 0.0;
    /// Minimum wall time of one repetition; fast calls are looped to reach it.
    double min_sample_seconds = 2e-3;
};

struct BenchReport {
    std::vector<BenchRecord> records;
    /// Per-call cost of an empty body timed with the same harness.
    double overhead_seconds = 0.0;
    /// True when the overhead exceeds 1% of the smallest median at the largest n.
    bool unreliable = false;
    std::vector<std::string> notes;
};

using ProgressFn = std::function<void(const BenchRecord&)>;

/// Times every (method, n) pair on a monotonic clock, single-threaded.
BenchReport run_benchmark(const BenchConfig& config, const ProgressFn& progress = {});

/// Times `body` with warm-up and loop calibration; returns the record (method/n left empty).
BenchRecord time_callable(const std::function<void()>& body, int repetitions, double min_sample_seconds);

/// Columns: method,n_criteria,repetitions,median_seconds,all_samples (samples joined by ';').
std::string write_records_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_records_csv(std::string_view text);

/// Subset of records for one method.
std::vector<BenchRecord> records_for(const std::vector<BenchRecord>& records, std::string_view method);

}  // namespace mcdm::bench
