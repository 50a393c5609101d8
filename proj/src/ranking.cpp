#include "mcdm/ranking.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "mcdm/text.hpp"

namespace mcdm {

namespace {

void check_weights(const DecisionMatrix& matrix, const WeightVector& weights) {
    if (weights.size() != matrix.criteria()) {
        throw Error(ErrorKind::LengthMismatch, "matrix has " + std::to_string(matrix.criteria()) +
                                                   " criteria but " + std::to_string(weights.size()) +
                                                   " weights were supplied");
    }
}

RankResult finish(const DecisionMatrix& matrix, const std::vector<double>& scores, ScoreDirection dir,
                  std::vector<std::string> warnings = {}) {
    RankResult r = rank_from_scores(scores, dir, matrix.alternative_names());
    r.warnings = std::move(warnings);
    return r;
}

const std::string& criterion(const DecisionMatrix& m, std::size_t j) { return m.criterion_names()[j]; }

// Column j of the matrix, vector-normalized; errors name the criterion.
std::vector<double> vector_normalized(const DecisionMatrix& matrix, std::size_t j) {
    try {
        return normalize_vector(matrix.column(j));
    } catch (const Error&) {
        throw Error(ErrorKind::AllZeroColumn, "criterion '" + criterion(matrix, j) + "' is all zero");
    }
}

}  // namespace

RankResult apply_topsis(const DecisionMatrix& matrix, const WeightVector& weights) {
    check_weights(matrix, weights);
    const std::size_t m = matrix.alternatives();
    const std::size_t n = matrix.criteria();

    std::vector<double> d_plus(m, 0.0), d_minus(m, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        auto v = vector_normalized(matrix, j);
        for (double& x : v) x *= weights[j];
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        const bool benefit = matrix.directions()[j] == Direction::Benefit;
        const double ideal = benefit ? *hi : *lo;
        const double anti = benefit ? *lo : *hi;
        for (std::size_t i = 0; i < m; ++i) {
            d_plus[i] += (v[i] - ideal) * (v[i] - ideal);
            d_minus[i] += (v[i] - anti) * (v[i] - anti);
        }
    }
    std::vector<double> scores(m);
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < m; ++i) {
        const double dp = std::sqrt(d_plus[i]);
        const double dm = std::sqrt(d_minus[i]);
        if (dp + dm == 0.0) {
            // Ideal and anti-ideal coincide: no weighted criterion separates the alternatives.
            scores[i] = 0.5;
            if (warnings.empty()) warnings.emplace_back("TOPSIS: ideal and anti-ideal coincide; all scores set to 0.5");
        } else {
            scores[i] = dm / (dp + dm);
        }
    }
    return finish(matrix, scores, ScoreDirection::HigherIsBetter, std::move(warnings));
}

RankResult apply_vikor(const DecisionMatrix& matrix, const WeightVector& weights, double v) {
    check_weights(matrix, weights);
    if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "VIKOR v must lie in [0, 1]");
    }
    const std::size_t m = matrix.alternatives();
    const std::size_t n = matrix.criteria();
    std::vector<std::string> warnings;

    std::vector<double> s(m, 0.0), r(m, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto col = matrix.column(j);
        const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
        if (*lo == *hi) {
            warnings.push_back("VIKOR: criterion '" + criterion(matrix, j) + "' is constant and was dropped");
            continue;
        }
        const bool benefit = matrix.directions()[j] == Direction::Benefit;
        const double best = benefit ? *hi : *lo;
        const double worst = benefit ? *lo : *hi;
        for (std::size_t i = 0; i < m; ++i) {
            const double term = weights[j] * (best - col[i]) / (best - worst);
            s[i] += term;
            r[i] = std::max(r[i], term);
        }
    }

    const auto [s_lo, s_hi] = std::minmax_element(s.begin(), s.end());
    const auto [r_lo, r_hi] = std::minmax_element(r.begin(), r.end());
    const double s_spread = *s_hi - *s_lo;
    const double r_spread = *r_hi - *r_lo;
    if (s_spread == 0.0) warnings.emplace_back("VIKOR: all S values equal; group-utility term set to 0");
    if (r_spread == 0.0) warnings.emplace_back("VIKOR: all R values equal; regret term set to 0");

    std::vector<double> q(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double sq = s_spread == 0.0 ? 0.0 : (s[i] - *s_lo) / s_spread;
        const double rq = r_spread == 0.0 ? 0.0 : (r[i] - *r_lo) / r_spread;
        q[i] = v * sq + (1.0 - v) * rq;
    }
    return finish(matrix, q, ScoreDirection::LowerIsBetter, std::move(warnings));
}

RankResult apply_promethee2(const DecisionMatrix& matrix, const WeightVector& weights,
                            std::span<const PreferenceFunction> preference) {
    check_weights(matrix, weights);
    if (!preference.empty() && preference.size() != matrix.criteria()) {
        throw Error(ErrorKind::LengthMismatch, "one preference function per criterion is required");
    }
    const auto& x = matrix.values();
    const std::size_t m = matrix.alternatives();
    const std::size_t n = matrix.criteria();

    std::vector<double> flow(m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            double pi_ab = 0.0, pi_ba = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double d = x(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j)) -
                           x(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j));
                if (matrix.directions()[j] == Direction::Cost) d = -d;
                // Usual criterion: strict preference as soon as the difference is positive.
                if (d > 0.0) pi_ab += weights[j];
                if (d < 0.0) pi_ba += weights[j];
            }
            const double net = pi_ab - pi_ba;
            flow[a] += net;
            flow[b] -= net;
        }
    }
    for (double& f : flow) f /= static_cast<double>(m - 1);
    return finish(matrix, flow, ScoreDirection::HigherIsBetter);
}

RankResult apply_copras(const DecisionMatrix& matrix, const WeightVector& weights) {
    check_weights(matrix, weights);
    const auto& x = matrix.values();
    const std::size_t m = matrix.alternatives();
    const std::size_t n = matrix.criteria();

    std::vector<double> s_plus(m, 0.0), s_minus(m, 0.0);
    bool has_cost = false;
    for (std::size_t j = 0; j < n; ++j) {
        const auto col = matrix.column(j);
        const bool cost = matrix.directions()[j] == Direction::Cost;
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (cost && !(col[i] > 0.0)) {
                throw Error(ErrorKind::NonPositiveCostEntry, "COPRAS needs positive cost entries; criterion '" +
                                                                 criterion(matrix, j) + "', row " +
                                                                 std::to_string(i + 1));
            }
            sum += col[i];
        }
        if (sum == 0.0) {
            throw Error(ErrorKind::ZeroColumnSum, "criterion '" + criterion(matrix, j) + "' sums to zero");
        }
        has_cost = has_cost || (cost && weights[j] > 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double d = weights[j] * x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) / sum;
            (cost ? s_minus : s_plus)[i] += d;
        }
    }

    std::vector<double> q = s_plus;
    if (has_cost) {
        double total = 0.0, inv_total = 0.0;
        for (double s : s_minus) {
            total += s;
            inv_total += 1.0 / s;
        }
        for (std::size_t i = 0; i < m; ++i) q[i] += total / (s_minus[i] * inv_total);
    }
    return finish(matrix, q, ScoreDirection::HigherIsBetter);
}

RankResult apply_saw(const DecisionMatrix& matrix, const WeightVector& weights) {
    check_weights(matrix, weights);
    const std::size_t m = matrix.alternatives();
    std::vector<double> scores(m, 0.0);
    std::vector<std::string> warnings;
    for (std::size_t j = 0; j < matrix.criteria(); ++j) {
        std::vector<double> norm;
        try {
            norm = normalize_minmax(matrix.column(j), matrix.directions()[j]);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ConstantColumn) throw;
            norm.assign(m, 1.0);
            warnings.push_back("SAW: criterion '" + criterion(matrix, j) + "' is constant; normalized to 1");
        }
        for (std::size_t i = 0; i < m; ++i) scores[i] += weights[j] * norm[i];
    }
    return finish(matrix, scores, ScoreDirection::HigherIsBetter, std::move(warnings));
}

RankResult apply_wpm(const DecisionMatrix& matrix, const WeightVector& weights) {
    check_weights(matrix, weights);
    const std::size_t m = matrix.alternatives();
    std::vector<double> scores(m, 1.0);
    for (std::size_t j = 0; j < matrix.criteria(); ++j) {
        const auto col = matrix.column(j);
        for (std::size_t i = 0; i < m; ++i) {
            if (!(col[i] > 0.0)) {
                throw Error(ErrorKind::NonPositiveEntry, "WPM needs positive entries; criterion '" +
                                                             criterion(matrix, j) + "', row " + std::to_string(i + 1));
            }
        }
        const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
        const bool benefit = matrix.directions()[j] == Direction::Benefit;
        for (std::size_t i = 0; i < m; ++i) {
            const double ratio = benefit ? col[i] / *hi : *lo / col[i];
            scores[i] *= std::pow(ratio, weights[j]);
        }
    }
    return finish(matrix, scores, ScoreDirection::HigherIsBetter);
}

RankResult apply_moora(const DecisionMatrix& matrix, const WeightVector& weights) {
    check_weights(matrix, weights);
    const std::size_t m = matrix.alternatives();
    std::vector<double> scores(m, 0.0);
    for (std::size_t j = 0; j < matrix.criteria(); ++j) {
        const auto v = vector_normalized(matrix, j);
        const double sign = matrix.directions()[j] == Direction::Benefit ? 1.0 : -1.0;
        for (std::size_t i = 0; i < m; ++i) scores[i] += sign * weights[j] * v[i];
    }
    return finish(matrix, scores, ScoreDirection::HigherIsBetter);
}

namespace {

std::array<RegisteredMethod, 7> build_registry() {
    using D = const DecisionMatrix&;
    using W = const WeightVector&;
    using O = const RankingOptions&;
    const auto hib = ScoreDirection::HigherIsBetter;
    return {{
        {{"topsis", true, true, hib}, [](D m, W w, O) { return apply_topsis(m, w); }},
        {{"vikor", true, true, ScoreDirection::LowerIsBetter},
         [](D m, W w, O o) { return apply_vikor(m, w, o.vikor_v); }},
        {{"promethee2", true, true, hib}, [](D m, W w, O o) { return apply_promethee2(m, w, o.preference); }},
        {{"copras", true, true, hib}, [](D m, W w, O) { return apply_copras(m, w); }},
        {{"saw", true, true, hib}, [](D m, W w, O) { return apply_saw(m, w); }},
        {{"wpm", true, true, hib}, [](D m, W w, O) { return apply_wpm(m, w); }},
        {{"moora", true, true, hib}, [](D m, W w, O) { return apply_moora(m, w); }},
    }};
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::span<const RegisteredMethod> registered_methods() {
    static const auto registry = build_registry();
    return registry;
}

const RegisteredMethod& registry_lookup(std::string_view name) {
    std::string key = lowercase(trim(name));
    if (key == "wsm") key = "saw";
    std::string available;
    for (const auto& m : registered_methods()) {
        if (m.descriptor.name == key) return m;
        if (!available.empty()) available += ", ";
        available += m.descriptor.name;
    }
    throw Error(ErrorKind::UnknownMethod, "unknown method '" + std::string(name) + "'; available: " + available);
}

}  // namespace mcdm
