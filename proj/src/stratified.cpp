#include "mcdm/stratified.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mcdm/text.hpp"
#include "mcdm/weighting.hpp"

namespace mcdm {

StateSpace enumerate_states(int events) {
    if (events < 1 || events > kMaxEvents) {
        throw Error(ErrorKind::TooManyEvents, "event count must be in [1, " + std::to_string(kMaxEvents) + "], got " +
                                                  std::to_string(events));
    }
    StateSpace space;
    space.events = events;
    space.strata.resize(static_cast<std::size_t>(events) + 1);
    space.states.reserve(std::size_t{1} << events);

    // Lexicographic combinations of each size, smallest size first.
    for (int r = 0; r <= events; ++r) {
        std::vector<int> combo(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) combo[static_cast<std::size_t>(i)] = i;
        while (true) {
            space.strata[static_cast<std::size_t>(r)].push_back(space.states.size());
            space.states.push_back(combo);
            int i = r - 1;
            while (i >= 0 && combo[static_cast<std::size_t>(i)] == events - r + i) --i;
            if (i < 0) break;
            ++combo[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < r; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return space;
}

namespace {

// e_0..e_k of the ratios.
std::vector<double> elementary_symmetric(std::span<const double> r) {
    std::vector<double> e(r.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        for (std::size_t t = j + 1; t >= 1; --t) e[t] += e[t - 1] * r[j];
    }
    return e;
}

}  // namespace

double solve_baseline_probability(std::span<const double> ratios) {
    if (ratios.empty()) {
        throw Error(ErrorKind::InvalidArgument, "at least one event ratio is required");
    }
    for (double r : ratios) {
        if (!std::isfinite(r) || r <= 0.0) {
            throw Error(ErrorKind::InvalidArgument, "event ratios must be positive and finite");
        }
    }
    // Polynomial coefficients c_1..c_k of f(p) = sum c_t p^t - 1.
    std::vector<double> c = elementary_symmetric(ratios);
    c[1] += 1.0;
    c[0] = -1.0;
    const auto f = [&](double p) {
        double acc = 0.0;
        for (std::size_t t = c.size(); t-- > 0;) acc = acc * p + c[t];
        return acc;
    };
    const auto df = [&](double p) {
        double acc = 0.0;
        for (std::size_t t = c.size(); t-- > 1;) acc = acc * p + static_cast<double>(t) * c[t];
        return acc;
    };

    double lo = 0.0, hi = 1.0;
    if (!(f(lo) < 0.0 && f(hi) > 0.0)) {
        throw Error(ErrorKind::NoRootInUnitInterval, "internal error: baseline polynomial not bracketed by (0, 1)");
    }
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double p = 0.5 * (lo + hi);
    for (int step = 0; step < 2; ++step) {
        const double d = df(p);
        if (d <= 0.0) break;
        const double next = p - f(p) / d;
        if (next > 0.0 && next <= 1.0) p = next;
    }
    return p;
}

std::vector<double> state_probabilities(const StateSpace& space, std::span<const double> weights) {
    if (weights.size() != static_cast<std::size_t>(space.events) + 1) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(space.events + 1) +
                                                   " baseline/event weights, got " + std::to_string(weights.size()));
    }
    for (double w : weights) {
        if (!std::isfinite(w) || w <= 0.0) {
            throw Error(ErrorKind::InvalidArgument, "baseline and event weights must be positive");
        }
    }
    std::vector<double> ratios(weights.size() - 1);
    for (std::size_t j = 0; j < ratios.size(); ++j) ratios[j] = weights[j + 1] / weights[0];
    const double p0 = solve_baseline_probability(ratios);

    std::vector<double> p(space.size());
    for (std::size_t s = 0; s < space.size(); ++s) {
        const auto& subset = space.states[s];
        double prod = 1.0;
        for (int e : subset) prod *= ratios[static_cast<std::size_t>(e)];
        p[s] = prod * std::pow(p0, static_cast<double>(std::max<std::size_t>(1, subset.size())));
    }
    return p;
}

namespace {

std::vector<std::string> labels_or_default(std::vector<std::string> given, std::string_view prefix, std::size_t n,
                                           std::string_view what) {
    if (given.empty()) return default_labels(prefix, n);
    if (given.size() != n) {
        throw Error(ErrorKind::LengthMismatch, std::string(what) + " label count " + std::to_string(given.size()) +
                                                   " does not match dimension " + std::to_string(n));
    }
    return given;
}

std::vector<std::string> default_state_names(std::size_t s) {
    std::vector<std::string> out;
    for (std::size_t t = 0; t < s; ++t) out.push_back("State " + std::to_string(t));
    return out;
}

void require_nonnegative(const Matrix& m, std::string_view what) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!std::isfinite(m(i, j))) {
                throw Error(ErrorKind::InvalidArgument, std::string(what) + " has a non-finite entry at row " +
                                                            std::to_string(i + 1) + ", column " +
                                                            std::to_string(j + 1));
            }
            if (m(i, j) < 0.0) {
                throw Error(ErrorKind::NegativeEntry, std::string(what) + " has a negative entry at row " +
                                                          std::to_string(i + 1) + ", column " +
                                                          std::to_string(j + 1));
            }
        }
    }
}

int power_of_two_exponent(std::size_t s) {
    if (s < 2 || (s & (s - 1)) != 0) return -1;
    int k = 0;
    while ((std::size_t{1} << k) < s) ++k;
    return k;
}

}  // namespace

StratifiedModel::StratifiedModel(Matrix comparison, Matrix state_criteria, std::vector<double> likelihood,
                                 ProbabilityMode mode, std::vector<std::string> alternative_names,
                                 std::vector<std::string> criterion_names, std::vector<std::string> state_names)
    : comparison_(std::move(comparison)),
      state_criteria_(std::move(state_criteria)),
      likelihood_(std::move(likelihood)),
      mode_(mode) {
    const auto m = static_cast<std::size_t>(comparison_.rows());
    const auto n = static_cast<std::size_t>(comparison_.cols());
    const auto s = static_cast<std::size_t>(state_criteria_.cols());
    if (m == 0 || n == 0 || s == 0) {
        throw Error(ErrorKind::DimensionMismatch, "stratified model needs at least one alternative, criterion and state");
    }
    if (static_cast<std::size_t>(state_criteria_.rows()) != n) {
        throw Error(ErrorKind::DimensionMismatch, "comparison matrix has " + std::to_string(n) +
                                                      " criteria but the state-criteria matrix has " +
                                                      std::to_string(state_criteria_.rows()) + " rows");
    }
    require_nonnegative(comparison_, "comparison matrix");
    require_nonnegative(state_criteria_, "state-criteria matrix");
    for (double p : likelihood_) {
        if (!std::isfinite(p) || p < 0.0) {
            throw Error(ErrorKind::NegativeEntry, "likelihood entries must be finite and nonnegative");
        }
    }
    alternatives_ = labels_or_default(std::move(alternative_names), "A", m, "alternative");
    criteria_ = labels_or_default(std::move(criterion_names), "C", n, "criterion");
    states_ = state_names.empty() ? default_state_names(s) : labels_or_default(std::move(state_names), "S", s, "state");

    if (mode_ == ProbabilityMode::GivenProbabilities) {
        if (likelihood_.size() != s) {
            throw Error(ErrorKind::DimensionMismatch, "state-criteria matrix has " + std::to_string(s) +
                                                          " states but the likelihood vector has " +
                                                          std::to_string(likelihood_.size()) + " entries");
        }
        double sum = 0.0;
        for (double p : likelihood_) sum += p;
        if (std::abs(sum - 1.0) > 1e-6) {
            throw Error(ErrorKind::InvalidArgument, "state probabilities sum to " + format_double(sum) +
                                                        ", expected 1");
        }
    } else {
        const int k = power_of_two_exponent(s);
        if (k < 1) {
            throw Error(ErrorKind::ModeDimensionMismatch, "independent events need 2^k states, got " +
                                                              std::to_string(s));
        }
        const auto needed = static_cast<std::size_t>(k) + 1;
        if (likelihood_.size() == s && s != needed) {
            warnings_.push_back("independent events: using the first " + std::to_string(needed) +
                                " likelihood entries (baseline and single-event states); the rest are ignored");
            likelihood_.resize(needed);
        } else if (likelihood_.size() != needed) {
            throw Error(ErrorKind::ModeDimensionMismatch, "independent events with " + std::to_string(k) +
                                                              " events need " + std::to_string(needed) +
                                                              " likelihood weights, got " +
                                                              std::to_string(likelihood_.size()));
        }
        for (double w : likelihood_) {
            if (!(w > 0.0)) {
                throw Error(ErrorKind::InvalidArgument, "independent-event weights must be positive");
            }
        }
    }

    for (std::size_t t = 0; t < s; ++t) {
        const double col = state_criteria_.col(static_cast<Eigen::Index>(t)).sum();
        if (std::abs(col - 1.0) > 1e-6) {
            warnings_.push_back("state '" + states_[t] + "' criterion weights sum to " + format_double(col));
        }
    }
}

StratifiedModel StratifiedModel::with_mode(ProbabilityMode mode) const {
    return StratifiedModel(comparison_, state_criteria_, likelihood_, mode, alternatives_, criteria_, states_);
}

std::vector<double> model_state_probabilities(const StratifiedModel& model) {
    if (model.mode() == ProbabilityMode::GivenProbabilities) return model.likelihood();
    const int k = power_of_two_exponent(model.state_count());
    return state_probabilities(enumerate_states(k), model.likelihood());
}

SmcdmResult apply_smcdm(const StratifiedModel& model) {
    std::vector<double> p = model_state_probabilities(model);
    const Eigen::Map<const Eigen::VectorXd> pv(p.data(), static_cast<Eigen::Index>(p.size()));
    const Eigen::VectorXd raw = model.state_criteria() * pv;
    if (!(raw.sum() > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "aggregate criterion weights are all zero");
    }
    WeightVector w = WeightVector::normalized(std::vector<double>(raw.data(), raw.data() + raw.size()),
                                              model.criterion_names());
    const Eigen::Map<const Eigen::VectorXd> wv(w.weights().data(), static_cast<Eigen::Index>(w.size()));
    const Eigen::VectorXd scores = model.comparison() * wv;

    RankResult r = rank_from_scores(std::span<const double>(scores.data(), static_cast<std::size_t>(scores.size())),
                                    ScoreDirection::HigherIsBetter, model.alternative_names());
    r.warnings = model.warnings();
    return {std::move(r), std::move(w), std::move(p)};
}

std::string emit_state_tree(const StratifiedModel& model) {
    const std::vector<double> p = model_state_probabilities(model);
    const std::size_t s = model.state_count();
    const int k = power_of_two_exponent(s);
    const StateSpace space = k >= 1 ? enumerate_states(k) : StateSpace{};

    std::ostringstream dot;
    dot << "digraph smcdm {\n";
    dot << "  rankdir=LR;\n";
    dot << "  node [shape=circle];\n";

    const auto node = [&](std::size_t t) {
        Eigen::Index top = 0;
        const double w = model.state_criteria().col(static_cast<Eigen::Index>(t)).maxCoeff(&top);
        // The event list follows a DOT line break, so it is appended after quoting.
        std::string label = dot_quote(model.state_names()[t]);
        if (k >= 1 && !space.states[t].empty()) {
            std::string events = "\\n{";
            for (std::size_t e = 0; e < space.states[t].size(); ++e) {
                if (e) events += ",";
                events += "E" + std::to_string(space.states[t][e] + 1);
            }
            label.insert(label.size() - 1, events + "}");
        }
        dot << "    s" << t << " [label=" << label
            << ", dominant_criterion=" << dot_quote(model.criterion_names()[static_cast<std::size_t>(top)])
            << ", dominant_weight=\"" << format_double(w) << "\", width=\"" << format_double(0.3 + w) << "\"];\n";
    };

    if (k >= 1) {
        for (std::size_t r = 0; r < space.strata.size(); ++r) {
            dot << "  subgraph cluster_stratum_" << r + 1 << " {\n";
            dot << "    label=\"Stratum " << r + 1 << "\";\n";
            for (std::size_t t : space.strata[r]) node(t);
            dot << "  }\n";
        }
    } else {
        for (std::size_t t = 0; t < s; ++t) node(t);
    }
    for (std::size_t t = 1; t < s; ++t) {
        char shown[32];
        std::snprintf(shown, sizeof shown, "%.4f", p[t]);
        dot << "  s0 -> s" << t << " [label=\"" << shown << "\", probability=\"" << format_double(p[t])
            << "\", penwidth=\"" << format_double(1.0 + 10.0 * p[t]) << "\"];\n";
    }
    dot << "}\n";
    return dot.str();
}

SbwmModel::SbwmModel(Matrix comparison, Matrix others_to_worst, Matrix others_to_best,
                     std::vector<std::size_t> worst_per_state, std::vector<std::size_t> best_per_state,
                     std::vector<double> likelihood, std::vector<std::string> alternative_names,
                     std::vector<std::string> criterion_names, std::vector<std::string> state_names)
    : comparison_(std::move(comparison)),
      others_to_worst_(std::move(others_to_worst)),
      others_to_best_(std::move(others_to_best)),
      worst_(std::move(worst_per_state)),
      best_(std::move(best_per_state)),
      likelihood_(std::move(likelihood)) {
    const auto m = static_cast<std::size_t>(comparison_.rows());
    const auto n = static_cast<std::size_t>(comparison_.cols());
    const std::size_t s = likelihood_.size();
    if (m == 0 || n == 0 || s == 0) {
        throw Error(ErrorKind::DimensionMismatch, "SBWM model needs at least one alternative, criterion and state");
    }
    const auto shape_ok = [&](const Matrix& a) {
        return static_cast<std::size_t>(a.rows()) == n && static_cast<std::size_t>(a.cols()) == s;
    };
    if (!shape_ok(others_to_worst_) || !shape_ok(others_to_best_)) {
        throw Error(ErrorKind::DimensionMismatch, "others-to-worst and others-to-best must be " + std::to_string(n) +
                                                      "x" + std::to_string(s) + " (criteria x states)");
    }
    if (worst_.size() != s || best_.size() != s) {
        throw Error(ErrorKind::DimensionMismatch, "one worst and one best criterion per state (" + std::to_string(s) +
                                                      " states) is required");
    }
    alternatives_ = labels_or_default(std::move(alternative_names), "A", m, "alternative");
    criteria_ = labels_or_default(std::move(criterion_names), "C", n, "criterion");
    states_ = state_names.empty() ? default_state_names(s) : labels_or_default(std::move(state_names), "S", s, "state");
    require_nonnegative(comparison_, "comparison matrix");

    for (std::size_t t = 0; t < s; ++t) {
        if (worst_[t] >= n || best_[t] >= n) {
            throw Error(ErrorKind::UnknownCriterionLabel, "state '" + states_[t] + "' names a criterion index out of range");
        }
        const auto col = static_cast<Eigen::Index>(t);
        if (std::abs(others_to_worst_(static_cast<Eigen::Index>(worst_[t]), col) - 1.0) > 1e-12) {
            throw Error(ErrorKind::InvalidArgument, "state '" + states_[t] + "': worst criterion '" +
                                                        criteria_[worst_[t]] +
                                                        "' must compare to itself as 1 in others-to-worst");
        }
        if (std::abs(others_to_best_(static_cast<Eigen::Index>(best_[t]), col) - 1.0) > 1e-12) {
            throw Error(ErrorKind::InvalidArgument, "state '" + states_[t] + "': best criterion '" +
                                                        criteria_[best_[t]] +
                                                        "' must compare to itself as 1 in others-to-best");
        }
    }
    double sum = 0.0;
    for (double p : likelihood_) {
        if (!std::isfinite(p) || p < 0.0) {
            throw Error(ErrorKind::NegativeEntry, "likelihood entries must be finite and nonnegative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw Error(ErrorKind::InvalidArgument, "state likelihoods sum to " + format_double(sum) + ", expected 1");
    }
}

SbwmResult apply_sbwm(const SbwmModel& model) {
    const auto n = static_cast<Eigen::Index>(model.criteria());
    const auto s = static_cast<Eigen::Index>(model.state_count());
    Matrix weights(n, s);
    std::vector<double> xi(static_cast<std::size_t>(s));
    for (Eigen::Index t = 0; t < s; ++t) {
        const Eigen::VectorXd bo = model.others_to_best().col(t);
        const Eigen::VectorXd ow = model.others_to_worst().col(t);
        const BwmProblem problem(std::vector<double>(bo.data(), bo.data() + n),
                                 std::vector<double>(ow.data(), ow.data() + n),
                                 model.best_per_state()[static_cast<std::size_t>(t)],
                                 model.worst_per_state()[static_cast<std::size_t>(t)], model.criterion_names());
        const BwmSolution sol = apply_bwm(problem);
        for (Eigen::Index j = 0; j < n; ++j) weights(j, t) = sol.weights[static_cast<std::size_t>(j)];
        xi[static_cast<std::size_t>(t)] = sol.xi;
    }
    const StratifiedModel stratified(model.comparison(), weights, model.likelihood(),
                                     ProbabilityMode::GivenProbabilities, model.alternative_names(),
                                     model.criterion_names(), model.state_names());
    SmcdmResult agg = apply_smcdm(stratified);
    return {std::move(agg.ranking), std::move(weights), std::move(xi), std::move(agg.aggregate_weights)};
}

}  // namespace mcdm
