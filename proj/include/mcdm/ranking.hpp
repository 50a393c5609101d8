#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcdm/core.hpp"

namespace mcdm {

/// PROMETHEE preference function. Only the usual (step) criterion is implemented.
enum class PreferenceFunction { Usual };

struct RankingOptions {
    /// VIKOR weight of the group-utility term, in [0, 1].
    double vikor_v = 0.5;
    /// Per-criterion PROMETHEE preference functions; empty means Usual everywhere.
    std::vector<PreferenceFunction> preference;
};

RankResult apply_topsis(const DecisionMatrix& matrix, const WeightVector& weights);
RankResult apply_vikor(const DecisionMatrix& matrix, const WeightVector& weights, double v = 0.5);
RankResult apply_promethee2(const DecisionMatrix& matrix, const WeightVector& weights,
                            std::span<const PreferenceFunction> preference = {});
RankResult apply_copras(const DecisionMatrix& matrix, const WeightVector& weights);
RankResult apply_saw(const DecisionMatrix& matrix, const WeightVector& weights);
RankResult apply_wpm(const DecisionMatrix& matrix, const WeightVector& weights);
RankResult apply_moora(const DecisionMatrix& matrix, const WeightVector& weights);

struct MethodDescriptor {
    std::string name;
    bool needs_weights;
    bool needs_directions;
    ScoreDirection score_direction;
};

using RankingMethod = std::function<RankResult(const DecisionMatrix&, const WeightVector&, const RankingOptions&)>;

struct RegisteredMethod {
    MethodDescriptor descriptor;
    RankingMethod run;
};

/// Every implemented ranking method, in a fixed order.
std::span<const RegisteredMethod> registered_methods();

/// Case-insensitive lookup ("wsm" is accepted for "saw"). Throws UnknownMethod listing the available names.
const RegisteredMethod& registry_lookup(std::string_view name);

}  // namespace mcdm
