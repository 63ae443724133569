#pragma once

#include <ddec/rng.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ddec {

using IntVector = std::vector<std::int64_t>;
using RealVector = std::vector<double>;

/// Invalid engine configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite value reached the backward transform.
class NumericError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An objective evaluation threw; the message carries generation and individual.
class ObjectiveError : public std::runtime_error {
public:
    ObjectiveError(const std::string& what, std::size_t generation, std::size_t individual)
        : std::runtime_error(what), generation(generation), individual(individual)
    {
    }

    std::size_t generation;
    std::size_t individual;
};

/// Discrete differential evolution settings. Defaults are the circle
/// detector's published values (F = 0.25, Cr = 0.80, 30 individuals,
/// 3 indices, h = 100, B = 1000).
struct DdeConfig {
    double f = 0.25;
    double cr = 0.80;
    std::size_t pop_size = 30;
    std::size_t dim = 3;
    std::int64_t lower_bound = 1;
    std::int64_t upper_bound = 999;
    std::size_t max_generations = 100;
    double h = 100.0;
    std::int64_t transform_cap = 1000;
    double penalty_cost = 2.0;
    std::optional<double> target_objective;
    Rng::seed_type seed = 0;

    /// Throws ConfigError on an unusable configuration.
    void validate() const;
};

/// Transform cap actually used: transform_cap, or the smallest power of ten
/// above upper_bound when upper_bound >= transform_cap.
std::int64_t effective_transform_cap(const DdeConfig& cfg);

/// Integer to real: -1 + x * h * 5 / (B - 1).
double forward_transform(std::int64_t x, const DdeConfig& cfg);

/// Real to integer: (1 + x) * (B - 1) / (5 * h), rounded half away from zero.
std::int64_t backward_transform(double x_real, const DdeConfig& cfg);

std::vector<IntVector> init_population(const DdeConfig& cfg, Rng& rng);

/// DE/best/1 mutant: best + f * (xr1 - xr2).
RealVector mutate(std::span<const double> best, std::span<const double> xr1, std::span<const double> xr2, double f);

/// Binomial crossover. Coordinate j comes from the mutant when a uniform draw
/// is <= cr or j is the randomly chosen forced index.
RealVector crossover(std::span<const double> target, std::span<const double> mutant, double cr, Rng& rng);

/// Greedy selection; ties go to the trial.
const IntVector& select(const IntVector& target, const IntVector& trial, double j_target, double j_trial);

enum class Validity { feasible, penalized };

Validity validate(std::span<const std::int64_t> v, const DdeConfig& cfg);

using Objective = std::function<double(std::span<const std::int64_t>)>;

struct EvolutionResult {
    IntVector best;
    double best_objective = 0.0;
    std::size_t generations_run = 0;
    /// Best objective after initialization, then after each generation.
    std::vector<double> objective_trace;
};

/// Optional per-generation hook for instrumentation (population after selection).
struct EvolutionObserver {
    /// Called with (generation, target index, r1, r2) for every mutation.
    std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> on_mutation_indices;
    std::function<void(std::size_t, std::span<const IntVector>, std::span<const double>)> on_generation;
};

/// Runs the full discrete DE loop: initialize, evaluate, then per generation
/// forward-transform, mutate around the current best, cross over,
/// backward-transform, validate (penalizing out-of-range trials without
/// calling the objective), evaluate and select. Stops after max_generations
/// or once the best objective reaches target_objective.
EvolutionResult evolve(const Objective& objective, const DdeConfig& cfg, Rng& rng, const EvolutionObserver* observer = nullptr);

} // namespace ddec
