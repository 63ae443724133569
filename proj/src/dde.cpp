#include <ddec/dde.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace ddec {

void DdeConfig::validate() const
{
    if (!(f > 0.0) || !std::isfinite(f))
        throw ConfigError("DdeConfig: f must be a positive finite number");
    if (!(cr >= 0.0 && cr <= 1.0))
        throw ConfigError("DdeConfig: cr must lie in [0, 1]");
    if (pop_size < 4)
        throw ConfigError("DdeConfig: pop_size must be at least 4");
    if (dim < 1)
        throw ConfigError("DdeConfig: dim must be at least 1");
    if (upper_bound < lower_bound)
        throw ConfigError("DdeConfig: upper_bound must not be below lower_bound");
    if (!(h > 0.0) || !std::isfinite(h))
        throw ConfigError("DdeConfig: h must be a positive finite number");
    if (transform_cap < 2)
        throw ConfigError("DdeConfig: transform_cap must be at least 2");
    if (!std::isfinite(penalty_cost))
        throw ConfigError("DdeConfig: penalty_cost must be finite");
    if (target_objective && !std::isfinite(*target_objective))
        throw ConfigError("DdeConfig: target_objective must be finite");
}

std::int64_t effective_transform_cap(const DdeConfig& cfg)
{
    if (cfg.upper_bound < cfg.transform_cap)
        return cfg.transform_cap;
    std::int64_t cap = 10;
    while (cap <= cfg.upper_bound)
        cap *= 10;
    return cap;
}

double forward_transform(std::int64_t x, const DdeConfig& cfg)
{
    const auto span = static_cast<double>(effective_transform_cap(cfg) - 1);
    return -1.0 + static_cast<double>(x) * cfg.h * 5.0 / span;
}

std::int64_t backward_transform(double x_real, const DdeConfig& cfg)
{
    if (!std::isfinite(x_real))
        throw NumericError("backward_transform: non-finite input");
    const auto span = static_cast<double>(effective_transform_cap(cfg) - 1);
    const double v = (1.0 + x_real) * span / (5.0 * cfg.h);
    if (std::abs(v) > 9.0e18)
        throw NumericError("backward_transform: value out of integer range");
    return static_cast<std::int64_t>(std::round(v));
}

std::vector<IntVector> init_population(const DdeConfig& cfg, Rng& rng)
{
    cfg.validate();
    std::vector<IntVector> pop(cfg.pop_size, IntVector(cfg.dim));
    for (auto& ind : pop) {
        for (auto& v : ind)
            v = rng.uniform_int(cfg.lower_bound, cfg.upper_bound);
    }
    return pop;
}

RealVector mutate(std::span<const double> best, std::span<const double> xr1, std::span<const double> xr2, double f)
{
    if (best.size() != xr1.size() || best.size() != xr2.size())
        throw std::invalid_argument("mutate: dimension mismatch");
    RealVector v(best.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = best[j] + f * (xr1[j] - xr2[j]);
    return v;
}

RealVector crossover(std::span<const double> target, std::span<const double> mutant, double cr, Rng& rng)
{
    if (target.size() != mutant.size() || target.empty())
        throw std::invalid_argument("crossover: dimension mismatch");
    const std::size_t j_rand = rng.index(target.size());
    RealVector u(target.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        u[j] = (rng.uniform01() <= cr || j == j_rand) ? mutant[j] : target[j];
    return u;
}

const IntVector& select(const IntVector& target, const IntVector& trial, double j_target, double j_trial)
{
    return j_trial <= j_target ? trial : target;
}

Validity validate(std::span<const std::int64_t> v, const DdeConfig& cfg)
{
    for (const auto x : v) {
        if (x < cfg.lower_bound || x > cfg.upper_bound)
            return Validity::penalized;
    }
    return Validity::feasible;
}

namespace {

double evaluate(const Objective& objective, const IntVector& v, const DdeConfig& cfg, std::size_t generation, std::size_t individual)
{
    if (validate(v, cfg) == Validity::penalized)
        return cfg.penalty_cost;
    try {
        return objective(v);
    }
    catch (const std::exception& e) {
        throw ObjectiveError("objective failed at generation " + std::to_string(generation) + ", individual "
                + std::to_string(individual) + ": " + e.what(),
            generation, individual);
    }
}

std::size_t argmin(const std::vector<double>& values)
{
    return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

bool target_reached(const DdeConfig& cfg, double best)
{
    return cfg.target_objective && best <= *cfg.target_objective;
}

} // namespace

EvolutionResult evolve(const Objective& objective, const DdeConfig& cfg, Rng& rng, const EvolutionObserver* observer)
{
    cfg.validate();
    const std::size_t n = cfg.pop_size;
    const std::size_t dim = cfg.dim;

    std::vector<IntVector> pop = init_population(cfg, rng);
    std::vector<double> cost(n);
    for (std::size_t i = 0; i < n; ++i)
        cost[i] = evaluate(objective, pop[i], cfg, 0, i);

    EvolutionResult result;
    std::size_t best_idx = argmin(cost);
    result.best = pop[best_idx];
    result.best_objective = cost[best_idx];
    result.objective_trace.push_back(result.best_objective);

    std::vector<RealVector> real(n, RealVector(dim));
    std::vector<IntVector> trials(n, IntVector(dim));
    std::vector<double> trial_cost(n);

    for (std::size_t gen = 1; gen <= cfg.max_generations && !target_reached(cfg, result.best_objective); ++gen) {
        best_idx = argmin(cost);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < dim; ++j)
                real[i][j] = forward_transform(pop[i][j], cfg);
        }

        for (std::size_t i = 0; i < n; ++i) {
            // r1, r2 uniform over the population without replacement, excluding i.
            std::size_t r1 = rng.index(n - 1);
            if (r1 >= i)
                ++r1;
            std::size_t r2 = rng.index(n - 2);
            const std::size_t lo = std::min(i, r1);
            const std::size_t hi = std::max(i, r1);
            if (r2 >= lo)
                ++r2;
            if (r2 >= hi)
                ++r2;
            if (observer && observer->on_mutation_indices)
                observer->on_mutation_indices(gen, i, r1, r2);

            const RealVector mutant = mutate(real[best_idx], real[r1], real[r2], cfg.f);
            const RealVector trial = crossover(real[i], mutant, cfg.cr, rng);
            for (std::size_t j = 0; j < dim; ++j)
                trials[i][j] = backward_transform(trial[j], cfg);
        }

        for (std::size_t i = 0; i < n; ++i)
            trial_cost[i] = evaluate(objective, trials[i], cfg, gen, i);

        for (std::size_t i = 0; i < n; ++i) {
            if (&select(pop[i], trials[i], cost[i], trial_cost[i]) == &trials[i]) {
                pop[i] = trials[i];
                cost[i] = trial_cost[i];
            }
        }

        const std::size_t gen_best = argmin(cost);
        if (cost[gen_best] < result.best_objective) {
            result.best = pop[gen_best];
            result.best_objective = cost[gen_best];
        }
        result.generations_run = gen;
        result.objective_trace.push_back(result.best_objective);
        if (observer && observer->on_generation)
            observer->on_generation(gen, pop, cost);
    }
    return result;
}

} // namespace ddec
