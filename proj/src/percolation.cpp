#include "bootperc/percolation.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace bootperc {

namespace {

std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Floyd's algorithm: a distinct values uniform over [0, pop).
std::vector<std::uint32_t> sample_distinct(std::size_t pop, std::size_t a, RngStream& rng) {
    std::vector<std::uint32_t> out;
    out.reserve(a);
    std::vector<bool> taken(pop, false);
    for (std::size_t j = pop - a; j < pop; ++j) {
        std::size_t t = rng.next_below(j + 1);
        if (taken[t]) t = j;
        taken[t] = true;
        out.push_back(static_cast<std::uint32_t>(t));
    }
    return sorted_unique(std::move(out));
}

} // namespace

std::vector<std::uint32_t> select_seeds(const SeedSpec& spec, std::size_t n,
                                        RngStream rng, const WeightSequence* ws) {
    using S = SeedSpec::Strategy;
    switch (spec.strategy) {
    case S::ExplicitSet: {
        auto s = sorted_unique(spec.explicit_set);
        if (!s.empty() && s.back() >= n)
            throw std::invalid_argument("select_seeds: explicit vertex out of range");
        return s;
    }
    case S::UniformSubset: {
        if (spec.a > n)
            throw std::invalid_argument("select_seeds: a exceeds vertex count");
        if (spec.a == 0) return {};
        return sample_distinct(n, spec.a, rng);
    }
    case S::BernoulliPerVertex: {
        if (spec.a > n)
            throw std::invalid_argument("select_seeds: a exceeds vertex count");
        const double p = static_cast<double>(spec.a) / static_cast<double>(n);
        std::vector<std::uint32_t> out;
        for (std::size_t v = 0; v < n; ++v)
            if (rng.uniform_at(v) < p) out.push_back(static_cast<std::uint32_t>(v));
        return out;
    }
    case S::SmallestWeights: {
        if (ws == nullptr)
            throw std::invalid_argument("select_seeds: SmallestWeights needs weights");
        if (spec.a > n)
            throw std::invalid_argument("select_seeds: a exceeds vertex count");
        // weights are stored nonincreasing, so the smallest are the suffix
        std::vector<std::uint32_t> out(spec.a);
        for (std::size_t k = 0; k < spec.a; ++k)
            out[k] = static_cast<std::uint32_t>(n - spec.a + k);
        return out;
    }
    case S::UniformInKernel: {
        if (ws == nullptr)
            throw std::invalid_argument("select_seeds: UniformInKernel needs weights");
        const std::size_t K = kernel_size(*ws, spec.f);
        if (K == 0)
            throw std::invalid_argument("select_seeds: kernel is empty");
        if (spec.a > K)
            throw std::invalid_argument("select_seeds: a exceeds kernel size");
        if (spec.a == 0) return {};
        return sample_distinct(K, spec.a, rng);
    }
    }
    throw std::logic_error("select_seeds: unknown strategy");
}

PercolationTrace run_bootstrap(const Graph& g, std::span<const std::uint32_t> seed,
                               int r, std::optional<std::uint64_t> shuffle_seed) {
    if (r < 1)
        throw std::invalid_argument("run_bootstrap: r must be >= 1");
    if (r == 1)
        std::cerr << "warning: r=1 is outside the model (threshold cascades need r >= 2)\n";

    const std::size_t n = g.num_vertices();
    PercolationTrace trace;
    trace.r = r;
    trace.infection_round.assign(n, PercolationTrace::kNever);

    std::vector<std::uint32_t> frontier;
    for (std::uint32_t v : seed) {
        if (v >= n)
            throw std::invalid_argument("run_bootstrap: seed vertex out of range");
        if (trace.infection_round[v] == PercolationTrace::kNever) {
            trace.infection_round[v] = 0;
            frontier.push_back(v);
        }
    }
    trace.seed = frontier;
    std::sort(trace.seed.begin(), trace.seed.end());

    std::optional<RngStream> shuffler;
    if (shuffle_seed) shuffler.emplace(*shuffle_seed, 0);

    std::vector<std::uint32_t> counts(n, 0);
    std::uint32_t round = 0;
    while (!frontier.empty()) {
        if (shuffler)
            for (std::size_t k = frontier.size(); k > 1; --k)
                std::swap(frontier[k - 1], frontier[shuffler->next_below(k)]);

        ++round;
        std::vector<std::uint32_t> next;
        for (std::uint32_t v : frontier)
            for (std::uint32_t u : g.neighbors(v)) {
                if (trace.infection_round[u] != PercolationTrace::kNever) continue;
                if (++counts[u] == static_cast<std::uint32_t>(r))
                    next.push_back(u);
            }
        // flip the whole generation together
        for (std::uint32_t u : next) trace.infection_round[u] = round;
        if (!next.empty()) {
            std::sort(next.begin(), next.end());
            trace.rounds.push_back(next);
        }
        frontier = std::move(next);
    }

    for (std::uint32_t v = 0; v < n; ++v)
        if (trace.infection_round[v] != PercolationTrace::kNever)
            trace.final_set.push_back(v);
    return trace;
}

std::vector<std::uint32_t> brute_force_bootstrap(const Graph& g,
                                                 std::span<const std::uint32_t> seed,
                                                 int r) {
    if (r < 1)
        throw std::invalid_argument("brute_force_bootstrap: r must be >= 1");
    const std::size_t n = g.num_vertices();
    std::vector<bool> infected(n, false);
    for (std::uint32_t v : seed) {
        if (v >= n)
            throw std::invalid_argument("brute_force_bootstrap: seed vertex out of range");
        infected[v] = true;
    }
    for (;;) {
        std::vector<std::uint32_t> newly;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (infected[v]) continue;
            int c = 0;
            for (std::uint32_t u : g.neighbors(v))
                if (infected[u]) ++c;
            if (c >= r) newly.push_back(v);
        }
        if (newly.empty()) break;
        for (std::uint32_t v : newly) infected[v] = true;
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < n; ++v)
        if (infected[v]) out.push_back(v);
    return out;
}

std::size_t count_neighbors_in_set(const Graph& g, std::uint32_t v,
                                   std::span<const std::uint32_t> s) {
    if (v >= g.num_vertices())
        throw std::out_of_range("count_neighbors_in_set: vertex out of range");
    std::size_t c = 0;
    for (std::uint32_t u : g.neighbors(v))
        if (std::binary_search(s.begin(), s.end(), u)) ++c;
    return c;
}

void certify_fixed_point(const Graph& g, const PercolationTrace& trace) {
    const auto& fin = trace.final_set;
    std::vector<bool> seeded(g.num_vertices(), false);
    for (std::uint32_t v : trace.seed) seeded[v] = true;

    for (std::uint32_t v : fin)
        if (!seeded[v] &&
            count_neighbors_in_set(g, v, fin) < static_cast<std::size_t>(trace.r))
            throw std::logic_error("trace: infected vertex below threshold");

    std::size_t k = 0;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
        if (k < fin.size() && fin[k] == v) {
            ++k;
            continue;
        }
        if (count_neighbors_in_set(g, v, fin) >= static_cast<std::size_t>(trace.r))
            throw std::logic_error("trace: uninfected vertex at or above threshold");
    }
}

} // namespace bootperc
