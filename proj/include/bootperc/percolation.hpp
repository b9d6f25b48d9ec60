#ifndef BOOTPERC_PERCOLATION_HPP
#define BOOTPERC_PERCOLATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bootperc/graph.hpp"
#include "bootperc/rng.hpp"
#include "bootperc/weights.hpp"

namespace bootperc {

struct SeedSpec {
    enum class Strategy {
        ExplicitSet,      // the given vertex set
        UniformSubset,    // a distinct vertices uniform over [n]
        BernoulliPerVertex, // each vertex independently with prob a/n
        SmallestWeights,  // the a vertices of smallest weight
        UniformInKernel,  // a distinct vertices uniform over Ker_f
    };
    Strategy strategy = Strategy::UniformSubset;
    std::size_t a = 0;
    double f = 0.0;                          // UniformInKernel only
    std::vector<std::uint32_t> explicit_set; // ExplicitSet only
};

// ws is required for SmallestWeights and UniformInKernel. Returns a sorted
// unique vertex set; for BernoulliPerVertex the size is random with mean a.
std::vector<std::uint32_t> select_seeds(const SeedSpec& spec, std::size_t n,
                                        RngStream rng,
                                        const WeightSequence* ws = nullptr);

struct PercolationTrace {
    static constexpr std::uint32_t kNever = UINT32_MAX;

    int r = 0;
    std::vector<std::uint32_t> seed;                 // A_0, sorted
    std::vector<std::vector<std::uint32_t>> rounds;  // newly infected per round
    std::vector<std::uint32_t> final_set;            // A_f, sorted
    std::vector<std::uint32_t> infection_round;      // per vertex, kNever if uninfected

    std::size_t final_size() const { return final_set.size(); }
    bool no_evolution() const { return rounds.empty(); }
};

// Synchronous bootstrap percolation to the fixed point: every round, all
// uninfected vertices with >= r infected neighbors flip together. Cost
// O(n + m) via per-vertex infected-neighbor counters. r = 1 is accepted for
// connectivity checks (with a warning to stderr); the model proper has r >= 2.
// shuffle_seed randomizes the worklist processing order (confluence testing).
PercolationTrace run_bootstrap(const Graph& g, std::span<const std::uint32_t> seed,
                               int r, std::optional<std::uint64_t> shuffle_seed = {});

// Rescan-until-stable oracle; intended for small instances.
std::vector<std::uint32_t> brute_force_bootstrap(const Graph& g,
                                                 std::span<const std::uint32_t> seed,
                                                 int r);

// Degree of v into the sorted vertex set s.
std::size_t count_neighbors_in_set(const Graph& g, std::uint32_t v,
                                   std::span<const std::uint32_t> s);

// Re-verifies both fixed-point conditions of a finished trace; throws
// std::logic_error on violation.
void certify_fixed_point(const Graph& g, const PercolationTrace& trace);

} // namespace bootperc

#endif
