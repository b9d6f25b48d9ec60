#ifndef BOOTPERC_WEIGHTS_HPP
#define BOOTPERC_WEIGHTS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bootperc {

// Deterministic power-law weight sequence. Weights are nonincreasing, bounded
// by [x0, n^zeta], and the empirical tail #{i : w_i >= x}/n is sandwiched
// between gamma1*x^(1-beta) and gamma2*x^(1-beta) on [x0, n^zeta]. The gamma
// constants are measured from the built sequence, so the sandwich holds
// exactly for the instance.
struct WeightSequence {
    std::vector<double> weights; // w_1 >= w_2 >= ... (0-indexed storage)
    double beta = 0.0;           // power-law exponent, 2 < beta < 3
    double zeta = 0.0;           // max weight = n^zeta
    double x0 = 0.0;             // minimum weight
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::size_t plateau_len = 0; // prefix with w_i == n^zeta
    double total = 0.0;          // W_[n]

    std::size_t size() const { return weights.size(); }
    double max_weight() const { return weights.front(); }
    double min_weight() const { return weights.back(); }
};

// Canonical family w_i = min(n^zeta, x0*(n/i)^(1/(beta-1))), i = 1..n.
WeightSequence build_weights(std::size_t n, double beta, double zeta, double x0);

// Chung-Lu family w_k = d*(beta-2)/(beta-1)*(n/(k+i0))^(1/(beta-1)), k = 0..n-1.
// i0 shifts the whole family down; the max weight must stay <= n^(1/(beta-1)).
WeightSequence chung_lu_weights(std::size_t n, double beta, double d, double i0);

// Wrap an explicit nonincreasing weight list; metadata (x0, zeta, gammas) is
// measured from the list itself. beta only affects the gamma measurement and
// band operations.
WeightSequence weights_from_raw(std::vector<double> weights, double beta = 2.5);

// Empirical tail #{i : w_i >= x} / n.
double tail(const WeightSequence& ws, double x);

double total_weight(const WeightSequence& ws);
double total_weight(const WeightSequence& ws, std::span<const std::uint32_t> subset);

// Sum of w_i^r over all vertices.
double moment_sum(const WeightSequence& ws, int r);

// Number of vertices with w_i >= f. The kernel is always a prefix of the
// (descending) vertex order.
std::size_t kernel_size(const WeightSequence& ws, double f);
std::vector<std::uint32_t> kernel(const WeightSequence& ws, double f);

// Partition of Ker_C into weight bands driven by the cutoff recursion
// f_{j+1} = f_j^(beta-2) * C, stopped at the floor C^(2/(3-beta)).
struct BandDecomposition {
    double C = 0.0;
    double f0 = 0.0;
    double psi = 0.0;              // ln C / ln f0
    std::vector<double> cutoffs;   // f_0 > f_1 > ... > f_T
    std::size_t T = 0;             // last cutoff index
    std::vector<std::vector<std::uint32_t>> bands; // Lambda_0 .. Lambda_{T+1}
};

BandDecomposition band_decomposition(const WeightSequence& ws, double f0, double C);

// Per-band concentration bounds exp(-eps^2 |Lambda_j| / 2) for the infection
// cascade diagnostics.
std::vector<double> band_failure_bounds(const BandDecomposition& bd, double eps);

// Throws std::logic_error if any structural invariant fails.
void validate(const WeightSequence& ws);

// Plain text, one decimal weight per line, line i holds w_{i+1}.
void save_weights(const WeightSequence& ws, const std::string& path);
WeightSequence load_weights(const std::string& path, double beta = 2.5);

} // namespace bootperc

#endif
