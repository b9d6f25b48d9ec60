#ifndef BOOTPERC_EXPERIMENTS_HPP
#define BOOTPERC_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bootperc/percolation.hpp"
#include "bootperc/thresholds.hpp"
#include "bootperc/weights.hpp"

namespace bootperc {

struct SweepModel {
    enum class Kind { ChungLu, Gnp };
    Kind kind = Kind::ChungLu;
    // ChungLu (canonical weight family; n comes from the grid)
    double beta = 2.5;
    double zeta = 0.5;
    double x0 = 1.0;
    // Gnp
    double p = 0.0;
};

// A grid seed size: either an absolute count or a multiple of the critical
// size at each n (a_c for Chung-Lu, A_c(N,p) for G(N,p)).
struct SeedCount {
    double amount = 0.0;
    bool times_a_c = false;
};

struct SweepConfig {
    SweepModel model;
    int r = 2;
    SeedSpec::Strategy seed_strategy = SeedSpec::Strategy::UniformSubset;
    double kernel_f = 0.0; // UniformInKernel only
    std::vector<SeedCount> a_values;
    std::vector<std::size_t> n_values;
    std::size_t replicas = 1;
    std::uint64_t master_seed = 0;
    bool resample_graph = true;           // fresh graph per replica
    std::optional<double> kernel_C;       // measure Ker_C coverage when set
    std::string output_path;
};

struct SweepRecord {
    std::size_t n = 0;
    std::size_t a = 0;
    std::size_t replica = 0;
    std::uint64_t graph_seed = 0; // stream id used with the master seed
    std::uint64_t seed_seed = 0;
    int r = 0;
    std::size_t seed_size = 0; // |A_0| (Bernoulli strategies vary)
    std::size_t final_size = 0;
    std::size_t rounds = 0;
    bool no_evolution = false;
    std::optional<double> kernel_fraction;
};

// One record per grid point x replica, ordered by (n-index, a-index,
// replica). Deterministic for a given config and master seed under any
// thread count. point_done, when set, receives each grid point's records as
// soon as the point completes (for streaming output).
using PointSink = std::function<void(std::span<const SweepRecord>)>;
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int threads = 0,
                                   const PointSink& point_done = nullptr);

struct NoEvolutionEstimate {
    double p_hat = 0.0;
    double lo = 0.0; // Wilson 95% interval
    double hi = 0.0;
    std::size_t hits = 0;
    std::size_t total = 0;
};

NoEvolutionEstimate estimate_no_evolution(std::span<const SweepRecord> records,
                                          std::size_t n, std::size_t a);

struct FinalFractionEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
    double median = 0.0;
    std::size_t total = 0;
};

FinalFractionEstimate estimate_final_fraction(std::span<const SweepRecord> records,
                                              std::size_t n, std::size_t a);

// |A_f intersect Ker_C| / |Ker_C|.
double kernel_coverage(const PercolationTrace& trace, const WeightSequence& ws,
                       double C);

// CSV columns, exactly:
// n,a,replica,graph_seed,seed_seed,r,final_size,rounds,no_evolution,kernel_fraction
extern const char* const kSweepCsvHeader;
void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, std::span<const SweepRecord> records);
void write_csv(std::span<const SweepRecord> records, const std::string& path);
std::vector<SweepRecord> read_csv(const std::string& path);

// JSON config document; unknown keys are rejected with their field path.
SweepConfig read_config(const std::string& path);
SweepConfig parse_config_text(const std::string& text);
std::string config_to_json(const SweepConfig& cfg);

// The absolute seed size a grid entry resolves to at size n.
std::size_t resolve_a(const SweepConfig& cfg, const SeedCount& av, std::size_t n);

} // namespace bootperc

#endif
