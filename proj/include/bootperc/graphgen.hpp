#ifndef BOOTPERC_GRAPHGEN_HPP
#define BOOTPERC_GRAPHGEN_HPP

#include <cstdint>

#include "bootperc/graph.hpp"
#include "bootperc/rng.hpp"
#include "bootperc/weights.hpp"

namespace bootperc {

// Pair inclusion probability min(w_i * w_j / W, 1).
double edge_probability(const WeightSequence& ws, std::uint32_t i, std::uint32_t j);

// Number of pairs whose probability clamps to 1. The expected-degree identity
// E[deg i] = w_i (W - w_i) / W only holds when this is zero.
std::uint64_t count_clamped_pairs(const WeightSequence& ws);

// Chung-Lu sampler, expected O(n + m): per source row, candidate targets are
// visited with geometric skips at the row upper bound min(w_i*w_{i+1}/W, 1)
// and thinned down to the true pair probability. Rows are independent
// counter-based streams, so the result is identical under any thread count.
Graph sample_chung_lu(const WeightSequence& ws, const RngStream& rng);

// Serial O(n^2) per-pair Bernoulli scan; the distributional reference for
// sample_chung_lu. One uniform per pair, indexed by the upper-triangle
// position.
Graph sample_chung_lu_reference(const WeightSequence& ws, const RngStream& rng);

// G(N,p) via the same geometric-skip scheme.
Graph sample_gnp(std::size_t N, double p, const RngStream& rng);
Graph sample_gnp_reference(std::size_t N, double p, const RngStream& rng);

// Shared-randomness coupling on the f-kernel: per pair one uniform U decides
// both graphs (gnp edge iff U < p_f, CL edge iff U < p_ij). Since
// p_f = f^2/W <= p_ij on the kernel, the gnp edges are always a subset.
// Vertices are the kernel prefix relabeled 0..N_f-1. The per-pair uniforms
// use the full-graph pair index, so cl_kernel matches the reference sampler
// restricted to the kernel under the same stream.
struct CoupledKernelSample {
    Graph gnp;
    Graph cl_kernel;
    double p_f = 0.0;
    std::size_t kernel_vertices = 0;
};

CoupledKernelSample sample_coupled_kernel(const WeightSequence& ws, double f,
                                          const RngStream& rng);

} // namespace bootperc

#endif
