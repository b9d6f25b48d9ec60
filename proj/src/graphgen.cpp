#include "bootperc/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bootperc {

namespace {

// Upper-triangle pair index of {i,j}, i < j, over n vertices.
std::uint64_t tri_index(std::uint64_t n, std::uint64_t i, std::uint64_t j) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

void check_vertex_count(std::size_t n) {
    if (n >= (1ull << 32))
        throw std::invalid_argument("vertex count exceeds sampler limit (2^32)");
}

// One geometric-skip row scan: visit candidates j in (i, n) with skips at
// probability pbar, thin each visited candidate to accept(j). Consumes
// counters base+0, base+1, ... of rng.
template <typename Accept>
void scan_row(const RngStream& rng, std::uint64_t base, std::size_t i, std::size_t n,
              double pbar, std::vector<std::uint32_t>& out, Accept accept) {
    if (pbar <= 0.0) return;
    std::uint64_t k = 0;
    std::size_t j = i;
    const bool skipping = pbar < 1.0;
    const double log1m = skipping ? std::log1p(-pbar) : 0.0;
    for (;;) {
        if (skipping) {
            const double u = rng.uniform_at(base + k++);
            const double skip = std::log1p(-u) / log1m; // >= 0
            if (skip >= static_cast<double>(n - 1 - j)) break;
            j += 1 + static_cast<std::size_t>(skip);
        } else {
            if (j + 1 >= n) break;
            j += 1;
        }
        if (accept(j, rng.uniform_at(base + k++)))
            out.push_back(static_cast<std::uint32_t>(j));
    }
}

} // namespace

double edge_probability(const WeightSequence& ws, std::uint32_t i, std::uint32_t j) {
    if (i >= ws.size() || j >= ws.size())
        throw std::out_of_range("edge_probability: vertex id out of range");
    if (i == j)
        throw std::invalid_argument("edge_probability: self-pairs have no edge");
    return std::min(ws.weights[i] * ws.weights[j] / ws.total, 1.0);
}

std::uint64_t count_clamped_pairs(const WeightSequence& ws) {
    const std::size_t n = ws.size();
    std::uint64_t count = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = ws.total / ws.weights[i];
        auto it = std::partition_point(ws.weights.begin(), ws.weights.end(),
                                       [t](double w) { return w >= t; });
        const std::size_t c = static_cast<std::size_t>(it - ws.weights.begin());
        if (c <= i + 1) break; // thresholds only grow down the sequence
        count += c - (i + 1);
    }
    return count;
}

Graph sample_chung_lu(const WeightSequence& ws, const RngStream& rng) {
    const std::size_t n = ws.size();
    check_vertex_count(n);
    const double W = ws.total;
    const auto& w = ws.weights;
    std::vector<std::vector<std::uint32_t>> rows(n);
    const std::size_t last = n > 0 ? n - 1 : 0;

#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < last; ++i) {
        const double pbar = std::min(w[i] * w[i + 1] / W, 1.0);
        const double wi = w[i];
        scan_row(rng, static_cast<std::uint64_t>(i) << 32, i, n, pbar, rows[i],
                 [&](std::size_t j, double u) {
                     const double p = std::min(wi * w[j] / W, 1.0);
                     return u * pbar < p;
                 });
    }
    return Graph::from_upper_rows(std::move(rows));
}

Graph sample_chung_lu_reference(const WeightSequence& ws, const RngStream& rng) {
    const std::size_t n = ws.size();
    check_vertex_count(n);
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = std::min(ws.weights[i] * ws.weights[j] / ws.total, 1.0);
            if (rng.uniform_at(tri_index(n, i, j)) < p)
                rows[i].push_back(static_cast<std::uint32_t>(j));
        }
    return Graph::from_upper_rows(std::move(rows));
}

Graph sample_gnp(std::size_t N, double p, const RngStream& rng) {
    check_vertex_count(N);
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");
    std::vector<std::vector<std::uint32_t>> rows(N);
    const std::size_t last = N > 0 ? N - 1 : 0;

#pragma omp parallel for schedule(dynamic, 256)
    for (std::size_t i = 0; i < last; ++i)
        scan_row(rng, static_cast<std::uint64_t>(i) << 32, i, N, p, rows[i],
                 [](std::size_t, double) { return true; });
    return Graph::from_upper_rows(std::move(rows));
}

Graph sample_gnp_reference(std::size_t N, double p, const RngStream& rng) {
    check_vertex_count(N);
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");
    std::vector<std::vector<std::uint32_t>> rows(N);
    for (std::size_t i = 0; i + 1 < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (rng.uniform_at(tri_index(N, i, j)) < p)
                rows[i].push_back(static_cast<std::uint32_t>(j));
    return Graph::from_upper_rows(std::move(rows));
}

CoupledKernelSample sample_coupled_kernel(const WeightSequence& ws, double f,
                                          const RngStream& rng) {
    const std::size_t n = ws.size();
    check_vertex_count(n);
    const std::size_t K = kernel_size(ws, f);
    if (K == 0)
        throw std::invalid_argument("sample_coupled_kernel: empty kernel");

    CoupledKernelSample out;
    out.kernel_vertices = K;
    out.p_f = f * f / ws.total;

    std::vector<std::vector<std::uint32_t>> gnp_rows(K), cl_rows(K);
    const std::size_t last = K - 1;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < last; ++i)
        for (std::size_t j = i + 1; j < K; ++j) {
            const double u = rng.uniform_at(tri_index(n, i, j));
            const double pij = std::min(ws.weights[i] * ws.weights[j] / ws.total, 1.0);
            if (u < out.p_f) gnp_rows[i].push_back(static_cast<std::uint32_t>(j));
            if (u < pij) cl_rows[i].push_back(static_cast<std::uint32_t>(j));
        }
    out.gnp = Graph::from_upper_rows(std::move(gnp_rows));
    out.cl_kernel = Graph::from_upper_rows(std::move(cl_rows));
    return out;
}

} // namespace bootperc
