#include "bootperc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bootperc {

namespace {

double kahan_sum(std::span<const double> xs) {
    double sum = 0.0, c = 0.0;
    for (double x : xs) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double pow_int(double x, int r) {
    double acc = 1.0;
    for (int k = 0; k < r; ++k) acc *= x;
    return acc;
}

void check_base_params(std::size_t n, double beta) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    if (!(beta > 2.0 && beta < 3.0))
        throw std::invalid_argument("beta must lie in (2,3)");
}

// Measure the tail-sandwich constants from the sequence itself. With
// h(x) = tail(x) * x^(beta-1) on [x0, n^zeta], gamma2 is the supremum
// (attained at the distinct weight values) and gamma1 the infimum
// (approached from above at the next distinct value, and at x0).
void measure_gammas(WeightSequence& ws) {
    const double bm1 = ws.beta - 1.0;
    const std::size_t n = ws.size();
    const double inv_n = 1.0 / static_cast<double>(n);

    double g1 = std::pow(ws.x0, bm1); // h(x0), all n weights counted
    double g2 = 0.0;

    std::size_t i = 0;
    while (i < n) {
        const double v = ws.weights[i];
        std::size_t j = i;
        while (j < n && ws.weights[j] == v) ++j;
        // j = count of weights >= v
        const double frac = static_cast<double>(j) * inv_n;
        g2 = std::max(g2, frac * std::pow(v, bm1));
        if (j < n) {
            const double next = ws.weights[j];
            g1 = std::min(g1, frac * std::pow(next, bm1));
        }
        i = j;
    }
    ws.gamma1 = g1;
    ws.gamma2 = std::max(g2, g1);
}

void finalize(WeightSequence& ws) {
    const double top = ws.max_weight();
    std::size_t p = 0;
    while (p < ws.size() && ws.weights[p] == top) ++p;
    ws.plateau_len = p;
    ws.total = kahan_sum(ws.weights);
    measure_gammas(ws);
}

} // namespace

WeightSequence build_weights(std::size_t n, double beta, double zeta, double x0) {
    check_base_params(n, beta);
    const double zeta_max = 1.0 / (beta - 1.0);
    if (!(zeta > 0.0 && zeta <= zeta_max))
        throw std::invalid_argument("zeta must satisfy 0 < zeta <= 1/(beta-1)");
    if (!(x0 > 0.0))
        throw std::invalid_argument("x0 must be > 0");

    const double nd = static_cast<double>(n);
    const double cap = std::pow(nd, zeta);
    if (x0 * std::pow(nd, zeta_max) < cap)
        throw std::invalid_argument(
            "x0 too small: x0 * n^(1/(beta-1)) must reach the max weight n^zeta");

    WeightSequence ws;
    ws.beta = beta;
    ws.zeta = zeta;
    ws.x0 = x0;
    ws.weights.resize(n);
    const double inv_bm1 = 1.0 / (beta - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = x0 * std::pow(nd / static_cast<double>(i + 1), inv_bm1);
        ws.weights[i] = std::min(cap, w);
    }
    // guard against rounding drift in pow
    for (std::size_t i = 1; i < n; ++i)
        ws.weights[i] = std::min(ws.weights[i], ws.weights[i - 1]);

    finalize(ws);
    return ws;
}

WeightSequence chung_lu_weights(std::size_t n, double beta, double d, double i0) {
    check_base_params(n, beta);
    if (!(d > 0.0))
        throw std::invalid_argument("d must be > 0");
    if (!(i0 >= 0.0))
        throw std::invalid_argument("i0 must be >= 0");

    const double nd = static_cast<double>(n);
    const double inv_bm1 = 1.0 / (beta - 1.0);
    const double c = d * (beta - 2.0) / (beta - 1.0);
    const double max_allowed = std::pow(nd, inv_bm1);
    const double max_w = i0 > 0.0
        ? c * std::pow(nd / i0, inv_bm1)
        : std::numeric_limits<double>::infinity();
    if (!(max_w <= max_allowed * (1.0 + 1e-12)))
        throw std::invalid_argument("max weight exceeds n^(1/(beta-1)); increase i0");

    WeightSequence ws;
    ws.beta = beta;
    ws.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        ws.weights[k] = c * std::pow(nd / (static_cast<double>(k) + i0), inv_bm1);
    for (std::size_t k = 1; k < n; ++k)
        ws.weights[k] = std::min(ws.weights[k], ws.weights[k - 1]);

    ws.x0 = ws.weights.back();
    ws.zeta = n > 1 ? std::log(ws.weights.front()) / std::log(nd) : 0.0;
    finalize(ws);
    return ws;
}

WeightSequence weights_from_raw(std::vector<double> weights, double beta) {
    if (weights.empty())
        throw std::invalid_argument("weight list must be nonempty");
    if (!(beta > 2.0 && beta < 3.0))
        throw std::invalid_argument("beta must lie in (2,3)");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("weights must be positive");
        if (i > 0 && weights[i] > weights[i - 1])
            throw std::invalid_argument("weights must be nonincreasing");
    }
    WeightSequence ws;
    ws.beta = beta;
    ws.weights = std::move(weights);
    ws.x0 = ws.weights.back();
    const double nd = static_cast<double>(ws.size());
    ws.zeta = ws.size() > 1 ? std::log(ws.weights.front()) / std::log(nd) : 0.0;
    finalize(ws);
    return ws;
}

double tail(const WeightSequence& ws, double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("tail: x must be > 0");
    auto it = std::partition_point(ws.weights.begin(), ws.weights.end(),
                                   [x](double w) { return w >= x; });
    return static_cast<double>(it - ws.weights.begin()) / static_cast<double>(ws.size());
}

double total_weight(const WeightSequence& ws) { return ws.total; }

double total_weight(const WeightSequence& ws, std::span<const std::uint32_t> subset) {
    double sum = 0.0, c = 0.0;
    for (std::uint32_t v : subset) {
        if (v >= ws.size())
            throw std::out_of_range("total_weight: vertex id out of range");
        double y = ws.weights[v] - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double moment_sum(const WeightSequence& ws, int r) {
    if (r < 1)
        throw std::invalid_argument("moment_sum: r must be >= 1");
    double sum = 0.0, c = 0.0;
    for (double w : ws.weights) {
        double y = pow_int(w, r) - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

std::size_t kernel_size(const WeightSequence& ws, double f) {
    if (!(f > 0.0))
        throw std::invalid_argument("kernel: f must be > 0");
    auto it = std::partition_point(ws.weights.begin(), ws.weights.end(),
                                   [f](double w) { return w >= f; });
    return static_cast<std::size_t>(it - ws.weights.begin());
}

std::vector<std::uint32_t> kernel(const WeightSequence& ws, double f) {
    std::vector<std::uint32_t> ids(kernel_size(ws, f));
    std::iota(ids.begin(), ids.end(), 0u);
    return ids;
}

BandDecomposition band_decomposition(const WeightSequence& ws, double f0, double C) {
    if (!(C > 1.0))
        throw std::invalid_argument("band_decomposition: C must be > 1");
    const double floor_f = std::pow(C, 2.0 / (3.0 - ws.beta));
    if (!(f0 >= floor_f))
        throw std::invalid_argument("kernel cutoff below band floor C^(2/(3-beta))");
    const double cap = ws.max_weight();
    if (!(f0 <= cap * (1.0 + 1e-12)))
        throw std::invalid_argument("band_decomposition: f0 must be <= n^zeta");

    BandDecomposition bd;
    bd.C = C;
    bd.f0 = f0;
    bd.psi = std::log(C) / std::log(f0);

    bd.cutoffs.push_back(f0);
    for (;;) {
        const double next = std::pow(bd.cutoffs.back(), ws.beta - 2.0) * C;
        if (next < floor_f) break;
        bd.cutoffs.push_back(next);
    }
    bd.T = bd.cutoffs.size() - 1;

    // Bands are contiguous index ranges of the descending weight order.
    std::vector<std::size_t> marks; // kernel sizes at f_0..f_T, then at C
    for (double f : bd.cutoffs) marks.push_back(kernel_size(ws, f));
    marks.push_back(kernel_size(ws, C));

    std::size_t prev = 0;
    for (std::size_t m : marks) {
        std::vector<std::uint32_t> band(m - prev);
        std::iota(band.begin(), band.end(), static_cast<std::uint32_t>(prev));
        bd.bands.push_back(std::move(band));
        prev = m;
    }
    return bd;
}

std::vector<double> band_failure_bounds(const BandDecomposition& bd, double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("band_failure_bounds: eps must be > 0");
    std::vector<double> bounds;
    bounds.reserve(bd.bands.size());
    for (const auto& band : bd.bands)
        bounds.push_back(std::exp(-0.5 * eps * eps * static_cast<double>(band.size())));
    return bounds;
}

void validate(const WeightSequence& ws) {
    const std::size_t n = ws.size();
    if (n == 0) throw std::logic_error("weights: empty sequence");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(ws.weights[i] > 0.0))
            throw std::logic_error("weights: nonpositive weight");
        if (i > 0 && ws.weights[i] > ws.weights[i - 1])
            throw std::logic_error("weights: not nonincreasing");
    }
    if (ws.min_weight() < ws.x0 * (1.0 - 1e-12))
        throw std::logic_error("weights: weight below x0");

    std::size_t p = 0;
    while (p < n && ws.weights[p] == ws.max_weight()) ++p;
    if (p != ws.plateau_len)
        throw std::logic_error("weights: plateau length mismatch");

    double total = kahan_sum(ws.weights);
    if (std::abs(total - ws.total) > 1e-9 * std::max(1.0, std::abs(total)))
        throw std::logic_error("weights: cached total out of date");

    WeightSequence copy = ws;
    measure_gammas(copy);
    if (std::abs(copy.gamma1 - ws.gamma1) > 1e-9 * copy.gamma1 ||
        std::abs(copy.gamma2 - ws.gamma2) > 1e-9 * copy.gamma2)
        throw std::logic_error("weights: sandwich constants out of date");
    if (!(ws.gamma1 > 0.0 && ws.gamma1 <= ws.gamma2))
        throw std::logic_error("weights: invalid sandwich constants");
}

void save_weights(const WeightSequence& ws, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out.precision(17);
    for (double w : ws.weights)
        out << w << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

WeightSequence load_weights(const std::string& path, double beta) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::vector<double> w;
    double x;
    while (in >> x) w.push_back(x);
    if (!in.eof())
        throw std::runtime_error("malformed weights file: " + path);
    return weights_from_raw(std::move(w), beta);
}

} // namespace bootperc
