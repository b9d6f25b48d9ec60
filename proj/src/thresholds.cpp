#include "bootperc/thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace bootperc {

namespace {

void check_beta_r(double beta, int r) {
    if (!(beta > 2.0 && beta < 3.0))
        throw std::invalid_argument("beta must lie in (2,3)");
    if (r < 2)
        throw std::invalid_argument("r must be >= 2");
}

// Formula-level zeta check; slightly tolerant so rounded CLI values like
// 0.6667 for 2/3 still evaluate.
void check_zeta_loose(double beta, double zeta) {
    if (!(zeta > 0.0 && zeta <= (1.0 + 1e-3) / (beta - 1.0)))
        throw std::invalid_argument("zeta must satisfy 0 < zeta <= 1/(beta-1)");
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double pow_int(double x, int r) {
    double acc = 1.0;
    for (int k = 0; k < r; ++k) acc *= x;
    return acc;
}

} // namespace

Regime classify_regime(double beta, double zeta, int r) {
    check_beta_r(beta, r);
    check_zeta_loose(beta, zeta);
    const double gap_edge = (r - 1.0) / (2.0 * r - beta + 1.0);
    if (zeta > 0.5) return Regime::SharpCaseI;
    if (zeta > gap_edge) return Regime::SharpCaseII;
    return Regime::GapCaseIII;
}

std::string to_string(Regime regime) {
    switch (regime) {
    case Regime::SharpCaseI: return "SharpCaseI";
    case Regime::SharpCaseII: return "SharpCaseII";
    case Regime::GapCaseIII: return "GapCaseIII";
    }
    return "?";
}

PowerOfN critical_a(double n, double beta, double zeta, int r) {
    check_beta_r(beta, r);
    check_zeta_loose(beta, zeta);
    if (!(n >= 1.0))
        throw std::invalid_argument("n must be >= 1");
    PowerOfN out;
    out.exponent = (r * (1.0 - zeta) + zeta * (beta - 1.0) - 1.0) / r;
    out.value = std::pow(n, out.exponent);
    return out;
}

PowerOfN critical_a_plus(double n, double beta, double zeta, int r) {
    check_beta_r(beta, r);
    if (!(n >= 1.0))
        throw std::invalid_argument("n must be >= 1");
    const double gap_edge = (r - 1.0) / (2.0 * r - beta + 1.0);
    if (!(zeta > 0.0 && zeta <= gap_edge))
        throw std::invalid_argument(
            "zeta outside the gap regime (use critical_a for the sharp regimes)");
    PowerOfN out;
    out.exponent = 1.0 - zeta * (r - beta + 2.0) / (r - 1.0);
    out.value = std::pow(n, out.exponent);
    return out;
}

ErThresholds er_thresholds(double N, double p, int r) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("p must lie in (0,1)");
    if (r < 2)
        throw std::invalid_argument("r must be >= 2");
    if (!(N >= 1.0))
        throw std::invalid_argument("N must be >= 1");
    ErThresholds out;
    out.N = N;
    out.p = p;
    out.r = r;
    out.t_c = std::pow(factorial(r - 1) / (N * pow_int(p, r)), 1.0 / (r - 1));
    out.a_c = (1.0 - 1.0 / r) * out.t_c;
    out.b_c = N * pow_int(p * N, r - 1) / factorial(r - 1) * std::exp(-p * N);
    return out;
}

double phi(double alpha, int r) {
    if (r < 2)
        throw std::invalid_argument("phi: r must be >= 2");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("phi: alpha must lie in [0,1]");
    if (alpha == 0.0) return 0.0;
    if (alpha == 1.0) return 1.0;

    const double target = (r - 1.0) * alpha;
    auto h = [&](double x) { return r * x - pow_int(x, r) - target; };
    // h is nondecreasing on [0,1] with h(0) <= 0 <= h(1); bisection down to
    // the last representable interval keeps the residual at a few ulps.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (h(mid) < 0.0) lo = mid; else hi = mid;
    }
    return std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
}

double phi1(double alpha, int r) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("phi1: alpha must lie in [0,1]");
    if (alpha == 0.0) return 1.0;
    return (r / (r - 1.0)) * phi(alpha, r) / alpha;
}

FChoice f_choice(double n, double w_total, double a, double gamma1, double beta,
                 int r, const WeightSequence* ws) {
    check_beta_r(beta, r);
    if (!(n > 0.0 && w_total > 0.0 && a > 0.0 && gamma1 > 0.0))
        throw std::invalid_argument("f_choice: all inputs must be positive");
    FChoice out;
    const double bracket =
        factorial(r - 1) * pow_int(w_total, r) / (gamma1 * n * pow_int(a, r - 1));
    out.value = std::pow(bracket, 1.0 / (2.0 * r - beta + 1.0));
    if (ws != nullptr) {
        out.has_flags = true;
        out.below_max_weight = out.value < ws->max_weight();
        const std::size_t nf =
            out.value <= 0.0 ? ws->size() : kernel_size(*ws, out.value);
        out.seed_fits_kernel = a < static_cast<double>(nf);
        out.product_sublinear = a * out.value < static_cast<double>(ws->size());
    }
    return out;
}

ClampedProb p_inf(double a, double f, double x0, double w_total, int r) {
    if (r < 2)
        throw std::invalid_argument("p_inf: r must be >= 2");
    if (!(w_total > 0.0) || a < 0.0 || f < 0.0 || !(x0 > 0.0))
        throw std::invalid_argument("p_inf: invalid inputs");
    ClampedProb out;
    out.value = pow_int(a * f * x0 / w_total, r) / (2.0 * factorial(r));
    if (out.value > 1.0) {
        out.value = 1.0;
        out.clamped = true;
    }
    return out;
}

double first_moment_bound(const WeightSequence& ws, double a, int r) {
    if (r < 2)
        throw std::invalid_argument("first_moment_bound: r must be >= 2");
    if (a < 0.0 || a > static_cast<double>(ws.size()))
        throw std::invalid_argument("first_moment_bound: need 0 <= a <= n");
    const double n = static_cast<double>(ws.size());
    const double scale = std::exp(1.0) * a / (r * n);
    return pow_int(scale, r) * moment_sum(ws, r);
}

SupercriticalWitness supercritical_witness(const WeightSequence& ws, double a, int r) {
    if (r < 2)
        throw std::invalid_argument("supercritical_witness: r must be >= 2");
    if (!(a > 0.0))
        throw std::invalid_argument("supercritical_witness: a must be > 0");

    const double n = static_cast<double>(ws.size());
    const double W = ws.total;
    SupercriticalWitness out;
    out.regime = classify_regime(ws.beta, ws.zeta, r);

    // Regime-appropriate kernel cutoff. Case I rests on the kernel subgraph
    // being complete, which holds exactly from f = sqrt(W) upward (every
    // pair probability clamps). The other cases scale the max weight down by
    // the growth factor of a over the critical size.
    switch (out.regime) {
    case Regime::SharpCaseI:
        out.f = std::sqrt(W);
        break;
    case Regime::SharpCaseII: {
        const double ac = critical_a(n, ws.beta, ws.zeta, r).value;
        const double omega = std::max(a / ac, 1.0);
        out.f = ws.max_weight() / std::pow(omega, 1.0 + 1.0 / r);
        break;
    }
    case Regime::GapCaseIII: {
        const double acp = critical_a_plus(n, ws.beta, ws.zeta, r).value;
        const double omega = std::max(std::sqrt(a / acp), 1.0);
        out.f = ws.max_weight() / std::pow(omega, 1.0 + 1.0 / r);
        break;
    }
    }

    const std::size_t nf = kernel_size(ws, out.f);
    if (nf == 0) {
        out.kernel_empty = true;
        out.condition = "kernel empty";
        return out;
    }
    out.n_f = static_cast<double>(nf);
    out.p_f = out.f * out.f / W;
    out.p_inf = p_inf(a, out.f, ws.x0, W, r).value;
    out.nf_p_inf = out.n_f * out.p_inf;
    out.nf_pf_r = out.n_f * pow_int(out.p_f, r);
    out.t_c = std::pow(factorial(r - 1) / (out.n_f * pow_int(out.p_f, r)),
                       1.0 / (r - 1));

    switch (out.regime) {
    case Regime::SharpCaseI:
        out.condition_satisfied = out.nf_p_inf > r;
        out.condition = "complete kernel with N_f * p_inf > r";
        break;
    case Regime::SharpCaseII:
        out.condition_satisfied = out.nf_pf_r > 1.0 && out.nf_p_inf > r;
        out.condition = "dense kernel (N_f p_f^r > 1) with N_f * p_inf > r";
        break;
    case Regime::GapCaseIII:
        out.condition_satisfied = out.nf_p_inf > out.t_c;
        out.condition = "N_f * p_inf > T_c(N_f, p_f)";
        break;
    }
    if (!out.condition_satisfied) out.condition = "no condition satisfied";
    return out;
}

ThresholdReport threshold_report(double n, double beta, double zeta, int r,
                                 std::optional<double> a, double x0,
                                 std::optional<double> gamma1_override) {
    ThresholdReport rep;
    rep.n = n;
    rep.beta = beta;
    rep.zeta = zeta;
    rep.r = r;
    rep.regime = classify_regime(beta, zeta, r);
    rep.a_c = critical_a(n, beta, zeta, r);
    if (rep.regime == Regime::GapCaseIII)
        rep.a_c_plus = critical_a_plus(n, beta, zeta, r);

    if (a) {
        const std::size_t ni = static_cast<std::size_t>(n);
        const double zeta_build = std::min(zeta, 1.0 / (beta - 1.0));
        WeightSequence ws = build_weights(ni, beta, zeta_build, x0);
        const double g1 = gamma1_override.value_or(ws.gamma1);
        FChoice fc = f_choice(n, ws.total, *a, g1, beta, r, &ws);
        rep.f_n = fc.value;
        ClampedProb pi = p_inf(*a, fc.value, x0, ws.total, r);
        rep.p_inf_value = pi.value;
        rep.p_inf_clamped = pi.clamped;
        rep.first_moment = first_moment_bound(ws, *a, r);
    }
    return rep;
}

} // namespace bootperc
