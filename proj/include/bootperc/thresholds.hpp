#ifndef BOOTPERC_THRESHOLDS_HPP
#define BOOTPERC_THRESHOLDS_HPP

#include <optional>
#include <string>

#include "bootperc/weights.hpp"

namespace bootperc {

// Regimes of the max-weight exponent zeta for activation threshold r:
//   SharpCaseI    zeta > 1/2                       (kernel pairs clamp to 1)
//   SharpCaseII   (r-1)/(2r-beta+1) < zeta <= 1/2  (dense kernel, sharp threshold)
//   GapCaseIII    0 < zeta <= (r-1)/(2r-beta+1)    (upper/lower thresholds split)
enum class Regime { SharpCaseI, SharpCaseII, GapCaseIII };

Regime classify_regime(double beta, double zeta, int r);
std::string to_string(Regime regime);

struct PowerOfN {
    double exponent = 0.0;
    double value = 0.0;
};

// Critical seed size a_c(n) = n^((r(1-zeta)+zeta(beta-1)-1)/r). Below it the
// cascade a.a.s. does not evolve; above it (sharp regimes) a linear fraction
// is infected.
PowerOfN critical_a(double n, double beta, double zeta, int r);

// Upper threshold a_c+(n) = n^(1-zeta(r-beta+2)/(r-1)) for the gap regime.
PowerOfN critical_a_plus(double n, double beta, double zeta, int r);

// G(N,p) bootstrap percolation scales:
//   t_c = ((r-1)!/(N p^r))^(1/(r-1)),  a_c = (1-1/r) t_c,
//   b_c = N (pN)^(r-1)/(r-1)! * exp(-pN).
struct ErThresholds {
    double N = 0.0;
    double p = 0.0;
    int r = 0;
    double t_c = 0.0;
    double a_c = 0.0;
    double b_c = 0.0;
};

ErThresholds er_thresholds(double N, double p, int r);

// Unique root in [0,1] of r*phi - phi^r = (r-1)*alpha; residual <= 1e-12.
double phi(double alpha, int r);

// phi1(alpha) = (r/(r-1)) phi(alpha)/alpha, continuously extended to
// phi1(0) = 1.
double phi1(double alpha, int r);

// Kernel cutoff f = [(r-1)! W^r / (gamma1 n a^(r-1))]^(1/(2r-beta+1)).
// With a weight sequence supplied, the validity flags are evaluated on it.
struct FChoice {
    double value = 0.0;
    bool has_flags = false;
    bool below_max_weight = false; // f < n^zeta
    bool seed_fits_kernel = false; // a < N_f
    bool product_sublinear = false; // a*f < n
};

FChoice f_choice(double n, double w_total, double a, double gamma1, double beta,
                 int r, const WeightSequence* ws = nullptr);

// First-round infection probability bound
// p_inf = (1/(2 r!)) (a f x0 / W)^r, clamped into [0,1].
struct ClampedProb {
    double value = 0.0;
    bool clamped = false;
};

ClampedProb p_inf(double a, double f, double x0, double w_total, int r);

// Expected count of vertices with >= r seeded neighbors under Bernoulli(a/n)
// seeding: sum_i (e w_i a / (r n))^r.
double first_moment_bound(const WeightSequence& ws, double a, int r);

// Numerical check of the supercritical path for a concrete instance: picks
// the regime-appropriate kernel cutoff, evaluates the outbreak quantities,
// and reports which launch condition holds.
struct SupercriticalWitness {
    Regime regime = Regime::SharpCaseI;
    double f = 0.0;
    bool kernel_empty = false;
    double n_f = 0.0;      // |Ker_f|
    double p_f = 0.0;      // f^2 / W
    double p_inf = 0.0;
    double nf_p_inf = 0.0; // expected first-round infections in the kernel
    double nf_pf_r = 0.0;  // N_f p_f^r (dense-regime margin)
    double t_c = 0.0;      // T_c(N_f, p_f)
    bool condition_satisfied = false;
    std::string condition;
};

SupercriticalWitness supercritical_witness(const WeightSequence& ws, double a, int r);

// Bundle of every closed-form quantity at one parameter point. The optional
// entries need a seed size a (and a support sequence for W, gamma1, x0).
struct ThresholdReport {
    double n = 0.0;
    double beta = 0.0;
    double zeta = 0.0;
    int r = 0;
    Regime regime = Regime::SharpCaseI;
    PowerOfN a_c;
    std::optional<PowerOfN> a_c_plus; // present iff regime == GapCaseIII
    std::optional<double> f_n;
    std::optional<double> p_inf_value;
    bool p_inf_clamped = false;
    std::optional<double> first_moment;
};

ThresholdReport threshold_report(double n, double beta, double zeta, int r,
                                 std::optional<double> a = {}, double x0 = 1.0,
                                 std::optional<double> gamma1_override = {});

} // namespace bootperc

#endif
