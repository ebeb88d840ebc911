#pragma once

// Upper bound for log max_{|z|=R} ||W_H(z)|| from comparison data (d_l, d_phi, c_l, c_phi, psi),
// the thresholds k(R) and h(R), the density g and its integral, the remainder L(t, R), the
// crossing T(R), and the lower comparison value [1/(d_l d_phi)]^-(R).
//
// Thresholds such as k, h and T can exceed the double range, so they are carried as
// logarithms (u = log t) throughout; the plain-valued wrappers saturate to +inf.

#include <array>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nevbound/hamiltonian.hpp"
#include "nevbound/regvar.hpp"

namespace nevbound {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct ComparisonData {
    ComparisonFunction d_l;
    ComparisonFunction d_phi;
    ComparisonFunction c_l;
    ComparisonFunction c_phi;
    double psi = 0.0;
    // Multiplicative constants for inequalities that only hold up to a constant.
    std::optional<std::array<double, 4>> declared_constants;

    // Probes monotonicity, d_phi <= 1 and c_phi <= c_l; throws std::invalid_argument.
    void validate() const;
};

// Strict majorants for l_j = j^-alpha, phi_j = (-1)^j j^-beta:
// d_l = t^-alpha, d_phi = min(1, 2 t^-beta), c_l = t^{1-alpha}/(alpha-1),
// c_phi = t^{1-alpha-2beta}/(alpha+2beta-1), psi = 0.
ComparisonData alternating_power_data(double alpha, double beta);

struct MajorizationReport {
    // Smallest constants K with l_j <= K d_l(j), |sin(phi_{j+1}-phi_j)| <= K d_phi(j) and the two tail
    // inequalities with K c_l(N), K c_phi(N), over j, N <= N_check.
    double K_dl = 0.0, K_dphi = 0.0, K_cl = 0.0, K_cphi = 0.0;
    std::size_t N_check = 0;
    // Data rescaled by max(K, 1) so that every inequality holds with constant 1 on the checked range.
    ComparisonData rescaled;
    bool strict() const { return K_dl <= 1 && K_dphi <= 1 && K_cl <= 1 && K_cphi <= 1; }
};

// Throws HypothesisViolation (with the witness index) when a ratio keeps growing with N,
// i.e. no constant can make the inequality hold.
MajorizationReport check_majorization(const HamburgerHamiltonian& H, const ComparisonData& data,
                                      std::size_t N_check = 1 << 14);

// psi among 64 equispaced values in [0, pi) minimizing sum_{N/4 < j <= N} l_j sin^2(phi_j - psi).
double auto_psi(const HamburgerHamiltonian& H, std::size_t N_check = 1 << 14);

enum class BoundMode { at_T, grid_infimum };

struct BoundOptions {
    int points_per_decade = 64;
    bool golden_refine = true;
};

struct BoundReport {
    double R = 0.0;
    double log_kR = 0.0, log_hR = 0.0, log_TR = 0.0;  // +inf for k, h when the predicate never fails
    double log_t_star = 0.0;                          // where the bound is evaluated
    double g_at_T = 0.0, RC_at_T = 0.0, L_at_T = 0.0;
    double B = 0.0;        // max{g, R (c_l c_phi)^{1/2}} + L at t_star
    double B_upper = 0.0;  // 9 B
    double log_lower = 0.0;
    std::optional<double> logM;
    std::optional<double> margin_upper;  // B_upper - logM
    BoundMode mode = BoundMode::at_T;
    bool trivial = false;  // B_upper >= R: no better than minimal exponential type
    bool small_R = false;  // T(R) < 2, outside the regime where the asymptotic lemmas apply

    double kR() const;
    double hR() const;
    double TR() const;
    double lower() const;
};

// One radius; caches the running integral of g along t and the telescoping sum in L.
class BoundEvaluator {
public:
    BoundEvaluator(const ComparisonData& data, double R);
    ~BoundEvaluator();
    BoundEvaluator(BoundEvaluator&&) noexcept;
    BoundEvaluator& operator=(BoundEvaluator&&) noexcept;

    double R() const;
    double log_k() const;
    double log_h() const;
    double g_density(double u) const;          // g(e^u, R)
    double g_integral(double u);               // int_1^{e^u} g(s, R) ds
    double log_rc(double u) const;             // log of R (c_l c_phi)^{1/2}(e^u)
    double L_term(double u);                   // L(e^u, R)
    double objective(double u);                // max{g_integral, R (c_l c_phi)^{1/2}} + L
    double solve_T_log(double rel_tol = 1e-12);  // log T(R); CapError when no crossing exists

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

double k_of_R(const ComparisonData& data, double R);
double h_of_R(const ComparisonData& data, double R);
double g_integral(const ComparisonData& data, double t, double R);
double L_term(const ComparisonData& data, double t, double R);
double solve_T(const ComparisonData& data, double R, double tol = 1e-12);

BoundReport upper_bound_B(const ComparisonData& data, double R, BoundMode mode, const BoundOptions& options = {});

// [1/(d_l d_phi)]^-(R); lower_bound_log returns its logarithm. Throws DomainError when
// 1/(d_l d_phi) is not eventually increasing.
double lower_bound(const ComparisonFunction& d_l, const ComparisonFunction& d_phi, double R);
double lower_bound_log(const ComparisonFunction& d_l, const ComparisonFunction& d_phi, double R);

struct SandwichRow {
    BoundReport report;     // grid infimum, with logM filled in
    double margin_upper;    // B_upper - logM
    double margin_lower;    // logM / D^-(R)
    bool upper_ok;          // margin_upper >= -eps
    std::size_t N_trunc;
    double trunc_eps;
};

struct SandwichResult {
    MajorizationReport majorization;
    std::vector<SandwichRow> rows;
    std::vector<std::string> failures;
};

// Checks the hypotheses on H, evaluates the bound with the rescaled data and compares with the
// measured log M on each radius.
SandwichResult verify_bound_sandwich(const HamburgerHamiltonian& H, const ComparisonData& data,
                                     const std::vector<double>& radii, double eps = 1e-3,
                                     std::size_t N_check = 1 << 14);

// exp(logv) as text without overflow: "inf", plain %.10g, or mantissa/exponent from the log.
std::string format_from_log(double logv);

// Columns R, kR, hR, TR, gT, RCinvT, LT, B_upper, lower_Dinv, logM, margin_upper.
void write_bound_csv(std::ostream& out, const std::vector<BoundReport>& reports);
std::string bound_report_json(const std::vector<BoundReport>& reports, int indent = 2);

}  // namespace nevbound
