#pragma once

// Closed-form asymptotics for power-log comparison data: the power-law table of crossings and
// bounds, the four regular-variation cases and their sandwiches, bounds from d_l and d_phi
// alone, the two-sided band check, exceptional-case fixtures and Jacobi presets.
//
// Exponents are exact rationals so that reported indices can be compared for equality.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nevbound/bounds.hpp"
#include "nevbound/hamiltonian.hpp"
#include "nevbound/rational.hpp"

namespace nevbound {

// c R^a (log R)^b (log log R)^e.
struct AsymptoticScale {
    double coefficient = 1.0;
    Rational power;
    Rational logpower;
    Rational loglogpower;

    double log_value(double R) const;
    double operator()(double R) const;
    std::string str() const;
};

// d_l = t^-dl (log t)^-al, d_phi = t^-dphi (log t)^-aphi, c_l = t^-gl (log t)^-bl,
// c_phi = t^-gphi (log t)^-bphi for large t.
struct PowerLogExponents {
    Rational delta_l, alpha_l;
    Rational delta_phi, alpha_phi;
    Rational gamma_l, beta_l;
    Rational gamma_phi, beta_phi;

    Rational delta() const { return delta_l + delta_phi; }
    Rational alpha() const { return alpha_l + alpha_phi; }
    Rational gamma() const { return (gamma_l + gamma_phi) / Rational(2); }
    Rational beta() const { return (beta_l + beta_phi) / Rational(2); }

    // Nonincreasing versions on [1, inf): each power-log is frozen at its maximum on the left,
    // d_phi is capped at 1 and c_phi is replaced by min(c_phi, c_l).
    ComparisonData data() const;
    std::string str() const;
};

// Pure powers (all log exponents 0).
PowerLogExponents power_exponents(Rational delta_l, Rational delta_phi, Rational gamma_l, Rational gamma_phi);

// Exponents read off the comparison functions: exact for power-log inputs, otherwise the
// estimated index with log exponent 0.
PowerLogExponents exponents_from_data(const ComparisonData& data);

enum class CaseLabel { A, B, C, D, row1, row2, row3, row4, row5, row6, exceptional };
std::string to_string(CaseLabel label);

struct CaseDiagnosis {
    CaseLabel label = CaseLabel::exceptional;
    std::optional<Rational> index;        // regular-variation index of the bound
    std::optional<Rational> order_bound;  // rho_H <= order_bound
    std::optional<AsymptoticScale> bound;     // closed form of the bound
    std::optional<AsymptoticScale> crossing;  // closed form of T(R)
    // The two sides of the sandwich for the minimax value, as functions of R.
    std::function<double(double)> lower;
    std::function<double(double)> upper;
    // The auxiliary function whose inverse drives the case (f in case A, f_1 in case C).
    std::function<double(double)> case_function;
    std::optional<double> case_constant;  // alpha in f(t) = t C log(alpha t C / D)
    bool two_sided = false;         // lower and upper are comparable up to constants
    bool independent_of_c = false;  // value does not depend on c_l, c_phi up to constants
    bool independent_of_d = false;  // value does not depend on d_l, d_phi up to constants
    std::vector<std::string> notes;
};

// Row of the power-law table: requires delta > 0 and gamma > 0, otherwise the label is exceptional.
CaseDiagnosis power_law_row(Rational delta_l, Rational delta_phi, Rational gamma_l, Rational gamma_phi);

// Minimax min_t max{int_1^t g, R / C(t)} for regularly varying data. Cases are tested in the
// order B, C, D, A; boundary exponents outside every case give the exceptional label.
CaseDiagnosis dispatch_regular_case(const PowerLogExponents& e);
CaseDiagnosis dispatch_regular_case(const ComparisonData& data);

// Bound for log max ||W_H|| together with the order bound, with the side conditions of the
// monodromy table (row 2 needs gamma > 0 or d_phi/d_l nondecreasing, row 4 needs d_l integrable
// and delta_l > delta_phi).
CaseDiagnosis monodromy_case_bound(const PowerLogExponents& e);

// Bound from d_l and d_phi alone; tails c_l, c_phi are built from d_l and d_phi.
// angles_track_psi: there is psi with |sin(phi_j - psi)| <~ |sin(phi_{j+1} - phi_j)|.
struct TailFreeBound {
    CaseDiagnosis diagnosis;
    int bullet = 0;  // 1: k(R); 2: R int_h^inf d_l; 3: k(R) via psi; 4: order <= 1/2
    ComparisonData constructed;
};
TailFreeBound bound_without_tails(Rational delta_l, Rational alpha_l, Rational delta_phi, Rational alpha_phi,
                                  bool angles_track_psi = false);

// logM(R) / [1/(d_l d_phi)]^-(R) over the radii; min and max over the top two decades.
struct BandResult {
    std::vector<double> radii, logM, lower, ratio;
    double band_min = 0.0, band_max = 0.0;
    double rho = 0.0;
    double spread() const { return band_max / band_min; }
};
BandResult two_sided_band(const HamburgerHamiltonian& H, const ComparisonFunction& d_l, const ComparisonFunction& d_phi,
                          const std::vector<double>& radii, double eps = 1e-3);

// Power-log parameter sets where the remainder term or a boundary case matters.
enum class ExceptionalExample { remainder_dominates, case_c_sharpness, boundary_case };
struct ExceptionalFixture {
    ExceptionalExample example;
    std::string branch;
    PowerLogExponents params;
    std::optional<AsymptoticScale> expected_B;     // bound including the remainder
    std::optional<AsymptoticScale> expected_core;  // minimax without the remainder
};
// Throws std::invalid_argument when the parameters violate the example's constraints.
void check_fixture_constraints(ExceptionalExample example, const PowerLogExponents& params);
ExceptionalFixture make_fixture(ExceptionalExample example, const PowerLogExponents& params);
std::vector<ExceptionalFixture> exceptional_fixtures(ExceptionalExample example);

// Numeric bound divided by the closed form across radii; spread is max/min.
struct FixtureBand {
    std::vector<double> radii, B, core, ratio_B, ratio_core;
    double spread_B = 0.0, spread_core = 0.0;
};
FixtureBand fixture_band(const ExceptionalFixture& fixture, const std::vector<double>& radii);

// Minimax value min_t max{int_1^t g, R (c_l c_phi)^{1/2}} without the remainder term.
double core_bound(const ComparisonData& data, double R);

struct ExperimentBundle {
    std::string name;
    HamburgerHamiltonian H;
    std::optional<JacobiParameters> jacobi;
    AsymptoticScale expected_growth;
    Rational expected_order;
    std::optional<PowerLog> offdiagonal_asymptotics;  // b_n ~ this
    std::vector<std::string> notes;
};

// b_n = n^sigma (|y0|/2 + x1/n + x2/n^2), a_n = n^sigma (y0 + y1/n + y2/n^2), n >= 1; the
// correction of order n^{-2-eps} is omitted. Requires sigma > 2, y0 != 0 and an indeterminate
// moment problem (summable Hamiltonian lengths), else std::invalid_argument.
struct CriticalJacobiParams {
    double sigma = 3.0;
    double y0 = 2.0;
    double x1 = 0.0, x2 = 0.0;
    double y1 = -3.0, y2 = 0.0;
};
ExperimentBundle critical_jacobi_preset(const CriticalJacobiParams& p, std::size_t count);

// Lengths and angles with b_n ~ g^-(n) and log max ||W|| comparable to g(R); the index of g
// must lie in (0, 1/2).
ExperimentBundle prescribed_growth_preset(const PowerLog& g, const GrowthSpec& spec);

struct PresetInfo {
    std::string key;
    std::string signature;
    std::string description;
};
// Sorted by key.
std::vector<PresetInfo> list_presets();

}  // namespace nevbound
