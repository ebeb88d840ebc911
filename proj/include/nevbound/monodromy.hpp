#pragma once

// Transfer-matrix products W(0, x_N; z) = W_1(z) ... W_N(z) in overflow-safe scaled form,
// truncation control through the tail bound, and growth measurement on circles |z| = R.

#include <complex>
#include <cstddef>
#include <ostream>
#include <vector>

#include "nevbound/hamiltonian.hpp"

namespace nevbound {

using Complex = std::complex<double>;

struct Mat2 {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};  // [[a, b], [c, d]]

    static Mat2 identity() { return {}; }
    Complex det() const { return a * d - b * c; }
    double max_abs() const;
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
};

double spectral_norm(const Mat2& m);

// Represents entries * exp(logscale); after normalize() the largest |entry| lies in [1/2, 2].
struct ScaledMat2 {
    Mat2 entries;
    double logscale = 0.0;

    void normalize();
    double log_norm() const;  // logscale + log sigma_max(entries)
    Mat2 value() const;       // may overflow for large logscale
    // |det(entries) - exp(-2 logscale)| relative to max|entry|^2: the determinant-one
    // defect measured at the working precision of the scaled product.
    double determinant_defect() const;
    friend ScaledMat2 operator*(const ScaledMat2& x, const ScaledMat2& y);
};

// I + z l xi xi^T J with xi = (cos phi, sin phi), J = [[0, -1], [1, 0]].
Mat2 transfer_matrix(double l, double phi, Complex z);

// diag(a, 1/a) exp(-psi J).
Mat2 omega_matrix(double a, double psi);

// Lengths and angle cosines/sines for the first N entries, shared across z.
struct FactorTable {
    std::vector<double> l, c, s;
    std::size_t size() const { return l.size(); }
};
FactorTable make_factor_table(const HamburgerHamiltonian& H, std::size_t N);

// Product of the factors with 1-based indices begin+1 .. end: W(x_begin, x_end; z).
ScaledMat2 factor_product(const FactorTable& table, std::size_t begin, std::size_t end, Complex z);
ScaledMat2 monodromy_prefix(const HamburgerHamiltonian& H, std::size_t N, Complex z);

// Log of the bound exp(2R sqrt(c_l c_phi)(N)) sqrt(c_l/c_phi)(N) on ||W(x_N, L; z)||, |z| = R.
double tail_bound(const ComparisonFunction& c_l, const ComparisonFunction& c_phi, double N, double R);

// Smallest N <= cap whose tail bound is at most eps. The bound is evaluated for the declared
// pair (c_l, c_phi) and for (c_l, c_l), which is always admissible, and the smaller is used.
// Throws CapError when no such N exists.
std::size_t choose_truncation(const ComparisonFunction& c_l, const ComparisonFunction& c_phi, double R, double eps,
                              std::size_t cap = 10'000'000);
double truncation_error(const ComparisonFunction& c_l, const ComparisonFunction& c_phi, double N, double R);

struct CircleMax {
    double R = 0.0;
    double logM = 0.0;
    std::size_t N = 0;       // entries used
    double trunc_eps = 0.0;  // tail bound at N (0 for exactly finite Hamiltonians)
    std::size_t K = 0;       // angle subdivisions of [0, pi] at convergence
};

// max over theta_k = k pi / K, k = 0..K, of log||W(0, x_N; R e^{i theta_k})||. K doubles from
// its initial value until successive maxima differ by less than eps/4 or K reaches K_max.
CircleMax log_max_on_circle(const HamburgerHamiltonian& H, double R, std::size_t K = 64, double eps = 1e-3,
                            std::size_t K_max = 4096);
// The same on a prebuilt table whose size is the truncation to use.
CircleMax log_max_on_circle(const FactorTable& table, double R, std::size_t K, double eps, std::size_t K_max);

struct GrowthProfile {
    std::vector<CircleMax> points;
    double rho = 0.0;           // slope of log log M against log R over the top half of the radii
    double type_summary = 0.0;  // median of log M / R^rho over the top decade (heuristic)
};

GrowthProfile growth_profile(const HamburgerHamiltonian& H, const std::vector<double>& radii, double eps = 1e-3,
                             std::size_t K = 64);
// Order estimate from (R, logM) pairs; points with logM <= 0 are skipped.
double order_estimate(const std::vector<double>& R, const std::vector<double>& logM);

// Columns R, logM, N_trunc, trunc_eps, K_angles.
void write_growth_csv(std::ostream& out, const GrowthProfile& profile);

}  // namespace nevbound
