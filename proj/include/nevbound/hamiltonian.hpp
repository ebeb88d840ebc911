#pragma once

// Hamburger Hamiltonians (lengths l_j > 0 and angles phi_j, j >= 1), named families,
// and the bridge to Jacobi parameters in both directions.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nevbound/regvar.hpp"

namespace nevbound {

// Declared bounds for the sums beyond index N:
//   sum_{j>N} l_j <= c_l(N),  sum_{j>N} l_j sin^2(phi_j - psi) <= c_phi(N).
struct TailMajorant {
    ComparisonFunction c_l;
    ComparisonFunction c_phi;
    double psi = 0.0;
};

class HamburgerHamiltonian {
public:
    using Generator = std::function<std::pair<double, double>(std::size_t)>;

    // A finite Hamiltonian. With a tail majorant the entries are the first terms of an infinite family.
    static HamburgerHamiltonian from_sequences(std::vector<double> lengths, std::vector<double> angles,
                                               std::optional<TailMajorant> tail = std::nullopt,
                                               std::string name = "explicit");
    // An infinite family j -> (l_j, phi_j); the rule must be pure.
    static HamburgerHamiltonian from_generator(Generator rule, TailMajorant tail, std::string name);

    // Number of stored entries; generators report SIZE_MAX.
    std::size_t size() const;
    bool is_generated() const;
    // True when the Hamiltonian is exactly the stored finite sequence (no tail beyond it).
    bool is_exactly_finite() const;

    // 1-based access.
    double length(std::size_t j) const;
    double angle(std::size_t j) const;

    // x_N = l_1 + ... + l_N.
    double partial_sum(std::size_t N) const;

    struct LengthInterval {
        double lower;
        double upper;
    };
    // Bracket for L: the partial sum x_N and x_N plus the declared tail majorant.
    LengthInterval total_length(std::size_t N) const;

    const std::optional<TailMajorant>& tail() const;
    const std::string& name() const;

    // The first N entries as an exactly finite Hamiltonian.
    HamburgerHamiltonian truncated(std::size_t N) const;
    HamburgerHamiltonian with_shifted_angles(double delta) const;
    HamburgerHamiltonian with_tail(TailMajorant tail) const;

private:
    struct Impl;
    explicit HamburgerHamiltonian(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

// Jacobi parameters indexed from 0: z p_n = b_n p_{n+1} + a_n p_n + b_{n-1} p_{n-1}, b_{-1} = 0.
// Index n corresponds to the Hamiltonian entries n+1 and n+2.
struct JacobiParameters {
    std::vector<double> diagonal;     // a_n
    std::vector<double> offdiagonal;  // b_n > 0
};

// l_j = j^{-alpha}, phi_j = (-1)^j j^{-beta}; tail majorants are the integral bounds
// c_l(N) = N^{1-alpha}/(alpha-1), c_phi(N) = N^{1-alpha-2beta}/(alpha+2beta-1) at psi = 0.
HamburgerHamiltonian family_alternating_power(double alpha, double beta);

enum class GrowthVariant { interior, minus_two, plus_two, sequence };

struct GrowthSpec {
    GrowthVariant variant = GrowthVariant::interior;
    double omega = 0.0;                                 // interior variant, |omega| < 2
    std::function<double(std::size_t)> omega_sequence;  // sequence variant
    double gamma = 1.0;                                 // lim omega_{n-1}/omega_n, in (-1, inf)
    std::size_t count = 0;                              // entries materialized for the sequence variant
};

// Constructions with b_n ~ g_inverse(n); g_inverse must have index > 2.
HamburgerHamiltonian family_prescribed_growth(const PowerLog& g_inverse, const GrowthSpec& spec);

// b_n = 1/(sin(D_{n+1}) sqrt(l_{n+2} l_{n+1})), a_n = -(cot D_{n+1} + cot D_n)/l_{n+1},
// where D_j = phi_{j+1} - phi_j reduced into (0, pi); the n = 0 entry keeps only the first cotangent.
JacobiParameters jacobi_from_hamiltonian(const HamburgerHamiltonian& H, std::size_t count);

// Inverse bridge through the z = 0 solutions p (first kind) and q (second kind):
// l_{n+1} = p_n^2 + q_n^2 and phi_{n+1} = arg(p_n, q_n), with p_0^2 = first_length, q_0 = 0.
// J determines the Hamiltonian only up to l_1 and a common angle shift; first_length fixes l_1
// and phi_1 = 0. Needs count - 1 Jacobi entries.
HamburgerHamiltonian hamiltonian_from_jacobi(const JacobiParameters& J, std::size_t count, double first_length = 1.0);

// Attach a tail majorant to a finite prefix of an infinite family by fitting l_j ~ C j^kappa
// over the upper half of the stored entries. Throws DivergenceError when kappa >= -1.
HamburgerHamiltonian with_fitted_tail(const HamburgerHamiltonian& H);

// Config grammar: alternating_power(alpha, beta) | prescribed_growth(variant, rho, logpower [, omega]) |
// explicit(path.csv) | jacobi(path.csv). The short names example_b6 and b83 are accepted for the first two.
HamburgerHamiltonian parse_family(const std::string& expr, const std::string& base_dir = ".");

}  // namespace nevbound
