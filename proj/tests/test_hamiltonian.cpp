#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nevbound/errors.hpp"
#include "nevbound/hamiltonian.hpp"

using namespace nevbound;

namespace {

constexpr double zeta3 = 1.2020569031595942854;

double mod_pi(double x) {
    double d = std::fmod(x, std::numbers::pi);
    return d < 0 ? d + std::numbers::pi : d;
}

// Distance on R / pi Z.
double dist_mod_pi(double a, double b) {
    double d = mod_pi(a - b);
    return std::min(d, std::numbers::pi - d);
}

}  // namespace

TEST_CASE("alternating power family entries and tail") {
    auto H = family_alternating_power(3, 1);
    CHECK(H.length(2) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(H.angle(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(H.angle(3) == doctest::Approx(-1.0 / 3).epsilon(1e-15));
    CHECK(H.is_generated());
    CHECK_FALSE(H.is_exactly_finite());

    auto H0 = family_alternating_power(3, 0);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(std::abs(H0.angle(j)) == 1.0);
    CHECK_THROWS_AS(family_alternating_power(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(family_alternating_power(0.5, 1.0), std::invalid_argument);

    double x = H0.partial_sum(100000);
    CHECK(x == doctest::Approx(zeta3 - 0.5e-10).epsilon(1e-12));
    auto L = H0.total_length(1000);
    CHECK(L.lower <= zeta3);
    CHECK(L.upper >= zeta3);
    CHECK(L.upper - L.lower == doctest::Approx(0.5e-6).epsilon(1e-9));
}

TEST_CASE("declared tail majorants dominate the actual tails") {
    for (auto [a, b] : {std::pair{3.0, 1.0}, {2.0, 0.0}, {1.5, 0.25}}) {
        auto H = family_alternating_power(a, b);
        const auto& tail = *H.tail();
        for (std::size_t N : {1u, 10u, 100u, 1000u}) {
            double sl = 0, sp = 0;
            for (std::size_t j = N + 1; j <= 2000000; ++j) {
                double s = std::sin(H.angle(j) - tail.psi);
                sl += H.length(j);
                sp += H.length(j) * s * s;
            }
            CHECK(sl <= tail.c_l(double(N)));
            CHECK(sp <= tail.c_phi(double(N)));
        }
    }
}

TEST_CASE("Jacobi parameters of explicit Hamiltonians") {
    const std::size_t n = 12;
    std::vector<double> l(n + 1), right(n + 1), quarter(n + 1), ones(n + 1, 1.0);
    for (std::size_t j = 1; j <= n + 1; ++j) {
        l[j - 1] = std::pow(double(j), -3.0);
        right[j - 1] = double(j - 1) * std::numbers::pi / 2;
        quarter[j - 1] = double(j - 1) * std::numbers::pi / 4;
    }
    auto free = jacobi_from_hamiltonian(HamburgerHamiltonian::from_sequences(ones, right), n);
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(free.diagonal[k]) < 1e-14);
        CHECK(free.offdiagonal[k] == doctest::Approx(1.0).epsilon(1e-14));
    }
    auto J = jacobi_from_hamiltonian(HamburgerHamiltonian::from_sequences(l, right), n);
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(J.offdiagonal[k] == doctest::Approx(std::pow((k + 1.0) * (k + 2.0), 1.5)).epsilon(1e-13));
        CHECK(std::abs(J.diagonal[k]) < 1e-9 * J.offdiagonal[k]);
    }
    auto Q = jacobi_from_hamiltonian(HamburgerHamiltonian::from_sequences(ones, quarter), n);
    CHECK(Q.diagonal[0] == doctest::Approx(-1.0).epsilon(1e-14));
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(Q.offdiagonal[k] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        if (k >= 1) CHECK(Q.diagonal[k] == doctest::Approx(-2.0).epsilon(1e-14));
    }
    std::vector<double> flat(n + 1, 0.0);
    CHECK_THROWS_AS(jacobi_from_hamiltonian(HamburgerHamiltonian::from_sequences(ones, flat), n), DomainError);
    CHECK_THROWS_AS(jacobi_from_hamiltonian(HamburgerHamiltonian::from_sequences(ones, right), n + 1),
                    std::out_of_range);
}

TEST_CASE("angle shifts by pi leave the Jacobi parameters unchanged") {
    auto H = family_alternating_power(3, 1).truncated(30);
    auto J = jacobi_from_hamiltonian(H, 29);
    std::vector<double> l, phi;
    for (std::size_t j = 1; j <= 30; ++j) {
        l.push_back(H.length(j));
        phi.push_back(H.angle(j) + (j % 3 == 0 ? std::numbers::pi : 0.0));
    }
    auto J2 = jacobi_from_hamiltonian(HamburgerHamiltonian::from_sequences(l, phi), 29);
    auto J3 = jacobi_from_hamiltonian(H.with_shifted_angles(0.7), 29);
    for (std::size_t k = 0; k < 29; ++k) {
        CHECK(J2.diagonal[k] == doctest::Approx(J.diagonal[k]).epsilon(1e-12));
        CHECK(J2.offdiagonal[k] == doctest::Approx(J.offdiagonal[k]).epsilon(1e-12));
        CHECK(J3.diagonal[k] == doctest::Approx(J.diagonal[k]).epsilon(1e-12));
        CHECK(J3.offdiagonal[k] == doctest::Approx(J.offdiagonal[k]).epsilon(1e-12));
    }
}

namespace {

void check_round_trip(const HamburgerHamiltonian& H, std::size_t N, double tol) {
    auto J = jacobi_from_hamiltonian(H, N - 1);
    auto back = hamiltonian_from_jacobi(J, N, H.length(1));
    REQUIRE(back.size() == N);
    for (std::size_t j = 1; j <= N; ++j) CHECK(back.length(j) == doctest::Approx(H.length(j)).epsilon(tol));
    for (std::size_t j = 1; j < N; ++j) {
        double d_in = H.angle(j + 1) - H.angle(j), d_out = back.angle(j + 1) - back.angle(j);
        CHECK(dist_mod_pi(d_in, d_out) <= tol);
    }
    // And back again: J -> H -> J is the identity.
    auto J2 = jacobi_from_hamiltonian(back, N - 1);
    for (std::size_t k = 0; k + 1 < N; ++k) {
        CHECK(J2.offdiagonal[k] == doctest::Approx(J.offdiagonal[k]).epsilon(tol));
        CHECK(std::abs(J2.diagonal[k] - J.diagonal[k]) <= tol * (std::abs(J.diagonal[k]) + J.offdiagonal[k]));
    }
}

}  // namespace

TEST_CASE("Hamiltonian to Jacobi round trips") {
    check_round_trip(family_alternating_power(3, 1), 50, 1e-9);
    check_round_trip(family_alternating_power(2.5, 0.5), 50, 1e-9);

    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> logl(-2.0, 2.0), ang(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> l(20), phi(20);
        for (std::size_t j = 0; j < 20; ++j) {
            l[j] = std::exp(logl(rng));
            phi[j] = ang(rng);
        }
        check_round_trip(HamburgerHamiltonian::from_sequences(l, phi), 20, 1e-9);
    }
}

TEST_CASE("Jacobi bridge rescales instead of overflowing") {
    // b_n = n^3 style growth over a long range: lengths decay like n^{-3}.
    const std::size_t N = 3000;
    std::vector<double> l(N), phi(N);
    for (std::size_t j = 1; j <= N; ++j) {
        l[j - 1] = std::pow(double(j), -3.0);
        phi[j - 1] = double(j - 1) * std::numbers::pi / 2;
    }
    auto H = HamburgerHamiltonian::from_sequences(l, phi);
    auto back = hamiltonian_from_jacobi(jacobi_from_hamiltonian(H, N - 1), N, 1.0);
    CHECK(back.length(N) == doctest::Approx(l[N - 1]).epsilon(1e-8));
}

TEST_CASE("prescribed growth constructions") {
    PowerLog cube(1, 3);
    auto H = family_prescribed_growth(cube, {});
    for (std::size_t n = 1; n <= 10; ++n) {
        CHECK(H.length(n) == doctest::Approx(std::pow(double(n), -3.0)).epsilon(1e-13));
        CHECK(mod_pi(H.angle(n + 1) - H.angle(n)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    }
    CHECK(H.angle(1) == 0.0);
    auto J = jacobi_from_hamiltonian(H, 8);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(J.offdiagonal[k] == doctest::Approx(std::pow((k + 1.0) * (k + 2.0), 1.5)).epsilon(1e-12));

    GrowthSpec one;
    one.omega = 1.0;
    auto H1 = family_prescribed_growth(cube, one);
    CHECK(H1.angle(2) - H1.angle(1) == doctest::Approx(std::acos(-0.5)).epsilon(1e-14));

    GrowthSpec minus;
    minus.variant = GrowthVariant::minus_two;
    GrowthSpec plus;
    plus.variant = GrowthVariant::plus_two;
    auto Hm = family_prescribed_growth(cube, minus);
    auto Hp = family_prescribed_growth(cube, plus);
    for (std::size_t n : {1u, 2u, 5u, 63u, 64u, 65u, 1000u}) {
        CHECK(Hm.angle(n + 1) - Hm.angle(n) == doctest::Approx(1.0 / n).epsilon(1e-10));
        CHECK(mod_pi(Hp.angle(n + 1) - Hp.angle(n)) == doctest::Approx(std::numbers::pi - 1.0 / n).epsilon(1e-10));
        CHECK(Hm.length(n) == doctest::Approx(std::pow(double(n), -2.0)).epsilon(1e-12));
    }

    GrowthSpec seq;
    seq.variant = GrowthVariant::sequence;
    seq.omega_sequence = [](std::size_t n) { return 1.0 / double(n); };
    seq.count = 100;
    auto Hs = family_prescribed_growth(cube, seq);
    CHECK(Hs.size() == 100);
    CHECK(Hs.angle(2) - Hs.angle(1) == doctest::Approx(std::numbers::pi / 2 + 0.25).epsilon(1e-14));

    GrowthSpec wide;
    wide.omega = 2.5;
    CHECK_THROWS_AS(family_prescribed_growth(cube, wide), std::invalid_argument);
    CHECK_THROWS_AS(family_prescribed_growth(PowerLog(1, 2), {}), std::invalid_argument);

    // Tail bound covers the actual sum.
    double s = 0;
    for (std::size_t j = 101; j <= 1000000; ++j) s += H.length(j);
    CHECK(s <= H.tail()->c_l(100.0));
    auto Hl = family_prescribed_growth(PowerLog(1, 2.5, 1.0), {});
    double sl = 0;
    for (std::size_t j = 101; j <= 2000000; ++j) sl += Hl.length(j);
    CHECK(sl <= Hl.tail()->c_l(100.0));
}

TEST_CASE("fitted tails bound the remaining mass") {
    auto H = family_alternating_power(3, 1);
    auto F = with_fitted_tail(H.truncated(2000));
    for (std::size_t N : {10u, 500u, 1999u, 2000u, 5000u}) {
        double s = zeta3 - H.partial_sum(N);
        CHECK(F.tail()->c_l(double(N)) >= s);
        CHECK(F.tail()->c_l(double(N)) <= 10 * s + 1e-12);
    }
    std::vector<double> l(100, 1.0), phi(100, 0.0);
    CHECK_THROWS_AS(with_fitted_tail(HamburgerHamiltonian::from_sequences(l, phi)), DivergenceError);
}

TEST_CASE("fitted tails follow the envelope of oscillating lengths") {
    // l_j = j^-2 (1 + 0.95 sin(log j)): a pointwise fit over a short window sees the wrong slope.
    const std::size_t n = 20000;
    std::vector<double> l(n), phi(n, 0.0);
    for (std::size_t j = 1; j <= n; ++j) l[j - 1] = std::pow(double(j), -2.0) * (1 + 0.95 * std::sin(std::log(double(j))));
    auto F = with_fitted_tail(HamburgerHamiltonian::from_sequences(l, phi));
    double suffix = 0;
    for (std::size_t j = n; j > 1000; --j) suffix += l[j - 1];
    CHECK(F.tail()->c_l(1000.0) >= suffix);
    // Beyond the stored entries the bound decays like 1/N.
    CHECK(F.tail()->c_l(4e4) / F.tail()->c_l(8e4) == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("family grammar") {
    auto H = parse_family("example_b6(3, 1)");
    CHECK(H.length(2) == doctest::Approx(0.125));
    auto B = parse_family("b83(interior, 0.3333333333333333, 0, 0)");
    CHECK(B.length(2) == doctest::Approx(0.125).epsilon(1e-9));
    CHECK_THROWS_AS(parse_family("example_b6(1, 1)"), ParseError);
    CHECK_THROWS_AS(parse_family("bogus(1)"), ParseError);
    CHECK_THROWS_AS(parse_family("b83(interior, 0.7, 0)"), ParseError);
    CHECK(parse_family("alternating_power(3, 1)").length(3) == H.length(3));
    CHECK(parse_family("prescribed_growth(interior, 0.3333333333333333, 0, 0)").length(5) == B.length(5));

    auto dir = std::filesystem::temp_directory_path() / "nevbound_test_family";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "h.csv");
        out << "j,l_j,phi_j\n1,1,0\n2,0.5,1.5707963267948966\n3,0.25,3.141592653589793\n";
    }
    auto E = parse_family("explicit(h.csv)", dir.string());
    CHECK(E.size() == 3);
    CHECK(E.is_exactly_finite());
    CHECK(E.partial_sum(3) == doctest::Approx(1.75));
    {
        std::ofstream out(dir / "j.csv");
        out << "n,a_n,b_n\n0,0,1\n1,0,1\n";
    }
    auto JH = parse_family("jacobi(j.csv)", dir.string());
    CHECK(JH.size() == 3);
    CHECK(JH.length(3) == doctest::Approx(1.0));
    std::filesystem::remove_all(dir);
}
