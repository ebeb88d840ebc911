#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "nevbound/bounds.hpp"
#include "nevbound/errors.hpp"

using namespace nevbound;

namespace {

ComparisonData power_data(double dl, double dphi, double gl, double gphi, double c = 1.0) {
    ComparisonData d;
    d.d_l = ComparisonFunction::powerlog(c, -dl);
    d.d_phi = ComparisonFunction::powerlog(c, -dphi);
    d.c_l = ComparisonFunction::powerlog(c, -gl);
    d.c_phi = ComparisonFunction::powerlog(c, -gphi);
    return d;
}

}  // namespace

TEST_CASE("thresholds k and h") {
    auto d = power_data(2, 1, 1, 1);
    CHECK(k_of_R(d, 2000) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(k_of_R(d, 2.0) == doctest::Approx(1.0));
    CHECK(h_of_R(d, 2000) == doctest::Approx(2000.0).epsilon(1e-12));
    CHECK_THROWS_AS(k_of_R(d, 1.0), DomainError);

    auto flat = power_data(0, 0, 1, 1, 0.5);
    CHECK(std::isinf(k_of_R(flat, 16.0)));
    CHECK(k_of_R(flat, 8.0) == 1.0);
    // d_phi <= d_l everywhere: h is infinite.
    auto dominated = power_data(1, 2, 1, 1);
    CHECK(std::isinf(h_of_R(dominated, 1.0)));

    // Power-log h within a factor 2 of R^{1/(delta_l - delta_phi)} (log R)^{...}.
    ComparisonData pl;
    pl.d_l = ComparisonFunction::powerlog(1, -2, -1).capped(1.0).with_monotonicity(Monotonicity::nonincreasing);
    pl.d_phi = ComparisonFunction::powerlog(1, -1);
    pl.c_l = ComparisonFunction::powerlog(1, -1);
    pl.c_phi = ComparisonFunction::powerlog(1, -1);
    for (double R : geometric_grid(1e3, 1e9, 2)) {
        double h = h_of_R(pl, R);
        double approx = R / std::log(R);  // t log t = R
        CHECK(h / approx >= 0.5);
        CHECK(h / approx <= 2.0);
    }

    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> ex(0.0, 3.0), cc(0.2, 1.0), lr(0, 10);
    for (int i = 0; i < 100; ++i) {
        auto r = power_data(ex(rng), ex(rng) / 3, 1, 1, cc(rng));
        double R = 2.0 / (r.d_l(1.0) * r.d_phi(1.0)) * std::exp(lr(rng));
        BoundEvaluator ev(r, R);
        CHECK(ev.log_k() <= ev.log_h());
    }
}

TEST_CASE("integral of the growth density") {
    auto d = power_data(2, 1, 1, 1);
    CHECK(g_integral(d, 1.0, 2000) == 0.0);
    // First branch: int_1^t log(R s^-3) ds = t log(R t^-3) + 3t - 3 - log R.
    const double lR = std::log(2000.0);
    CHECK(g_integral(d, 2.0, 2000) == doctest::Approx(2 * std::log(250.0) + 3 - lR).epsilon(1e-10));
    CHECK(g_integral(d, 2.0, 2000) == doctest::Approx(6.442).epsilon(1e-3));
    CHECK(g_integral(d, 10.0, 2000) == doctest::Approx(10 * std::log(2.0) + 27 - lR).epsilon(1e-10));
    CHECK(g_integral(d, 10.0, 2000) == doctest::Approx(26.33).epsilon(1e-3));
    // Square-root branch: int_10^t (2000 s^-3)^{1/2} ds, up to h = 2000.
    const double at_k = 10 * std::log(2.0) + 27 - lR;
    double t = 100.0;
    double expect = at_k + std::sqrt(2000.0) * 2 * (1 / std::sqrt(10.0) - 1 / std::sqrt(t));
    CHECK(g_integral(d, t, 2000) == doctest::Approx(expect).epsilon(1e-10));
    // Linear branch beyond h = 2000: R d_l = 2000 s^-2.
    double t2 = 5000.0;
    double expect2 = at_k + std::sqrt(2000.0) * 2 * (1 / std::sqrt(10.0) - 1 / std::sqrt(2000.0)) +
                     2000 * (1 / 2000.0 - 1 / t2);
    CHECK(g_integral(d, t2, 2000) == doctest::Approx(expect2).epsilon(1e-10));

    BoundEvaluator ev(d, 2000);
    double prev = 0;
    for (double u = 0.1; u < 20; u += 0.37) {
        double g = ev.g_integral(u);
        CHECK(g > prev);
        prev = g;
        CHECK(g_integral(d, std::exp(u), 4000) > g);
    }
}

TEST_CASE("remainder term") {
    ComparisonData ones;
    CHECK(L_term(ones, 1.0, 1.0) == doctest::Approx(1.0));
    auto q1 = power_data(1, 1, 2, 2);
    for (double R : {1.0, 10.0, 1e5})
        for (double t : {1.0, 7.5, 1e3}) CHECK(L_term(q1, t, R) == doctest::Approx(1 + std::log(R)).epsilon(1e-12));
    // d_phi/d_l = t^2 is monotone: the telescope is 2 log m with m = min(ceil t, floor h), h = sqrt R.
    auto mono = power_data(3, 1, 2, 2);
    CHECK(L_term(mono, 50.0, 1e6) == doctest::Approx(1 + std::log(1e6) + 2 * std::log(50.0)).epsilon(1e-12));
    CHECK(L_term(mono, 49.2, 1e6) == doctest::Approx(1 + std::log(1e6) + 2 * std::log(50.0)).epsilon(1e-12));
    CHECK(L_term(mono, 5000.0, 1e6) == doctest::Approx(1 + std::log(1e6) + 2 * std::log(1000.0)).epsilon(1e-12));
    CHECK(L_term(mono, 1e7, 1e12) == doctest::Approx(1 + std::log(1e12) + 2 * std::log(1e6)).epsilon(1e-9));
    // c_l/c_phi enters at ceil(t).
    auto cq = power_data(1, 1, 1, 3);
    CHECK(L_term(cq, 9.5, 1.0) == doctest::Approx(1 + 2 * std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("crossing T(R)") {
    auto row1 = power_data(1, 0.5, 1, 1);
    std::vector<double> ratios;
    for (double R : geometric_grid(1e4, 1e8, 2)) {
        BoundEvaluator ev(row1, R);
        double uT = ev.solve_T_log();
        double g = ev.g_integral(uT), rc = std::exp(ev.log_rc(uT));
        CHECK(std::abs(g - rc) <= 1e-8 * rc);
        ratios.push_back(std::exp(uT) / std::sqrt(R / std::log(R)));
    }
    auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK(*hi / *lo < 2.0);

    auto row2 = power_data(2, 1, 2, 2);
    ratios.clear();
    double prevT = 0;
    for (double R : geometric_grid(1e4, 1e8, 2)) {
        double T = solve_T(row2, R);
        CHECK(T > prevT);
        prevT = T;
        ratios.push_back(T / std::cbrt(R));
    }
    auto [lo2, hi2] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK(*hi2 / *lo2 < 2.0);

    auto flat_c = power_data(2, 1, 0, 0);
    CHECK_THROWS_AS(solve_T(flat_c, 1e4), CapError);
}

TEST_CASE("upper bound") {
    auto d = alternating_power_data(3, 1);
    double worst = 0;
    for (double R : geometric_grid(1e2, 1e6, 2)) {
        auto at = upper_bound_B(d, R, BoundMode::at_T);
        auto grid = upper_bound_B(d, R, BoundMode::grid_infimum);
        CHECK(grid.B_upper <= at.B_upper);
        CHECK(at.B_upper == doctest::Approx(9 * at.B));
        CHECK(grid.log_kR <= grid.log_hR);
        worst = std::max(worst, grid.B_upper / std::pow(R, 0.25));
    }
    CHECK(worst < 1e3);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(0.2, 3.0), ug(0.2, 3.0), lr(2, 14);
    for (int i = 0; i < 60; ++i) {
        double dl = ud(rng), dphi = ud(rng) / 2, g1 = ug(rng), g2 = g1 + ug(rng);
        auto r = power_data(dl, dphi, g1, g2);
        double R = std::exp(lr(rng));
        auto at = upper_bound_B(r, R, BoundMode::at_T);
        auto grid = upper_bound_B(r, R, BoundMode::grid_infimum);
        CHECK(grid.B <= at.B);
    }

    // Refining the t-grid never increases the grid minimum.
    auto r = power_data(1.5, 0.5, 1, 2);
    double prev = kInfinity;
    for (int ppd : {8, 16, 32, 64}) {
        BoundOptions opt{ppd, false};
        double b = upper_bound_B(r, 1e6, BoundMode::grid_infimum, opt).B;
        CHECK(b <= prev);
        prev = b;
    }
}

TEST_CASE("lower comparison value") {
    auto d3 = ComparisonFunction::powerlog(1, -3), d1 = ComparisonFunction::powerlog(1, -1);
    CHECK(lower_bound(d3, d1, 1e4) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(lower_bound(d1, d1, 1e6) == doctest::Approx(1e3).epsilon(1e-12));
    auto dl = ComparisonFunction::powerlog(1, -1.5, -1);
    double t = 1e4;
    double Dt = 1.0 / (dl(t) * d1(t));
    double back = lower_bound(dl, d1, Dt);
    CHECK(back / t >= 0.99);
    CHECK(back / t <= 1.01);
    CHECK_THROWS_AS(lower_bound(ComparisonFunction::constant(1), ComparisonFunction::constant(1), 10), DomainError);
}

TEST_CASE("majorization checks") {
    auto H = family_alternating_power(3, 1);
    auto rep = check_majorization(H, alternating_power_data(3, 1), 4096);
    CHECK(rep.K_dl <= 1.0);
    CHECK(rep.K_dphi <= 1.0);
    CHECK(rep.K_cl <= 1.0);
    CHECK(rep.K_cphi <= 1.0);
    CHECK(rep.strict());

    auto anything = alternating_power_data(3, 1);
    anything.d_phi = ComparisonFunction::constant(1.0);
    std::vector<double> l(300), phi(300);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-10, 10);
    for (std::size_t j = 0; j < 300; ++j) {
        l[j] = std::pow(j + 1.0, -3.0);
        phi[j] = ang(rng);
    }
    auto wild = HamburgerHamiltonian::from_sequences(l, phi);
    auto rw = check_majorization(wild, anything, 300);
    CHECK(rw.K_dphi <= 1.0);

    // Loose constants are reported and the rescaled data absorbs them.
    auto halved = alternating_power_data(3, 1);
    halved.d_l = halved.d_l.scaled(0.5);
    auto rh = check_majorization(H, halved, 4096);
    CHECK(rh.K_dl == doctest::Approx(2.0));
    CHECK(rh.rescaled.d_l(3.0) == doctest::Approx(1.0 / 27));

    auto off = alternating_power_data(3, 1);
    off.psi = std::numbers::pi / 2;
    try {
        check_majorization(H, off, 4096);
        FAIL("expected a hypothesis violation");
    } catch (const HypothesisViolation& e) {
        CHECK(e.witness > 2048);
    }
    CHECK(auto_psi(H, 4096) == 0.0);
}

TEST_CASE("bound sandwich on the alternating power family") {
    auto res = verify_bound_sandwich(family_alternating_power(3, 1), alternating_power_data(3, 1), geometric_grid(1e2, 1e5, 1));
    CHECK(res.failures.empty());
    for (const auto& row : res.rows) {
        CHECK(row.margin_upper >= 0);
        CHECK(row.margin_lower > 0);
    }
    std::vector<BoundReport> reps;
    for (const auto& row : res.rows) reps.push_back(row.report);
    std::ostringstream csv;
    write_bound_csv(csv, reps);
    CHECK(csv.str().rfind("R,kR,hR,TR,gT,RCinvT,LT,B_upper,lower_Dinv,logM,margin_upper\n", 0) == 0);
    auto j = nlohmann::json::parse(bound_report_json(reps));
    CHECK(j.size() == reps.size());
    CHECK(j[0]["kR"].is_number());
    CHECK(j[0]["mode"] == "grid_infimum");
}

TEST_CASE("formatting huge values from logs") {
    CHECK(format_from_log(kInfinity) == "inf");
    CHECK(format_from_log(std::log(12.5)) == "12.5");
    CHECK(format_from_log(1000 * std::log(10.0)) == "1.000000000e+1000");
}
