#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nevbound/casebook.hpp"
#include "nevbound/monodromy.hpp"

using namespace nevbound;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

PowerLogExponents exps(Rational dl, Rational al, Rational dp, Rational ap, Rational gl, Rational bl, Rational gp,
                       Rational bp) {
    return PowerLogExponents{dl, al, dp, ap, gl, bl, gp, bp};
}

}  // namespace

TEST_CASE("asymptotic scale evaluates c R^a (log R)^b (log log R)^e") {
    AsymptoticScale s{2.0, r(1, 2), r(-1), r(1)};
    const double R = 1e6, lr = std::log(R);
    CHECK(s(R) == doctest::Approx(2 * std::sqrt(R) / lr * std::log(lr)).epsilon(1e-12));
    CHECK(s.str() == "2 R^{1/2} (log R)^{-1} (log log R)");
    CHECK(AsymptoticScale{}.str() == "1");
}

TEST_CASE("power-law table rows") {
    // delta < 1 + gamma
    auto a = power_law_row(r(1, 4), r(1, 4), r(1), r(1));
    CHECK(a.label == CaseLabel::row1);
    CHECK(*a.index == r(1, 2));
    CHECK(a.bound->logpower == r(1, 2));
    CHECK(a.crossing->logpower == r(-1, 2));
    // delta = 1 + gamma
    auto b = power_law_row(r(1), r(1, 2), r(1, 2), r(1, 2));
    CHECK(b.label == CaseLabel::row2);
    CHECK(*b.index == r(2, 3));
    // delta > 2
    auto c = power_law_row(r(2), r(1), r(1), r(1));
    CHECK(c.label == CaseLabel::row3);
    CHECK(*c.index == r(1, 3));
    CHECK(c.crossing->power == r(2, 3));
    // delta = 2
    auto d = power_law_row(r(3, 2), r(1, 2), r(1, 2), r(1, 2));
    CHECK(d.label == CaseLabel::row4);
    CHECK(*d.index == r(1, 2));
    CHECK(d.bound->logpower == r(1));
    CHECK(d.crossing->power == r(1));
    CHECK(d.crossing->logpower == r(-2));
    // delta < 2, delta_l <= 1 + gamma
    auto e = power_law_row(r(1), r(1, 2), r(1, 4), r(1, 4));
    CHECK(e.label == CaseLabel::row5);
    CHECK(*e.index == r(3, 4));
    // delta < 2, delta_l > 1 + gamma
    auto f = power_law_row(r(3, 2), r(3, 10), r(1, 4), r(1, 4));
    CHECK(f.label == CaseLabel::row6);
    CHECK(*f.index == r(7, 12));
    CHECK(f.crossing->power == r(5, 3));

    CHECK(power_law_row(r(0), r(0), r(1), r(1)).label == CaseLabel::exceptional);
    CHECK(power_law_row(r(1), r(1), r(0), r(0)).label == CaseLabel::exceptional);
    CHECK_THROWS_AS(power_law_row(r(-1), r(1), r(1), r(1)), std::invalid_argument);
}

TEST_CASE("dispatch picks the case and its index") {
    auto B = dispatch_regular_case(power_exponents(r(2), r(1), r(1), r(1)));
    CHECK(B.label == CaseLabel::B);
    CHECK(*B.index == r(1, 3));
    CHECK(B.two_sided);
    CHECK(B.independent_of_c);

    auto C = dispatch_regular_case(power_exponents(r(1), r(1, 2), r(1, 2), r(1, 2)));
    CHECK(C.label == CaseLabel::C);
    CHECK(*C.index == r(2, 3));
    CHECK(C.two_sided);

    auto D = dispatch_regular_case(power_exponents(r(3, 2), r(3, 10), r(1, 4), r(1, 4)));
    CHECK(D.label == CaseLabel::D);
    CHECK(*D.index == r(7, 12));
    CHECK(D.two_sided);

    auto A = dispatch_regular_case(power_exponents(r(1, 4), r(1, 4), r(1), r(1)));
    CHECK(A.label == CaseLabel::A);
    CHECK(*A.index == r(1, 2));
    CHECK(A.independent_of_d);

    CHECK(dispatch_regular_case(power_exponents(r(1), r(1), r(0), r(0))).label == CaseLabel::exceptional);
    CHECK(dispatch_regular_case(power_exponents(r(0), r(0), r(1), r(1))).label == CaseLabel::exceptional);
}

TEST_CASE("table and dispatch agree on pure powers") {
    const Rational grid[] = {r(1, 4), r(1, 2), r(3, 4), r(1), r(5, 4), r(3, 2), r(2), r(5, 2)};
    int compared = 0;
    for (auto dl : grid)
        for (auto dp : grid)
            for (auto g : {r(1, 4), r(1, 2), r(1)}) {
                if (dp > dl) continue;
                auto row = power_law_row(dl, dp, g, g);
                auto cas = dispatch_regular_case(power_exponents(dl, dp, g, g));
                if (row.label == CaseLabel::exceptional || cas.label == CaseLabel::exceptional || !cas.index) continue;
                CAPTURE(dl.str());
                CAPTURE(dp.str());
                CAPTURE(g.str());
                // Row 4 bounds with a log factor; its order matches the case index.
                CHECK(*row.index == *cas.index);
                ++compared;
            }
    CHECK(compared > 40);
}

TEST_CASE("case A function inverts to within a constant") {
    auto A = dispatch_regular_case(power_exponents(r(1, 4), r(1, 4), r(1), r(1)));
    REQUIRE(A.case_function);
    REQUIRE(A.case_constant);
    CHECK(*A.case_constant > 0);
    // C = t, D = t^{1/2}: sup D/(tC) = 1 at t = 1, so alpha = 6 and f(t) = t^2 log(6 t^{3/2}).
    CHECK(*A.case_constant == doctest::Approx(6.0));
    CHECK(A.case_function(2.0) == doctest::Approx(4 * std::log(6 * std::pow(2.0, 1.5))).epsilon(1e-12));
    for (double R : {1e2, 1e6, 1e12}) {
        double lhs = A.lower(R), rhs = A.upper(R);
        CHECK(lhs == doctest::Approx(rhs));
        // Both sides are R / f^-(R).
        CHECK(A.case_function(R / lhs) / R == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("case B sides stay within a constant of each other") {
    auto B = dispatch_regular_case(power_exponents(r(2), r(1), r(1), r(1)));
    double lo = 1e300, hi = 0;
    for (double R : {1e4, 1e6, 1e8, 1e10, 1e12}) {
        double q = B.upper(R) / B.lower(R);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        CHECK(B.lower(R) == doctest::Approx(std::cbrt(R / 2)).epsilon(1e-6));
    }
    // sqrt(R) int_k^inf s^{-3/2} = 2 sqrt(R/k) = 2 sqrt(2) k with k^3 = R/2.
    CHECK(lo == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-3));
    CHECK(hi == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("case C and D sides bracket a power of R") {
    auto C = dispatch_regular_case(power_exponents(r(1), r(1, 2), r(1, 2), r(1, 2)));
    auto D = dispatch_regular_case(power_exponents(r(3, 2), r(3, 10), r(1, 4), r(1, 4)));
    for (auto* cas : {&C, &D}) {
        const double idx = cas->index->to_double();
        double lo = 1e300, hi = 0;
        for (double R : {1e6, 1e8, 1e10, 1e12}) {
            double l = cas->lower(R), u = cas->upper(R);
            CHECK(l <= u * (1 + 1e-9));
            lo = std::min(lo, l / std::pow(R, idx));
            hi = std::max(hi, u / std::pow(R, idx));
        }
        CHECK(hi / lo < 20.0);
    }
}

TEST_CASE("monodromy bound applies the side conditions") {
    auto ok = monodromy_case_bound(power_exponents(r(2), r(1), r(1), r(1)));
    CHECK(ok.label == CaseLabel::B);
    CHECK(*ok.order_bound == r(1, 3));
    REQUIRE(ok.bound);
    CHECK(ok.bound->power == r(1, 3));
    // gamma = 0 with d_phi/d_l decreasing.
    auto bad = monodromy_case_bound(exps(r(1), r(0), r(2), r(0), r(0), r(1), r(0), r(1)));
    CHECK(bad.label == CaseLabel::exceptional);
    // c_phi larger than c_l.
    CHECK(monodromy_case_bound(power_exponents(r(2), r(1), r(1), r(1, 2))).label == CaseLabel::exceptional);
}

TEST_CASE("bounds from d_l and d_phi alone") {
    auto b1 = bound_without_tails(r(2), r(0), r(1), r(0));
    CHECK(b1.bullet == 1);
    CHECK(*b1.diagnosis.index == r(1, 3));
    CHECK(b1.diagnosis.upper(1e9) == doctest::Approx(std::cbrt(1e9 / 2)).epsilon(1e-6));
    // Constructed tail c_l = t^-1 / 1.
    CHECK(b1.constructed.c_l(100.0) == doctest::Approx(0.01));

    auto b2 = bound_without_tails(r(6, 5), r(0), r(2, 5), r(0));
    CHECK(b2.bullet == 2);
    CHECK(*b2.diagnosis.index == r(3, 4));
    // h = R^{5/4}, R int_h^inf t^{-6/5} = 5 R h^{-1/5}.
    const double R = 1e8;
    CHECK(b2.diagnosis.upper(R) == doctest::Approx(5 * R * std::pow(R, -0.25)).epsilon(1e-3));

    auto b3 = bound_without_tails(r(3, 2), r(0), r(1, 4), r(0), true);
    CHECK(b3.bullet == 3);
    CHECK(*b3.diagnosis.index == r(4, 7));

    auto b4 = bound_without_tails(r(3, 2), r(0), r(1, 2), r(0));
    CHECK(b4.bullet == 4);
    CHECK(*b4.diagnosis.order_bound == r(1, 2));

    CHECK_THROWS_AS(bound_without_tails(r(1), r(0), r(1), r(0)), std::invalid_argument);
}

TEST_CASE("exceptional fixtures check their constraints") {
    for (auto ex : {ExceptionalExample::remainder_dominates, ExceptionalExample::case_c_sharpness,
                    ExceptionalExample::boundary_case}) {
        auto fx = exceptional_fixtures(ex);
        CHECK(fx.size() >= 3);
        for (const auto& f : fx) CHECK(f.expected_core);
    }
    // gamma > 0 is not allowed when the remainder should dominate.
    CHECK_THROWS_AS(make_fixture(ExceptionalExample::remainder_dominates,
                                 exps(r(1), r(0), r(2), r(0), r(1), r(1), r(1), r(1))),
                    std::invalid_argument);
    // delta != 2.
    CHECK_THROWS_AS(make_fixture(ExceptionalExample::case_c_sharpness,
                                 exps(r(1), r(0), r(3, 2), r(0), r(1, 2), r(0), r(1, 2), r(0))),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_fixture(ExceptionalExample::boundary_case,
                                 exps(r(1), r(0), r(1), r(3), r(0), r(1), r(0), r(1))),
                    std::invalid_argument);

    auto a = exceptional_fixtures(ExceptionalExample::remainder_dominates)[0];
    CHECK(a.expected_core->power == r(1, 3));
    CHECK(a.expected_B->power == r(1, 2));
    auto bc = exceptional_fixtures(ExceptionalExample::boundary_case)[0];
    CHECK(bc.expected_core->power == r(3, 4));
}

TEST_CASE("core bound without remainder for a pure power") {
    // d_l = d_phi = t^-1, c = t^-1: g = 1/2-power branch gives the table row for delta = 2.
    auto data = power_exponents(r(3, 2), r(3, 2), r(1), r(1)).data();
    double lo = 1e300, hi = 0;
    for (double R : {1e4, 1e6, 1e8}) {
        double q = core_bound(data, R) / std::cbrt(R);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    CHECK(hi / lo < 1.5);
}

TEST_CASE("Jacobi presets") {
    CHECK_THROWS_AS(critical_jacobi_preset(CriticalJacobiParams{2.0}, 1000), std::invalid_argument);
    CriticalJacobiParams det;
    det.y1 = 0.0;
    CHECK_THROWS_AS(critical_jacobi_preset(det, 4000), std::invalid_argument);

    auto b = critical_jacobi_preset(CriticalJacobiParams{}, 4000);
    CHECK(b.expected_order == r(1, 3));
    REQUIRE(b.jacobi);
    CHECK(b.jacobi->offdiagonal[9] == doctest::Approx(1000.0));

    GrowthSpec bad;
    bad.omega = 2.5;
    CHECK_THROWS_AS(prescribed_growth_preset(PowerLog(1.0, 1.0 / 3), bad), std::invalid_argument);
    CHECK_THROWS_AS(prescribed_growth_preset(PowerLog(1.0, 0.75), GrowthSpec{}), std::invalid_argument);

    auto g = prescribed_growth_preset(PowerLog(1.0, 1.0 / 3), GrowthSpec{});
    CHECK(g.expected_order == r(1, 3));
    auto J = jacobi_from_hamiltonian(g.H, 10002);
    const double n = 1e4;
    CHECK(J.offdiagonal[10000] / (n * n * n) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("preset registry is sorted and complete") {
    auto v = list_presets();
    CHECK(v.size() == 10);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1].key < v[i].key);
    bool has = false;
    for (const auto& p : v) has = has || p.key == "b38";
    CHECK(has);
}

TEST_CASE("case A inverse composes back to the identity") {
    const PowerLogExponents fixtures[] = {
        power_exponents(r(1, 4), r(1, 4), r(1), r(1)),
        exps(r(1, 2), r(1), r(0), r(0), r(1, 2), r(-1), r(1, 2), r(0)),
    };
    for (const auto& e : fixtures) {
        auto A = dispatch_regular_case(e);
        REQUIRE(A.label == CaseLabel::A);
        auto logf = [&A](double u) { return std::log(A.case_function(std::exp(u))); };
        for (double t : geometric_grid(1e3, 1e6, 2)) {
            double back = std::exp(generalized_inverse_log(logf, logf(std::log(t))));
            CHECK(back / t >= 0.9);
            CHECK(back / t <= 1.1);
        }
    }
}

TEST_CASE("prescribed growth preset has a vanishing diagonal") {
    auto g = prescribed_growth_preset(PowerLog(1.0, 1.0 / 3), GrowthSpec{});
    auto J = jacobi_from_hamiltonian(g.H, 10002);
    CHECK(std::abs(J.diagonal[10000]) / J.offdiagonal[10000] < 1e-2);
}

TEST_CASE("two-sided band on the alternating power family") {
    auto H = family_alternating_power(3, 1);
    auto d = alternating_power_data(3, 1);
    auto radii = geometric_grid(1e3, 1e6, 2);
    auto band = two_sided_band(H, d.d_l, d.d_phi, radii);
    CHECK(band.band_min > 0);
    CHECK(band.spread() < 10.0);

    // Shifting every angle by pi changes nothing.
    auto shifted = two_sided_band(H.with_shifted_angles(std::numbers::pi), d.d_l, d.d_phi, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) CHECK(shifted.logM[i] == doctest::Approx(band.logM[i]).epsilon(1e-12));

    // Doubling all lengths moves the band by a bounded factor.
    const auto& tail = *H.tail();
    TailMajorant doubled{tail.c_l.scaled(2.0), tail.c_phi.scaled(2.0), tail.psi};
    auto H2 = HamburgerHamiltonian::from_generator(
        [H](std::size_t j) { return std::make_pair(2.0 * H.length(j), H.angle(j)); }, doubled, "doubled");
    auto band2 = two_sided_band(H2, d.d_l, d.d_phi, radii);
    CHECK(band2.band_min / band.band_min > 1.0);
    CHECK(band2.band_max / band.band_max < 4.0);
    CHECK(band2.rho == doctest::Approx(band.rho).epsilon(0.05));
}

TEST_CASE("order 1/delta for delta = 5/2") {
    auto H = family_alternating_power(2, 0.5);
    auto d = alternating_power_data(2, 0.5);
    auto band = two_sided_band(H, d.d_l, d.d_phi, geometric_grid(1e2, 1e5, 2), 0.5);
    CHECK(band.rho >= 0.4 - 0.06);
    CHECK(band.rho <= 0.4 + 0.06);
    CHECK(band.spread() < 10.0);
}
