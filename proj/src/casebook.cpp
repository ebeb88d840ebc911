#include "nevbound/casebook.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nevbound/errors.hpp"
#include "nevbound/monodromy.hpp"

namespace nevbound {

namespace {

using Pair = std::pair<Rational, Rational>;

const Rational kZero(0), kOne(1), kTwo(2);

double d(const Rational& r) { return r.to_double(); }

// t^-a (log t)^-b.
PowerLog decay(const Rational& a, const Rational& b) { return PowerLog(1.0, -d(a), -d(b)); }

// Nonincreasing on [1, inf): frozen at the left maximum of t^-a (log t)^-b.
ComparisonFunction frozen_decay(const Rational& a, const Rational& b, const std::string& what) {
    if (Pair{a, b} < Pair{kZero, kZero})
        throw std::invalid_argument(what + ": exponents must satisfy (power, logpower) >= (0, 0)");
    PowerLog f = decay(a, b);
    if (b == kZero) return ComparisonFunction::powerlog(f);
    double u0 = 1.0;  // domain start e
    if (b < kZero) u0 = std::max(u0, -d(b) / d(a));
    auto logf = [f, u0](double u) { return f.log_at_log(std::max(u, u0)); };
    return ComparisonFunction::from_log_form(logf, -d(a), Monotonicity::nonincreasing,
                                             what + " t^-" + a.str() + " (log t)^-" + b.str());
}

std::string scale_part(const char* base, const Rational& e) {
    if (e == kZero) return "";
    std::string s = base;
    if (!(e == kOne)) s += "^{" + e.str() + "}";
    return s;
}

// Numerics shared by the case sides: everything in log t.
struct CaseNumerics {
    PowerLog dl, dphi, cl, cphi;

    explicit CaseNumerics(const PowerLogExponents& e)
        : dl(decay(e.delta_l, e.alpha_l)),
          dphi(decay(e.delta_phi, e.alpha_phi)),
          cl(decay(e.gamma_l, e.beta_l)),
          cphi(decay(e.gamma_phi, e.beta_phi)) {}

    double logD(double u) const { return -(dl.log_at_log(u) + dphi.log_at_log(u)); }
    double logC(double u) const { return -0.5 * (cl.log_at_log(u) + cphi.log_at_log(u)); }
    double logq(double u) const { return dphi.log_at_log(u) - dl.log_at_log(u); }
    PowerLog Dm12() const { return (dl * dphi).pow(0.5); }

    double log_k(double R) const {
        return generalized_inverse_log([this](double u) { return logD(u); }, std::log(R / 2.0));
    }
    double log_h(double R) const {
        return generalized_inverse_log([this](double u) { return logq(u); }, std::log(R));
    }
    // int_1^{e^u} D^{-1/2}
    double head(double u) const {
        PowerLog g = Dm12();
        return integrate_log_form([g](double v) { return g.log_at_log(v); }, 0.0, u, 1e-9);
    }
};

void fill_case_sides(CaseDiagnosis& out, const PowerLogExponents& e) {
    auto num = std::make_shared<CaseNumerics>(e);
    switch (out.label) {
        case CaseLabel::A: {
            double sup = -std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 400; ++i) {
                double u = std::log(1e6) * i / 400.0;
                sup = std::max(sup, num->logD(u) - u - num->logC(u));
            }
            // alpha >= 4 sup D/(tC); the factor 1.5 covers the probe grid.
            double log_alpha = std::log(6.0) + sup;
            out.case_constant = std::exp(log_alpha);
            auto logf = [num, log_alpha](double u) {
                double x = log_alpha + u + num->logC(u) - num->logD(u);
                return u + num->logC(u) + std::log(x);
            };
            out.case_function = [logf](double t) { return std::exp(logf(std::log(t))); };
            auto side = [num, logf](double R) {
                double u = generalized_inverse_log(logf, std::log(R));
                return std::exp(std::log(R) - num->logC(u));
            };
            out.lower = side;
            out.upper = side;
            break;
        }
        case CaseLabel::B: {
            out.lower = [num](double R) { return std::exp(num->log_k(R)); };
            out.upper = [num](double R) {
                return std::sqrt(R) * karamata_tail_log(ComparisonFunction::powerlog(num->Dm12()), num->log_k(R));
            };
            break;
        }
        case CaseLabel::C: {
            auto logf0 = [num](double u) { return 2 * u + 2 * num->logC(u) - num->logD(u); };
            auto logf1 = [num](double u) {
                double I = num->head(u);
                return I > 0 ? 2 * (num->logC(u) + std::log(I)) : -std::numeric_limits<double>::infinity();
            };
            out.case_function = [logf1](double t) { return std::exp(logf1(std::log(t))); };
            out.lower = [num, logf0](double R) {
                return std::exp(std::log(R) - num->logC(generalized_inverse_log(logf0, std::log(R))));
            };
            out.upper = [num, logf1](double R) {
                return std::exp(std::log(R) - num->logC(generalized_inverse_log(logf1, std::log(R))));
            };
            break;
        }
        case CaseLabel::D: {
            out.lower = [num](double R) {
                double lh = num->log_h(R);
                return std::exp(std::log(R) + lh + num->dl.log_at_log(lh));
            };
            out.upper = [num](double R) {
                double lh = num->log_h(R);
                return std::sqrt(R) * num->head(lh) + R * karamata_tail_log(ComparisonFunction::powerlog(num->dl), lh);
            };
            break;
        }
        default:
            break;
    }
}

CaseDiagnosis exceptional(std::string why) {
    CaseDiagnosis out;
    out.label = CaseLabel::exceptional;
    out.notes.push_back(std::move(why));
    return out;
}

AsymptoticScale scale(Rational power, Rational logpower = kZero, Rational loglog = kZero, double c = 1.0) {
    return AsymptoticScale{c, power, logpower, loglog};
}

}  // namespace

// ---------------------------------------------------------------- scales and exponents

double AsymptoticScale::log_value(double R) const {
    double lr = std::log(R);
    double v = std::log(coefficient) + d(power) * lr;
    if (!(logpower == kZero)) v += d(logpower) * std::log(lr);
    if (!(loglogpower == kZero)) v += d(loglogpower) * std::log(std::log(lr));
    return v;
}

double AsymptoticScale::operator()(double R) const { return std::exp(log_value(R)); }

std::string AsymptoticScale::str() const {
    std::string s;
    if (coefficient != 1.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", coefficient);
        s = buf;
    }
    for (auto part : {scale_part("R", power), scale_part("(log R)", logpower), scale_part("(log log R)", loglogpower)})
        if (!part.empty()) s += (s.empty() ? "" : " ") + part;
    return s.empty() ? "1" : s;
}

ComparisonData PowerLogExponents::data() const {
    ComparisonData out;
    out.d_l = frozen_decay(delta_l, alpha_l, "d_l");
    out.d_phi = frozen_decay(delta_phi, alpha_phi, "d_phi").capped(1.0).with_monotonicity(Monotonicity::nonincreasing);
    out.c_l = frozen_decay(gamma_l, beta_l, "c_l");
    out.c_phi = pointwise_min(frozen_decay(gamma_phi, beta_phi, "c_phi"), out.c_l)
                    .with_monotonicity(Monotonicity::nonincreasing);
    return out;
}

std::string PowerLogExponents::str() const {
    std::ostringstream os;
    os << "d_l(" << delta_l.str() << "," << alpha_l.str() << ") d_phi(" << delta_phi.str() << "," << alpha_phi.str()
       << ") c_l(" << gamma_l.str() << "," << beta_l.str() << ") c_phi(" << gamma_phi.str() << "," << beta_phi.str()
       << ")";
    return os.str();
}

PowerLogExponents power_exponents(Rational delta_l, Rational delta_phi, Rational gamma_l, Rational gamma_phi) {
    PowerLogExponents e;
    e.delta_l = delta_l;
    e.delta_phi = delta_phi;
    e.gamma_l = gamma_l;
    e.gamma_phi = gamma_phi;
    return e;
}

PowerLogExponents exponents_from_data(const ComparisonData& data) {
    auto read = [](const ComparisonFunction& f) -> Pair {
        if (const auto& pl = f.as_powerlog())
            return {Rational::from_double(-pl->power, 1000), Rational::from_double(-pl->logpower, 1000)};
        double idx;
        if (f.index()) {
            idx = *f.index();
        } else {
            std::vector<std::pair<double, double>> samples;
            for (double t : geometric_grid(1e2, 1e8, 8)) samples.emplace_back(t, f(t));
            idx = index_estimate(samples);
        }
        return {Rational::from_double(-idx, 1000), kZero};
    };
    PowerLogExponents e;
    std::tie(e.delta_l, e.alpha_l) = read(data.d_l);
    std::tie(e.delta_phi, e.alpha_phi) = read(data.d_phi);
    std::tie(e.gamma_l, e.beta_l) = read(data.c_l);
    std::tie(e.gamma_phi, e.beta_phi) = read(data.c_phi);
    return e;
}

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::A: return "A";
        case CaseLabel::B: return "B";
        case CaseLabel::C: return "C";
        case CaseLabel::D: return "D";
        case CaseLabel::row1: return "row-1";
        case CaseLabel::row2: return "row-2";
        case CaseLabel::row3: return "row-3";
        case CaseLabel::row4: return "row-4";
        case CaseLabel::row5: return "row-5";
        case CaseLabel::row6: return "row-6";
        case CaseLabel::exceptional: return "exceptional";
    }
    return "?";
}

// ---------------------------------------------------------------- power-law table

CaseDiagnosis power_law_row(Rational delta_l, Rational delta_phi, Rational gamma_l, Rational gamma_phi) {
    if (delta_l < kZero || delta_phi < kZero || gamma_l < kZero || gamma_phi < kZero)
        throw std::invalid_argument("power-law exponents must be nonnegative");
    const Rational delta = delta_l + delta_phi, gamma = (gamma_l + gamma_phi) / kTwo;
    if (delta == kZero) return exceptional("delta = 0: no row applies");
    if (gamma == kZero) return exceptional("gamma = 0: no row applies; see the boundary-case fixtures");

    CaseDiagnosis out;
    const Rational one_g = kOne + gamma;
    if (delta < one_g) {
        out.label = CaseLabel::row1;
        out.crossing = scale(kOne / one_g, -(kOne / one_g));
        out.bound = scale(kOne / one_g, gamma / one_g);
    } else if (delta == one_g) {
        out.label = CaseLabel::row2;
        out.crossing = scale(kOne / delta);
        out.bound = scale(kOne / delta);
    } else if (delta > kTwo) {
        out.label = CaseLabel::row3;
        out.crossing = scale((delta - kOne) / (gamma * delta));
        out.bound = scale(kOne / delta);
    } else if (delta == kTwo) {
        out.label = CaseLabel::row4;
        out.crossing = scale(kOne / (kTwo * gamma), -(kOne / gamma));
        out.bound = scale(Rational(1, 2), kOne);
    } else if (delta_l <= one_g) {
        out.label = CaseLabel::row5;
        const Rational den = kTwo - delta + kTwo * gamma;
        out.crossing = scale(kOne / den);
        out.bound = scale((kTwo - delta + gamma) / den);
    } else {
        out.label = CaseLabel::row6;
        out.crossing = scale((delta_l - kOne) / (gamma * (delta_l - delta_phi)));
        out.bound = scale((kOne - delta_phi) / (delta_l - delta_phi));
    }
    out.index = out.bound->power;
    out.order_bound = out.bound->power;
    auto b = *out.bound;
    out.upper = [b](double R) { return b(R); };
    return out;
}

// ---------------------------------------------------------------- regular-variation cases

CaseDiagnosis dispatch_regular_case(const PowerLogExponents& e) {
    const Rational delta = e.delta(), alpha = e.alpha(), gamma = e.gamma(), beta = e.beta();
    if (!(delta > kZero)) return exceptional("delta must be positive");
    if (!(Pair{gamma, beta} > Pair{kZero, kZero})) return exceptional("C does not tend to infinity");

    const Pair D{delta, alpha}, tC{kOne + gamma, beta}, inv_dl{e.delta_l, e.alpha_l};
    const bool D_le_tC = D <= tC, tC_le_D = tC <= D;
    const bool head_finite = D > Pair{kTwo, kTwo};  // int_1^inf D^{-1/2} < inf
    const bool dl_integrable = inv_dl > Pair{kOne, kOne};

    CaseDiagnosis out;
    if (tC_le_D && head_finite) {
        // For power-logs d_phi/d_l is always comparable to a monotone function, so the side
        // condition at (delta_l, delta_phi, gamma) = (1, 1, 0) holds.
        out.label = CaseLabel::B;
        out.index = kOne / delta;
        out.two_sided = delta > kTwo;
        out.independent_of_c = out.two_sided;
    } else if (inv_dl <= tC && tC_le_D && !head_finite) {
        if (delta == kTwo && gamma == kZero)
            return exceptional("(delta, gamma) = (2, 0) is excluded; see the boundary-case fixtures");
        out.label = CaseLabel::C;
        out.index = (kTwo - delta + gamma) / (kTwo - delta + kTwo * gamma);
        out.two_sided = delta < kTwo;
    } else if (tC <= inv_dl && !head_finite && dl_integrable) {
        out.label = CaseLabel::D;
        if (e.delta_l > e.delta_phi)
            out.index = (kOne - e.delta_phi) / (e.delta_l - e.delta_phi);
        else
            out.notes.push_back("delta_l = delta_phi: the bounds need not be regularly varying");
        out.two_sided = delta < kTwo && e.delta_l > kOne;
    } else if (D_le_tC) {
        out.label = CaseLabel::A;
        out.index = kOne / (kOne + gamma);
        out.two_sided = true;
        out.independent_of_d = delta < kOne + gamma;
    } else {
        return exceptional("no case applies: d_l is not integrable and t C <~ 1/d_l");
    }
    fill_case_sides(out, e);
    return out;
}

CaseDiagnosis dispatch_regular_case(const ComparisonData& data) { return dispatch_regular_case(exponents_from_data(data)); }

CaseDiagnosis monodromy_case_bound(const PowerLogExponents& e) {
    if (!(Pair{e.gamma_l, e.beta_l} <= Pair{e.gamma_phi, e.beta_phi}))
        return exceptional("c_phi <~ c_l fails");
    CaseDiagnosis out = dispatch_regular_case(e);
    if (out.label == CaseLabel::B && !(e.gamma() > kZero) &&
        !(Pair{e.delta_l - e.delta_phi, e.alpha_l - e.alpha_phi} >= Pair{kZero, kZero}))
        return exceptional("gamma = 0 and d_phi/d_l is not nondecreasing");
    if (out.label == CaseLabel::D && !(e.delta_l > e.delta_phi))
        return exceptional("the d_l-integrable row needs delta_l > delta_phi");
    out.order_bound = out.index;
    const bool pure = e.alpha_l == kZero && e.alpha_phi == kZero && e.beta_l == kZero && e.beta_phi == kZero;
    if (pure && out.label != CaseLabel::exceptional && e.gamma() > kZero) {
        auto row = power_law_row(e.delta_l, e.delta_phi, e.gamma_l, e.gamma_phi);
        out.bound = row.bound;
        out.notes.push_back("power-law table " + to_string(row.label));
    }
    return out;
}

// ---------------------------------------------------------------- bounds from d_l, d_phi only

namespace {

// Exponents (a', b') of int_t^inf s^-a (log s)^-b ds for large t.
Pair tail_exponents(const Rational& a, const Rational& b) {
    if (a > kOne) return {a - kOne, b};
    if (a == kOne && b > kOne) return {kZero, b - kOne};
    throw std::invalid_argument("tail integral diverges");
}

}  // namespace

TailFreeBound bound_without_tails(Rational delta_l, Rational alpha_l, Rational delta_phi, Rational alpha_phi,
                                  bool angles_track_psi) {
    if (!(Pair{delta_l, alpha_l} > Pair{kOne, kOne})) throw std::invalid_argument("d_l must be integrable");
    if (!(Pair{delta_phi, alpha_phi} >= Pair{kZero, kZero})) throw std::invalid_argument("d_phi must not grow");
    const Rational delta = delta_l + delta_phi;
    if (!(delta > kZero)) throw std::invalid_argument("delta must be positive");

    PowerLogExponents e;
    e.delta_l = delta_l;
    e.alpha_l = alpha_l;
    e.delta_phi = delta_phi;
    e.alpha_phi = alpha_phi;
    const Pair cl = tail_exponents(delta_l, alpha_l);
    e.gamma_l = cl.first;
    e.beta_l = cl.second;
    e.gamma_phi = cl.first;
    e.beta_phi = cl.second;

    TailFreeBound out;
    CaseDiagnosis& diag = out.diagnosis;
    auto num = std::make_shared<CaseNumerics>(e);
    auto k_side = [num](double R) { return std::exp(num->log_k(R)); };
    const AsymptoticScale k_scale = scale(kOne / delta, -(e.alpha() / delta), kZero, 1.0);

    if (delta > kTwo) {
        out.bullet = 1;
        if (delta_l == kOne) {
            // c_phi = c_l (int_t^inf d_phi)^2; the angles converge.
            const Pair cp = tail_exponents(delta_phi, alpha_phi);
            e.gamma_phi = cl.first + kTwo * cp.first;
            e.beta_phi = cl.second + kTwo * cp.second;
        }
        diag.label = CaseLabel::B;
        diag.index = kOne / delta;
        diag.bound = k_scale;
        diag.upper = k_side;
    } else if (angles_track_psi && delta_l > kOne) {
        out.bullet = 3;
        const Pair cp = tail_exponents(delta_l + kTwo * delta_phi, alpha_l + kTwo * alpha_phi);
        e.gamma_phi = cp.first;
        e.beta_phi = cp.second;
        diag.label = CaseLabel::A;
        diag.index = kOne / delta;
        diag.bound = k_scale;
        diag.upper = k_side;
    } else if (delta < kTwo) {
        out.bullet = 2;
        diag.label = CaseLabel::D;
        diag.index = (kOne - delta_phi) / (delta_l - delta_phi);
        if (alpha_l == kZero && alpha_phi == kZero && delta_l > kOne)
            diag.bound = scale(*diag.index, kZero, kZero, 1.0 / (d(delta_l) - 1.0));
        diag.upper = [num](double R) {
            return R * karamata_tail_log(ComparisonFunction::powerlog(num->dl), num->log_h(R));
        };
    } else if (delta == kTwo && !(delta_l == kOne && delta_phi == kOne)) {
        out.bullet = 4;
        diag.label = monodromy_case_bound(e).label;
        diag.index = Rational(1, 2);
    } else {
        out.diagnosis = exceptional("delta = 2 with (delta_l, delta_phi) = (1, 1)");
        out.constructed = e.data();
        return out;
    }
    diag.order_bound = diag.index;
    out.constructed = e.data();
    auto table = monodromy_case_bound(e);
    diag.notes.push_back("constructed tails fall in case " + to_string(table.label) +
                         (table.index ? " with index " + table.index->str() : std::string()));
    return out;
}

// ---------------------------------------------------------------- two-sided band

BandResult two_sided_band(const HamburgerHamiltonian& H, const ComparisonFunction& d_l, const ComparisonFunction& d_phi,
                          const std::vector<double>& radii, double eps) {
    if (radii.size() < 2) throw std::invalid_argument("two_sided_band needs at least two radii");
    auto prof = growth_profile(H, radii, eps);
    BandResult out;
    out.rho = prof.rho;
    const double r_top = *std::max_element(radii.begin(), radii.end()) / 100.0 * (1 - 1e-12);
    out.band_min = std::numeric_limits<double>::infinity();
    out.band_max = 0.0;
    for (const auto& p : prof.points) {
        double low = lower_bound(d_l, d_phi, p.R);
        out.radii.push_back(p.R);
        out.logM.push_back(p.logM);
        out.lower.push_back(low);
        out.ratio.push_back(p.logM / low);
        if (p.R >= r_top) {
            out.band_min = std::min(out.band_min, out.ratio.back());
            out.band_max = std::max(out.band_max, out.ratio.back());
        }
    }
    return out;
}

// ---------------------------------------------------------------- exceptional fixtures

namespace {

void check_setting(const PowerLogExponents& p) {
    const Pair zero{kZero, kZero};
    for (Pair q : {Pair{p.delta_l, p.alpha_l}, Pair{p.delta_phi, p.alpha_phi}, Pair{p.gamma_l, p.beta_l},
                   Pair{p.gamma_phi, p.beta_phi}})
        if (q < zero) throw std::invalid_argument("every exponent pair must be >= (0, 0)");
    if (!(p.delta() > kZero)) throw std::invalid_argument("delta must be positive");
    if (!(Pair{p.gamma(), p.beta()} > zero)) throw std::invalid_argument("(gamma, beta) must be > (0, 0)");
    if (!(Pair{p.gamma_l, p.beta_l} <= Pair{p.gamma_phi, p.beta_phi}))
        throw std::invalid_argument("(gamma_l, beta_l) must be <= (gamma_phi, beta_phi)");
}

}  // namespace

void check_fixture_constraints(ExceptionalExample example, const PowerLogExponents& p) {
    check_setting(p);
    const Rational delta = p.delta(), alpha = p.alpha(), gamma = p.gamma(), beta = p.beta();
    switch (example) {
        case ExceptionalExample::remainder_dominates:
            if (!(Pair{p.delta_l, p.alpha_l} < Pair{p.delta_phi, p.alpha_phi}) || !(gamma == kZero) ||
                !(Pair{delta, alpha} > Pair{kTwo, kTwo}))
                throw std::invalid_argument(
                    "needs (delta_l, alpha_l) < (delta_phi, alpha_phi), gamma = 0, (delta, alpha) > (2, 2)");
            return;
        case ExceptionalExample::case_c_sharpness:
            if (!(Pair{p.delta_l, p.alpha_l} <= Pair{kOne + gamma, beta}) ||
                !(Pair{kOne + gamma, beta} <= Pair{delta, alpha}) || !(delta == kTwo) || !(alpha <= kTwo) ||
                !(gamma > kZero))
                throw std::invalid_argument(
                    "needs (delta_l, alpha_l) <= (1+gamma, beta) <= (delta, alpha), delta = 2, alpha <= 2, gamma > 0");
            return;
        case ExceptionalExample::boundary_case:
            if (!(Pair{p.delta_l, p.alpha_l} <= Pair{kOne, kOne + beta}) || !(delta == kTwo) || !(gamma == kZero) ||
                !(alpha <= kTwo))
                throw std::invalid_argument("needs (delta_l, alpha_l) <= (1, 1+beta), (delta, gamma) = (2, 0), alpha <= 2");
            return;
    }
}

ExceptionalFixture make_fixture(ExceptionalExample example, const PowerLogExponents& p) {
    check_fixture_constraints(example, p);
    const Rational delta = p.delta(), alpha = p.alpha(), gamma = p.gamma(), beta = p.beta();
    const Rational half(1, 2);
    ExceptionalFixture f{example, "", p, std::nullopt, std::nullopt};
    switch (example) {
        case ExceptionalExample::remainder_dominates: {
            f.expected_core = delta == kTwo ? scale(half, kOne - alpha / kTwo) : scale(kOne / delta, -(alpha / delta));
            const bool same = p.delta_l == p.delta_phi || beta > kOne ||
                              (beta == delta - kOne && beta > kOne && alpha < kZero);
            f.expected_B = same ? *f.expected_core : scale(kOne / (kOne + beta));
            f.branch = std::string(delta == kTwo ? "delta = 2" : "delta > 2") +
                       (same ? ", remainder negligible" : ", remainder dominates");
            break;
        }
        case ExceptionalExample::case_c_sharpness:
            if (gamma < kOne) {
                f.expected_core = scale(half, kOne - alpha / kTwo);
                f.branch = "gamma < 1";
            } else if (alpha > beta) {
                f.expected_core = scale(half, -(alpha / kTwo), kOne);
                f.branch = "gamma = 1, alpha > beta";
            } else {
                f.expected_core = scale(half, -(alpha / kTwo));
                f.branch = "gamma = 1, alpha = beta";
            }
            break;
        case ExceptionalExample::boundary_case: {
            if (alpha < kTwo) {
                f.expected_core = scale((kTwo - alpha + beta) / (kTwo - alpha + kTwo * beta));
                f.branch = "alpha < 2";
            } else {
                f.expected_core = scale(half, kOne);
                f.branch = "alpha = 2";
            }
            const bool same = p.delta_l == p.delta_phi || alpha <= kOne + beta;
            f.expected_B = same ? *f.expected_core : scale(kOne / (kOne + beta));
            f.branch += same ? ", remainder negligible" : ", remainder dominates";
            break;
        }
    }
    return f;
}

std::vector<ExceptionalFixture> exceptional_fixtures(ExceptionalExample example) {
    auto P = [](Rational dl, Rational al, Rational dp, Rational ap, Rational gl, Rational bl, Rational gp,
                Rational bp) { return PowerLogExponents{dl, al, dp, ap, gl, bl, gp, bp}; };
    const Rational z(0), h(1, 2), one(1), two(2), three(3, 2);
    std::vector<PowerLogExponents> sets;
    switch (example) {
        case ExceptionalExample::remainder_dominates:
            sets = {P(one, z, two, z, z, one, z, one), P(one, z, two, z, z, two, z, two), P(one, one, one, two, z, one, z, one)};
            break;
        case ExceptionalExample::case_c_sharpness:
            sets = {P(one, z, one, z, h, z, h, z), P(one, one, one, one, one, z, one, z), P(one, z, one, z, one, z, one, z)};
            break;
        case ExceptionalExample::boundary_case:
            sets = {P(one, z, one, z, z, one, z, one), P(one, one, one, one, z, one, z, one),
                    P(h, z, three, two, z, h, z, h), P(h, z, three, z, z, one, z, one)};
            break;
    }
    std::vector<ExceptionalFixture> out;
    for (const auto& s : sets) out.push_back(make_fixture(example, s));
    return out;
}

double core_bound(const ComparisonData& data, double R) {
    BoundEvaluator ev(data, R);
    double uT = ev.solve_T_log();
    return std::max(ev.g_integral(uT), std::exp(ev.log_rc(uT)));
}

FixtureBand fixture_band(const ExceptionalFixture& fixture, const std::vector<double>& radii) {
    const ComparisonData data = fixture.params.data();
    FixtureBand out;
    out.radii = radii;
    out.B.resize(radii.size());
    out.core.resize(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        out.B[i] = upper_bound_B(data, radii[i], BoundMode::grid_infimum).B;
        out.core[i] = core_bound(data, radii[i]);
    }
    auto spread = [](const std::vector<double>& v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi / *lo;
    };
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (fixture.expected_B) out.ratio_B.push_back(out.B[i] / (*fixture.expected_B)(radii[i]));
        if (fixture.expected_core) out.ratio_core.push_back(out.core[i] / (*fixture.expected_core)(radii[i]));
    }
    if (!out.ratio_B.empty()) out.spread_B = spread(out.ratio_B);
    if (!out.ratio_core.empty()) out.spread_core = spread(out.ratio_core);
    return out;
}

// ---------------------------------------------------------------- Jacobi presets

ExperimentBundle critical_jacobi_preset(const CriticalJacobiParams& p, std::size_t count) {
    if (!(p.sigma > 2)) throw std::invalid_argument("critical Jacobi preset needs sigma > 2");
    if (p.y0 == 0.0) throw std::invalid_argument("critical Jacobi preset needs y0 != 0");
    if (count < 16) throw std::invalid_argument("critical Jacobi preset needs at least 16 entries");
    JacobiParameters J;
    for (std::size_t n = 0; n + 1 < count; ++n) {
        const double m = static_cast<double>(n + 1), s = std::pow(m, p.sigma);
        double b = s * (std::abs(p.y0) / 2 + p.x1 / m + p.x2 / (m * m));
        if (!(b > 0)) throw std::invalid_argument("off-diagonal must stay positive");
        J.offdiagonal.push_back(b);
        J.diagonal.push_back(s * (p.y0 + p.y1 / m + p.y2 / (m * m)));
    }
    HamburgerHamiltonian H = [&] {
        try {
            return with_fitted_tail(hamiltonian_from_jacobi(J, count));
        } catch (const RangeError&) {
            throw std::invalid_argument("lengths blow up: the moment problem is determinate");
        } catch (const DivergenceError&) {
            throw std::invalid_argument("lengths are not summable: the moment problem is determinate");
        }
    }();
    ExperimentBundle out{"critical_jacobi", H, J, scale(kOne / Rational::from_double(p.sigma, 1000)),
                         kOne / Rational::from_double(p.sigma, 1000), PowerLog(std::abs(p.y0) / 2, p.sigma), {}};
    std::ostringstream os;
    os << "sigma=" << p.sigma << " y0=" << p.y0 << " x1=" << p.x1 << " x2=" << p.x2 << " y1=" << p.y1 << " y2=" << p.y2
       << " total length in [" << H.total_length(H.size()).lower << ", " << H.total_length(H.size()).upper << "]";
    out.notes.push_back(os.str());
    return out;
}

ExperimentBundle prescribed_growth_preset(const PowerLog& g, const GrowthSpec& spec) {
    if (!(g.power > 0 && g.power < 0.5)) throw std::invalid_argument("index of g must lie in (0, 1/2)");
    PowerLog ginv = pl_asymptotic_inverse(g).leading();
    HamburgerHamiltonian H = family_prescribed_growth(ginv, spec);
    AsymptoticScale growth{g.coefficient, Rational::from_double(g.power, 1000), Rational::from_double(g.logpower, 1000),
                           kZero};
    return ExperimentBundle{"prescribed_growth", H, std::nullopt, growth, growth.power, ginv, {}};
}

// ---------------------------------------------------------------- registry

std::vector<PresetInfo> list_presets() {
    std::vector<PresetInfo> v = {
        {"b66", "delta_l delta_phi gamma_l gamma_phi", "power-law table row: T(R), bound and order"},
        {"b9", "d_l d_phi c_l c_phi exponent pairs", "regular-variation case A-D with both sandwich sides"},
        {"b7", "d_l d_phi c_l c_phi exponent pairs", "monodromy bound and order bound with table side conditions"},
        {"b96", "delta_l alpha_l delta_phi alpha_phi [track_psi]", "bound from d_l, d_phi alone"},
        {"b38", "family d_l d_phi", "two-sided band of logM against [1/(d_l d_phi)]^-(R)"},
        {"ex-b24", "exponent pairs", "remainder term dominating the bound, gamma = 0"},
        {"ex-b36", "exponent pairs", "sharpness of the case C sandwich, delta = 2"},
        {"ex-b11", "exponent pairs", "boundary case (delta, gamma) = (2, 0)"},
        {"b79", "sigma y0 x1 x2 y1 y2", "critical Jacobi parameters a_n ~ 2 b_n ~ y0 n^sigma, growth R^{1/sigma}"},
        {"b83", "variant rho logpower [omega]", "prescribed growth g(R) with b_n ~ g^-(n)"},
    };
    std::sort(v.begin(), v.end(), [](const PresetInfo& a, const PresetInfo& b) { return a.key < b.key; });
    return v;
}

}  // namespace nevbound
