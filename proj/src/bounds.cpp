#include "nevbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nevbound/errors.hpp"
#include "nevbound/monodromy.hpp"

namespace nevbound {

namespace {

constexpr double kLogDoubleMax = 709.0;
// Beyond this log t the integer rounding in ceil/floor is below double resolution.
constexpr double kExactIntegerLog = 36.0;
// Hard cap on log T(R).
constexpr double kMaxLogT = 1e12;
constexpr std::size_t kDirectTelescope = 1 << 16;

double safe_exp(double v) { return v > kLogDoubleMax ? kInfinity : std::exp(v); }

bool close_or_below(double a, double b) { return a <= b + 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

// ---------------------------------------------------------------- data

void ComparisonData::validate() const {
    const std::pair<const ComparisonFunction*, const char*> fns[] = {
        {&d_l, "d_l"}, {&d_phi, "d_phi"}, {&c_l, "c_l"}, {&c_phi, "c_phi"}};
    std::vector<double> probes{0.0, 0.25, 0.5};
    for (double u = 1.0; u <= 1024.0; u *= 2) probes.push_back(u);
    for (auto [f, name] : fns) {
        if (f->monotonicity() == Monotonicity::nondecreasing)
            throw std::invalid_argument(std::string(name) + " is declared nondecreasing");
        double prev = f->log_at_log(0.0);
        for (double u : probes) {
            double v = f->log_at_log(u);
            if (std::isnan(v)) throw std::invalid_argument(std::string(name) + " is not evaluable");
            if (!close_or_below(v, prev)) throw std::invalid_argument(std::string(name) + " is not nonincreasing");
            prev = v;
        }
    }
    for (double u : probes) {
        if (!close_or_below(d_phi.log_at_log(u), 0.0)) throw std::invalid_argument("d_phi must not exceed 1");
        if (!close_or_below(c_phi.log_at_log(u), c_l.log_at_log(u)))
            throw std::invalid_argument("c_phi must not exceed c_l");
    }
}

ComparisonData alternating_power_data(double alpha, double beta) {
    if (!(alpha > 1) || !(beta >= 0)) throw std::invalid_argument("alternating power data needs alpha > 1, beta >= 0");
    ComparisonData d;
    d.d_l = ComparisonFunction::powerlog(1.0, -alpha);
    d.d_phi = ComparisonFunction::powerlog(2.0, -beta).capped(1.0).with_monotonicity(Monotonicity::nonincreasing);
    d.c_l = ComparisonFunction::powerlog(1.0 / (alpha - 1.0), 1.0 - alpha);
    d.c_phi = ComparisonFunction::powerlog(1.0 / (alpha + 2 * beta - 1.0), 1.0 - alpha - 2 * beta);
    d.psi = 0.0;
    return d;
}

// ---------------------------------------------------------------- majorization

namespace {

// Largest ratio and its index; throws when the upper half keeps outgrowing the quarter before it.
std::pair<double, std::size_t> ratio_constant(const std::vector<double>& r, std::size_t first, const char* what) {
    double best = 0.0;
    std::size_t arg = first;
    for (std::size_t j = first; j < r.size(); ++j)
        if (r[j] > best) {
            best = r[j];
            arg = j;
        }
    std::size_t N = r.size() - 1;
    if (N >= 16) {
        double mid = 0.0, top = 0.0;
        std::size_t top_arg = N;
        for (std::size_t j = N / 4 + 1; j <= N / 2; ++j) mid = std::max(mid, r[j]);
        for (std::size_t j = N / 2 + 1; j <= N; ++j)
            if (r[j] > top) {
                top = r[j];
                top_arg = j;
            }
        if (top > 1.5 * mid && top > 0) {
            std::ostringstream os;
            os << what << " ratio grows without bound over the checked range (" << top << " at j = " << top_arg
               << " vs " << mid << " before)";
            throw HypothesisViolation(os.str(), top_arg);
        }
    }
    return {best, arg};
}

double mod_pi_distance(double a, double b) {
    double d = std::fmod(a - b, std::numbers::pi);
    if (d < 0) d += std::numbers::pi;
    return std::min(d, std::numbers::pi - d);
}

}  // namespace

MajorizationReport check_majorization(const HamburgerHamiltonian& H, const ComparisonData& data,
                                      std::size_t N_check) {
    data.validate();
    std::size_t N = std::min(N_check, H.size());
    if (N < 2) throw std::invalid_argument("majorization check needs at least two entries");
    if (!H.is_exactly_finite() && !H.tail()) throw std::invalid_argument("infinite sums need a tail majorant");

    std::vector<double> l(N + 1), phi(N + 1);
    for (std::size_t j = 1; j <= N; ++j) {
        l[j] = H.length(j);
        phi[j] = H.angle(j);
    }
    double beyond_l = 0.0, beyond_phi = 0.0;
    if (!H.is_exactly_finite()) {
        const auto& tail = *H.tail();
        beyond_l = tail.c_l(double(N));
        beyond_phi = mod_pi_distance(tail.psi, data.psi) < 1e-15 ? tail.c_phi(double(N)) : beyond_l;
    }
    std::vector<double> r_dl(N + 1, 0.0), r_dphi(N, 0.0), r_cl(N + 1, 0.0), r_cphi(N + 1, 0.0);
    for (std::size_t j = 1; j <= N; ++j) r_dl[j] = l[j] / data.d_l(double(j));
    for (std::size_t j = 1; j < N; ++j) r_dphi[j] = std::abs(std::sin(phi[j + 1] - phi[j])) / data.d_phi(double(j));
    double Sl = beyond_l, Sp = beyond_phi;
    for (std::size_t n = N; n >= 1; --n) {
        // Sl, Sp hold the sums over j > n.
        r_cl[n] = Sl / std::exp(data.c_l.log_at_log(std::log(double(n))));
        r_cphi[n] = Sp / std::exp(data.c_phi.log_at_log(std::log(double(n))));
        double s = std::sin(phi[n] - data.psi);
        Sl += l[n];
        Sp += l[n] * s * s;
    }
    MajorizationReport rep;
    rep.N_check = N;
    rep.K_dl = ratio_constant(r_dl, 1, "l_j / d_l(j)").first;
    rep.K_dphi = ratio_constant(r_dphi, 1, "|sin(phi_{j+1} - phi_j)| / d_phi(j)").first;
    rep.K_cl = ratio_constant(r_cl, 1, "length tail / c_l(N)").first;
    rep.K_cphi = ratio_constant(r_cphi, 1, "angle tail / c_phi(N)").first;

    // Ratios within rounding of 1 count as exact.
    for (double* K : {&rep.K_dl, &rep.K_dphi, &rep.K_cl, &rep.K_cphi})
        if (*K > 1 && *K <= 1 + 1e-12) *K = 1;
    ComparisonData s = data;
    if (rep.K_dl > 1) s.d_l = data.d_l.scaled(rep.K_dl);
    if (rep.K_dphi > 1) s.d_phi = data.d_phi.scaled(rep.K_dphi).capped(1.0).with_monotonicity(Monotonicity::nonincreasing);
    if (rep.K_cl > 1) s.c_l = data.c_l.scaled(rep.K_cl);
    if (rep.K_cphi > 1 || rep.K_cl > 1)
        s.c_phi = pointwise_min(data.c_phi.scaled(std::max(1.0, rep.K_cphi)), s.c_l)
                      .with_monotonicity(Monotonicity::nonincreasing);
    rep.rescaled = s;
    return rep;
}

double auto_psi(const HamburgerHamiltonian& H, std::size_t N_check) {
    std::size_t N = std::min(N_check, H.size());
    double best = kInfinity, best_psi = 0.0;
    for (int k = 0; k < 64; ++k) {
        double psi = std::numbers::pi * k / 64.0;
        double s = 0.0;
        for (std::size_t j = N / 4 + 1; j <= N; ++j) {
            double x = std::sin(H.angle(j) - psi);
            s += H.length(j) * x * x;
        }
        if (s < best) {
            best = s;
            best_psi = psi;
        }
    }
    return best_psi;
}

// ---------------------------------------------------------------- evaluator

struct BoundEvaluator::Impl {
    ComparisonData data;
    double R, logR, lk, lh;
    bool k_ok = false;  // R >= 2/(d_l d_phi)(1)

    void require_k() const {
        if (!k_ok) throw DomainError("R below 2/(d_l d_phi)(1): g and T are undefined");
    }
    std::vector<double> cu{0.0}, cg{0.0};  // checkpoints of the running integral of g
    std::vector<double> tele{0.0, 0.0};    // tele[m] = sum_{j<m} |log q(j) - log q(j+1)|, q = d_phi/d_l
    std::vector<double> tu, ts;            // the same sum at log j = tu[i] beyond the direct range

    double LD(double u) const { return data.d_l.log_at_log(u) + data.d_phi.log_at_log(u); }
    double logq(double u) const { return data.d_phi.log_at_log(u) - data.d_l.log_at_log(u); }

    double branch_log_integrand(int branch, double v) const {
        switch (branch) {
            case 0: {
                double x = logR + LD(v);
                return x > 0 ? std::log(x) : -kInfinity;
            }
            case 1:
                return 0.5 * (logR + LD(v));
            default:
                return logR + data.d_l.log_at_log(v);
        }
    }

    double piece(double a, double b) const {
        double total = 0.0;
        const double cuts[] = {lk, lh};
        double lo = a;
        for (int branch = 0; branch < 3 && lo < b; ++branch) {
            double hi = branch < 2 ? std::min(b, cuts[branch]) : b;
            if (hi > lo) {
                total += integrate_log_form([this, branch](double v) { return branch_log_integrand(branch, v); }, lo,
                                            hi, 1e-10);
                lo = hi;
            }
        }
        return total;
    }

    static double step(double u) { return std::max(0.25, u / 64.0); }

    double g_integral(double u) {
        if (!(u > 0)) return 0.0;
        while (cu.back() + step(cu.back()) <= u) {
            double a = cu.back(), b = a + step(a);
            cg.push_back(cg.back() + piece(a, b));
            cu.push_back(b);
        }
        std::size_t i = static_cast<std::size_t>(std::upper_bound(cu.begin(), cu.end(), u) - cu.begin()) - 1;
        return cg[i] + piece(cu[i], u);
    }

    // Sum over j < m, m = e^lm; beyond the direct range the sum runs along a grid in log j.
    double telescope(double lm) {
        const double u0 = std::log(double(kDirectTelescope));
        if (lm <= u0) {
            auto mi = static_cast<std::size_t>(std::round(std::exp(lm)));
            while (tele.size() <= mi) {
                std::size_t j = tele.size() - 1;  // adds |log q(j) - log q(j+1)|
                tele.push_back(tele.back() +
                               std::abs(logq(std::log(double(j))) - logq(std::log(double(j + 1)))));
            }
            return tele[mi];
        }
        if (tu.empty()) {
            tu.push_back(u0);
            ts.push_back(telescope(u0));
        }
        while (tu.back() < lm) {
            double a = tu.back(), b = a + std::max(1.0 / 64.0, a / 512.0);
            ts.push_back(ts.back() + std::abs(logq(b) - logq(a)));
            tu.push_back(b);
        }
        std::size_t i = static_cast<std::size_t>(std::upper_bound(tu.begin(), tu.end(), lm) - tu.begin()) - 1;
        return ts[i] + std::abs(logq(lm) - logq(tu[i]));
    }

    double L_term(double u) {
        double t = std::exp(u);
        double u_ceil = u <= kExactIntegerLog ? std::log(std::ceil(t * (1 - 1e-13))) : u;
        double lm = u_ceil;
        if (std::isfinite(lh)) {
            double u_floor_h = lh <= kExactIntegerLog ? std::log(std::floor(std::exp(lh) * (1 + 1e-13))) : lh;
            if (!(u_floor_h >= 0)) throw std::logic_error("floor(h(R)) < 1 although k(R) <= h(R)");
            lm = std::min(lm, u_floor_h);
        }
        const auto& d = data;
        double L = 1.0 + std::max(0.0, logR);
        L += std::max(0.0, d.c_l.log_at_log(u_ceil) - d.c_phi.log_at_log(u_ceil));
        L += std::max(0.0, d.d_l.log_at_log(0.0) - d.d_phi.log_at_log(0.0));
        L += std::max(0.0, -logq(lm));
        L += telescope(lm);
        return L;
    }
};

BoundEvaluator::BoundEvaluator(const ComparisonData& data, double R) : impl_(std::make_unique<Impl>()) {
    data.validate();
    auto& m = *impl_;
    m.data = data;
    m.R = R;
    m.logR = std::log(R);
    if (!(R > 0)) throw DomainError("R must be positive");
    if (!(m.logR >= m.logq(0.0) - 1e-12)) throw DomainError("R below d_phi(1)/d_l(1)");
    m.k_ok = m.logR >= std::log(2.0) - m.LD(0.0) - 1e-12;
    m.lk = m.k_ok ? generalized_inverse_log([&m](double u) { return -m.LD(u); }, m.logR - std::log(2.0))
                  : std::numeric_limits<double>::quiet_NaN();
    m.lh = generalized_inverse_log([&m](double u) { return m.logq(u); }, m.logR);
}

BoundEvaluator::~BoundEvaluator() = default;
BoundEvaluator::BoundEvaluator(BoundEvaluator&&) noexcept = default;
BoundEvaluator& BoundEvaluator::operator=(BoundEvaluator&&) noexcept = default;

double BoundEvaluator::R() const { return impl_->R; }
double BoundEvaluator::log_k() const { return impl_->lk; }
double BoundEvaluator::log_h() const { return impl_->lh; }

double BoundEvaluator::g_density(double u) const {
    const auto& m = *impl_;
    m.require_k();
    if (u < m.lk) return m.logR + m.LD(u);
    if (u < m.lh) return safe_exp(0.5 * (m.logR + m.LD(u)));
    return safe_exp(m.logR + m.data.d_l.log_at_log(u));
}

double BoundEvaluator::g_integral(double u) {
    impl_->require_k();
    return impl_->g_integral(u);
}

double BoundEvaluator::log_rc(double u) const {
    const auto& d = impl_->data;
    return impl_->logR + 0.5 * (d.c_l.log_at_log(u) + d.c_phi.log_at_log(u));
}

double BoundEvaluator::L_term(double u) { return impl_->L_term(u); }

double BoundEvaluator::objective(double u) {
    return std::max(g_integral(u), safe_exp(log_rc(u))) + L_term(u);
}

double BoundEvaluator::solve_T_log(double rel_tol) {
    impl_->require_k();
    auto F = [this](double u) {
        double G = g_integral(u);
        return (G > 0 ? std::log(G) : -kInfinity) - log_rc(u);
    };
    double lo = 0.0, hi = 1.0;
    while (F(hi) < 0) {
        lo = hi;
        hi *= 2.0;
        if (hi > kMaxLogT)
            throw CapError("no crossing of g(t,R) and R (c_l c_phi)^{1/2}(t) below log t = " +
                           format_from_log(std::log(kMaxLogT)) + ": the bound is trivial (of order R)");
    }
    for (int it = 0; it < 300 && hi - lo > rel_tol * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (F(mid) < 0 ? lo : hi) = mid;
    }
    return std::abs(F(lo)) < std::abs(F(hi)) ? lo : hi;
}

// ---------------------------------------------------------------- plain wrappers

double k_of_R(const ComparisonData& data, double R) {
    BoundEvaluator ev(data, R);
    if (std::isnan(ev.log_k())) throw DomainError("R below 2/(d_l d_phi)(1)");
    return safe_exp(ev.log_k());
}

double h_of_R(const ComparisonData& data, double R) { return safe_exp(BoundEvaluator(data, R).log_h()); }

double g_integral(const ComparisonData& data, double t, double R) {
    if (!(t >= 1)) throw std::invalid_argument("g_integral needs t >= 1");
    return BoundEvaluator(data, R).g_integral(std::log(t));
}

double L_term(const ComparisonData& data, double t, double R) {
    if (!(t >= 1)) throw std::invalid_argument("L_term needs t >= 1");
    return BoundEvaluator(data, R).L_term(std::log(t));
}

double solve_T(const ComparisonData& data, double R, double tol) {
    return safe_exp(BoundEvaluator(data, R).solve_T_log(tol));
}

double lower_bound_log(const ComparisonFunction& d_l, const ComparisonFunction& d_phi, double R) {
    auto logD = [&](double u) { return -(d_l.log_at_log(u) + d_phi.log_at_log(u)); };
    double a = logD(std::log(1e3)), b = logD(std::log(1e6)), c = logD(std::log(1e12));
    if (!(a < b && b < c)) throw DomainError("1/(d_l d_phi) is not eventually increasing");
    return generalized_inverse_log(logD, std::log(R));
}

double lower_bound(const ComparisonFunction& d_l, const ComparisonFunction& d_phi, double R) {
    return safe_exp(lower_bound_log(d_l, d_phi, R));
}

// ---------------------------------------------------------------- the bound

double BoundReport::kR() const { return safe_exp(log_kR); }
double BoundReport::hR() const { return safe_exp(log_hR); }
double BoundReport::TR() const { return safe_exp(log_TR); }
double BoundReport::lower() const { return safe_exp(log_lower); }

namespace {

std::vector<double> t_grid(double u_max, int ppd) {
    // ppd points per decade of t up to t = 1e64, then ppd points per decade of log t.
    std::vector<double> us;
    const double du = std::log(10.0) / ppd, u_switch = 64.0 * std::log(10.0);
    for (int i = 0;; ++i) {
        double u = i * du;
        if (u > u_switch || u > u_max) break;
        us.push_back(u);
    }
    const double ratio = std::pow(10.0, 1.0 / ppd);
    for (double u = u_switch * ratio; u <= u_max; u *= ratio) us.push_back(u);
    if (us.empty() || us.back() < u_max) us.push_back(u_max);
    return us;
}

}  // namespace

BoundReport upper_bound_B(const ComparisonData& data, double R, BoundMode mode, const BoundOptions& options) {
    BoundEvaluator ev(data, R);
    BoundReport rep;
    rep.R = R;
    rep.mode = mode;
    rep.log_kR = ev.log_k();
    rep.log_hR = ev.log_h();
    rep.log_TR = ev.solve_T_log();
    const double uT = rep.log_TR;
    rep.g_at_T = ev.g_integral(uT);
    rep.RC_at_T = safe_exp(ev.log_rc(uT));
    rep.L_at_T = ev.L_term(uT);
    rep.log_t_star = uT;
    rep.B = std::max(rep.g_at_T, rep.RC_at_T) + rep.L_at_T;

    if (mode == BoundMode::grid_infimum) {
        // Past T the objective is at least g_integral + 1 + log+ R, which only grows, so the scan
        // can stop once that exceeds the best value found.
        const double floor_L = 1.0 + std::max(0.0, std::log(R));
        double u_max = std::max(uT + std::log(4.0), std::isfinite(rep.log_hR) ? rep.log_hR : 0.0);
        u_max = std::min(u_max, kMaxLogT);
        std::vector<double> us = t_grid(u_max, options.points_per_decade);
        std::vector<double> vals;
        double best = rep.B, best_u = uT;
        for (double u : us) {
            double v = ev.objective(u);
            vals.push_back(v);
            if (v < best) {
                best = v;
                best_u = u;
            }
            if (u > uT && ev.g_integral(u) + floor_L >= best) break;
        }
        if (options.golden_refine && best_u != uT) {
            auto it = std::lower_bound(us.begin(), us.end(), best_u);
            std::size_t i = static_cast<std::size_t>(it - us.begin());
            double a = i > 0 ? us[i - 1] : us[i], b = i + 1 < us.size() ? us[i + 1] : us[i];
            const double phi = (std::sqrt(5.0) - 1) / 2;
            double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
            double f1 = ev.objective(x1), f2 = ev.objective(x2);
            for (int k = 0; k < 60 && b - a > 1e-12 * std::max(1.0, b); ++k) {
                if (f1 <= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = ev.objective(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = ev.objective(x2);
                }
            }
            double xm = f1 <= f2 ? x1 : x2, fm = std::min(f1, f2);
            if (fm < best) {
                best = fm;
                best_u = xm;
            }
        }
        rep.B = best;
        rep.log_t_star = best_u;
    }
    rep.B_upper = 9.0 * rep.B;
    try {
        rep.log_lower = lower_bound_log(data.d_l, data.d_phi, R);
    } catch (const DomainError&) {
        rep.log_lower = std::numeric_limits<double>::quiet_NaN();
    }
    rep.trivial = rep.B_upper >= R;
    rep.small_R = uT < std::log(2.0);
    return rep;
}

SandwichResult verify_bound_sandwich(const HamburgerHamiltonian& H, const ComparisonData& data,
                                     const std::vector<double>& radii, double eps, std::size_t N_check) {
    SandwichResult res;
    res.majorization = check_majorization(H, data, N_check);
    const ComparisonData& d = res.majorization.rescaled;
    for (double R : radii) {
        BoundReport rep;
        try {
            rep = upper_bound_B(d, R, BoundMode::grid_infimum);
        } catch (const DomainError& e) {
            res.failures.push_back("R = " + std::to_string(R) + ": " + e.what());
            continue;
        }
        CircleMax cm = log_max_on_circle(H, R, 64, eps);
        rep.logM = cm.logM;
        rep.margin_upper = rep.B_upper - cm.logM;
        SandwichRow row{rep, *rep.margin_upper, cm.logM / rep.lower(), *rep.margin_upper >= -eps, cm.N,
                        cm.trunc_eps};
        if (!row.upper_ok) {
            std::ostringstream os;
            os << "R = " << R << ": upper bound " << rep.B_upper << " below measured log M " << cm.logM;
            res.failures.push_back(os.str());
        }
        res.rows.push_back(row);
    }
    return res;
}

// ---------------------------------------------------------------- output

std::string format_from_log(double logv) {
    if (std::isnan(logv)) return "nan";
    if (logv == kInfinity) return "inf";
    if (logv == -kInfinity) return "0";
    char buf[64];
    if (logv < kLogDoubleMax) {
        std::snprintf(buf, sizeof buf, "%.10g", std::exp(logv));
    } else {
        double e10 = logv / std::log(10.0);
        double ex = std::floor(e10);
        double mant = std::pow(10.0, e10 - ex);
        if (mant >= 10.0 - 5e-9) {
            mant /= 10.0;
            ex += 1;
        }
        std::snprintf(buf, sizeof buf, "%.9fe+%.0f", mant, ex);
    }
    return buf;
}

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

nlohmann::json json_value(double v) {
    if (std::isfinite(v)) return v;
    return fmt(v);
}

nlohmann::json json_from_log(double logv) {
    if (std::isfinite(logv) && logv < kLogDoubleMax) return std::exp(logv);
    return format_from_log(logv);
}

}  // namespace

void write_bound_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
    out << "R,kR,hR,TR,gT,RCinvT,LT,B_upper,lower_Dinv,logM,margin_upper\n";
    for (const auto& r : reports) {
        out << fmt(r.R) << ',' << format_from_log(r.log_kR) << ',' << format_from_log(r.log_hR) << ','
            << format_from_log(r.log_TR) << ',' << fmt(r.g_at_T) << ',' << fmt(r.RC_at_T) << ',' << fmt(r.L_at_T)
            << ',' << fmt(r.B_upper) << ',' << format_from_log(r.log_lower) << ',' << (r.logM ? fmt(*r.logM) : "")
            << ',' << (r.margin_upper ? fmt(*r.margin_upper) : "") << '\n';
    }
}

std::string bound_report_json(const std::vector<BoundReport>& reports, int indent) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["R"] = r.R;
        j["kR"] = json_from_log(r.log_kR);
        j["hR"] = json_from_log(r.log_hR);
        j["TR"] = json_from_log(r.log_TR);
        j["log_kR"] = json_value(r.log_kR);
        j["log_hR"] = json_value(r.log_hR);
        j["log_TR"] = json_value(r.log_TR);
        j["log_t_star"] = json_value(r.log_t_star);
        j["gT"] = json_value(r.g_at_T);
        j["RCinvT"] = json_value(r.RC_at_T);
        j["LT"] = json_value(r.L_at_T);
        j["B"] = json_value(r.B);
        j["B_upper"] = json_value(r.B_upper);
        j["lower_Dinv"] = json_from_log(r.log_lower);
        j["logM"] = r.logM ? json_value(*r.logM) : nlohmann::json(nullptr);
        j["margin_upper"] = r.margin_upper ? json_value(*r.margin_upper) : nlohmann::json(nullptr);
        j["mode"] = r.mode == BoundMode::at_T ? "at_T" : "grid_infimum";
        j["trivial"] = r.trivial;
        j["small_R"] = r.small_R;
        arr.push_back(j);
    }
    return arr.dump(indent);
}

}  // namespace nevbound
