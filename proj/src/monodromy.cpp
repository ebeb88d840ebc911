#include "nevbound/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "nevbound/errors.hpp"
#include "nevbound/parallel.hpp"

namespace nevbound {

double Mat2::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

double spectral_norm(const Mat2& m) {
    double F = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
    double dt = std::abs(m.det());
    return std::sqrt(0.5 * (F + std::sqrt(std::max(0.0, F * F - 4.0 * dt * dt))));
}

void ScaledMat2::normalize() {
    double mx = entries.max_abs();
    if (!(mx > 0) || !std::isfinite(mx)) return;
    int e;
    std::frexp(mx, &e);
    auto shrink = [e](Complex x) { return Complex(std::ldexp(x.real(), -e), std::ldexp(x.imag(), -e)); };
    entries = {shrink(entries.a), shrink(entries.b), shrink(entries.c), shrink(entries.d)};
    logscale += e * std::numbers::ln2;
}

double ScaledMat2::log_norm() const { return logscale + std::log(spectral_norm(entries)); }

Mat2 ScaledMat2::value() const {
    double s = std::exp(logscale);
    return {entries.a * s, entries.b * s, entries.c * s, entries.d * s};
}

double ScaledMat2::determinant_defect() const {
    double mx = entries.max_abs();
    return std::abs(entries.det() - std::exp(-2.0 * logscale)) / (mx * mx);
}

ScaledMat2 operator*(const ScaledMat2& x, const ScaledMat2& y) {
    ScaledMat2 r{x.entries * y.entries, x.logscale + y.logscale};
    r.normalize();
    return r;
}

Mat2 transfer_matrix(double l, double phi, Complex z) {
    if (!(l > 0)) throw std::invalid_argument("transfer_matrix needs l > 0");
    double c = std::cos(phi), s = std::sin(phi);
    Complex w = z * l;
    return {1.0 + w * (c * s), -w * (c * c), w * (s * s), 1.0 - w * (c * s)};
}

Mat2 omega_matrix(double a, double psi) {
    if (!(a > 0)) throw std::invalid_argument("omega_matrix needs a > 0");
    double c = std::cos(psi), s = std::sin(psi);
    return {a * c, a * s, -s / a, c / a};
}

FactorTable make_factor_table(const HamburgerHamiltonian& H, std::size_t N) {
    if (N > H.size()) throw std::out_of_range("truncation beyond the stored Hamiltonian");
    FactorTable t;
    t.l.resize(N);
    t.c.resize(N);
    t.s.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        t.l[j] = H.length(j + 1);
        double phi = H.angle(j + 1);
        t.c[j] = std::cos(phi);
        t.s[j] = std::sin(phi);
    }
    return t;
}

ScaledMat2 factor_product(const FactorTable& table, std::size_t begin, std::size_t end, Complex z) {
    if (begin > end || end > table.size()) throw std::out_of_range("factor range outside the table");
    // Row vectors times (I + z l xi (s, -c)), with real and imaginary parts kept apart.
    double ar = 1, ai = 0, br = 0, bi = 0, cr = 0, ci = 0, dr = 1, di = 0;
    double logscale = 0.0;
    const double zr0 = z.real(), zi0 = z.imag();
    constexpr double big = 0x1p256;
    for (std::size_t j = begin; j < end; ++j) {
        const double c = table.c[j], s = table.s[j], l = table.l[j];
        const double zr = zr0 * l, zi = zi0 * l;
        // v = M xi, w = z l v
        double v0r = ar * c + br * s, v0i = ai * c + bi * s;
        double v1r = cr * c + dr * s, v1i = ci * c + di * s;
        double w0r = zr * v0r - zi * v0i, w0i = zr * v0i + zi * v0r;
        double w1r = zr * v1r - zi * v1i, w1i = zr * v1i + zi * v1r;
        ar += w0r * s;
        ai += w0i * s;
        br -= w0r * c;
        bi -= w0i * c;
        cr += w1r * s;
        ci += w1i * s;
        dr -= w1r * c;
        di -= w1i * c;
        double mx = std::max({std::abs(ar), std::abs(ai), std::abs(br), std::abs(bi), std::abs(cr), std::abs(ci),
                              std::abs(dr), std::abs(di)});
        if (mx > big) {
            int e;
            std::frexp(mx, &e);
            for (double* p : {&ar, &ai, &br, &bi, &cr, &ci, &dr, &di}) *p = std::ldexp(*p, -e);
            logscale += e * std::numbers::ln2;
        }
    }
    ScaledMat2 r{{{ar, ai}, {br, bi}, {cr, ci}, {dr, di}}, logscale};
    r.normalize();
    return r;
}

ScaledMat2 monodromy_prefix(const HamburgerHamiltonian& H, std::size_t N, Complex z) {
    if (N == 0) return {};
    return factor_product(make_factor_table(H, N), 0, N, z);
}

namespace {

double tail_bound_log(double log_cl, double log_cphi, double R) {
    if (log_cphi > log_cl + 1e-12 * std::max(1.0, std::abs(log_cl)))
        throw std::invalid_argument("tail_bound needs c_phi <= c_l");
    log_cphi = std::min(log_cphi, log_cl);
    return 0.5 * (log_cl - log_cphi) + 2.0 * R * std::exp(0.5 * (log_cl + log_cphi));
}

}  // namespace

double tail_bound(const ComparisonFunction& c_l, const ComparisonFunction& c_phi, double N, double R) {
    double u = std::log(N);
    return tail_bound_log(c_l.log_at_log(u), c_phi.log_at_log(u), R);
}

double truncation_error(const ComparisonFunction& c_l, const ComparisonFunction& c_phi, double N, double R) {
    double u = std::log(N);
    double lcl = c_l.log_at_log(u);
    return std::min(tail_bound_log(lcl, c_phi.log_at_log(u), R), tail_bound_log(lcl, lcl, R));
}

std::size_t choose_truncation(const ComparisonFunction& c_l, const ComparisonFunction& c_phi, double R, double eps,
                              std::size_t cap) {
    if (!(eps > 0)) throw std::invalid_argument("truncation tolerance must be positive");
    auto ok = [&](std::size_t N) { return truncation_error(c_l, c_phi, double(N), R) <= eps; };
    if (ok(1)) return 1;
    std::size_t hi = 2;
    while (!ok(hi)) {
        if (hi >= cap) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "no truncation N <= %zu reaches tail bound %.3g at R = %.6g (bound %.3g)",
                          cap, eps, R, truncation_error(c_l, c_phi, double(cap), R));
            throw CapError(buf);
        }
        hi = std::min(cap, hi * 2);
    }
    std::size_t lo = hi / 2;  // !ok(lo)
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

namespace {

CircleMax circle_max(const FactorTable& table, std::size_t N, double R, std::size_t K, double eps,
                     std::size_t K_max) {
    if (K < 8) throw std::invalid_argument("need at least 8 angle subdivisions");
    CircleMax out;
    out.R = R;
    out.N = N;
    if (R == 0.0 || N == 0) {
        out.K = K;
        return out;
    }
    auto eval = [&](std::size_t k, std::size_t KK) {
        double theta = std::numbers::pi * double(k) / double(KK);
        return factor_product(table, 0, N, std::polar(R, theta)).log_norm();
    };
    std::vector<double> vals(K + 1);
    parallel_for(K + 1, [&](std::size_t k) { vals[k] = eval(k, K); });
    double best = *std::max_element(vals.begin(), vals.end());
    while (K < K_max) {
        std::size_t K2 = 2 * K;
        std::vector<double> odd(K);
        parallel_for(K, [&](std::size_t i) { odd[i] = eval(2 * i + 1, K2); });
        double best2 = std::max(best, *std::max_element(odd.begin(), odd.end()));
        K = K2;
        bool done = best2 - best < eps / 4;
        best = best2;
        if (done) break;
    }
    out.logM = best;
    out.K = K;
    return out;
}

std::size_t truncation_for(const HamburgerHamiltonian& H, double R, double eps, double* trunc_eps) {
    *trunc_eps = 0.0;
    if (H.is_exactly_finite()) return H.size();
    const auto& tail = *H.tail();
    std::size_t cap = H.is_generated() ? std::size_t(10'000'000) : H.size();
    std::size_t N = choose_truncation(tail.c_l, tail.c_phi, R, eps, cap);
    *trunc_eps = truncation_error(tail.c_l, tail.c_phi, double(N), R);
    return N;
}

}  // namespace

CircleMax log_max_on_circle(const FactorTable& table, double R, std::size_t K, double eps, std::size_t K_max) {
    return circle_max(table, table.size(), R, K, eps, K_max);
}

CircleMax log_max_on_circle(const HamburgerHamiltonian& H, double R, std::size_t K, double eps, std::size_t K_max) {
    if (!(R >= 0)) throw std::invalid_argument("radius must be nonnegative");
    double te;
    std::size_t N = R == 0.0 ? 0 : truncation_for(H, R, eps, &te);
    CircleMax out = circle_max(make_factor_table(H, N), N, R, K, eps, K_max);
    out.trunc_eps = R == 0.0 ? 0.0 : te;
    return out;
}

double order_estimate(const std::vector<double>& R, const std::vector<double>& logM) {
    if (R.size() != logM.size()) throw std::invalid_argument("radii and values differ in size");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = R.size() / 2; i < R.size(); ++i)
        if (logM[i] > 0) pts.emplace_back(std::log(R[i]), std::log(logM[i]));
    if (pts.size() < 2) throw std::invalid_argument("order estimate needs two radii with log M > 0");
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= double(pts.size());
    my /= double(pts.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

GrowthProfile growth_profile(const HamburgerHamiltonian& H, const std::vector<double>& radii, double eps,
                             std::size_t K) {
    if (radii.size() < 2 || !std::is_sorted(radii.begin(), radii.end()))
        throw std::invalid_argument("growth profile needs an increasing grid of radii");
    GrowthProfile gp;
    std::vector<std::size_t> Ns(radii.size());
    std::vector<double> eps_used(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) Ns[i] = truncation_for(H, radii[i], eps, &eps_used[i]);
    FactorTable table = make_factor_table(H, *std::max_element(Ns.begin(), Ns.end()));
    std::vector<double> R, lm;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CircleMax cm = circle_max(table, Ns[i], radii[i], K, eps, 4096);
        cm.trunc_eps = eps_used[i];
        gp.points.push_back(cm);
        R.push_back(cm.R);
        lm.push_back(cm.logM);
    }
    gp.rho = order_estimate(R, lm);
    std::vector<double> types;
    for (const auto& p : gp.points)
        if (p.R >= radii.back() / 10.0) types.push_back(p.logM / std::pow(p.R, gp.rho));
    std::nth_element(types.begin(), types.begin() + types.size() / 2, types.end());
    gp.type_summary = types[types.size() / 2];
    return gp;
}

void write_growth_csv(std::ostream& out, const GrowthProfile& profile) {
    out << "R,logM,N_trunc,trunc_eps,K_angles\n";
    char buf[160];
    for (const auto& p : profile.points) {
        std::snprintf(buf, sizeof buf, "%.10g,%.12g,%zu,%.6g,%zu\n", p.R, p.logM, p.N, p.trunc_eps, p.K);
        out << buf;
    }
}

}  // namespace nevbound
