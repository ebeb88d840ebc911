#include "nevbound/regvar.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nevbound/errors.hpp"

namespace nevbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<double> add_opt(const std::optional<double>& a, const std::optional<double>& b) {
    if (a && b) return *a + *b;
    return std::nullopt;
}

Monotonicity flip(Monotonicity m) {
    switch (m) {
        case Monotonicity::nonincreasing: return Monotonicity::nondecreasing;
        case Monotonicity::nondecreasing: return Monotonicity::nonincreasing;
        default: return Monotonicity::none;
    }
}

Monotonicity combine_product(Monotonicity a, Monotonicity b) {
    return a == b ? a : Monotonicity::none;
}

}  // namespace

// ---------------------------------------------------------------- PowerLog

PowerLog::PowerLog(double c, double a, double b) : coefficient(c), power(a), logpower(b) {
    if (!(c > 0) || !std::isfinite(c)) throw std::invalid_argument("power-log coefficient must be positive");
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("power-log exponents must be finite");
}

double PowerLog::domain_start() const { return logpower == 0.0 ? 1.0 : std::numbers::e; }

double PowerLog::operator()(double t) const {
    if (!(t >= domain_start()) && !(logpower != 0.0 && t == std::numbers::e))
        throw DomainError("power-log evaluated below its domain start");
    double v = coefficient * std::pow(t, power);
    return logpower == 0.0 ? v : v * std::pow(std::log(t), logpower);
}

double PowerLog::log_at_log(double u) const {
    if (logpower == 0.0) return std::log(coefficient) + power * std::max(u, 0.0);
    double uu = std::max(u, 1.0);
    return std::log(coefficient) + power * uu + logpower * std::log(uu);
}

PowerLog PowerLog::pow(double r) const { return PowerLog(std::pow(coefficient, r), power * r, logpower * r); }

PowerLog operator*(const PowerLog& f, const PowerLog& g) {
    return PowerLog(f.coefficient * g.coefficient, f.power + g.power, f.logpower + g.logpower);
}

PowerLog operator/(const PowerLog& f, const PowerLog& g) {
    return PowerLog(f.coefficient / g.coefficient, f.power - g.power, f.logpower - g.logpower);
}

AsymptoticInverse::AsymptoticInverse(const PowerLog& f) : f_(f) {
    if (!(f.power > 0)) throw std::invalid_argument("asymptotic inverse requires a positive power");
    double rho = f.power, b = f.logpower;
    leading_ = PowerLog(std::pow(rho, b / rho) * std::pow(f.coefficient, -1.0 / rho), 1.0 / rho, -b / rho);
}

double AsymptoticInverse::operator()(double x) const {
    double t = leading_.coefficient * std::pow(x, leading_.power) *
               (leading_.logpower == 0.0 ? 1.0 : std::pow(std::log(std::max(x, std::numbers::e)), leading_.logpower));
    if (f_.logpower == 0.0) return std::pow(x / f_.coefficient, 1.0 / f_.power);
    for (int i = 0; i < 200; ++i) {
        double lt = std::log(std::max(t, std::numbers::e));
        double next = std::pow(x / (f_.coefficient * std::pow(lt, f_.logpower)), 1.0 / f_.power);
        if (std::abs(next - t) <= 1e-15 * next) return next;
        t = next;
    }
    return t;
}

AsymptoticInverse pl_asymptotic_inverse(const PowerLog& f) { return AsymptoticInverse(f); }

// ---------------------------------------------------------------- ComparisonFunction

struct ComparisonFunction::Impl {
    LogForm logf;
    std::function<double(double)> valf;  // optional direct evaluation
    std::optional<double> index;
    Monotonicity mono = Monotonicity::none;
    std::optional<PowerLog> pl;
    std::string description;
};

ComparisonFunction::ComparisonFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

ComparisonFunction::ComparisonFunction() : ComparisonFunction(constant(1.0)) {}

ComparisonFunction ComparisonFunction::constant(double c) {
    if (!(c > 0)) throw std::invalid_argument("comparison functions are positive");
    auto impl = std::make_shared<Impl>();
    double lc = std::log(c);
    impl->logf = [lc](double) { return lc; };
    impl->valf = [c](double) { return c; };
    impl->index = 0.0;
    impl->mono = Monotonicity::nonincreasing;
    impl->pl = PowerLog(c, 0.0, 0.0);
    std::ostringstream os;
    os << c;
    impl->description = os.str();
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::powerlog(const PowerLog& f) {
    auto impl = std::make_shared<Impl>();
    impl->logf = [f](double u) { return f.log_at_log(u); };
    impl->index = f.power;
    // Monotone on the whole domain when power and log power agree in sign.
    if (f.power <= 0 && f.logpower <= 0)
        impl->mono = Monotonicity::nonincreasing;
    else if (f.power >= 0 && f.logpower >= 0)
        impl->mono = Monotonicity::nondecreasing;
    impl->pl = f;
    std::ostringstream os;
    os << "powerlog(" << f.coefficient << "," << f.power << "," << f.logpower << ")";
    impl->description = os.str();
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::from_values(std::function<double(double)> f, std::optional<double> index,
                                                   Monotonicity mono, std::string description) {
    auto impl = std::make_shared<Impl>();
    impl->valf = f;
    impl->logf = [f](double u) { return std::log(f(std::exp(u))); };
    impl->index = index;
    impl->mono = mono;
    impl->description = std::move(description);
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::from_log_form(LogForm logf, std::optional<double> index, Monotonicity mono,
                                                     std::string description) {
    auto impl = std::make_shared<Impl>();
    impl->logf = std::move(logf);
    impl->index = index;
    impl->mono = mono;
    impl->description = std::move(description);
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::tabulated(std::vector<double> t, std::vector<double> f, std::string description) {
    if (t.size() < 2 || t.size() != f.size()) throw std::invalid_argument("tabulated function needs >= 2 (t, f) rows");
    std::vector<double> u(t.size()), lf(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] >= 1.0)) throw std::invalid_argument("tabulated t must be >= 1");
        if (!(f[i] > 0)) throw std::invalid_argument("tabulated values must be positive");
        if (i > 0 && !(t[i] > t[i - 1])) throw std::invalid_argument("tabulated t must be strictly increasing");
        u[i] = std::log(t[i]);
        lf[i] = std::log(f[i]);
    }
    bool dec = true, inc = true;
    for (std::size_t i = 1; i < lf.size(); ++i) {
        dec = dec && lf[i] <= lf[i - 1];
        inc = inc && lf[i] >= lf[i - 1];
    }
    std::size_t n = u.size();
    double last_slope = (lf[n - 1] - lf[n - 2]) / (u[n - 1] - u[n - 2]);
    auto impl = std::make_shared<Impl>();
    impl->logf = [u, lf, last_slope](double x) {
        if (x <= u.front()) return lf.front();
        if (x >= u.back()) return lf.back() + last_slope * (x - u.back());
        auto it = std::upper_bound(u.begin(), u.end(), x);
        std::size_t i = static_cast<std::size_t>(it - u.begin());
        double w = (x - u[i - 1]) / (u[i] - u[i - 1]);
        return lf[i - 1] + w * (lf[i] - lf[i - 1]);
    };
    if (n >= 8 && t.back() >= 1000.0 * t.front()) {
        std::vector<std::pair<double, double>> s;
        for (std::size_t i = 0; i < n; ++i) s.emplace_back(t[i], f[i]);
        impl->index = index_estimate(s);
    } else {
        impl->index = last_slope;
    }
    impl->mono = dec ? Monotonicity::nonincreasing : (inc ? Monotonicity::nondecreasing : Monotonicity::none);
    impl->description = std::move(description);
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::tabulated_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::vector<double> t, f;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a >> b)) continue;  // header row
        t.push_back(a);
        f.push_back(b);
    }
    return tabulated(std::move(t), std::move(f), "tabulated(" + path + ")");
}

double ComparisonFunction::operator()(double t) const {
    if (!(t >= 1.0)) throw DomainError("comparison function evaluated below 1");
    if (impl_->valf) return impl_->valf(t);
    return std::exp(impl_->logf(std::log(t)));
}

double ComparisonFunction::log_at_log(double u) const { return impl_->logf(std::max(u, 0.0)); }

const std::optional<double>& ComparisonFunction::index() const { return impl_->index; }
Monotonicity ComparisonFunction::monotonicity() const { return impl_->mono; }
const std::optional<PowerLog>& ComparisonFunction::as_powerlog() const { return impl_->pl; }
const std::string& ComparisonFunction::description() const { return impl_->description; }

ComparisonFunction ComparisonFunction::scaled(double alpha) const {
    if (!(alpha > 0)) throw std::invalid_argument("scale factor must be positive");
    auto impl = std::make_shared<Impl>(*impl_);
    double la = std::log(alpha);
    auto base = impl_;
    impl->logf = [base, la](double u) { return base->logf(u) + la; };
    if (base->valf) impl->valf = [base, alpha](double t) { return alpha * base->valf(t); };
    if (base->pl) impl->pl = PowerLog(base->pl->coefficient * alpha, base->pl->power, base->pl->logpower);
    std::ostringstream os;
    os << "scaled(" << base->description << "," << alpha << ")";
    impl->description = os.str();
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::capped(double alpha) const {
    if (!(alpha > 0)) throw std::invalid_argument("cap must be positive");
    auto impl = std::make_shared<Impl>(*impl_);
    double la = std::log(alpha);
    auto base = impl_;
    impl->logf = [base, la](double u) { return std::min(base->logf(u), la); };
    if (base->valf) impl->valf = [base, alpha](double t) { return std::min(base->valf(t), alpha); };
    impl->pl.reset();
    std::ostringstream os;
    os << "min(" << base->description << "," << alpha << ")";
    impl->description = os.str();
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::pow(double r) const {
    auto impl = std::make_shared<Impl>();
    auto base = impl_;
    impl->logf = [base, r](double u) { return r * base->logf(u); };
    if (base->index) impl->index = *base->index * r;
    impl->mono = r > 0 ? base->mono : (r < 0 ? flip(base->mono) : Monotonicity::nonincreasing);
    if (base->pl) impl->pl = base->pl->pow(r);
    std::ostringstream os;
    os << "(" << base->description << ")^" << r;
    impl->description = os.str();
    return ComparisonFunction(impl);
}

ComparisonFunction ComparisonFunction::reciprocal() const { return pow(-1.0); }

ComparisonFunction ComparisonFunction::with_monotonicity(Monotonicity mono) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->mono = mono;
    return ComparisonFunction(impl);
}

ComparisonFunction operator*(const ComparisonFunction& f, const ComparisonFunction& g) {
    auto impl = std::make_shared<ComparisonFunction::Impl>();
    auto a = f.impl_, b = g.impl_;
    impl->logf = [a, b](double u) { return a->logf(u) + b->logf(u); };
    impl->index = add_opt(a->index, b->index);
    impl->mono = combine_product(a->mono, b->mono);
    if (a->pl && b->pl) impl->pl = *a->pl * *b->pl;
    impl->description = "(" + a->description + ")*(" + b->description + ")";
    return ComparisonFunction(impl);
}

ComparisonFunction operator/(const ComparisonFunction& f, const ComparisonFunction& g) {
    return f * g.reciprocal();
}

ComparisonFunction pointwise_min(const ComparisonFunction& f, const ComparisonFunction& g) {
    auto impl = std::make_shared<ComparisonFunction::Impl>();
    auto a = f.impl_, b = g.impl_;
    impl->logf = [a, b](double u) { return std::min(a->logf(u), b->logf(u)); };
    if (a->index && b->index) impl->index = std::min(*a->index, *b->index);
    impl->mono = combine_product(a->mono, b->mono);
    impl->description = "min(" + a->description + "," + b->description + ")";
    return ComparisonFunction(impl);
}

// ---------------------------------------------------------------- expression grammar

namespace {

class ExprParser {
public:
    ExprParser(std::string text, std::string base) : s_(std::move(text)), base_(std::move(base)) {}

    ComparisonFunction parse() {
        ComparisonFunction f = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("comparison function '" + s_ + "': " + msg + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string ident() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected a name");
        return s_.substr(start, pos_ - start);
    }
    double number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        std::string tok = s_.substr(start, pos_ - start);
        if (tok == "inf" || tok == "+inf") return kInf;
        if (tok == "-inf") return -kInf;
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) fail("bad number '" + tok + "'");
            return v;
        } catch (const std::logic_error&) {
            fail("bad number '" + tok + "'");
        }
    }
    std::string path() {
        skip();
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size() && !(depth == 0 && s_[pos_] == ')')) {
            if (s_[pos_] == '(') ++depth;
            if (s_[pos_] == ')') --depth;
            ++pos_;
        }
        std::string p = s_.substr(start, pos_ - start);
        while (!p.empty() && std::isspace(static_cast<unsigned char>(p.back()))) p.pop_back();
        if (p.size() >= 2 && (p.front() == '"' || p.front() == '\'')) p = p.substr(1, p.size() - 2);
        if (p.empty()) fail("expected a path");
        return p;
    }
    ComparisonFunction expr() {
        std::string name = ident();
        expect('(');
        ComparisonFunction out;
        if (name == "powerlog") {
            double c = number();
            expect(',');
            double a = number();
            double b = 0.0;
            skip();
            if (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                b = number();
            }
            try {
                out = ComparisonFunction::powerlog(c, a, b);
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        } else if (name == "tabulated") {
            std::filesystem::path p = path();
            if (p.is_relative()) p = std::filesystem::path(base_) / p;
            try {
                out = ComparisonFunction::tabulated_csv(p.string());
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        } else if (name == "scaled" || name == "min") {
            ComparisonFunction inner = expr();
            expect(',');
            double alpha = number();
            if (!(alpha > 0)) fail("factor must be positive");
            out = name == "scaled" ? inner.scaled(alpha) : (std::isinf(alpha) ? inner : inner.capped(alpha));
        } else {
            fail("unknown function '" + name + "'");
        }
        expect(')');
        return out;
    }

    std::string s_;
    std::string base_;
    std::size_t pos_ = 0;
};

}  // namespace

ComparisonFunction parse_comparison_function(const std::string& expr, const std::string& base_dir) {
    return ExprParser(expr, base_dir).parse();
}

// ---------------------------------------------------------------- quadrature

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    // Slivers of rounding width: adaptive refinement cannot reach a relative tolerance there.
    if (b - a <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)))) return f(0.5 * (a + b)) * (b - a);
    // The library's error estimate does not shrink with the interval width, so short intervals
    // would never meet a relative tolerance; integrate on [0, 1] instead.
    const double w = b - a;
    auto g = [&f, a, w](double x) { return f(a + w * x); };
    double err = 0.0;
    return w * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 20, rel_tol, &err);
}

double integrate_log_form(const ComparisonFunction::LogForm& logf, double ua, double ub, double rel_tol) {
    if (!(ub > ua)) return 0.0;
    // Split long ranges so that each panel sees a moderate change of the integrand.
    double total = 0.0;
    double width = ub - ua;
    int panels = static_cast<int>(std::min(4096.0, std::ceil(width / 8.0)));
    panels = std::max(panels, 1);
    double h = width / panels;
    for (int i = 0; i < panels; ++i) {
        double a = ua + i * h, b = (i + 1 == panels) ? ub : ua + (i + 1) * h;
        // Each panel is scaled by its largest sampled value, keeping the integrand out of the subnormal range.
        const double la = logf(a), lb = logf(b);
        double shift = std::max({la + a, logf(0.5 * (a + b)) + 0.5 * (a + b), lb + b});
        if (!std::isfinite(shift)) shift = 0.0;
        // Panels that underflow or fall below rounding of the running total do not change it.
        const double log_size = shift + std::log(b - a);
        if (log_size < -745.0 || (total > 0 && log_size < std::log(total) - 40.0)) continue;
        // Far out, rounding in log f alone exceeds a tight relative tolerance.
        double noise = 64 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b));
        if (std::isfinite(la) && std::isfinite(lb)) noise += 64 * std::numeric_limits<double>::epsilon() * (std::abs(la) + std::abs(lb));
        auto integrand = [&logf, shift](double u) { return std::exp(logf(u) + u - shift); };
        total += std::exp(shift) * integrate(integrand, a, b, std::max(rel_tol, noise));
    }
    return total;
}

namespace {

// Local regular-variation index of f near e^u from a log-log secant.
double local_index(const ComparisonFunction& f, double u) {
    double du = std::max(1.0, 0.5 * u);
    return (f.log_at_log(u + du) - f.log_at_log(u)) / du;
}

}  // namespace

double karamata_tail_log(const ComparisonFunction& f, double u) {
    const double u_cut = std::max(u, std::log(1e6));
    const double alpha = f.index() ? *f.index() : local_index(f, u_cut);
    auto logf = [&f](double x) { return f.log_at_log(x); };
    if (alpha > -1.0 + 1e-9) throw DivergenceError("tail integral of a function with index > -1 diverges");
    if (alpha >= -1.0 - 1e-9) {
        // Index -1: F(u) = f(e^u) e^u is regularly varying in u, so apply Karamata in u instead.
        auto logF = [&logf](double x) { return logf(x) + x; };
        double beta = f.as_powerlog() ? f.as_powerlog()->logpower
                                      : (logF(2.0 * u_cut) - logF(u_cut)) / std::log(2.0);
        if (!(beta < -1.0)) throw DivergenceError("tail integral diverges (index -1, slowly varying factor)");
        double far = u_cut * 1e3;
        return integrate_log_form(logf, u, far) + far * std::exp(logF(far)) / (-(beta + 1.0));
    }
    return integrate_log_form(logf, u, u_cut) + std::exp(logf(u_cut) + u_cut) / (-(alpha + 1.0));
}

double karamata_integral(const ComparisonFunction& f, double t, IntegralDirection direction) {
    if (!(t >= 1.0)) throw DomainError("integral bound below 1");
    if (direction == IntegralDirection::head)
        return integrate_log_form([&f](double x) { return f.log_at_log(x); }, 0.0, std::log(t));
    return karamata_tail_log(f, std::log(t));
}

// ---------------------------------------------------------------- generalized inverse

double generalized_inverse_log(const ComparisonFunction::LogForm& logf, double log_y) {
    auto ok = [&](double u) {
        double v = logf(u);
        if (std::isnan(v)) throw RangeError("generalized inverse: function not evaluable at log t = " + std::to_string(u));
        return v <= log_y;
    };
    if (!ok(0.0)) return 0.0;
    const double u_cap = 1e12;
    const double ln2 = std::log(2.0);
    const int refine = 16;
    double u_prev = 0.0;
    while (true) {
        double u_next = u_prev < 32.0 * ln2 ? u_prev + ln2 : 2.0 * u_prev;
        if (u_next > u_cap) return kInf;
        double last_ok = u_prev;
        for (int i = 1; i <= refine; ++i) {
            double u = u_prev + (u_next - u_prev) * i / refine;
            if (!ok(u)) {
                double lo = last_ok, hi = u;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (ok(mid))
                        lo = mid;
                    else
                        hi = mid;
                }
                return lo;
            }
            last_ok = u;
        }
        u_prev = u_next;
    }
}

double generalized_inverse(const ComparisonFunction& f, double y) {
    if (!(y > 0)) return 1.0;
    double lu = generalized_inverse_log([&f](double u) { return f.log_at_log(u); }, std::log(y));
    return std::isinf(lu) ? kInf : std::exp(lu);
}

// ---------------------------------------------------------------- smoothening

ComparisonFunction nonincreasing_smoothening(const ComparisonFunction& f, double t_max, int points_per_decade) {
    if (f.index() && *f.index() > 0)
        throw std::invalid_argument("smoothening requires a declared index <= 0");
    std::vector<double> grid = geometric_grid(1.0, t_max, points_per_decade);
    std::vector<double> u(grid.size()), lv(grid.size());
    double running = kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        u[i] = std::log(grid[i]);
        running = std::min(running, f.log_at_log(u[i]));
        lv[i] = running;
    }
    std::size_t n = u.size();
    double tail_slope = std::min(0.0, (lv[n - 1] - lv[n - 2]) / (u[n - 1] - u[n - 2]));
    auto logf = [u, lv, tail_slope](double x) {
        if (x <= u.front()) return lv.front();
        if (x >= u.back()) return lv.back() + tail_slope * (x - u.back());
        auto it = std::upper_bound(u.begin(), u.end(), x);
        std::size_t i = static_cast<std::size_t>(it - u.begin());
        double w = (x - u[i - 1]) / (u[i] - u[i - 1]);
        return lv[i - 1] + w * (lv[i] - lv[i - 1]);
    };
    return ComparisonFunction::from_log_form(logf, f.index(), Monotonicity::nonincreasing,
                                             "smoothening(" + f.description() + ")");
}

// ---------------------------------------------------------------- index estimate

double index_estimate(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 8) throw std::invalid_argument("index_estimate: at least 8 samples required");
    double tmin = kInf, tmax = 0.0;
    for (const auto& [t, v] : samples) {
        if (!(t > 0) || !(v > 0)) throw std::invalid_argument("index_estimate: samples must be positive");
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    if (tmax < 999.999 * tmin) throw std::invalid_argument("index_estimate: samples must span three decades");
    std::vector<std::pair<double, double>> s(samples);
    std::sort(s.begin(), s.end());
    std::size_t start = s.size() / 2;
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = start; i < s.size(); ++i) {
        double x = std::log(s[i].first), y = std::log(s[i].second);
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom <= 0) throw std::invalid_argument("index_estimate: degenerate grid");
    return (n * sxy - sx * sy) / denom;
}

std::vector<double> geometric_grid(double a, double b, int points_per_decade) {
    if (!(a > 0) || !(b >= a) || points_per_decade < 1) throw std::invalid_argument("bad geometric grid");
    double decades = std::log10(b / a);
    int n = static_cast<int>(std::llround(decades * points_per_decade));
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g.push_back(n == 0 ? a : a * std::pow(b / a, static_cast<double>(i) / n));
    if (n > 0) g.back() = b;
    return g;
}

}  // namespace nevbound
