#include "nevbound/hamiltonian.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
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

struct HamburgerHamiltonian::Impl {
    std::vector<double> lengths;
    std::vector<double> angles;
    std::vector<double> prefix;  // prefix[j] = x_j for stored entries
    Generator rule;
    std::optional<TailMajorant> tail;
    std::string name;
};

HamburgerHamiltonian::HamburgerHamiltonian(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

void validate_tail(const TailMajorant& tail) {
    // The declared majorant must decay; otherwise the family is not summable.
    double a = tail.c_l.log_at_log(std::log(1e3)), b = tail.c_l.log_at_log(std::log(1e6)),
           c = tail.c_l.log_at_log(std::log(1e12));
    if (!(b < a && c < b)) throw std::invalid_argument("declared tail majorant does not decay: family not summable");
    for (double u : {0.0, std::log(10.0), std::log(1e4), std::log(1e8)})
        if (tail.c_phi.log_at_log(u) > tail.c_l.log_at_log(u) + 1e-12)
            throw std::invalid_argument("tail majorants must satisfy c_phi <= c_l");
}

}  // namespace

HamburgerHamiltonian HamburgerHamiltonian::from_sequences(std::vector<double> lengths, std::vector<double> angles,
                                                          std::optional<TailMajorant> tail, std::string name) {
    if (lengths.size() != angles.size()) throw std::invalid_argument("lengths and angles differ in size");
    auto impl = std::make_shared<Impl>();
    impl->prefix.assign(1, 0.0);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (!(lengths[i] > 0) || !std::isfinite(lengths[i]))
            throw std::invalid_argument("length l_" + std::to_string(i + 1) + " must be positive");
        if (!std::isfinite(angles[i])) throw std::invalid_argument("angle must be finite");
        impl->prefix.push_back(impl->prefix.back() + lengths[i]);
    }
    if (tail) validate_tail(*tail);
    impl->lengths = std::move(lengths);
    impl->angles = std::move(angles);
    impl->tail = std::move(tail);
    impl->name = std::move(name);
    return HamburgerHamiltonian(impl);
}

HamburgerHamiltonian HamburgerHamiltonian::from_generator(Generator rule, TailMajorant tail, std::string name) {
    validate_tail(tail);
    auto impl = std::make_shared<Impl>();
    impl->rule = std::move(rule);
    impl->tail = std::move(tail);
    impl->name = std::move(name);
    impl->prefix.assign(1, 0.0);
    for (std::size_t j = 1; j <= 16; ++j) {
        auto [l, phi] = impl->rule(j);
        if (!(l > 0) || !std::isfinite(phi)) throw std::invalid_argument("generator produced an invalid entry");
    }
    return HamburgerHamiltonian(impl);
}

std::size_t HamburgerHamiltonian::size() const {
    return impl_->rule ? std::numeric_limits<std::size_t>::max() : impl_->lengths.size();
}

bool HamburgerHamiltonian::is_generated() const { return static_cast<bool>(impl_->rule); }

bool HamburgerHamiltonian::is_exactly_finite() const { return !impl_->rule && !impl_->tail; }

double HamburgerHamiltonian::length(std::size_t j) const {
    if (j == 0) throw std::out_of_range("Hamiltonian entries are 1-based");
    if (impl_->rule) return impl_->rule(j).first;
    if (j > impl_->lengths.size()) throw std::out_of_range("Hamiltonian entry beyond stored range");
    return impl_->lengths[j - 1];
}

double HamburgerHamiltonian::angle(std::size_t j) const {
    if (j == 0) throw std::out_of_range("Hamiltonian entries are 1-based");
    if (impl_->rule) return impl_->rule(j).second;
    if (j > impl_->angles.size()) throw std::out_of_range("Hamiltonian entry beyond stored range");
    return impl_->angles[j - 1];
}

double HamburgerHamiltonian::partial_sum(std::size_t N) const {
    if (!impl_->rule) {
        if (N > impl_->lengths.size()) throw std::out_of_range("partial sum beyond stored range");
        return impl_->prefix[N];
    }
    long double s = 0;
    for (std::size_t j = 1; j <= N; ++j) s += impl_->rule(j).first;
    return static_cast<double>(s);
}

HamburgerHamiltonian::LengthInterval HamburgerHamiltonian::total_length(std::size_t N) const {
    if (!impl_->rule) N = impl_->lengths.size();
    double x = partial_sum(N);
    if (!impl_->tail) return {x, x};
    return {x, x + impl_->tail->c_l(static_cast<double>(std::max<std::size_t>(N, 1)))};
}

const std::optional<TailMajorant>& HamburgerHamiltonian::tail() const { return impl_->tail; }
const std::string& HamburgerHamiltonian::name() const { return impl_->name; }

HamburgerHamiltonian HamburgerHamiltonian::truncated(std::size_t N) const {
    if (!impl_->rule && N > impl_->lengths.size()) throw std::out_of_range("truncation beyond stored range");
    std::vector<double> l(N), phi(N);
    for (std::size_t j = 1; j <= N; ++j) {
        l[j - 1] = length(j);
        phi[j - 1] = angle(j);
    }
    return from_sequences(std::move(l), std::move(phi), std::nullopt, impl_->name + "[:" + std::to_string(N) + "]");
}

HamburgerHamiltonian HamburgerHamiltonian::with_shifted_angles(double delta) const {
    auto impl = std::make_shared<Impl>(*impl_);
    for (double& a : impl->angles) a += delta;
    if (impl_->rule) {
        auto base = impl_->rule;
        impl->rule = [base, delta](std::size_t j) {
            auto e = base(j);
            return std::make_pair(e.first, e.second + delta);
        };
    }
    if (impl->tail) impl->tail->psi += delta;
    return HamburgerHamiltonian(impl);
}

HamburgerHamiltonian HamburgerHamiltonian::with_tail(TailMajorant tail) const {
    validate_tail(tail);
    auto impl = std::make_shared<Impl>(*impl_);
    impl->tail = std::move(tail);
    return HamburgerHamiltonian(impl);
}

// ---------------------------------------------------------------- families

HamburgerHamiltonian family_alternating_power(double alpha, double beta) {
    if (!(alpha > 1)) throw std::invalid_argument("alternating power family needs alpha > 1 for summable lengths");
    if (!(beta >= 0)) throw std::invalid_argument("alternating power family needs beta >= 0");
    auto rule = [alpha, beta](std::size_t j) {
        double t = static_cast<double>(j);
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        return std::make_pair(std::pow(t, -alpha), sign * std::pow(t, -beta));
    };
    TailMajorant tail{ComparisonFunction::powerlog(1.0 / (alpha - 1.0), 1.0 - alpha),
                      ComparisonFunction::powerlog(1.0 / (alpha + 2 * beta - 1.0), 1.0 - alpha - 2 * beta), 0.0};
    std::ostringstream os;
    os << "alternating_power(" << alpha << "," << beta << ")";
    return HamburgerHamiltonian::from_generator(rule, tail, os.str());
}

namespace {

// Integral bound for sum_{j>N} f(j) with f = exp(logf(log t)) nonincreasing.
ComparisonFunction integral_tail(const ComparisonFunction& f) {
    if (auto pl = f.as_powerlog(); pl && pl->logpower == 0.0) {
        if (!(pl->power < -1)) throw DivergenceError("lengths are not summable");
        return ComparisonFunction::powerlog(pl->coefficient / (-(pl->power + 1.0)), pl->power + 1.0);
    }
    return ComparisonFunction::from_log_form([f](double u) { return std::log(karamata_tail_log(f, u)); },
                                             f.index() ? std::optional<double>(*f.index() + 1.0) : std::nullopt,
                                             Monotonicity::nonincreasing, "tail(" + f.description() + ")");
}

double harmonic(std::size_t n) {
    if (n == 0) return 0.0;
    if (n < 64) {
        double s = 0;
        for (std::size_t k = 1; k <= n; ++k) s += 1.0 / static_cast<double>(k);
        return s;
    }
    return boost::math::digamma(static_cast<double>(n) + 1.0) + std::numbers::egamma;
}

}  // namespace

HamburgerHamiltonian family_prescribed_growth(const PowerLog& g_inverse, const GrowthSpec& spec) {
    if (!(g_inverse.power > 2)) throw std::invalid_argument("prescribed growth family needs g^- with index > 2 (index of g in (0, 1/2))");
    auto ginv = ComparisonFunction::powerlog(g_inverse);
    std::ostringstream name;
    switch (spec.variant) {
        case GrowthVariant::interior: {
            if (!(std::abs(spec.omega) < 2.0)) {
                if (std::abs(spec.omega) > 2.0)
                    throw std::invalid_argument("|omega| > 2 cannot be limit circle (Wouk)");
                throw std::invalid_argument("omega = +-2 uses the dedicated variants");
            }
            double psi = std::acos(-spec.omega / 2.0);
            double s = std::sin(psi);
            auto l = ginv.reciprocal().scaled(1.0 / s);
            auto rule = [l, psi](std::size_t n) {
                return std::make_pair(std::exp(l.log_at_log(std::log(static_cast<double>(n)))),
                                      static_cast<double>(n - 1) * psi);
            };
            auto c = integral_tail(l);
            name << "prescribed_growth(interior," << spec.omega << ")";
            return HamburgerHamiltonian::from_generator(rule, TailMajorant{c, c, 0.0}, name.str());
        }
        case GrowthVariant::minus_two:
        case GrowthVariant::plus_two: {
            bool plus = spec.variant == GrowthVariant::plus_two;
            auto l = ComparisonFunction::powerlog(1, 1) / ginv;
            auto rule = [l, plus](std::size_t n) {
                double h = harmonic(n - 1);
                double phi = plus ? static_cast<double>(n - 1) * std::numbers::pi - h : h;
                return std::make_pair(std::exp(l.log_at_log(std::log(static_cast<double>(n)))), phi);
            };
            auto c = integral_tail(l);
            name << (plus ? "prescribed_growth(plus2)" : "prescribed_growth(minus2)");
            return HamburgerHamiltonian::from_generator(rule, TailMajorant{c, c, 0.0}, name.str());
        }
        case GrowthVariant::sequence: {
            if (!spec.omega_sequence) throw std::invalid_argument("sequence variant needs omega_n");
            if (!(spec.gamma > -1.0)) throw std::invalid_argument("lim omega_{n-1}/omega_n must lie in (-1, inf)");
            if (spec.count < 2) throw std::invalid_argument("sequence variant needs an explicit count");
            auto l = ginv.reciprocal();
            std::vector<double> ls(spec.count), phis(spec.count);
            double acc = 0.0;
            for (std::size_t n = 1; n <= spec.count; ++n) {
                ls[n - 1] = std::exp(l.log_at_log(std::log(static_cast<double>(n))));
                phis[n - 1] = static_cast<double>(n - 1) * std::numbers::pi / 2.0 + acc / (2.0 * (1.0 + spec.gamma));
                double w = spec.omega_sequence(n);
                if (w == 0.0) throw std::invalid_argument("omega_n must be nonzero");
                if (std::abs(w) < std::numbers::pi) acc += w;
            }
            auto c = integral_tail(l);
            return HamburgerHamiltonian::from_sequences(std::move(ls), std::move(phis), TailMajorant{c, c, 0.0},
                                                        "prescribed_growth(sequence)");
        }
    }
    throw std::invalid_argument("unknown prescribed growth variant");
}

// ---------------------------------------------------------------- Jacobi bridge

namespace {

double reduced_increment(double from, double to) {
    double d = std::fmod(to - from, std::numbers::pi);
    if (d < 0) d += std::numbers::pi;
    if (d >= std::numbers::pi) d -= std::numbers::pi;
    if (!(std::sin(d) > 0)) throw DomainError("degenerate angle increment: sin(phi_{n+1} - phi_n) = 0");
    return d;
}

}  // namespace

JacobiParameters jacobi_from_hamiltonian(const HamburgerHamiltonian& H, std::size_t count) {
    if (H.size() < count + 1) throw std::out_of_range("jacobi_from_hamiltonian needs count + 1 Hamiltonian entries");
    JacobiParameters J;
    J.diagonal.resize(count);
    J.offdiagonal.resize(count);
    double prev_cot = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
        double l1 = H.length(n + 1), l2 = H.length(n + 2);
        double d = reduced_increment(H.angle(n + 1), H.angle(n + 2));
        double s = std::sin(d), c = std::cos(d);
        J.offdiagonal[n] = 1.0 / (s * std::sqrt(l1 * l2));
        double cot = c / s;
        J.diagonal[n] = -(cot + (n == 0 ? 0.0 : prev_cot)) / l1;
        prev_cot = cot;
    }
    return J;
}

HamburgerHamiltonian hamiltonian_from_jacobi(const JacobiParameters& J, std::size_t count, double first_length) {
    if (count == 0) return HamburgerHamiltonian::from_sequences({}, {});
    if (J.diagonal.size() + 1 < count || J.offdiagonal.size() + 1 < count)
        throw std::out_of_range("hamiltonian_from_jacobi needs count - 1 Jacobi entries");
    if (!(first_length > 0)) throw std::invalid_argument("first length must be positive");
    for (std::size_t n = 0; n + 1 < count; ++n)
        if (!(J.offdiagonal[n] > 0)) throw std::invalid_argument("off-diagonal b_n must be positive");

    std::vector<double> l(count), phi(count);
    const double kappa = std::sqrt(first_length);
    // Current and previous solution vectors (p, q), sharing the scale exp(logscale).
    double p = kappa, q = 0.0, pp = 0.0, qp = 0.0, logscale = 0.0;
    l[0] = first_length;
    phi[0] = 0.0;
    for (std::size_t m = 0; m + 1 < count; ++m) {
        double a = J.diagonal[m], b = J.offdiagonal[m];
        double pn, qn;
        if (m == 0) {
            pn = -a * p / b;
            qn = 1.0 / (b * kappa);
        } else {
            double bp = J.offdiagonal[m - 1];
            pn = -(a * p + bp * pp) / b;
            qn = -(a * q + bp * qp) / b;
        }
        double cross = p * qn - q * pn, dot = p * pn + q * qn;
        phi[m + 1] = phi[m] + std::atan2(cross, dot);
        pp = p;
        qp = q;
        p = pn;
        q = qn;
        double mx = std::max({std::abs(p), std::abs(q), std::abs(pp), std::abs(qp)});
        if (!std::isfinite(mx)) throw RangeError("Jacobi recurrence overflowed");
        if (mx > 0x1p200 || mx < 0x1p-200) {
            int e;
            std::frexp(mx, &e);
            p = std::ldexp(p, -e);
            q = std::ldexp(q, -e);
            pp = std::ldexp(pp, -e);
            qp = std::ldexp(qp, -e);
            logscale += e * std::numbers::ln2;
        }
        double len = (p * p + q * q) * std::exp(2.0 * logscale);
        if (!std::isfinite(len) || !(len > 0)) throw RangeError("Hamiltonian length out of double range");
        l[m + 1] = len;
    }
    return HamburgerHamiltonian::from_sequences(std::move(l), std::move(phi), std::nullopt, "from_jacobi");
}

HamburgerHamiltonian with_fitted_tail(const HamburgerHamiltonian& H) {
    std::size_t n = H.size();
    if (H.is_generated() || n < 64) throw std::invalid_argument("tail fit needs at least 64 stored entries");
    // Upper envelope: the largest length in each dyadic block from j = 16 on. Pointwise fits are
    // misled by lengths that oscillate in log j.
    const std::size_t lo = 16;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (std::size_t start = lo; start <= n; start *= 2) {
        std::size_t end = std::min(2 * start - 1, n), arg = start;
        if (end - start + 1 < start / 2) break;
        for (std::size_t j = start; j <= end; ++j)
            if (H.length(j) > H.length(arg)) arg = j;
        double x = std::log(static_cast<double>(arg)), y = std::log(H.length(arg));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        cnt += 1;
    }
    double kappa = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    if (!(kappa < -1.0)) throw DivergenceError("fitted length decay is not summable");
    double C = 0;
    for (std::size_t j = lo; j <= n; ++j) C = std::max(C, H.length(j) * std::pow(static_cast<double>(j), -kappa));
    double beyond = C * std::pow(static_cast<double>(n), kappa + 1.0) / (-(kappa + 1.0));
    // Exact suffix sums inside the stored range, the fitted bound beyond it.
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t j = n; j >= 1; --j) suffix[j - 1] = suffix[j] + H.length(j);
    auto c_l = ComparisonFunction::from_values(
        [suffix, beyond, C, kappa, n](double t) {
            double N = std::floor(t);
            if (N < static_cast<double>(n)) return suffix[static_cast<std::size_t>(N)] + beyond;
            return C * std::pow(N, kappa + 1.0) / (-(kappa + 1.0));
        },
        kappa + 1.0, Monotonicity::nonincreasing, "fitted_tail");
    return H.with_tail(TailMajorant{c_l, c_l, 0.0});
}

// ---------------------------------------------------------------- config grammar

namespace {

std::vector<std::vector<double>> read_csv_rows(const std::string& path, std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::vector<double> row(columns);
        bool ok = true;
        for (auto& v : row) ok = ok && static_cast<bool>(ls >> v);
        if (!ok) {
            if (rows.empty()) continue;  // header
            throw ParseError("malformed row in " + path + ": " + line);
        }
        rows.push_back(row);
    }
    return rows;
}

struct Call {
    std::string name;
    std::vector<std::string> args;
};

Call split_call(const std::string& expr) {
    auto open = expr.find('('), close = expr.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError("malformed family expression '" + expr + "'");
    Call c;
    auto trim = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'')) s = s.substr(1, s.size() - 2);
        return s;
    };
    c.name = trim(expr.substr(0, open));
    std::string inner = expr.substr(open + 1, close - open - 1);
    std::string cur;
    for (char ch : inner) {
        if (ch == ',') {
            c.args.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty() || !c.args.empty()) c.args.push_back(trim(cur));
    if (!trim(expr.substr(close + 1)).empty()) throw ParseError("trailing input in '" + expr + "'");
    return c;
}

double to_number(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError("bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad number '" + s + "'");
    }
}

}  // namespace

HamburgerHamiltonian parse_family(const std::string& expr, const std::string& base_dir) {
    Call c = split_call(expr);
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return (path.is_relative() ? std::filesystem::path(base_dir) / path : path).string();
    };
    try {
        if (c.name == "alternating_power" || c.name == "example_b6") {
            if (c.args.size() != 2) throw ParseError(c.name + "(alpha, beta) takes two arguments");
            return family_alternating_power(to_number(c.args[0]), to_number(c.args[1]));
        }
        if (c.name == "prescribed_growth" || c.name == "b83") {
            if (c.args.size() < 3) throw ParseError(c.name + "(variant, rho, logpower, ...) needs at least three arguments");
            double rho = to_number(c.args[1]), b = to_number(c.args[2]);
            if (!(rho > 0 && rho < 0.5)) throw ParseError(c.name + ": index of g must lie in (0, 1/2)");
            PowerLog ginv = pl_asymptotic_inverse(PowerLog(1.0, rho, b)).leading();
            GrowthSpec spec;
            const std::string& v = c.args[0];
            if (v == "interior") {
                spec.variant = GrowthVariant::interior;
                spec.omega = c.args.size() > 3 ? to_number(c.args[3]) : 0.0;
            } else if (v == "minus2") {
                spec.variant = GrowthVariant::minus_two;
            } else if (v == "plus2") {
                spec.variant = GrowthVariant::plus_two;
            } else if (v == "sequence") {
                if (c.args.size() != 6) throw ParseError(c.name + "(sequence, rho, logpower, c, p, count)");
                double amp = to_number(c.args[3]), p = to_number(c.args[4]);
                spec.variant = GrowthVariant::sequence;
                spec.omega_sequence = [amp, p](std::size_t n) { return amp * std::pow(static_cast<double>(n), -p); };
                spec.gamma = 1.0;
                spec.count = static_cast<std::size_t>(to_number(c.args[5]));
            } else {
                throw ParseError("unknown " + c.name + " variant '" + v + "'");
            }
            return family_prescribed_growth(ginv, spec);
        }
        if (c.name == "explicit") {
            if (c.args.size() != 1) throw ParseError("explicit(path.csv)");
            auto rows = read_csv_rows(resolve(c.args[0]), 3);
            std::vector<double> l, phi;
            for (const auto& r : rows) {
                l.push_back(r[1]);
                phi.push_back(r[2]);
            }
            return HamburgerHamiltonian::from_sequences(l, phi, std::nullopt, "explicit(" + c.args[0] + ")");
        }
        if (c.name == "jacobi") {
            if (c.args.size() != 1) throw ParseError("jacobi(path.csv)");
            auto rows = read_csv_rows(resolve(c.args[0]), 3);
            JacobiParameters J;
            for (const auto& r : rows) {
                J.diagonal.push_back(r[1]);
                J.offdiagonal.push_back(r[2]);
            }
            return hamiltonian_from_jacobi(J, J.diagonal.size() + 1);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("family '") + expr + "': " + e.what());
    }
    throw ParseError("unknown family '" + c.name + "'");
}

}  // namespace nevbound
