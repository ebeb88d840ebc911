#pragma once

// Regular-variation toolkit: power-log functions, comparison functions on [1, inf),
// Karamata integrals, generalized inverses, smoothening and index estimation.
//
// Comparison functions are evaluated in logarithmic coordinates: log_at_log(u)
// returns log f(e^u). This keeps thresholds such as t = exp(R^{1/2}) representable.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nevbound {

// c * t^a * (log t)^b. Pure powers (b == 0) live on [1, inf); otherwise the domain starts at e.
struct PowerLog {
    double coefficient = 1.0;
    double power = 0.0;
    double logpower = 0.0;

    PowerLog() = default;
    PowerLog(double c, double a, double b = 0.0);

    double domain_start() const;
    // Strict evaluation; throws DomainError below the domain start.
    double operator()(double t) const;
    // log f(e^u), clamped to the value at the domain start.
    double log_at_log(double u) const;

    PowerLog pow(double r) const;
    friend PowerLog operator*(const PowerLog& f, const PowerLog& g);
    friend PowerLog operator/(const PowerLog& f, const PowerLog& g);
};

// Inverse of a power-log with positive power. The leading term is the closed form
// rho^{b/rho} c^{-1/rho} t^{1/rho} (log t)^{-b/rho}; evaluation refines it by fixed-point
// iteration on t = (x / (c (log t)^b))^{1/rho}.
class AsymptoticInverse {
public:
    explicit AsymptoticInverse(const PowerLog& f);
    double operator()(double x) const;
    const PowerLog& leading() const { return leading_; }
    const PowerLog& function() const { return f_; }

private:
    PowerLog f_;
    PowerLog leading_;
};

AsymptoticInverse pl_asymptotic_inverse(const PowerLog& f);

enum class Monotonicity { none, nonincreasing, nondecreasing };

class ComparisonFunction {
public:
    using LogForm = std::function<double(double)>;

    ComparisonFunction();  // constant 1

    static ComparisonFunction constant(double c);
    static ComparisonFunction powerlog(const PowerLog& f);
    static ComparisonFunction powerlog(double c, double a, double b = 0.0) { return powerlog(PowerLog(c, a, b)); }
    static ComparisonFunction from_values(std::function<double(double)> f, std::optional<double> index,
                                          Monotonicity mono, std::string description);
    static ComparisonFunction from_log_form(LogForm logf, std::optional<double> index, Monotonicity mono,
                                            std::string description);
    // Log-log linear interpolation; constant below the first node, last slope beyond the last node.
    static ComparisonFunction tabulated(std::vector<double> t, std::vector<double> f, std::string description = "tabulated");
    static ComparisonFunction tabulated_csv(const std::string& path);

    double operator()(double t) const;
    double log_at_log(double u) const;

    const std::optional<double>& index() const;
    Monotonicity monotonicity() const;
    const std::optional<PowerLog>& as_powerlog() const;
    const std::string& description() const;

    ComparisonFunction scaled(double alpha) const;
    ComparisonFunction capped(double alpha) const;  // min{f, alpha}
    ComparisonFunction pow(double r) const;
    ComparisonFunction reciprocal() const;
    ComparisonFunction with_monotonicity(Monotonicity mono) const;

    friend ComparisonFunction operator*(const ComparisonFunction& f, const ComparisonFunction& g);
    friend ComparisonFunction operator/(const ComparisonFunction& f, const ComparisonFunction& g);
    friend ComparisonFunction pointwise_min(const ComparisonFunction& f, const ComparisonFunction& g);

private:
    struct Impl;
    explicit ComparisonFunction(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

// Expression grammar: powerlog(c, a, b) | tabulated(path.csv) | scaled(expr, alpha) | min(expr, alpha).
// Relative paths resolve against base_dir.
ComparisonFunction parse_comparison_function(const std::string& expr, const std::string& base_dir = ".");

// Adaptive Gauss-Kronrod quadrature of f on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-11);
// Integral of t -> exp(logf(log t)) over [e^ua, e^ub], computed in the variable u = log t.
double integrate_log_form(const ComparisonFunction::LogForm& logf, double ua, double ub, double rel_tol = 1e-11);

enum class IntegralDirection { head, tail };

// head: integral over [1, t]; tail: integral over [t, inf) by quadrature up to max(t, 1e6)
// plus the Karamata remainder x f(x) / (-(alpha+1)).
double karamata_integral(const ComparisonFunction& f, double t, IntegralDirection direction);
// Tail integral from e^u to infinity, in logarithmic coordinates.
double karamata_tail_log(const ComparisonFunction& f, double u);

// sup{t >= 1 : sup_{1<=s<=t} f(s) <= y} united with {1}; +inf when the predicate never fails.
double generalized_inverse(const ComparisonFunction& f, double y);
// The same search in logarithmic coordinates: logf maps u = log t to log f(e^u).
// Returns the log of the result, or +inf.
double generalized_inverse_log(const ComparisonFunction::LogForm& logf, double log_y);

// Running infimum on a geometric grid followed by log-log linear interpolation.
ComparisonFunction nonincreasing_smoothening(const ComparisonFunction& f, double t_max = 1e12,
                                             int points_per_decade = 32);

// Least-squares slope of log f against log t over the upper half of the samples.
double index_estimate(const std::vector<std::pair<double, double>>& samples);

std::vector<double> geometric_grid(double a, double b, int points_per_decade);

}  // namespace nevbound
