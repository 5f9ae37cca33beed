#include "e6crit/eisenstein.hpp"

#include <array>
#include <cmath>

#include "e6crit/divisor_table.hpp"

namespace e6crit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta5 = 1.0369277551433699263;

// Neumaier summation, one accumulator per component.
class CompensatedSum {
public:
    void add(Complex x) {
        add_component(sum_re_, comp_re_, x.real());
        add_component(sum_im_, comp_im_, x.imag());
    }
    Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

private:
    static void add_component(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
};

// Majorant |a_n| <= scale * n^power * (1 + ln n)^log_power for one series.
struct Majorant {
    double scale;
    int power;
    bool log_factor;

    double at(double n) const {
        double v = scale * std::pow(n, power);
        if (log_factor) v *= 1.0 + std::log(n);
        return v;
    }

    // Bound on sum_{n > N} a_n x^n; infinity while the term ratio is not < 1.
    double tail(int N, double x) const {
        const double n1 = N + 1.0, n2 = N + 2.0;
        double ratio = x * std::pow(n2 / n1, power);
        if (log_factor) ratio *= (1.0 + std::log(n2)) / (1.0 + std::log(n1));
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        return at(n1) * std::pow(x, n1) / (1.0 - ratio);
    }
};

// Series index: sigma1, sigma3, sigma5, n sigma5, n^2 sigma5.
constexpr std::size_t kSeries = 5;

}  // namespace

void Precision::validate() const {
    if (!(target_abs_error >= 64.0 * kEps))
        throw Error(ErrorKind::InvalidUse, "target_abs_error below 64 machine epsilons");
    if (max_terms < 8) throw Error(ErrorKind::InvalidUse, "max_terms must be at least 8");
    if (!(min_im_for_series > 0.0))
        throw Error(ErrorKind::InvalidUse, "min_im_for_series must be positive");
}

Complex EisensteinEval::critical() const {
    return Complex(0.0, 16.0 * constants::pi7 / 9.0) * dE6;
}

Complex EisensteinEval::critical_prime() const {
    return Complex(0.0, 16.0 * constants::pi7 / 9.0) * d2E6;
}

void rederive_normalized(EisensteinEval& ev) {
    ev.E4 = ev.g2 * (3.0 / (4.0 * constants::pi4));
    ev.E6 = ev.g3 * (27.0 / (8.0 * constants::pi6));
    ev.E2 = ev.eta1 * (3.0 / constants::pi2);
    ev.discriminant = ev.g2 * ev.g2 * ev.g2 - 27.0 * ev.g3 * ev.g3;
}

EisensteinEval eval(const HalfPlanePoint& tau, const Precision& prec) {
    prec.validate();
    if (tau.im() < prec.min_im_for_series)
        throw Error(ErrorKind::Domain, "Im tau below the series floor; reduce first");

    const Complex t = tau.value();
    const Complex q = std::exp(Complex(0.0, constants::two_pi) * t);
    const double x = std::abs(q);
    const double two_pi = constants::two_pi;

    // Prefactors turn each raw sum into its contribution to E2, E4, E6, E6', E6''.
    const std::array<double, kSeries> prefactor = {24.0, 240.0, 504.0, 504.0 * two_pi,
                                                   504.0 * two_pi * two_pi};
    const std::array<Majorant, kSeries> majorant = {
        Majorant{1.0, 1, true}, Majorant{kZeta3, 3, false}, Majorant{kZeta5, 5, false},
        Majorant{kZeta5, 6, false}, Majorant{kZeta5, 7, false}};

    const auto table = DivisorTable::shared(static_cast<std::size_t>(prec.max_terms));
    std::array<CompensatedSum, kSeries> sums;
    std::array<double, kSeries> abs_weighted{};  // sum (n+2)|a_n| x^n, for rounding
    std::array<double, kSeries> abs_plain{};
    std::array<double, kSeries> tails{};

    const double goal = prec.target_abs_error * std::min(1.0, x);
    Complex qn = 1.0;
    double xn = 1.0;
    int used = 0;
    bool converged = false;
    for (int n = 1; n <= prec.max_terms; ++n) {
        qn *= q;
        xn *= x;
        const double dn = n;
        const double s5 = table->sigma5(n);
        const std::array<double, kSeries> coeff = {table->sigma1(n), table->sigma3(n), s5,
                                                   dn * s5, dn * dn * s5};
        for (std::size_t k = 0; k < kSeries; ++k) {
            sums[k].add(coeff[k] * qn);
            abs_plain[k] += coeff[k] * xn;
            abs_weighted[k] += (dn + 2.0) * coeff[k] * xn;
        }
        used = n;
        bool ok = true;
        for (std::size_t k = 0; k < kSeries; ++k) {
            tails[k] = majorant[k].tail(n, x);
            if (!(prefactor[k] * tails[k] <= goal)) ok = false;
        }
        if (ok) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw Error(ErrorKind::PrecisionUnreachable,
                    "tail bound above target after max_terms terms");

    std::array<double, kSeries> err{};
    // The derivative series (k >= 3) have no constant term, so their rounding
    // error stays relative to |q| all the way up the cusp.
    for (std::size_t k = 0; k < kSeries; ++k)
        err[k] = prefactor[k] * (tails[k] + kEps * abs_weighted[k]) +
                 2.0 * kEps * ((k < 3 ? 1.0 : 0.0) + prefactor[k] * abs_plain[k]);

    const Complex ipi2(0.0, two_pi);
    EisensteinEval ev;
    ev.tau = t;
    ev.terms_used = used;
    ev.E2 = 1.0 - 24.0 * sums[0].value();
    ev.E4 = 1.0 + 240.0 * sums[1].value();
    ev.E6 = 1.0 - 504.0 * sums[2].value();
    ev.dE6 = -504.0 * ipi2 * sums[3].value();
    ev.d2E6 = -504.0 * ipi2 * ipi2 * sums[4].value();

    ev.g2 = (4.0 * constants::pi4 / 3.0) * ev.E4;
    ev.g3 = (8.0 * constants::pi6 / 27.0) * ev.E6;
    ev.eta1 = (constants::pi2 / 3.0) * ev.E2;
    ev.eta2 = t * ev.eta1 - Complex(0.0, two_pi);
    ev.discriminant = ev.g2 * ev.g2 * ev.g2 - 27.0 * ev.g3 * ev.g3;

    const double err_g2 = (4.0 * constants::pi4 / 3.0) * err[1] + 2.0 * kEps * std::abs(ev.g2);
    const double err_g3 = (8.0 * constants::pi6 / 27.0) * err[2] + 2.0 * kEps * std::abs(ev.g3);
    const double err_eta1 = (constants::pi2 / 3.0) * err[0] + 2.0 * kEps * std::abs(ev.eta1);
    const double err_eta2 =
        std::abs(t) * err_eta1 + 4.0 * kEps * (std::abs(t) * std::abs(ev.eta1) + two_pi);
    ev.err_bound = std::max({err_g2, err_g3, err_eta1, err_eta2});
    ev.dE6_err = err[3];
    ev.critical_err =
        (16.0 * constants::pi7 / 9.0) * err[3] + 2.0 * kEps * std::abs(ev.critical());
    return ev;
}

DerivativeBundle derivative_bundle(const EisensteinEval& ev) {
    const double pi = constants::pi;
    const Complex i = kI;
    const Complex g2 = ev.g2, g3 = ev.g3, e1 = ev.eta1;
    DerivativeBundle d;
    d.eta1_prime = (i / (24.0 * pi)) * (12.0 * e1 * e1 - g2);
    d.g2_prime = (i / pi) * (2.0 * e1 * g2 - 3.0 * g3);
    d.g3_prime = (-i / (6.0 * pi)) * (g2 * g2 - 18.0 * e1 * g3);
    d.critical_prime =
        (7.0 * i / (4.0 * pi)) * (4.0 * e1 * g2 * g2 - 36.0 * e1 * e1 * g3 - 3.0 * g2 * g3);
    return d;
}

double ramanujan_residual(const EisensteinEval& ev) {
    const Complex lhs = Complex(0.0, constants::pi) * (ev.E2 * ev.E6 - ev.E4 * ev.E4);
    return std::abs(lhs - ev.dE6);
}

double ramanujan_tolerance(const EisensteinEval& ev) {
    const double pi = constants::pi;
    const double eE4 = ev.err_bound * 3.0 / (4.0 * constants::pi4);
    const double eE6 = ev.err_bound * 27.0 / (8.0 * constants::pi6);
    const double eE2 = ev.err_bound * 3.0 / constants::pi2;
    const double a2 = std::abs(ev.E2), a4 = std::abs(ev.E4), a6 = std::abs(ev.E6);
    return pi * (a2 * eE6 + a6 * eE2 + 2.0 * a4 * eE4) +
           8.0 * kEps * pi * (a2 * a6 + a4 * a4) + ev.dE6_err;
}

double legendre_residual(const EisensteinEval& ev) {
    return std::abs(ev.eta2 - ev.tau * ev.eta1 + Complex(0.0, constants::two_pi));
}

}  // namespace e6crit
