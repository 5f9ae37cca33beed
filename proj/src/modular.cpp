#include "e6crit/modular.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace e6crit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Classical reduction into |Re| <= 1/2, |tau| >= 1. Returns M with M . tau in that domain.
UnimodularMatrix classical_reduction_matrix(Complex tau) {
    UnimodularMatrix m;
    Complex z = tau;
    const UnimodularMatrix s(0, -1, 1, 0);
    for (int iter = 0; iter < 100000; ++iter) {
        const double shift = std::floor(z.real() + 0.5);
        if (shift != 0.0) {
            const auto n = static_cast<UnimodularMatrix::Int>(shift);
            z -= shift;
            m = UnimodularMatrix::translation(-n) * m;
        }
        if (std::norm(z) < 1.0 - 8.0 * kEps) {
            z = -1.0 / z;
            m = s * m;
            continue;
        }
        return m;
    }
    throw Error(ErrorKind::NoConvergence, "modular reduction did not terminate");
}

}  // namespace

const char* to_string(Group g) noexcept {
    switch (g) {
        case Group::SL2Z: return "sl2z";
        case Group::Gamma0_2: return "gamma02";
    }
    return "?";
}

UnimodularMatrix::UnimodularMatrix(Int a, Int b, Int c, Int d) {
    if (a * d - b * c != 1)
        throw Error(ErrorKind::InvalidUse, "matrix determinant is not 1");
    if (c < 0 || (c == 0 && d < 0)) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    a_ = a;
    b_ = b;
    c_ = c;
    d_ = d;
}

ExtendedReal UnimodularMatrix::cusp_parameter() const {
    if (c_ == 0) return ExtendedReal::infinity();
    return ExtendedReal(-static_cast<double>(d_) / static_cast<double>(c_));
}

UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
            x.c_ * y.b_ + x.d_ * y.d_};
}

std::string UnimodularMatrix::to_string() const {
    std::ostringstream os;
    os << "(" << a_ << " " << b_ << "; " << c_ << " " << d_ << ")";
    return os.str();
}

UnimodularMatrix gamma1() { return {0, 1, -1, 1}; }
UnimodularMatrix gamma2() { return {1, -1, 1, 0}; }

Complex mobius_apply(const UnimodularMatrix& g, Complex tau) {
    const Complex num = static_cast<double>(g.a()) * tau + static_cast<double>(g.b());
    return num / g.factor(tau);
}

HalfPlanePoint mobius_apply(const UnimodularMatrix& g, const HalfPlanePoint& tau) {
    const Complex w = mobius_apply(g, tau.value());
    // Im(g tau) = Im(tau)/|c tau + d|^2 exactly; use it so rounding cannot leave H.
    return HalfPlanePoint(w.real(), tau.im() / std::norm(g.factor(tau.value())));
}

bool in_F(Complex tau, double tol) {
    const double re = tau.real();
    return tau.imag() > 0.0 && re >= -tol && re <= 1.0 + tol &&
           std::abs(tau) >= 1.0 - tol && std::abs(tau - 1.0) >= 1.0 - tol;
}

bool in_F0(Complex tau, double tol) {
    const double re = tau.real();
    return tau.imag() > 0.0 && re >= -tol && re <= 1.0 + tol &&
           std::abs(tau - 0.5) >= 0.5 - tol;
}

namespace {

bool near_F_boundary(Complex tau, double tol) {
    return std::abs(tau.real()) < tol || std::abs(tau.real() - 1.0) < tol ||
           std::abs(std::abs(tau) - 1.0) < tol || std::abs(std::abs(tau - 1.0) - 1.0) < tol;
}

bool near_F0_boundary(Complex tau, double tol) {
    return std::abs(tau.real()) < tol || std::abs(tau.real() - 1.0) < tol ||
           std::abs(std::abs(tau - 0.5) - 0.5) < tol;
}

}  // namespace

Reduction reduce_to_F(const HalfPlanePoint& tau) {
    UnimodularMatrix m = classical_reduction_matrix(tau.value());
    Complex z = mobius_apply(m, tau.value());
    // Shift the left half of the classical domain by one to land in F.
    if (z.real() < 0.0) {
        m = UnimodularMatrix::translation(1) * m;
        z += 1.0;
    }
    Reduction r;
    r.gamma = m.inverse();
    r.reduced = Complex(z.real(), tau.im() / std::norm(m.factor(tau.value())));
    r.near_boundary = near_F_boundary(r.reduced, 1e-12);
    return r;
}

Reduction reduce_to_F0(const HalfPlanePoint& tau) {
    const Reduction base = reduce_to_F(tau);
    // The bottom row of gamma mod 2 names its right coset of Gamma0(2), and
    // I, gamma_1, gamma_2 have bottom rows (0,1), (1,1), (1,0) mod 2.
    const auto c = std::llabs(base.gamma.c()) % 2;
    const auto d = std::llabs(base.gamma.d()) % 2;
    UnimodularMatrix delta;
    if (c == 0)
        delta = UnimodularMatrix::identity();
    else if (d == 1)
        delta = gamma1();
    else
        delta = gamma2();

    Reduction r;
    r.gamma = base.gamma * delta.inverse();
    const HalfPlanePoint moved = mobius_apply(delta, HalfPlanePoint(base.reduced));
    r.reduced = moved.value();
    r.near_boundary = near_F0_boundary(r.reduced, 1e-12);
    return r;
}

EisensteinEval transform_eval(const EisensteinEval& ev, const UnimodularMatrix& g) {
    if (g.is_identity()) return ev;
    const double a = static_cast<double>(g.a()), b = static_cast<double>(g.b());
    const double c = static_cast<double>(g.c()), d = static_cast<double>(g.d());
    const Complex j = g.factor(ev.tau);
    const Complex j2 = j * j, j4 = j2 * j2, j6 = j4 * j2, j7 = j6 * j, j8 = j4 * j4;

    EisensteinEval out;
    out.tau = mobius_apply(g, ev.tau);
    out.terms_used = ev.terms_used;
    out.g2 = j4 * ev.g2;
    out.g3 = j6 * ev.g3;
    out.eta2 = j * (a * ev.eta2 + b * ev.eta1);
    out.eta1 = j * (c * ev.eta2 + d * ev.eta1);
    out.dE6 = 6.0 * c * j7 * ev.E6 + j8 * ev.dE6;
    out.d2E6 = 42.0 * c * c * j8 * ev.E6 + 14.0 * c * j8 * j * ev.dE6 + j8 * j2 * ev.d2E6;
    rederive_normalized(out);

    const double aj = std::abs(j);
    const double aj4 = std::pow(aj, 4), aj6 = std::pow(aj, 6), aj7 = std::pow(aj, 7),
                 aj8 = std::pow(aj, 8);
    const double e = ev.err_bound;
    const double err_g2 = aj4 * e + 4.0 * kEps * std::abs(out.g2);
    const double err_g3 = aj6 * e + 4.0 * kEps * std::abs(out.g3);
    const double eta_mix = aj * (std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d)) * e;
    const double eta_round =
        4.0 * kEps * aj * (std::abs(a * ev.eta2) + std::abs(b * ev.eta1) +
                           std::abs(c * ev.eta2) + std::abs(d * ev.eta1));
    out.err_bound = std::max({err_g2, err_g3, eta_mix + eta_round});

    // F(g tau) = j^8 F(tau) + (32/3) i pi^7 c j^7 E6(tau).
    const double e6_err = e * 27.0 / (8.0 * constants::pi6);
    const double second = (32.0 / 3.0) * constants::pi7 * std::abs(c) * aj7;
    out.critical_err = aj8 * ev.critical_err + second * e6_err +
                       4.0 * kEps * (aj8 * std::abs(ev.critical()) + second * std::abs(ev.E6));
    out.dE6_err = out.critical_err * 9.0 / (16.0 * constants::pi7);
    return out;
}

EisensteinEval eval_anywhere(const HalfPlanePoint& tau, const Precision& prec) {
    if (tau.im() >= prec.min_im_for_series) return eval(tau, prec);
    const Reduction r = reduce_to_F(tau);
    EisensteinEval out = transform_eval(eval(HalfPlanePoint(r.reduced), prec), r.gamma);
    out.tau = tau.value();
    return out;
}

}  // namespace e6crit
