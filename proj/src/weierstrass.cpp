#include "e6crit/weierstrass.hpp"

#include <cmath>

#include "e6crit/modular.hpp"

namespace e6crit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLatticeGuard = 1e-6;
constexpr double kMinImForCell = 0.5;

// e^w - 1 without cancellation for small w.
Complex expm1c(Complex w) { return 2.0 * std::exp(0.5 * w) * std::sinh(0.5 * w); }

WeierstrassEval cell_eval(Complex z, const HalfPlanePoint& tau, const Precision& prec) {
    const Complex t = tau.value();
    const double n_shift = std::round(z.imag() / tau.im());
    Complex zr = z - n_shift * t;
    const double m_shift = std::round(zr.real());
    zr -= m_shift;

    double dist = std::numeric_limits<double>::infinity();
    for (int m = -1; m <= 1; ++m)
        for (int n = -1; n <= 1; ++n)
            dist = std::min(dist, std::abs(zr - static_cast<double>(m) - static_cast<double>(n) * t));
    if (dist < kLatticeGuard) throw Error(ErrorKind::LatticePoint, "z is a lattice point");

    const EisensteinEval ev = eval(tau, prec);
    const double pi = constants::pi;
    const Complex two_pi_i(0.0, constants::two_pi);
    const Complex w = two_pi_i * zr;
    const Complex u = std::exp(w);
    const Complex one_minus_u = -expm1c(w);
    const Complex q = std::exp(two_pi_i * t);

    const Complex lead_p = -4.0 * pi * pi * u / (one_minus_u * one_minus_u);
    const Complex lead_pp =
        Complex(0.0, -8.0 * pi * pi * pi) * u * (1.0 + u) / (one_minus_u * one_minus_u * one_minus_u);
    const Complex lead_z = Complex(0.0, -pi) * (1.0 + u) / one_minus_u;

    // Sums over k of a_k ((qu)^k +- (q/u)^k) with weights k, k^2, 1.
    Complex s_p = 0.0, s_pp = 0.0, s_z = 0.0;
    double abs_p = 0.0, abs_pp = 0.0, abs_z = 0.0;
    const Complex qu = q * u, qv = q / u;
    const double ratio = std::max(std::abs(qu), std::abs(qv));
    Complex A = 1.0, B = 1.0, qk = 1.0;
    double tail = 0.0;
    for (int k = 1; k <= prec.max_terms; ++k) {
        A *= qu;
        B *= qv;
        qk *= q;
        const Complex a = 1.0 / (1.0 - qk);
        const double dk = k;
        const Complex plus = a * (A + B), minus = a * (A - B);
        s_p += dk * plus;
        s_pp += dk * dk * minus;
        s_z += minus;
        const double mag = std::abs(a) * (std::abs(A) + std::abs(B));
        abs_p += dk * mag;
        abs_pp += dk * dk * mag;
        abs_z += mag;
        const double next = (dk + 1) * (dk + 1) / (dk * dk) * ratio;
        if (next < 1.0) {
            tail = dk * dk * mag * next / (1.0 - next);
            if (tail <= 0.25 * kEps * (1.0 + abs_pp)) break;
        }
        if (k == prec.max_terms)
            throw Error(ErrorKind::PrecisionUnreachable, "Weierstrass series did not converge");
    }

    WeierstrassEval out;
    out.z = z;
    out.tau = t;
    out.g2 = ev.g2;
    out.g3 = ev.g3;
    out.eta1 = ev.eta1;
    out.eta2 = ev.eta2;
    const double four_pi2 = 4.0 * pi * pi;
    out.p = -ev.eta1 + lead_p - four_pi2 * s_p;
    out.p_prime = lead_pp - Complex(0.0, 8.0 * pi * pi * pi) * s_pp;
    out.zeta_w = ev.eta1 * zr + lead_z - two_pi_i * s_z + m_shift * ev.eta1 + n_shift * ev.eta2;
    out.p_dprime = 6.0 * out.p * out.p - 0.5 * ev.g2;

    const double eta_scale = std::abs(ev.eta1) * (std::abs(zr) + std::abs(m_shift)) +
                             std::abs(ev.eta2) * std::abs(n_shift);
    out.err_bound = ev.err_bound * (1.0 + std::abs(zr) + std::abs(m_shift) + std::abs(n_shift)) +
                    8.0 * pi * pi * pi * tail +
                    8.0 * kEps * (std::abs(lead_pp) + std::abs(lead_p) + std::abs(lead_z) +
                                  8.0 * pi * pi * pi * abs_pp + four_pi2 * abs_p +
                                  constants::two_pi * abs_z + eta_scale);
    return out;
}

}  // namespace

WeierstrassEval weierstrass_eval(Complex z, const HalfPlanePoint& tau, const Precision& prec) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error(ErrorKind::Domain, "z must be finite");
    if (tau.im() >= kMinImForCell) return cell_eval(z, tau, prec);

    // tau = g tau' with tau' in F and j = c tau' + d: j Lambda_tau = Lambda_tau'.
    const Reduction r = reduce_to_F(tau);
    const Complex j = r.gamma.factor(r.reduced);
    const WeierstrassEval inner = cell_eval(j * z, HalfPlanePoint(r.reduced), prec);
    const EisensteinEval ev = eval_anywhere(tau, prec);
    WeierstrassEval out;
    out.z = z;
    out.tau = tau.value();
    out.g2 = ev.g2;
    out.g3 = ev.g3;
    out.eta1 = ev.eta1;
    out.eta2 = ev.eta2;
    const Complex j2 = j * j;
    out.p = j2 * inner.p;
    out.p_prime = j2 * j * inner.p_prime;
    out.zeta_w = j * inner.zeta_w;
    out.p_dprime = 6.0 * out.p * out.p - 0.5 * out.g2;
    out.err_bound = std::pow(std::abs(j), 3) * inner.err_bound + ev.err_bound;
    return out;
}

double cubic_residual(const WeierstrassEval& w) {
    return std::abs(w.p_prime * w.p_prime - (4.0 * w.p * w.p * w.p - w.g2 * w.p - w.g3));
}

}  // namespace e6crit
