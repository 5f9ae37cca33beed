#pragma once

#include "e6crit/eisenstein.hpp"
#include "e6crit/types.hpp"

namespace e6crit {

/// Weierstrass data for the lattice Z + Z tau at one point z.
struct WeierstrassEval {
    Complex z;
    Complex tau;
    Complex p, p_prime, p_dprime;
    /// Weierstrass zeta, normalized by zeta(z + 1) - zeta(z) = eta1.
    Complex zeta_w;
    /// Invariants of the lattice, for convenience.
    Complex g2, g3, eta1, eta2;
    double err_bound = 0.0;
};

/// Trigonometric q-series in the reduced period cell. Throws
/// Error(LatticePoint) when z is within 1e-6 of the lattice.
WeierstrassEval weierstrass_eval(Complex z, const HalfPlanePoint& tau, const Precision& prec = {});

/// |p'^2 - (4 p^3 - g2 p - g3)|.
double cubic_residual(const WeierstrassEval& w);

}  // namespace e6crit
