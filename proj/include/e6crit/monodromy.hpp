#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "e6crit/eisenstein.hpp"
#include "e6crit/types.hpp"
#include "e6crit/weierstrass.hpp"

namespace e6crit {

/// Row-major 2x2 complex matrix.
using Matrix2 = std::array<Complex, 4>;

/// Representative of z modulo Z + Z tau with lattice coordinates in [-1/2, 1/2).
Complex reduce_to_cell(Complex z, Complex tau);

/// Distance from z to the nearest point of the lattice Z + Z tau.
double lattice_distance(Complex z, Complex tau);

struct SingularPoints {
    /// p(q1) = sqrt(g2/12), p(q2) = -sqrt(g2/12), principal branch.
    Complex q1, q2;
    /// |p''(q_j)|.
    double residual1 = 0.0, residual2 = 0.0;
};

/// Throws Error(G2TooSmall) near e^{pi i/3}, Error(NoConvergence) otherwise.
SingularPoints solve_singular_points(const HalfPlanePoint& tau, const Precision& prec = {});

/// 18 p^2 p' + g2 p'/2 + 2 g2^2 z - 36 g3 zeta.
Complex chi(const WeierstrassEval& w);

/// Derivative of chi written out term by term, before simplification.
Complex chi_prime_expanded(const WeierstrassEval& w);

/// Coefficient of y'' = I y from the sum over the singular points.
Complex potential_from_sum(Complex z, const HalfPlanePoint& tau, const SingularPoints& s,
                           const Precision& prec = {});

/// Same coefficient as y1''/y1 with y1 = 1/p''.
Complex potential_closed(const WeierstrassEval& w);

struct LoopCheck {
    Complex center;
    double radius = 0.0;
    /// max |M - I| for the continuation around the circle.
    double deviation = 0.0;
};

struct MonodromyResult {
    Complex tau;
    Complex q1, q2;
    Complex chi1, chi2;
    /// Error bound on chi1; D is infinite when |chi1| is at or below it.
    double chi1_err = 0.0;
    ExtendedComplex D;
    /// Cross-check value from eval_phi.
    ExtendedComplex D_phi;

    // Filled by ode_monodromy only.
    Complex z0;
    double clearance = 0.0;
    /// Transfer matrices along z0 -> z0 + 1 and z0 -> z0 + tau, in the basis
    /// (chi1 y1, y2), or (chi2 y1, y2) when D is infinite.
    std::optional<std::pair<Matrix2, Matrix2>> ode_matrices;
    std::optional<double> ode_deviation;
    /// Increments of y2/y1 along the two loops, from the integrated solutions.
    std::optional<std::pair<Complex, Complex>> ratio_increments;
    /// |chi' - 7 p''^2| / |7 p''^2| at z0.
    std::optional<double> chi_prime_residual;
    /// max |I_sum - I_closed| / |I_closed| at the path nodes.
    std::optional<double> potential_residual;
    std::vector<LoopCheck> local_loops;
    int ode_steps = 0;
};

/// Closed forms for chi1, chi2 and D = chi2/chi1.
MonodromyResult chi_and_D(const HalfPlanePoint& tau, const Precision& prec = {});

struct OdeOptions {
    double rtol = 1e-10;
    /// Upper bound on accepted steps per path.
    int max_steps = 200000;
    bool local_loops = true;
};

/// Integrates y'' = I y along both period loops and around each singular point.
/// Throws Error(PathTooClose) or Error(Stiffness).
MonodromyResult ode_monodromy(const HalfPlanePoint& tau, const Precision& prec = {},
                              const OdeOptions& opts = {});

/// (1 0; 1 1) and (1 0; D 1), or I and (1 0; 1 1) when D is infinite.
std::pair<Matrix2, Matrix2> expected_generators(const ExtendedComplex& D);

}  // namespace e6crit
