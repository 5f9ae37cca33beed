#pragma once

#include "e6crit/types.hpp"

namespace e6crit {

/// Truncation control for the q-series.
struct Precision {
    double target_abs_error = 2e-14;
    int max_terms = 2000;
    /// Points below this height must be reduced before series evaluation.
    double min_im_for_series = 0.3;

    /// Throws Error(InvalidUse) when the invariants do not hold.
    void validate() const;
};

/// Modular and quasimodular data at one point tau.
///
/// g2, g3, eta1 are fixed multiples of E4, E6, E2; eta2 comes from the
/// Legendre relation. dE6 and d2E6 are the tau-derivatives of E6 obtained by
/// differentiating its q-series term by term, so the critical function
/// g2^2 - 18 eta1 g3 is available without cancellation near the cusp.
struct EisensteinEval {
    Complex tau;
    Complex g2, g3, eta1, eta2;
    Complex E2, E4, E6;
    Complex discriminant;
    Complex dE6, d2E6;
    /// Bound on the absolute error of g2, g3, eta1, eta2.
    double err_bound = 0.0;
    /// Bound on the absolute error of critical().
    double critical_err = 0.0;
    /// Bound on the absolute error of dE6 (used by the Ramanujan check).
    double dE6_err = 0.0;
    int terms_used = 0;

    /// g2^2 - 18 eta1 g3, computed from the E6' series.
    Complex critical() const;
    /// Derivative of critical() in tau, from the E6'' series.
    Complex critical_prime() const;
};

/// Closed-form tau-derivatives built from (g2, g3, eta1).
struct DerivativeBundle {
    Complex g2_prime;
    Complex g3_prime;
    Complex eta1_prime;
    /// Derivative of F = g2^2 - 18 eta1 g3.
    Complex critical_prime;
};

/// Series evaluation at a point with Im tau >= prec.min_im_for_series.
EisensteinEval eval(const HalfPlanePoint& tau, const Precision& prec = {});

DerivativeBundle derivative_bundle(const EisensteinEval& ev);

/// |pi i (E2 E6 - E4^2) - E6'| with E6' from the differentiated series.
double ramanujan_residual(const EisensteinEval& ev);

/// Combined error allowance for ramanujan_residual.
double ramanujan_tolerance(const EisensteinEval& ev);

/// Legendre residual |eta2 - tau eta1 + 2 pi i|.
double legendre_residual(const EisensteinEval& ev);

/// Fill E2, E4, E6 and the discriminant from g2, g3, eta1.
void rederive_normalized(EisensteinEval& ev);

}  // namespace e6crit
