#pragma once

#include <optional>
#include <string>
#include <vector>

#include "e6crit/eisenstein.hpp"
#include "e6crit/modular.hpp"
#include "e6crit/types.hpp"

namespace e6crit {

enum class FamilyKind { HomotopyT, CurveC };

/// Parameter of h_t (t in [0,1]) or of f_C (C real or infinite).
class FamilyParam {
public:
    static FamilyParam homotopy(double t);
    static FamilyParam curve(double C);
    static FamilyParam curve_infinity();

    FamilyKind kind() const noexcept { return kind_; }
    const ExtendedReal& value() const noexcept { return value_; }
    std::string to_string() const;

private:
    FamilyParam(FamilyKind k, ExtendedReal v) : kind_(k), value_(v) {}
    FamilyKind kind_;
    ExtendedReal value_;
};

enum class DomainKind { F0, F };

const char* to_string(DomainKind d) noexcept;

struct ZeroRecord {
    Complex tau;
    FamilyParam param;
    /// |f(tau)| divided by the local magnitude of the terms of f.
    double residual = 0.0;
    int multiplicity = 1;
    Half half = Half::On;
};

struct ContourSpec {
    double T = 12.0;
    double eps = 0.02;
};

struct ZeroCountReport {
    FamilyParam family = FamilyParam::curve(0.0);
    DomainKind domain = DomainKind::F0;
    int count = 0;
    ContourSpec contour;
    /// Number of points at which the family was evaluated.
    int samples = 0;
    /// Contour integral of f'/f.
    Complex winding_raw;
    /// |winding_raw / (2 pi i) - count|.
    double integrality_gap = 0.0;
    /// Count from summed argument increments between panel ends.
    int arg_count = 0;
    /// Contour integral of tau f'/f over 2 pi i: the sum of the enclosed zeros.
    Complex zero_sum;
    /// The horocycle caps at the cusps are excluded and taken to hold no zeros.
    bool cusp_caps_assumed_empty = true;
};

/// A value together with an estimate of its absolute error.
struct Estimate {
    Complex value;
    double err = 0.0;
};

/// Value and first derivative of h_t or f_C at one point, plus the size of
/// the individual terms (used to normalize residuals).
struct FamilyValue {
    Complex f, df;
    double err = 0.0;
    double scale = 0.0;
};

FamilyValue family_value(const FamilyParam& p, const EisensteinEval& ev);

/// h_t = g2^2 - 18 t eta1 g3, t in [0,1].
Estimate eval_h(double t, const HalfPlanePoint& tau, const Precision& prec = {});

/// f_C = (C - tau)(g2^2 - 18 eta1 g3) - 36 pi i g3.
Estimate eval_fC(double C, const HalfPlanePoint& tau, const Precision& prec = {});

/// tau + 36 pi i g3 / (g2^2 - 18 eta1 g3); infinite when the denominator is
/// within its error bound of zero.
ExtendedComplex eval_phi(const HalfPlanePoint& tau, const Precision& prec = {});

/// Closed form -7 g2 Delta / (g2^2 - 18 eta1 g3), valid only at a zero of f_C.
/// Throws Error(InvalidUse) if f_C(tau) is not zero to within 1e-8 of its scale.
Complex eval_fC_derivative_at_zero(double C, const HalfPlanePoint& tau,
                                   const Precision& prec = {});

ZeroCountReport count_zeros(const FamilyParam& family, DomainKind domain,
                            const ContourSpec& contour = {}, const Precision& prec = {});

/// The zero 1/2 + i b_inf of g2^2 - 18 eta1 g3 on the line Re = 1/2.
ZeroRecord find_tau_infinity(const Precision& prec = {});

/// Damped Newton on f_C from seed. Throws Error(NoConvergence).
ZeroRecord refine_fC_root(double C, Complex seed, const Precision& prec = {});

/// Damped Newton on h_t from seed. Throws Error(NoConvergence).
ZeroRecord refine_h_root(double t, Complex seed, const Precision& prec = {});

/// Leading-order zero of f_C escaping to the cusp at infinity as |C| grows:
/// Re tau -> 1/4 for C -> +inf, 3/4 for C -> -inf. Needs |C| >= 2.
Complex asymptotic_cusp_root(double C);

/// Zeros of f_C in F0: left has Re < 1/2, right has Re > 1/2.
/// At C = 0 only right (tau_0) is present, at C = 1 only left (tau_1).
struct RootPair {
    std::optional<ZeroRecord> left;
    std::optional<ZeroRecord> right;
};

RootPair solve_fC(double C, const Precision& prec = {});

/// The two zeros of h_t on Re = 1/2 for t in (0,1), ordered by height.
std::pair<ZeroRecord, ZeroRecord> homotopy_roots(double t, const Precision& prec = {});

/// Critical points of E6 inside g(F0) (Gamma0_2) or g(F) (SL2Z).
/// Throws Error(Membership) when g is not in the group.
std::vector<Complex> critical_points_in_domain(const UnimodularMatrix& g, Group group,
                                               const Precision& prec = {});

}  // namespace e6crit
