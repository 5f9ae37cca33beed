#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "e6crit/critical.hpp"
#include "e6crit/eisenstein.hpp"
#include "e6crit/modular.hpp"

namespace e6crit {

enum class CurveId { C1, C2, C3 };

const char* to_string(CurveId c) noexcept;

/// A zero of f_C on one of the three curves in F0.
///
/// C2 and C3 are traced in param == C. C1 is traced in param == s with
/// C = 1/(1 - s), so that s = 1 is the point tau_infinity at C = infinity.
struct CurvePoint {
    ExtendedReal C;
    double param = 0.0;
    Complex tau;
    CurveId curve = CurveId::C2;
    Half half = Half::On;
    double residual = 0.0;
    Complex dtau_dparam;
    /// Bottom row (c, d) of the group element that produced a dense sample.
    std::optional<std::pair<long long, long long>> generator;
};

/// Curve parameter s of C1 for a given C (s = 1 - 1/C; infinite C gives 1).
double c1_param(const ExtendedReal& C);

struct TraceOptions {
    double max_step = 0.02;
    /// Parameter values (C on C2 and C3, s on C1) the tracer must land on exactly.
    std::vector<double> stations;
};

/// Continuation along one curve over [C_lo, C_hi]. For C1 a range with
/// C_lo > 1 and C_hi < 0 passes through C = infinity.
/// Throws Error(ContinuationStall) on step underflow, Error(BranchJump) when a
/// point leaves the half-plane its curve lives in.
std::vector<CurvePoint> trace_curve(CurveId curve, double C_lo, double C_hi,
                                    const TraceOptions& opts = {}, const Precision& prec = {});

struct FRestriction {
    std::vector<CurvePoint> points;
    /// Points whose membership in F disagrees with the predicted cut
    /// (C >= 1 on C2, C <= 0 on C3, nothing on C1), away from the cut itself.
    int cut_mismatches = 0;
    /// | |tau| - 1 | at C = 1 on C2, or | |tau - 1| - 1 | at C = 0 on C3, when sampled.
    std::optional<double> cut_circle_deviation;
};

FRestriction restrict_to_F(const std::vector<CurvePoint>& points);

struct DenseSampleSpec {
    int max_denominator = 2;
    Group group = Group::Gamma0_2;
    /// Only fractions -d/c with |d/c| <= max_abs_C are enumerated.
    double max_abs_C = 20.0;
    void validate() const;
};

/// Reduced critical points tau with phi(tau) = -d/c for coprime (c, d),
/// sorted by (C, Re tau).
std::vector<CurvePoint> dense_sample(const DenseSampleSpec& spec, const Precision& prec = {});

/// tau on a traced curve at a given parameter, by cubic Hermite interpolation
/// between the bracketing trace points. Empty outside the traced range.
std::optional<Complex> interpolate(const std::vector<CurvePoint>& trace, double param);

struct SymmetryReport {
    double max_deviation = 0.0;
    int pairs = 0;
};

/// max |tau_<(1 - C) - (1 - conj tau_>(C))| over C3 points whose partner 1 - C
/// appears among the C2 points.
SymmetryReport symmetry_check(const std::vector<CurvePoint>& points);

/// Reflection of C1 into itself: tau(1/s) against 1 - conj tau(s).
/// Partners that are not trace points are interpolated and then polished by
/// a direct solve at the partner parameter.
SymmetryReport c1_self_symmetry(const std::vector<CurvePoint>& c1);

/// C1 = 1/(1 - C2): each C2 point at C maps onto C1 at parameter s = C.
/// Partners are located as in c1_self_symmetry.
SymmetryReport mapping_check(const std::vector<CurvePoint>& c2, const std::vector<CurvePoint>& c1);

/// Smallest distance between two polylines, skipping points with Im > max_im
/// or within cusp_radius of 0 or 1.
double polyline_distance(const std::vector<CurvePoint>& a, const std::vector<CurvePoint>& b,
                         double max_im = 10.0, double cusp_radius = 0.05);

}  // namespace e6crit
