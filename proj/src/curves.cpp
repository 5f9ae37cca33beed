#include "e6crit/curves.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <thread>

namespace e6crit {

namespace {

constexpr double kAsymptoticStart = 1e4;
constexpr double kImCutoff = 30.0;
constexpr double kCuspCutoff = 1e-3;
constexpr double kCorrectorResidual = 1e-10;

// The member (alpha - beta tau) F - 36 pi i beta g3 of the f_C family, which is
// beta f_C with C = alpha / beta. Both parameterizations are linear in the curve
// parameter lambda.
struct Equation {
    bool by_s;  // false: (alpha, beta) = (C, 1); true: (1, 1 - s)

    double alpha(double lam) const { return by_s ? 1.0 : lam; }
    double beta(double lam) const { return by_s ? 1.0 - lam : 1.0; }
    double dalpha() const { return by_s ? 0.0 : 1.0; }
    double dbeta() const { return by_s ? -1.0 : 0.0; }

    ExtendedReal C_of(double lam) const {
        if (!by_s) return ExtendedReal(lam);
        if (lam == 1.0) return ExtendedReal::infinity();
        return ExtendedReal(1.0 / (1.0 - lam));
    }
};

struct Local {
    Complex f, df_tau, df_lam;
    double scale;
};

Local local(const Equation& eq, double lam, Complex tau, const Precision& prec) {
    const EisensteinEval ev = eval_anywhere(HalfPlanePoint(tau), prec);
    const Complex F = ev.critical(), dF = ev.critical_prime();
    const Complex k36(0.0, 36.0 * constants::pi);
    const double a = eq.alpha(lam), b = eq.beta(lam);
    const Complex w = a - b * tau;
    Local out;
    out.f = w * F - k36 * b * ev.g3;
    out.df_tau = -7.0 * b * F + w * dF;
    out.df_lam = eq.dalpha() * F - eq.dbeta() * (tau * F + k36 * ev.g3);
    out.scale = std::abs(w) * std::abs(F) + 36.0 * constants::pi * std::abs(b) * std::abs(ev.g3);
    // At C = infinity the equation is F = 0 alone; measure it against the size
    // of the two terms of F instead.
    if (std::abs(b) < 1e-6)
        out.scale = std::abs(w) * (std::norm(ev.g2) + 18.0 * std::abs(ev.eta1) * std::abs(ev.g3));
    return out;
}

struct Node {
    double lam;
    Complex tau;
    Complex tangent;
    double residual;
};

// Plain Newton at fixed lambda; false when it wanders or fails to settle.
bool correct(const Equation& eq, double lam, Complex& tau, double max_move, Node& out,
             const Precision& prec) {
    const Complex start = tau;
    Local v = local(eq, lam, tau, prec);
    for (int it = 0; it < 12; ++it) {
        const Complex step = v.f / v.df_tau;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
        tau -= step;
        if (!(tau.imag() > 0.0) || std::abs(tau - start) > max_move) return false;
        v = local(eq, lam, tau, prec);
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(tau))) break;
    }
    const double res = std::abs(v.f) / v.scale;
    if (!(res <= kCorrectorResidual)) return false;
    out = {lam, tau, -v.df_lam / v.df_tau, res};
    return true;
}

bool past_cutoff(Complex tau) {
    return tau.imag() > kImCutoff || std::abs(tau) < kCuspCutoff ||
           std::abs(tau - 1.0) < kCuspCutoff;
}

// Continuation from (lam0, tau0) toward lam_end. The required half is checked
// by the caller-supplied predicate.
template <class HalfOk>
std::vector<Node> continue_branch(const Equation& eq, double lam0, Complex tau0, double lam_end,
                                  std::vector<double> stations, double max_step,
                                  HalfOk half_ok, const Precision& prec) {
    std::vector<Node> nodes;
    Node cur;
    Complex t = tau0;
    if (!correct(eq, lam0, t, 0.5, cur, prec))
        throw Error(ErrorKind::NoConvergence, "continuation start did not converge");
    nodes.push_back(cur);
    if (lam_end == lam0) return nodes;

    const double dir = lam_end > lam0 ? 1.0 : -1.0;
    stations.push_back(lam_end);
    std::sort(stations.begin(), stations.end());
    if (dir < 0) std::reverse(stations.begin(), stations.end());
    std::erase_if(stations, [&](double s) { return dir * (s - lam0) <= 0.0 || dir * (s - lam_end) > 0.0; });

    double h = max_step / std::max(std::abs(cur.tangent), 1e-300);
    int successes = 0;
    std::size_t next_station = 0;
    while (next_station < stations.size()) {
        const double cap = max_step / std::max(std::abs(cur.tangent), 1e-300);
        h = std::min(h, cap);
        const double target = stations[next_station];
        double lam_next = cur.lam + dir * h;
        bool at_station = false;
        if (dir * (lam_next - target) >= 0.0) {
            lam_next = target;
            at_station = true;
        }
        const double dl = lam_next - cur.lam;
        Complex pred = cur.tau + dl * cur.tangent;
        Node nxt;
        bool ok = pred.imag() > 0.0 && correct(eq, lam_next, pred, 0.5 * max_step + 1e-12, nxt, prec);
        // A large Euler-predictor miss means the parameter step outruns the
        // curvature; this also keeps cubic Hermite interpolation accurate.
        if (ok && (std::abs(nxt.tau - cur.tau) > 2.0 * max_step ||
                   std::abs(nxt.tau - (cur.tau + dl * cur.tangent)) > 0.05 * max_step))
            ok = false;
        if (ok && !half_ok(nxt)) ok = false;
        if (!ok) {
            h = std::abs(dl) * 0.5;
            successes = 0;
            if (h <= 1e-13 * std::max(1.0, std::abs(cur.lam))) {
                Node probe;
                Complex p2 = cur.tau + (dir * h) * cur.tangent;
                if (p2.imag() > 0.0 && correct(eq, cur.lam + dir * h, p2, max_step, probe, prec) &&
                    !half_ok(probe))
                    throw Error(ErrorKind::BranchJump, "trace left the half-plane of its curve");
                throw Error(ErrorKind::ContinuationStall, "continuation step underflow");
            }
            continue;
        }
        cur = nxt;
        nodes.push_back(cur);
        if (at_station) ++next_station;
        if (++successes >= 5) {
            h *= 2.0;
            successes = 0;
        }
        if (past_cutoff(cur.tau)) break;
    }
    return nodes;
}

Half half_for(CurveId curve, double param) {
    switch (curve) {
        case CurveId::C2: return Half::Left;
        case CurveId::C3: return Half::Right;
        case CurveId::C1:
            if (param == 1.0) return Half::On;
            return param < 1.0 ? Half::Right : Half::Left;
    }
    return Half::On;
}

CurvePoint to_point(CurveId curve, const Equation& eq, const Node& n) {
    CurvePoint p;
    p.C = eq.C_of(n.lam);
    p.param = n.lam;
    p.tau = n.tau;
    p.curve = curve;
    p.half = half_for(curve, n.lam);
    p.residual = n.residual;
    p.dtau_dparam = n.tangent;
    return p;
}

}  // namespace

const char* to_string(CurveId c) noexcept {
    switch (c) {
        case CurveId::C1: return "C1";
        case CurveId::C2: return "C2";
        case CurveId::C3: return "C3";
    }
    return "?";
}

double c1_param(const ExtendedReal& C) {
    if (C.is_infinite()) return 1.0;
    return 1.0 - 1.0 / C.value();
}

std::vector<CurvePoint> trace_curve(CurveId curve, double C_lo, double C_hi,
                                    const TraceOptions& opts, const Precision& prec) {
    if (!(opts.max_step > 0.0)) throw Error(ErrorKind::InvalidUse, "max_step must be positive");
    std::vector<CurvePoint> out;

    if (curve == CurveId::C2 || curve == CurveId::C3) {
        const bool left = curve == CurveId::C2;
        if (left && !(C_lo > 0.0 && C_lo < C_hi))
            throw Error(ErrorKind::InvalidUse, "C2 is parameterized by 0 < C_lo < C_hi");
        if (!left && !(C_lo < C_hi && C_hi < 1.0))
            throw Error(ErrorKind::InvalidUse, "C3 is parameterized by C_lo < C_hi < 1");
        const Equation eq{false};
        // Start far out at the cusp end, where the asymptotic zero is accurate.
        const double start = left ? std::max(kAsymptoticStart, C_hi) : std::min(-kAsymptoticStart, C_lo);
        const double end = left ? C_lo : C_hi;
        std::vector<double> stations = opts.stations;
        stations.push_back(left ? C_hi : C_lo);
        const Half want = left ? Half::Left : Half::Right;
        auto half_ok = [&](const Node& n) { return half_of(n.tau) == want; };
        const auto nodes = continue_branch(eq, start, asymptotic_cusp_root(start), end, stations,
                                           opts.max_step, half_ok, prec);
        for (const Node& n : nodes)
            if (n.lam >= C_lo && n.lam <= C_hi) out.push_back(to_point(curve, eq, n));
        std::sort(out.begin(), out.end(),
                  [](const CurvePoint& a, const CurvePoint& b) { return a.param < b.param; });
        return out;
    }

    // C1 in s = 1 - 1/C, starting at tau_infinity (s = 1).
    const bool lo_ok = C_lo > 1.0 || C_lo < 0.0;
    const bool hi_ok = C_hi > 1.0 || C_hi < 0.0;
    if (!lo_ok || !hi_ok)
        throw Error(ErrorKind::InvalidUse, "C1 lives on C in (-inf,0) u {inf} u (1,inf)");
    const double s_lo = 1.0 - 1.0 / C_lo, s_hi = 1.0 - 1.0 / C_hi;
    if (!(s_lo < s_hi)) throw Error(ErrorKind::InvalidUse, "empty C1 parameter range");
    const Equation eq{true};
    const Complex ti = find_tau_infinity(prec).tau;
    auto half_ok = [&](const Node& n) {
        if (std::abs(n.lam - 1.0) < 1e-6) return true;
        return half_of(n.tau) == half_for(CurveId::C1, n.lam);
    };
    std::vector<double> stations = opts.stations;
    stations.push_back(s_lo);
    stations.push_back(s_hi);
    std::vector<Node> all;
    if (s_lo < 1.0) {
        auto down = continue_branch(eq, 1.0, ti, s_lo, stations, opts.max_step, half_ok, prec);
        all.insert(all.end(), down.begin(), down.end());
    }
    if (s_hi > 1.0) {
        auto up = continue_branch(eq, 1.0, ti, s_hi, stations, opts.max_step, half_ok, prec);
        all.insert(all.end(), up.begin(), up.end());
    }
    for (const Node& n : all)
        if (n.lam >= s_lo && n.lam <= s_hi) out.push_back(to_point(CurveId::C1, eq, n));
    std::sort(out.begin(), out.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.param < b.param; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const CurvePoint& a, const CurvePoint& b) { return a.param == b.param; }),
              out.end());
    return out;
}

FRestriction restrict_to_F(const std::vector<CurvePoint>& points) {
    FRestriction r;
    for (const CurvePoint& p : points) {
        const bool inside = in_F(p.tau, 1e-10);
        if (inside) r.points.push_back(p);
        if (p.C.is_infinite()) {
            if (inside) ++r.cut_mismatches;
            continue;
        }
        const double C = p.C.value();
        bool predicted = false, near_cut = false;
        switch (p.curve) {
            case CurveId::C1: predicted = false; break;
            case CurveId::C2:
                predicted = C >= 1.0;
                near_cut = std::abs(C - 1.0) < 1e-6;
                if (C == 1.0) r.cut_circle_deviation = std::abs(std::abs(p.tau) - 1.0);
                break;
            case CurveId::C3:
                predicted = C <= 0.0;
                near_cut = std::abs(C) < 1e-6;
                if (C == 0.0) r.cut_circle_deviation = std::abs(std::abs(p.tau - 1.0) - 1.0);
                break;
        }
        if (!near_cut && predicted != inside) ++r.cut_mismatches;
    }
    return r;
}

void DenseSampleSpec::validate() const {
    if (max_denominator < 2) throw Error(ErrorKind::InvalidUse, "max_denominator must be >= 2");
    if (!(max_abs_C > 0.0)) throw Error(ErrorKind::InvalidUse, "max_abs_C must be positive");
}

std::vector<CurvePoint> dense_sample(const DenseSampleSpec& spec, const Precision& prec) {
    spec.validate();
    const bool g02 = spec.group == Group::Gamma0_2;
    std::vector<long long> denominators;
    for (long long c = 1; c <= spec.max_denominator; ++c)
        if (!g02 || c % 2 == 0) denominators.push_back(c);

    auto row = [&](long long c) {
        std::vector<CurvePoint> pts;
        const auto dmax = static_cast<long long>(std::floor(spec.max_abs_C * static_cast<double>(c)));
        for (long long d = -dmax; d <= dmax; ++d) {
            if (std::gcd(c, d) != 1) continue;
            const double C = -static_cast<double>(d) / static_cast<double>(c);
            if (!g02 && C > 0.0 && C < 1.0) continue;
            const RootPair roots = solve_fC(C, prec);
            auto add = [&](const ZeroRecord& z, CurveId id) {
                CurvePoint p;
                p.C = ExtendedReal(C);
                p.param = id == CurveId::C1 ? c1_param(p.C) : C;
                p.tau = z.tau;
                p.curve = id;
                p.half = z.half;
                p.residual = z.residual;
                p.generator = std::make_pair(c, d);
                pts.push_back(p);
            };
            const bool want_left = g02 || C >= 1.0;
            const bool want_right = g02 || C <= 0.0;
            if (want_left && roots.left) add(*roots.left, C > 0.0 ? CurveId::C2 : CurveId::C1);
            if (want_right && roots.right) add(*roots.right, C < 1.0 ? CurveId::C3 : CurveId::C1);
        }
        return pts;
    };

    const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<CurvePoint> out;
    for (std::size_t base = 0; base < denominators.size(); base += workers) {
        std::vector<std::future<std::vector<CurvePoint>>> jobs;
        for (std::size_t k = base; k < std::min(denominators.size(), base + workers); ++k)
            jobs.push_back(std::async(std::launch::async, row, denominators[k]));
        for (auto& j : jobs) {
            auto pts = j.get();
            out.insert(out.end(), pts.begin(), pts.end());
        }
    }
    std::sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) {
        if (a.C.value() != b.C.value()) return a.C.value() < b.C.value();
        return a.tau.real() < b.tau.real();
    });
    return out;
}

std::optional<Complex> interpolate(const std::vector<CurvePoint>& trace, double param) {
    if (trace.empty() || param < trace.front().param || param > trace.back().param) return {};
    auto it = std::lower_bound(trace.begin(), trace.end(), param,
                               [](const CurvePoint& p, double v) { return p.param < v; });
    if (it != trace.end() && it->param == param) return it->tau;
    if (it == trace.begin()) return {};
    const CurvePoint& a = *(it - 1);
    const CurvePoint& b = *it;
    const double h = b.param - a.param;
    const double t = (param - a.param) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * a.tau + (t3 - 2 * t2 + t) * h * a.dtau_dparam +
           (-2 * t3 + 3 * t2) * b.tau + (t3 - t2) * h * b.dtau_dparam;
}

namespace {

// Exact station match if there is one. Otherwise the interpolated point is
// polished by Newton on the C1 equation at that parameter.
std::optional<Complex> lookup(const std::vector<CurvePoint>& trace, double param) {
    auto it = std::lower_bound(trace.begin(), trace.end(), param - 1e-12,
                               [](const CurvePoint& p, double v) { return p.param < v; });
    if (it != trace.end() && std::abs(it->param - param) <= 1e-12) return it->tau;
    const auto guess = interpolate(trace, param);
    if (!guess) return guess;
    Complex tau = *guess;
    Node polished;
    if (!correct(Equation{true}, param, tau, 1e-3, polished, Precision{})) return guess;
    return polished.tau;
}

std::vector<CurvePoint> of_curve(const std::vector<CurvePoint>& pts, CurveId id) {
    std::vector<CurvePoint> out;
    std::copy_if(pts.begin(), pts.end(), std::back_inserter(out),
                 [&](const CurvePoint& p) { return p.curve == id; });
    std::sort(out.begin(), out.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.param < b.param; });
    return out;
}

}  // namespace

SymmetryReport symmetry_check(const std::vector<CurvePoint>& points) {
    const auto c2 = of_curve(points, CurveId::C2);
    const auto c3 = of_curve(points, CurveId::C3);
    SymmetryReport r;
    for (const CurvePoint& p : c3) {
        const double partner = 1.0 - p.param;
        auto it = std::find_if(c2.begin(), c2.end(), [&](const CurvePoint& q) {
            return std::abs(q.param - partner) <= 1e-12;
        });
        if (it == c2.end()) continue;
        ++r.pairs;
        r.max_deviation = std::max(r.max_deviation, std::abs(it->tau - (1.0 - std::conj(p.tau))));
    }
    return r;
}

SymmetryReport c1_self_symmetry(const std::vector<CurvePoint>& c1) {
    SymmetryReport r;
    for (const CurvePoint& p : c1) {
        if (p.curve != CurveId::C1 || p.param <= 0.0) continue;
        const auto mirror = lookup(c1, 1.0 / p.param);
        if (!mirror) continue;
        ++r.pairs;
        r.max_deviation = std::max(r.max_deviation, std::abs(*mirror - (1.0 - std::conj(p.tau))));
    }
    return r;
}

SymmetryReport mapping_check(const std::vector<CurvePoint>& c2, const std::vector<CurvePoint>& c1) {
    SymmetryReport r;
    for (const CurvePoint& p : c2) {
        if (p.curve != CurveId::C2) continue;
        const auto image = lookup(c1, p.param);
        if (!image) continue;
        ++r.pairs;
        r.max_deviation = std::max(r.max_deviation, std::abs(*image - 1.0 / (1.0 - p.tau)));
    }
    return r;
}

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double segment_segment(Complex a, Complex b, Complex c, Complex d) {
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return 0.0;
    return std::min({point_segment(a, c, d), point_segment(b, c, d), point_segment(c, a, b),
                     point_segment(d, a, b)});
}

std::vector<Complex> usable(const std::vector<CurvePoint>& pts, double max_im, double cusp) {
    std::vector<Complex> out;
    for (const CurvePoint& p : pts)
        if (p.tau.imag() <= max_im && std::abs(p.tau) >= cusp && std::abs(p.tau - 1.0) >= cusp)
            out.push_back(p.tau);
    return out;
}

}  // namespace

double polyline_distance(const std::vector<CurvePoint>& a, const std::vector<CurvePoint>& b,
                         double max_im, double cusp_radius) {
    const auto pa = usable(a, max_im, cusp_radius), pb = usable(b, max_im, cusp_radius);
    double best = std::numeric_limits<double>::infinity();
    if (pa.size() < 2 || pb.size() < 2) return best;
    for (std::size_t i = 0; i + 1 < pa.size(); ++i)
        for (std::size_t j = 0; j + 1 < pb.size(); ++j)
            best = std::min(best, segment_segment(pa[i], pa[i + 1], pb[j], pb[j + 1]));
    return best;
}

}  // namespace e6crit
