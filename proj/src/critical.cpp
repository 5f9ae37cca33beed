#include "e6crit/critical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>

namespace e6crit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kResidualLimit = 1e-9;

// Newton step cap and iteration budget.
constexpr double kMaxStep = 0.25;
constexpr int kMaxNewton = 80;

double b_infinity_bracket_lo() { return 0.5; }
double b_infinity_bracket_hi() { return constants::sqrt3 / 2.0; }

}  // namespace

FamilyParam FamilyParam::homotopy(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidUse, "t must lie in [0,1]");
    return {FamilyKind::HomotopyT, ExtendedReal(t)};
}

FamilyParam FamilyParam::curve(double C) {
    if (!std::isfinite(C)) throw Error(ErrorKind::InvalidUse, "C must be finite");
    return {FamilyKind::CurveC, ExtendedReal(C)};
}

FamilyParam FamilyParam::curve_infinity() {
    return {FamilyKind::CurveC, ExtendedReal::infinity()};
}

std::string FamilyParam::to_string() const {
    std::ostringstream os;
    os << (kind_ == FamilyKind::HomotopyT ? "t=" : "C=");
    if (value_.is_infinite())
        os << "inf";
    else
        os << value_.value();
    return os.str();
}

const char* to_string(DomainKind d) noexcept { return d == DomainKind::F0 ? "F0" : "F"; }

FamilyValue family_value(const FamilyParam& p, const EisensteinEval& ev) {
    const Complex F = ev.critical(), dF = ev.critical_prime();
    const Complex g2 = ev.g2, g3 = ev.g3;
    const double bare_scale = std::norm(g2) + 18.0 * std::abs(ev.eta1) * std::abs(g3);
    FamilyValue out;
    if (p.kind() == FamilyKind::HomotopyT) {
        const double t = p.value().value();
        const Complex dg2 = (kI / constants::pi) * (2.0 * ev.eta1 * g2 - 3.0 * g3);
        // (1-t) g2^2 + t F keeps the t = 1 member free of cancellation near i infinity.
        out.f = (1.0 - t) * g2 * g2 + t * F;
        out.df = 2.0 * (1.0 - t) * g2 * dg2 + t * dF;
        out.err = 2.0 * (1.0 - t) * std::abs(g2) * ev.err_bound + t * ev.critical_err;
        out.scale = (1.0 - t) * std::norm(g2) + t * bare_scale;
    } else if (p.value().is_infinite()) {
        out.f = F;
        out.df = dF;
        out.err = ev.critical_err;
        out.scale = bare_scale;
    } else {
        const Complex w = p.value().value() - ev.tau;
        const Complex k36(0.0, 36.0 * constants::pi);
        out.f = w * F - k36 * g3;
        out.df = -7.0 * F + w * dF;
        out.scale = std::abs(w) * std::abs(F) + 36.0 * constants::pi * std::abs(g3);
        out.err = std::abs(w) * ev.critical_err + 36.0 * constants::pi * ev.err_bound +
                  4.0 * kEps * out.scale;
    }
    if (out.scale == 0.0) out.scale = std::abs(out.f);
    return out;
}

Estimate eval_h(double t, const HalfPlanePoint& tau, const Precision& prec) {
    const FamilyValue v = family_value(FamilyParam::homotopy(t), eval_anywhere(tau, prec));
    return {v.f, v.err};
}

Estimate eval_fC(double C, const HalfPlanePoint& tau, const Precision& prec) {
    const FamilyValue v = family_value(FamilyParam::curve(C), eval_anywhere(tau, prec));
    return {v.f, v.err};
}

ExtendedComplex eval_phi(const HalfPlanePoint& tau, const Precision& prec) {
    const EisensteinEval ev = eval_anywhere(tau, prec);
    const Complex F = ev.critical();
    if (std::abs(F) <= ev.critical_err) return ExtendedComplex::infinity();
    return ExtendedComplex(ev.tau + Complex(0.0, 36.0 * constants::pi) * ev.g3 / F);
}

Complex eval_fC_derivative_at_zero(double C, const HalfPlanePoint& tau, const Precision& prec) {
    const EisensteinEval ev = eval_anywhere(tau, prec);
    const FamilyValue v = family_value(FamilyParam::curve(C), ev);
    if (std::abs(v.f) > 1e-8 * v.scale + v.err)
        throw Error(ErrorKind::InvalidUse, "f_C does not vanish at the given point");
    return -7.0 * ev.g2 * ev.discriminant / ev.critical();
}

// ---------------------------------------------------------------------------
// Newton refinement

namespace {

ZeroRecord newton(const FamilyParam& p, Complex seed, const Precision& prec) {
    Complex tau = seed;
    if (!(tau.imag() > 0.0)) throw Error(ErrorKind::NoConvergence, "seed outside H");
    EisensteinEval ev = eval_anywhere(HalfPlanePoint(tau), prec);
    FamilyValue v = family_value(p, ev);
    bool done = false;
    for (int it = 0; it < kMaxNewton && !done; ++it) {
        if (std::abs(v.f) <= 0.5 * kEps * v.scale) break;
        Complex step = v.f / v.df;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        if (std::abs(step) > kMaxStep) step *= kMaxStep / std::abs(step);
        double lambda = 1.0;
        bool accepted = false;
        for (int back = 0; back < 40; ++back, lambda *= 0.5) {
            const Complex cand = tau - lambda * step;
            if (!(cand.imag() > 0.0)) continue;
            const EisensteinEval ev2 = eval_anywhere(HalfPlanePoint(cand), prec);
            const FamilyValue v2 = family_value(p, ev2);
            if (std::abs(v2.f) < std::abs(v.f) || std::abs(v2.f) <= v2.err) {
                const double moved = std::abs(cand - tau);
                tau = cand;
                ev = ev2;
                v = v2;
                accepted = true;
                if (moved <= 4.0 * kEps * std::max(1.0, std::abs(tau))) done = true;
                break;
            }
        }
        if (!accepted) break;
    }
    ZeroRecord r{tau, p, std::abs(v.f) / v.scale, 1, half_of(tau, 0.0)};
    if (!(r.residual <= kResidualLimit))
        throw Error(ErrorKind::NoConvergence,
                    "Newton did not reach the residual limit for " + p.to_string());
    return r;
}

}  // namespace

ZeroRecord refine_fC_root(double C, Complex seed, const Precision& prec) {
    return newton(FamilyParam::curve(C), seed, prec);
}

ZeroRecord refine_h_root(double t, Complex seed, const Precision& prec) {
    return newton(FamilyParam::homotopy(t), seed, prec);
}

// ---------------------------------------------------------------------------
// tau_infinity

namespace {

double critical_on_line(double b, const Precision& prec) {
    return eval_anywhere(HalfPlanePoint(0.5, b), prec).critical().real();
}

}  // namespace

ZeroRecord find_tau_infinity(const Precision& prec) {
    double lo = b_infinity_bracket_lo(), hi = b_infinity_bracket_hi();
    double flo = critical_on_line(lo, prec);
    const double fhi = critical_on_line(hi, prec);
    if (!(flo > 0.0 && fhi < 0.0))
        throw Error(ErrorKind::NoConvergence, "F does not change sign on the bracket");
    for (int i = 0; i < 20; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = critical_on_line(mid, prec);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    // Newton in b using dF/db = i F'.
    double b = 0.5 * (lo + hi);
    EisensteinEval ev = eval_anywhere(HalfPlanePoint(0.5, b), prec);
    for (int it = 0; it < 30; ++it) {
        const double g = ev.critical().real();
        const double dg = (kI * ev.critical_prime()).real();
        const double step = g / dg;
        const double next = std::clamp(b - step, lo, hi);
        ev = eval_anywhere(HalfPlanePoint(0.5, next), prec);
        const bool small = std::abs(next - b) <= 2.0 * kEps * b;
        b = next;
        if (small) break;
    }
    const FamilyValue v = family_value(FamilyParam::curve_infinity(), ev);
    return {Complex(0.5, b), FamilyParam::curve_infinity(), std::abs(v.f) / v.scale, 1,
            Half::On};
}

// ---------------------------------------------------------------------------
// Homotopy roots on Re = 1/2

std::pair<ZeroRecord, ZeroRecord> homotopy_roots(double t, const Precision& prec) {
    if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::InvalidUse, "t must lie in (0,1)");
    auto h = [&](double b) { return eval_h(t, HalfPlanePoint(0.5, b), prec).value.real(); };
    auto bisect = [&](double lo, double hi) {
        double flo = h(lo);
        for (int i = 0; i < 40; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fm = h(mid);
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    const double rho_b = constants::sqrt3 / 2.0;
    if (!(h(0.5) > 0.0 && h(rho_b) < 0.0))
        throw Error(ErrorKind::NoConvergence, "h_t has no sign change below the corner");
    const double b1 = bisect(0.5, rho_b);
    double lo = rho_b, hi = rho_b;
    for (;;) {
        hi = lo + 0.05;
        if (h(hi) > 0.0) break;
        lo = hi;
        if (lo > 40.0) throw Error(ErrorKind::NoConvergence, "upper h_t zero not bracketed");
    }
    const double b2 = bisect(lo, hi);
    // Polish off the line so that landing back on it is a genuine check.
    ZeroRecord r1 = refine_h_root(t, Complex(0.52, b1), prec);
    ZeroRecord r2 = refine_h_root(t, Complex(0.52, b2), prec);
    r1.half = half_of(r1.tau, 1e-8);
    r2.half = half_of(r2.tau, 1e-8);
    return {r1, r2};
}

// ---------------------------------------------------------------------------
// Argument principle

namespace {

std::string format_point(Complex z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

struct Leg {
    std::function<Complex(double)> z;
    std::function<Complex(double)> dz;
};

Leg segment(Complex a, Complex b) {
    return {[=](double s) { return a + s * (b - a); }, [=](double) { return b - a; }};
}

Leg arc(Complex center, double radius, double theta0, double theta1) {
    const double dth = theta1 - theta0;
    return {[=](double s) { return center + radius * std::polar(1.0, theta0 + s * dth); },
            [=](double s) { return Complex(0.0, radius * dth) * std::polar(1.0, theta0 + s * dth); }};
}

std::vector<Leg> boundary_legs(DomainKind domain, const ContourSpec& c) {
    const double T = c.T, e = c.eps;
    std::vector<Leg> legs;
    if (domain == DomainKind::F0) {
        // Where the horocycle |tau - i e| = e meets |tau - 1/2| = 1/2.
        const Complex p(4.0 * e * e / (1.0 + 4.0 * e * e), 2.0 * e / (1.0 + 4.0 * e * e));
        const Complex pm = 1.0 - std::conj(p);
        const double th_p = std::arg(p - Complex(0.0, e));
        const double th_pm = std::arg(pm - Complex(1.0, e));
        const double al_p = std::arg(p - 0.5), al_pm = std::arg(pm - 0.5);
        legs.push_back(segment(Complex(0.0, T), Complex(0.0, 2.0 * e)));
        legs.push_back(arc(Complex(0.0, e), e, constants::pi / 2.0, th_p));
        legs.push_back(arc(0.5, 0.5, al_p, al_pm));
        legs.push_back(arc(Complex(1.0, e), e, th_pm, constants::pi / 2.0));
        legs.push_back(segment(Complex(1.0, 2.0 * e), Complex(1.0, T)));
        legs.push_back(segment(Complex(1.0, T), Complex(0.0, T)));
    } else {
        const double pi = constants::pi;
        legs.push_back(segment(Complex(0.0, T), Complex(0.0, 1.0)));
        legs.push_back(arc(0.0, 1.0, pi / 2.0, pi / 3.0));
        legs.push_back(arc(1.0, 1.0, 2.0 * pi / 3.0, pi / 2.0));
        legs.push_back(segment(Complex(1.0, 1.0), Complex(1.0, T)));
        legs.push_back(segment(Complex(1.0, T), Complex(0.0, T)));
    }
    return legs;
}

// 10-point Gauss-Legendre on [-1,1].
constexpr std::array<double, 5> kGLx = {0.1488743389816312, 0.4333953941292472,
                                        0.6794095682990244, 0.8650633666889845,
                                        0.9739065285171717};
constexpr std::array<double, 5> kGLw = {0.2955242247147529, 0.2692667193099963,
                                        0.2190863625159820, 0.1494513491505806,
                                        0.0666713443086881};

struct PanelSum {
    Complex winding;  // integral of f'/f
    Complex moment;   // integral of tau f'/f
};

class ContourIntegrator {
public:
    ContourIntegrator(const FamilyParam& p, const Precision& prec, double tol)
        : p_(p), prec_(prec), tol_(tol) {}

    void integrate(const Leg& leg, int initial_panels) {
        for (int k = 0; k < initial_panels; ++k) {
            const double a = static_cast<double>(k) / initial_panels;
            const double b = static_cast<double>(k + 1) / initial_panels;
            refine(leg, a, b, panel(leg, a, b), 0);
        }
    }

    PanelSum total() const { return total_; }
    double arg_total() const { return arg_total_; }
    int samples() const { return samples_; }

private:
    FamilyValue value_at(Complex tau) {
        ++samples_;
        const FamilyValue v = family_value(p_, eval_anywhere(HalfPlanePoint(tau), prec_));
        if (!(std::abs(v.f) > 100.0 * v.err))
            throw Error(ErrorKind::BoundaryZero,
                        "family value vanishes on the contour near " + format_point(tau));
        return v;
    }

    PanelSum panel(const Leg& leg, double a, double b) {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        PanelSum s{};
        for (std::size_t i = 0; i < kGLx.size(); ++i) {
            for (double sign : {-1.0, 1.0}) {
                const double u = mid + sign * half * kGLx[i];
                const Complex z = leg.z(u);
                const FamilyValue v = value_at(z);
                const Complex term = (v.df / v.f) * leg.dz(u) * (kGLw[i] * half);
                s.winding += term;
                s.moment += z * term;
            }
        }
        return s;
    }

    void refine(const Leg& leg, double a, double b, const PanelSum& whole, int depth) {
        const double m = 0.5 * (a + b);
        const PanelSum left = panel(leg, a, m), right = panel(leg, m, b);
        const Complex both = left.winding + right.winding;
        const double diff = std::abs(both - whole.winding);
        const bool tame = std::abs(both.imag()) < 1.0;
        if (diff <= tol_ && tame) {
            total_.winding += both;
            total_.moment += left.moment + right.moment;
            const FamilyValue fa = value_at(leg.z(a)), fb = value_at(leg.z(b));
            arg_total_ += std::arg(fb.f / fa.f);
            return;
        }
        if (depth >= 40)
            throw Error(ErrorKind::BoundaryZero, "argument integrand unresolved near the contour");
        refine(leg, a, m, left, depth + 1);
        refine(leg, m, b, right, depth + 1);
    }

    FamilyParam p_;
    Precision prec_;
    double tol_;
    PanelSum total_{};
    double arg_total_ = 0.0;
    int samples_ = 0;
};

struct CountPass {
    PanelSum total;
    double arg_total;
    int samples;
};

CountPass run_pass(const FamilyParam& family, DomainKind domain, const ContourSpec& contour,
                   const Precision& prec, double tol, int panels) {
    ContourIntegrator integ(family, prec, tol);
    for (const Leg& leg : boundary_legs(domain, contour)) integ.integrate(leg, panels);
    return {integ.total(), integ.arg_total(), integ.samples()};
}

}  // namespace

ZeroCountReport count_zeros(const FamilyParam& family, DomainKind domain,
                            const ContourSpec& contour, const Precision& prec) {
    if (!(contour.T >= 5.0)) throw Error(ErrorKind::InvalidUse, "contour height T must be >= 5");
    if (!(contour.eps > 0.0 && contour.eps <= 0.05))
        throw Error(ErrorKind::InvalidUse, "cusp radius eps must lie in (0, 0.05]");
    if (domain == DomainKind::F0 && family.kind() == FamilyKind::CurveC &&
        !family.value().is_infinite() &&
        (family.value().value() == 0.0 || family.value().value() == 1.0))
        throw Error(ErrorKind::InvalidUse, "f_0 and f_1 vanish on the boundary of F0");

    const Complex two_pi_i(0.0, constants::two_pi);
    ZeroCountReport rep;
    rep.family = family;
    rep.domain = domain;
    rep.contour = contour;

    // Halve the panel width until two successive passes agree.
    double tol = 1e-8;
    int panels = 8;
    CountPass prev = run_pass(family, domain, contour, prec, tol, panels);
    int samples = prev.samples;
    for (int round = 0; round < 4; ++round) {
        tol *= 0.1;
        panels *= 2;
        const CountPass cur = run_pass(family, domain, contour, prec, tol, panels);
        samples += cur.samples;
        const Complex w_prev = prev.total.winding / two_pi_i;
        const Complex w_cur = cur.total.winding / two_pi_i;
        const long n_prev = std::lround(w_prev.real()), n_cur = std::lround(w_cur.real());
        const double gap = std::abs(w_cur - static_cast<double>(n_cur));
        prev = cur;
        if (n_prev == n_cur && gap < 0.05) break;
    }

    const Complex w = prev.total.winding / two_pi_i;
    rep.count = static_cast<int>(std::lround(w.real()));
    rep.winding_raw = prev.total.winding;
    rep.integrality_gap = std::abs(w - static_cast<double>(rep.count));
    rep.arg_count = static_cast<int>(std::lround(prev.arg_total / constants::two_pi));
    rep.zero_sum = prev.total.moment / two_pi_i;
    rep.samples = samples;
    if (rep.count < 0 || !(rep.integrality_gap < 0.25) || rep.arg_count != rep.count)
        throw Error(ErrorKind::NonIntegral,
                    "winding number " + format_point(w) + " is not a certified integer (arg count " +
                        std::to_string(rep.arg_count) + ")");
    return rep;
}

// ---------------------------------------------------------------------------
// Seeds and solve_fC

namespace {

constexpr double kTableTop = 1e4;  // above this C the asymptotic seeds are used
constexpr int kTableNodes = 400;

struct SeedPair {
    Complex cusp;     // the root escaping to 1/4 + i infinity
    Complex bounded;  // the root tending to tau_infinity
};

const Complex& tau_infinity_cached() {
    static const Complex t = find_tau_infinity().tau;
    return t;
}

SeedPair asymptotic_seeds(double C) {
    const double pi = constants::pi;
    const Complex ti = tau_infinity_cached();
    const EisensteinEval ev = eval_anywhere(HalfPlanePoint(ti));
    const Complex bounded =
        ti + Complex(0.0, 36.0 * pi) * ev.g3 / ((C - ti) * ev.critical_prime());
    return {asymptotic_cusp_root(C), bounded};
}

class SeedTable {
public:
    static const SeedTable& instance() {
        static std::once_flag once;
        static SeedTable* table = nullptr;
        std::call_once(once, [] { table = new SeedTable(); });
        return *table;
    }

    SeedPair at(double C) const {
        if (C >= kTableTop) return asymptotic_seeds(C);
        const double s = std::log(C);
        const double pos = (s_top_ - s) / ds_;
        const int k = std::clamp(static_cast<int>(pos), 0, kTableNodes - 1);
        const double w = pos - k;
        return {nodes_[k].cusp + w * (nodes_[k + 1].cusp - nodes_[k].cusp),
                nodes_[k].bounded + w * (nodes_[k + 1].bounded - nodes_[k].bounded)};
    }

private:
    SeedTable() : s_top_(std::log(kTableTop)), ds_((std::log(kTableTop) - std::log(2.0)) / kTableNodes) {
        nodes_.resize(kTableNodes + 1);
        const SeedPair start = asymptotic_seeds(kTableTop);
        nodes_[0] = {refine_fC_root(kTableTop, start.cusp).tau,
                     refine_fC_root(kTableTop, start.bounded).tau};
        for (int k = 1; k <= kTableNodes; ++k) {
            const double C = std::exp(s_top_ - k * ds_);
            SeedPair guess = nodes_[k - 1];
            if (k >= 2) {
                guess.cusp = 2.0 * nodes_[k - 1].cusp - nodes_[k - 2].cusp;
                guess.bounded = 2.0 * nodes_[k - 1].bounded - nodes_[k - 2].bounded;
            }
            nodes_[k] = {refine_fC_root(C, guess.cusp).tau, refine_fC_root(C, guess.bounded).tau};
        }
    }

    double s_top_, ds_;
    std::vector<SeedPair> nodes_;
};

// Root maps between C and C* = m(C) >= 2, generated by tau -> 1/(1-tau) and
// the reflection tau -> 1 - conj(tau).
struct Mapped {
    double C_star;
    std::function<Complex(Complex)> back;  // root at C* -> root at C
};

Mapped map_to_upper(double C) {
    auto reflect = [](Complex z) { return 1.0 - std::conj(z); };
    if (C >= 2.0) return {C, [](Complex z) { return z; }};
    if (C > 1.0) return {C / (C - 1.0), [=](Complex z) { return 1.0 - 1.0 / reflect(z); }};
    if (C >= 0.5) return {1.0 / (1.0 - C), [](Complex z) { return 1.0 - 1.0 / z; }};
    if (C > 0.0) return {1.0 / C, [=](Complex z) { return 1.0 / (1.0 - reflect(z)); }};
    if (C >= -1.0) return {(C - 1.0) / C, [](Complex z) { return 1.0 / (1.0 - z); }};
    return {1.0 - C, reflect};
}

}  // namespace

Complex asymptotic_cusp_root(double C) {
    if (!(std::abs(C) >= 2.0)) throw Error(ErrorKind::InvalidUse, "asymptotic root needs |C| >= 2");
    const double pi = constants::pi;
    const double shift = 95.0 / (28.0 * pi);
    // phi(tau) = C with q^-1 = 168 pi X e^{-2 pi i a}: the real part fixes X, the
    // imaginary part pins a near 1/4 (C > 0) or 3/4 (C < 0).
    const double X = C > 0.0 ? C - 0.25 : 0.75 - C;
    const double b = std::log(168.0 * pi * X) / constants::two_pi;
    const double a = C > 0.0 ? 0.25 + (b - shift) / (constants::two_pi * X)
                             : 0.75 + (shift - b) / (constants::two_pi * X);
    return {a, b};
}

RootPair solve_fC(double C, const Precision& prec) {
    if (!std::isfinite(C)) throw Error(ErrorKind::InvalidUse, "solve_fC needs finite C");
    RootPair out;
    const Complex ti = tau_infinity_cached();
    if (C == 0.0) {
        out.right = refine_fC_root(0.0, 1.0 / (1.0 - ti), prec);
        return out;
    }
    if (C == 1.0) {
        out.left = refine_fC_root(1.0, (ti - 1.0) / ti, prec);
        return out;
    }
    const Mapped m = map_to_upper(C);
    const SeedPair seeds = SeedTable::instance().at(m.C_star);
    ZeroRecord r1 = refine_fC_root(C, m.back(seeds.cusp), prec);
    ZeroRecord r2 = refine_fC_root(C, m.back(seeds.bounded), prec);
    if (std::abs(r1.tau - r2.tau) < 1e-10)
        throw Error(ErrorKind::RootCollision, "both branches converged to one root");
    if (r1.tau.real() > r2.tau.real()) std::swap(r1, r2);
    if (!(r1.tau.real() < 0.5 && r2.tau.real() > 0.5))
        throw Error(ErrorKind::NoConvergence, "roots are not separated by Re tau = 1/2");
    r1.half = Half::Left;
    r2.half = Half::Right;
    out.left = r1;
    out.right = r2;
    return out;
}

std::vector<Complex> critical_points_in_domain(const UnimodularMatrix& g, Group group,
                                               const Precision& prec) {
    if (group == Group::Gamma0_2 && !g.in_gamma0_2())
        throw Error(ErrorKind::Membership, "matrix is not in Gamma0(2)");
    std::vector<Complex> out;
    auto push = [&](const Complex& tau) { out.push_back(mobius_apply(g, tau)); };
    if (g.c() == 0) {
        if (group == Group::Gamma0_2) push(tau_infinity_cached());
        return out;
    }
    const double C = -static_cast<double>(g.d()) / static_cast<double>(g.c());
    if (group == Group::Gamma0_2) {
        const RootPair roots = solve_fC(C, prec);
        if (roots.left) push(roots.left->tau);
        if (roots.right) push(roots.right->tau);
        return out;
    }
    if (C > 0.0 && C < 1.0) return out;
    const RootPair roots = solve_fC(C, prec);
    if (C >= 1.0)
        push(roots.left->tau);
    else
        push(roots.right->tau);
    return out;
}

}  // namespace e6crit
