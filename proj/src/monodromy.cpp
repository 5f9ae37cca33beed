#include "e6crit/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>

#include "e6crit/critical.hpp"
#include "e6crit/modular.hpp"

namespace e6crit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void lattice_coords(Complex z, Complex tau, double& a, double& b) {
    b = z.imag() / tau.imag();
    a = z.real() - b * tau.real();
}

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

Complex det2(const Matrix2& m) { return m[0] * m[3] - m[1] * m[2]; }

Matrix2 mul2(const Matrix2& x, const Matrix2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Matrix2 inv2(const Matrix2& m) {
    const Complex d = det2(m);
    return {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
}

// Two solutions of y'' = I y side by side: (y_a, y_a', y_b, y_b').
using State = std::array<Complex, 4>;

struct Path {
    std::function<Complex(double)> z;
    std::function<Complex(double)> dz;
};

struct Potential {
    HalfPlanePoint tau;
    SingularPoints sing;
    Precision prec;
    Complex p1, p2, dp1_sq, dp2_sq;
    double* residual;

    Complex operator()(Complex z) const {
        const WeierstrassEval w = weierstrass_eval(z, tau, prec);
        const Complex sum = sum_form(w);
        const Complex closed = potential_closed(w);
        *residual = std::max(*residual, std::abs(sum - closed) / std::abs(closed));
        return sum;
    }

    Complex sum_form(const WeierstrassEval& w) const {
        const Complex z = w.z;
        Complex around = 0.0;
        for (Complex q : {sing.q1, sing.q2}) {
            around += weierstrass_eval(z - q, tau, prec).p + weierstrass_eval(z + q, tau, prec).p;
        }
        return 12.0 * w.p + 2.0 * around + dp1_sq / (p1 * (w.p - p1)) + dp2_sq / (p2 * (w.p - p2));
    }
};

Potential make_potential(const HalfPlanePoint& tau, const SingularPoints& s, const Precision& prec,
                         const EisensteinEval& ev, double* residual) {
    Potential pot{tau, s, prec, {}, {}, {}, {}, residual};
    pot.p1 = std::sqrt(ev.g2 / 12.0);
    pot.p2 = -pot.p1;
    const auto cubic = [&](Complex p) { return 4.0 * p * p * p - ev.g2 * p - ev.g3; };
    pot.dp1_sq = cubic(pot.p1);
    pot.dp2_sq = cubic(pot.p2);
    return pot;
}

// Dormand-Prince 5(4) on the path parameter s in [0, 1].
struct Dp5Result {
    State end;
    int steps = 0;
};

Dp5Result integrate(const Path& path, const std::function<Complex(Complex)>& I, State y,
                    double rtol, int max_steps) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const auto rhs = [&](double s, const State& u) {
        const Complex dz = path.dz(s);
        const Complex pot = I(path.z(s));
        return State{dz * u[1], dz * pot * u[0], dz * u[3], dz * pot * u[2]};
    };
    const auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms,
                         double h) {
        State out = base;
        for (const auto& [coef, k] : terms)
            for (int i = 0; i < 4; ++i) out[i] += h * coef * (*k)[i];
        return out;
    };

    double s = 0.0, h = 0.01;
    State k1 = rhs(s, y);
    int steps = 0;
    while (s < 1.0) {
        if (steps >= max_steps) throw Error(ErrorKind::Stiffness, "step budget exhausted");
        if (s + h > 1.0) h = 1.0 - s;
        const State k2 = rhs(s + c2 * h, axpy(y, {{a21, &k1}}, h));
        const State k3 = rhs(s + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
        const State k4 = rhs(s + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
        const State k5 =
            rhs(s + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
        const State k6 = rhs(
            s + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
        const State yn =
            axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
        const State k7 = rhs(s + h, yn);

        // Error measured per solution against the size of its (y, y') pair.
        double err = 0.0;
        for (int sol = 0; sol < 2; ++sol) {
            const double scale =
                std::max({std::abs(y[2 * sol]), std::abs(y[2 * sol + 1]), std::abs(yn[2 * sol]),
                          std::abs(yn[2 * sol + 1])});
            for (int i = 2 * sol; i < 2 * sol + 2; ++i) {
                const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                err = std::max(err, std::abs(e) / (rtol * scale));
            }
        }
        if (!std::isfinite(err)) err = 1e10;
        if (err <= 1.0) {
            s += h;
            y = yn;
            k1 = k7;
            ++steps;
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < 1e-12) throw Error(ErrorKind::Stiffness, "step size underflow");
    }
    return {y, steps};
}

struct Basis {
    WeierstrassEval w;
    Complex y1, dy1, y2, dy2;
};

Basis analytic_basis(Complex z, const HalfPlanePoint& tau, const Precision& prec) {
    Basis b{weierstrass_eval(z, tau, prec), {}, {}, {}, {}};
    const WeierstrassEval& w = b.w;
    b.y1 = 1.0 / w.p_dprime;
    b.dy1 = -12.0 * w.p * w.p_prime / (w.p_dprime * w.p_dprime);
    const Complex x = chi(w);
    b.y2 = b.y1 * x;
    b.dy2 = b.dy1 * x + 7.0 / b.y1;
    return b;
}

std::vector<Complex> singular_set(const SingularPoints& s, Complex tau, int span) {
    std::vector<Complex> out;
    for (int m = -span; m <= span; ++m)
        for (int n = -span; n <= span; ++n) {
            const Complex l = static_cast<double>(m) + static_cast<double>(n) * tau;
            for (Complex c : {Complex(0.0), s.q1, -s.q1, s.q2, -s.q2}) out.push_back(c + l);
        }
    return out;
}

}  // namespace

Complex reduce_to_cell(Complex z, Complex tau) {
    double a, b;
    lattice_coords(z, tau, a, b);
    const double n = std::floor(b + 0.5), m = std::floor(a + 0.5);
    return z - m - n * tau;
}

double lattice_distance(Complex z, Complex tau) {
    const Complex r = reduce_to_cell(z, tau);
    double d = std::numeric_limits<double>::infinity();
    for (int m = -1; m <= 1; ++m)
        for (int n = -1; n <= 1; ++n)
            d = std::min(d, std::abs(r - static_cast<double>(m) - static_cast<double>(n) * tau));
    return d;
}

SingularPoints solve_singular_points(const HalfPlanePoint& tau, const Precision& prec) {
    const EisensteinEval ev = eval_anywhere(tau, prec);
    if (std::abs(ev.g2) < 1e-6 * (4.0 * constants::pi4 / 3.0))
        throw Error(ErrorKind::G2TooSmall, "g2 vanishes to working precision");
    const Complex r = std::sqrt(ev.g2 / 12.0);
    const Complex t = tau.value();

    const auto solve = [&](Complex target) {
        // Coarse grid for the best seed, then Newton on p(q) = target.
        constexpr int kGrid = 12;
        Complex best{};
        double best_val = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kGrid; ++i)
            for (int j = 0; j < kGrid; ++j) {
                const Complex z = (i + 0.5) / kGrid - 0.5 + ((j + 0.5) / kGrid - 0.5) * t;
                if (lattice_distance(z, t) < 0.05) continue;
                const double v = std::abs(weierstrass_eval(z, tau, prec).p - target);
                if (v < best_val) {
                    best_val = v;
                    best = z;
                }
            }
        Complex q = best;
        for (int it = 0; it < 60; ++it) {
            const WeierstrassEval w = weierstrass_eval(q, tau, prec);
            const Complex f = w.p - target;
            if (std::abs(f) <= 4.0 * (w.err_bound + kEps * std::abs(target))) break;
            Complex step = f / w.p_prime;
            const double cap = 0.1 * std::min(1.0, t.imag());
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            q = reduce_to_cell(q - step, t);
            if (it == 59) throw Error(ErrorKind::NoConvergence, "singular point Newton failed");
        }
        const WeierstrassEval w = weierstrass_eval(q, tau, prec);
        const double scale = std::abs(w.g2);
        if (std::abs(w.p_dprime) > 1e-9 * scale)
            throw Error(ErrorKind::NoConvergence, "p'' does not vanish at the singular point");
        return std::make_pair(q, std::abs(w.p_dprime));
    };

    SingularPoints out;
    std::tie(out.q1, out.residual1) = solve(r);
    std::tie(out.q2, out.residual2) = solve(-r);
    return out;
}

Complex chi(const WeierstrassEval& w) {
    return 18.0 * w.p * w.p * w.p_prime + 0.5 * w.g2 * w.p_prime + 2.0 * w.g2 * w.g2 * w.z -
           36.0 * w.g3 * w.zeta_w;
}

Complex chi_prime_expanded(const WeierstrassEval& w) {
    // (p^2 p')' = 2 p p'^2 + p^2 p''; zeta' = -p.
    return 18.0 * (2.0 * w.p * w.p_prime * w.p_prime + w.p * w.p * w.p_dprime) +
           0.5 * w.g2 * w.p_dprime + 2.0 * w.g2 * w.g2 + 36.0 * w.g3 * w.p;
}

Complex potential_from_sum(Complex z, const HalfPlanePoint& tau, const SingularPoints& s,
                           const Precision& prec) {
    const EisensteinEval ev = eval_anywhere(tau, prec);
    double unused = 0.0;
    const Potential pot = make_potential(tau, s, prec, ev, &unused);
    return pot.sum_form(weierstrass_eval(z, tau, prec));
}

Complex potential_closed(const WeierstrassEval& w) {
    const Complex p3 = 12.0 * w.p * w.p_prime;
    const Complex p4 = 12.0 * (w.p_prime * w.p_prime + w.p * w.p_dprime);
    const Complex r = p3 / w.p_dprime;
    return 2.0 * r * r - p4 / w.p_dprime;
}

MonodromyResult chi_and_D(const HalfPlanePoint& tau, const Precision& prec) {
    const EisensteinEval ev = eval_anywhere(tau, prec);
    MonodromyResult out;
    out.tau = tau.value();
    const Complex F = ev.critical();
    out.chi1 = 2.0 * F;
    out.chi2 = 2.0 * (out.tau * F + Complex(0.0, 36.0 * constants::pi) * ev.g3);
    out.chi1_err = 2.0 * ev.critical_err;
    if (std::abs(out.chi1) <= out.chi1_err)
        out.D = ExtendedComplex::infinity();
    else
        out.D = ExtendedComplex(out.chi2 / out.chi1);
    out.D_phi = eval_phi(tau, prec);
    return out;
}

std::pair<Matrix2, Matrix2> expected_generators(const ExtendedComplex& D) {
    if (D.is_infinite()) return {Matrix2{1.0, 0.0, 0.0, 1.0}, Matrix2{1.0, 0.0, 1.0, 1.0}};
    return {Matrix2{1.0, 0.0, 1.0, 1.0}, Matrix2{1.0, 0.0, D.value(), 1.0}};
}

MonodromyResult ode_monodromy(const HalfPlanePoint& tau, const Precision& prec,
                              const OdeOptions& opts) {
    MonodromyResult out = chi_and_D(tau, prec);
    const SingularPoints sing = solve_singular_points(tau, prec);
    out.q1 = sing.q1;
    out.q2 = sing.q2;
    const Complex t = tau.value();
    const EisensteinEval ev = eval_anywhere(tau, prec);
    const double scale = std::min(1.0, t.imag());

    // Base point maximizing the clearance of both straight period paths.
    const std::vector<Complex> sset = singular_set(sing, t, 2);
    constexpr int kGrid = 48;
    double best = -1.0;
    Complex z0{};
    for (int i = 0; i < kGrid; ++i)
        for (int j = 0; j < kGrid; ++j) {
            const Complex z = static_cast<double>(i) / kGrid + static_cast<double>(j) / kGrid * t;
            double c = std::numeric_limits<double>::infinity();
            for (Complex p : sset) {
                c = std::min(c, point_segment_distance(p, z, z + 1.0));
                c = std::min(c, point_segment_distance(p, z, z + t));
            }
            if (c > best) {
                best = c;
                z0 = z;
            }
        }
    out.z0 = z0;
    out.clearance = best;
    if (best < 0.1 * scale)
        throw Error(ErrorKind::PathTooClose, "no base point with clearance 0.1 for the period paths");

    const Basis b0 = analytic_basis(z0, tau, prec);
    const Complex seven_pdd2 = 7.0 * b0.w.p_dprime * b0.w.p_dprime;
    out.chi_prime_residual = std::abs(chi_prime_expanded(b0.w) - seven_pdd2) / std::abs(seven_pdd2);

    const bool infinite = out.D.is_infinite();
    const Complex c = infinite ? out.chi2 : out.chi1;
    const State init{c * b0.y1, c * b0.dy1, b0.y2, b0.dy2};
    const Matrix2 U0{init[0], init[1], init[2], init[3]};

    // One residual slot per task so the loops share nothing mutable.
    std::array<double, 2> pres{0.0, 0.0};
    const auto run_period = [&](Complex delta, double* res) {
        const Potential pot = make_potential(tau, sing, prec, ev, res);
        const Path path{[=](double s) { return z0 + s * delta; }, [=](double) { return delta; }};
        return integrate(path, pot, init, opts.rtol, opts.max_steps);
    };
    auto f1 = std::async(std::launch::async, run_period, Complex(1.0), &pres[0]);
    auto ft = std::async(std::launch::async, run_period, t, &pres[1]);
    const Dp5Result r1 = f1.get();
    const Dp5Result rt = ft.get();
    out.ode_steps = r1.steps + rt.steps;
    out.potential_residual = std::max(pres[0], pres[1]);

    const auto transfer = [&](const State& e) {
        return mul2(Matrix2{e[0], e[1], e[2], e[3]}, inv2(U0));
    };
    const Matrix2 M1 = transfer(r1.end), Mt = transfer(rt.end);
    out.ode_matrices = std::make_pair(M1, Mt);
    const auto [E1, Et] = expected_generators(out.D);
    double dev = 0.0;
    for (int i = 0; i < 4; ++i) dev = std::max({dev, std::abs(M1[i] - E1[i]), std::abs(Mt[i] - Et[i])});
    out.ode_deviation = dev;

    const auto ratio_gain = [&](const State& e) {
        return c * (e[2] / e[0] - init[2] / init[0]);
    };
    out.ratio_increments = std::make_pair(ratio_gain(r1.end), ratio_gain(rt.end));

    if (opts.local_loops) {
        const std::vector<Complex> centers{0.0, sing.q1, -sing.q1, sing.q2, -sing.q2};
        std::vector<std::future<LoopCheck>> tasks;
        for (Complex center : centers) {
            tasks.push_back(std::async(std::launch::async, [&, center] {
                double gap = std::numeric_limits<double>::infinity();
                for (Complex p : sset)
                    if (std::abs(p - center) > 1e-9) gap = std::min(gap, std::abs(p - center));
                const double radius = std::min(0.1 * scale, 0.4 * gap);
                const Complex start = center + radius;
                const Basis bs = analytic_basis(start, tau, prec);
                const State s0{bs.y1, bs.dy1, bs.y2, bs.dy2};
                double unused = 0.0;
                const Potential pot = make_potential(tau, sing, prec, ev, &unused);
                const Path path{
                    [=](double s) { return center + radius * std::exp(Complex(0.0, constants::two_pi * s)); },
                    [=](double s) {
                        return Complex(0.0, constants::two_pi) * radius *
                               std::exp(Complex(0.0, constants::two_pi * s));
                    }};
                const Dp5Result r = integrate(path, pot, s0, opts.rtol, opts.max_steps);
                double d = 0.0;
                for (int sol = 0; sol < 2; ++sol) {
                    const double size = std::max(std::abs(s0[2 * sol]), std::abs(s0[2 * sol + 1]));
                    for (int i = 2 * sol; i < 2 * sol + 2; ++i)
                        d = std::max(d, std::abs(r.end[i] - s0[i]) / size);
                }
                return LoopCheck{center, radius, d};
            }));
        }
        for (auto& f : tasks) out.local_loops.push_back(f.get());
    }
    return out;
}

}  // namespace e6crit
