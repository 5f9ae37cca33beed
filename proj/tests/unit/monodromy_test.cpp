#include <doctest.h>

#include <cmath>

#include "e6crit/critical.hpp"
#include "e6crit/monodromy.hpp"
#include "sampling.hpp"

using namespace e6crit;

namespace {

const HalfPlanePoint kTau(0.3, 1.2);

}  // namespace

TEST_CASE("cell reduction") {
    const Complex tau(0.3, 1.2);
    const Complex z(2.7, 3.1);
    const Complex r = reduce_to_cell(z, tau);
    const double b = (z - r).imag() / tau.imag();
    const double a = (z - r).real() - b * tau.real();
    CHECK(std::abs(b - std::round(b)) < 1e-12);
    CHECK(std::abs(a - std::round(a)) < 1e-12);
    CHECK(lattice_distance(3.0 + 2.0 * tau, tau) < 1e-12);
    CHECK(lattice_distance(0.5 * tau, tau) == doctest::Approx(0.5 * std::abs(tau)));
}

TEST_CASE("singular points") {
    const SingularPoints s = solve_singular_points(kTau);
    CHECK(s.residual1 < 1e-8);
    CHECK(s.residual2 < 1e-8);
    const WeierstrassEval w1 = weierstrass_eval(s.q1, kTau), w2 = weierstrass_eval(s.q2, kTau);
    CHECK(std::abs(w1.p - std::sqrt(w1.g2 / 12.0)) < 1e-10 * std::abs(w1.g2));
    CHECK(std::abs(w2.p + std::sqrt(w2.g2 / 12.0)) < 1e-10 * std::abs(w2.g2));
    for (Complex q : {s.q1, s.q2}) {
        const WeierstrassEval a = weierstrass_eval(q, kTau), b = weierstrass_eval(2.0 * q, kTau);
        CHECK(std::abs(b.zeta_w - 2.0 * a.zeta_w) < 1e-7);
    }
    // zeta(q1 + q2) + zeta(q1 - q2) - 2 zeta(q1) = p'(q1) / (2 p(q1)).
    const Complex lhs = weierstrass_eval(s.q1 + s.q2, kTau).zeta_w +
                        weierstrass_eval(s.q1 - s.q2, kTau).zeta_w - 2.0 * w1.zeta_w;
    CHECK(std::abs(lhs - w1.p_prime / (2.0 * w1.p)) < 1e-8 * std::abs(lhs));
}

TEST_CASE("g2 too small at rho") {
    try {
        solve_singular_points(HalfPlanePoint(0.5, constants::sqrt3 / 2.0));
        FAIL("expected g2-too-small");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::G2TooSmall);
    }
}

TEST_CASE("chi and its quasi-periods") {
    const MonodromyResult r = chi_and_D(kTau);
    const EisensteinEval ev = eval_anywhere(kTau);
    CHECK(std::abs(r.chi1 - 2.0 * (ev.g2 * ev.g2 - 18.0 * ev.eta1 * ev.g3)) < 1e-9 * std::abs(r.chi1));
    const Complex direct2 = 2.0 * (ev.g2 * ev.g2 * kTau.value() - 18.0 * ev.eta2 * ev.g3);
    CHECK(std::abs(r.chi2 - direct2) < 1e-9 * std::abs(r.chi2));
    REQUIRE(!r.D.is_infinite());
    CHECK(std::abs(r.D.value() - r.D_phi.value()) < 1e-10 * std::max(1.0, std::abs(r.D.value())));

    const Complex z(0.23, 0.31);
    const WeierstrassEval a = weierstrass_eval(z, kTau);
    const Complex d1 = chi(weierstrass_eval(z + 1.0, kTau)) - chi(a);
    const Complex dt = chi(weierstrass_eval(z + kTau.value(), kTau)) - chi(a);
    CHECK(std::abs(d1 - r.chi1) < 1e-7 * std::abs(r.chi1));
    CHECK(std::abs(dt - r.chi2) < 1e-7 * std::abs(r.chi2));
    const Complex target = 7.0 * a.p_dprime * a.p_dprime;
    CHECK(std::abs(chi_prime_expanded(a) - target) < 1e-7 * std::abs(target));
}

TEST_CASE("D agrees with phi") {
    oracle::TauSampler s(41);
    for (int i = 0; i < 50; ++i) {
        const HalfPlanePoint tau(s.tau(0.8, 3.0));
        const MonodromyResult r = chi_and_D(tau);
        REQUIRE(!r.D.is_infinite());
        REQUIRE(!r.D_phi.is_infinite());
        CHECK(std::abs(r.D.value() - r.D_phi.value()) < 1e-10 * std::max(1.0, std::abs(r.D.value())));
    }
}

TEST_CASE("infinity convention near tau infinity") {
    const Complex ti = find_tau_infinity().tau;
    const MonodromyResult at = chi_and_D(HalfPlanePoint(ti));
    CHECK(at.D.is_infinite());
    CHECK(at.D_phi.is_infinite());
    CHECK(std::abs(at.chi1) <= at.chi1_err);
    for (double d : {1e-4, 1e-6, 1e-9, 1e-12, 1e-14}) {
        const MonodromyResult r = chi_and_D(HalfPlanePoint(ti + Complex(0.0, d)));
        CHECK(r.D.is_infinite() == (std::abs(r.chi1) <= r.chi1_err));
        CHECK(r.D.is_infinite() == r.D_phi.is_infinite());
    }
    const auto [a, b] = expected_generators(ExtendedComplex::infinity());
    CHECK(a == Matrix2{1.0, 0.0, 0.0, 1.0});
    CHECK(b == Matrix2{1.0, 0.0, 1.0, 1.0});
}

TEST_CASE("potential from the singular points matches y1''/y1") {
    const SingularPoints s = solve_singular_points(kTau);
    for (Complex z : {Complex(0.23, 0.31), Complex(-0.4, 0.9), Complex(0.11, -0.2)}) {
        const Complex a = potential_from_sum(z, kTau, s);
        const Complex b = potential_closed(weierstrass_eval(z, kTau));
        CHECK(std::abs(a - b) < 1e-9 * std::abs(b));
    }
}

TEST_CASE("ODE monodromy at 0.3+1.2i") {
    const MonodromyResult r = ode_monodromy(kTau);
    REQUIRE(r.ode_deviation);
    CHECK(*r.ode_deviation < 1e-5);
    CHECK(r.clearance >= 0.1);
    CHECK(*r.chi_prime_residual < 1e-7);
    const auto& [M1, Mt] = *r.ode_matrices;
    // y1 is elliptic: first row of each transfer is (1, 0).
    CHECK(std::abs(M1[0] - 1.0) < 1e-5);
    CHECK(std::abs(M1[1]) < 1e-5);
    CHECK(std::abs(Mt[0] - 1.0) < 1e-5);
    CHECK(std::abs(Mt[1]) < 1e-5);
    CHECK(std::abs(Mt[2] - r.D.value()) < 1e-5 * std::max(1.0, std::abs(r.D.value())));
    const auto& [inc1, inct] = *r.ratio_increments;
    CHECK(std::abs(inc1 - r.chi1) < 1e-6 * std::abs(r.chi1));
    CHECK(std::abs(inct - r.chi2) < 1e-6 * std::abs(r.chi2));
    REQUIRE(r.local_loops.size() == 5);
    for (const LoopCheck& l : r.local_loops) CHECK(l.deviation < 1e-5);
}
