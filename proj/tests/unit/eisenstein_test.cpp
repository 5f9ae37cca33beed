#include <doctest.h>

#include <cmath>

#include "e6crit/critical.hpp"
#include "e6crit/divisor_table.hpp"
#include "e6crit/eisenstein.hpp"
#include "finite_difference.hpp"
#include "lattice_sum.hpp"
#include "sampling.hpp"

using namespace e6crit;

namespace {

const HalfPlanePoint kRho(0.5, constants::sqrt3 / 2.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("divisor table matches brute force") {
    const DivisorTable t(300);
    for (std::size_t n = 1; n <= 300; ++n) {
        double s1 = 0, s3 = 0, s5 = 0;
        for (std::size_t d = 1; d <= n; ++d)
            if (n % d == 0) {
                const double x = static_cast<double>(d);
                s1 += x;
                s3 += x * x * x;
                s5 += x * x * x * x * x;
            }
        CHECK(t.sigma1(n) == s1);
        CHECK(t.sigma3(n) == s3);
        CHECK(t.sigma5(n) == s5);
    }
    CHECK(DivisorTable::shared(50)->size() >= 50);
}

TEST_CASE("precision validation") {
    Precision p;
    CHECK_NOTHROW(p.validate());
    p.target_abs_error = 1e-16;
    CHECK_THROWS_AS(p.validate(), Error);
    p = Precision{};
    p.max_terms = 4;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("series floor is enforced") {
    try {
        eval(HalfPlanePoint(0.1, 0.1));
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("constant terms near the cusp") {
    const EisensteinEval ev = eval(HalfPlanePoint(0.5, 40.0));
    CHECK(std::abs(ev.E2 - 1.0) < 1e-12);
    CHECK(std::abs(ev.E4 - 1.0) < 1e-12);
    CHECK(std::abs(ev.E6 - 1.0) < 1e-12);
    CHECK(ramanujan_residual(ev) < 1e-12);
}

TEST_CASE("special values at rho and at (1+i)/2") {
    const EisensteinEval r = eval(kRho);
    CHECK(std::abs(r.g2) <= r.err_bound + 1e-12);
    CHECK(std::abs(r.eta1 - constants::two_pi / constants::sqrt3) <= r.err_bound + 1e-12);
    const EisensteinEval h = eval(HalfPlanePoint(0.5, 0.5));
    CHECK(std::abs(h.g3) <= h.err_bound + 1e-11);
}

TEST_CASE("agreement with the lattice-sum oracle") {
    const Complex tau(0.3, 1.7);
    const EisensteinEval ev = eval(HalfPlanePoint(tau));
    const oracle::LatticeInvariants o = oracle::lattice_invariants(tau);
    CHECK(rel(ev.g2, o.g2) < 1e-8);
    CHECK(rel(ev.g3, o.g3) < 1e-8);
    CHECK(rel(ev.eta1, o.eta1) < 1e-8);
}

TEST_CASE("closed-form derivatives near the cusp") {
    const EisensteinEval ev = eval(HalfPlanePoint(0.5, 40.0));
    const DerivativeBundle d = derivative_bundle(ev);
    const Complex F = ev.critical();
    // The closed form cancels down to rounding level while the series value is tiny.
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * std::norm(ev.g2);
    CHECK(std::abs(d.g3_prime - Complex(0.0, -1.0 / (6.0 * constants::pi)) * F) < rounding);
    const Complex q = std::exp(Complex(0.0, constants::two_pi) * ev.tau);
    CHECK(rel(F, 1792.0 * constants::pi8 * q * (1.0 + 66.0 * q)) < 1e-10);
}

TEST_CASE("closed-form derivatives against finite differences") {
    oracle::TauSampler s(7);
    for (int i = 0; i < 10; ++i) {
        const Complex tau = s.tau(0.8, 2.0);
        const DerivativeBundle d = derivative_bundle(eval(HalfPlanePoint(tau)));
        const auto at = [](Complex t) { return eval(HalfPlanePoint(t)); };
        const auto g2 = [&](Complex t) { return at(t).g2; };
        const auto g3 = [&](Complex t) { return at(t).g3; };
        const auto eta1 = [&](Complex t) { return at(t).eta1; };
        const auto F = [&](Complex t) {
            const EisensteinEval e = at(t);
            return e.g2 * e.g2 - 18.0 * e.eta1 * e.g3;
        };
        CHECK(rel(d.g2_prime, oracle::derivative(g2, tau)) < 1e-6);
        CHECK(rel(d.g3_prime, oracle::derivative(g3, tau)) < 1e-6);
        CHECK(rel(d.eta1_prime, oracle::derivative(eta1, tau)) < 1e-6);
        CHECK(rel(d.critical_prime, oracle::derivative(F, tau)) < 1e-6);
    }
}

TEST_CASE("critical point of E6 on the half line") {
    const ZeroRecord z = find_tau_infinity();
    const EisensteinEval ev = eval(HalfPlanePoint(z.tau));
    CHECK(std::abs(ev.critical()) <= 10.0 * ev.critical_err);
    const Complex expected = Complex(0.0, 21.0 / (4.0 * constants::pi)) * ev.g3 *
                             (12.0 * ev.eta1 * ev.eta1 - ev.g2);
    CHECK(std::abs(expected) > 1.0);
    CHECK(rel(derivative_bundle(ev).critical_prime, expected) < 1e-9);
    CHECK(rel(ev.critical_prime(), expected) < 1e-9);
    const double scale = std::abs(ev.E4 * ev.E4);
    CHECK(std::abs(ev.E2 * ev.E6 - ev.E4 * ev.E4) < 1e-10 * scale);
}

TEST_CASE("Ramanujan residual away from the cusp") {
    const EisensteinEval ev = eval(HalfPlanePoint(0.25, 0.9));
    CHECK(ramanujan_residual(ev) < 1e-9);
    CHECK(ramanujan_residual(ev) <= ramanujan_tolerance(ev));
}

TEST_CASE("Legendre relation and periodicity") {
    oracle::TauSampler s(11);
    for (int i = 0; i < 25; ++i) {
        const Complex tau = s.tau(0.4, 3.0);
        const EisensteinEval a = eval(HalfPlanePoint(tau));
        const EisensteinEval b = eval(HalfPlanePoint(tau + 1.0));
        CHECK(legendre_residual(a) <= 2.0 * a.err_bound);
        const double tol = 2.0 * (a.err_bound + b.err_bound);
        CHECK(std::abs(a.g2 - b.g2) <= tol);
        CHECK(std::abs(a.g3 - b.g3) <= tol);
        CHECK(std::abs(a.eta1 - b.eta1) <= tol);
        CHECK(std::abs(b.eta2 - (a.eta2 + a.eta1)) <= tol);
    }
}

TEST_CASE("reality on the imaginary axis and reflection") {
    for (double b : {0.5, 0.8, 1.3, 2.0, 3.5}) {
        const EisensteinEval ev = eval(HalfPlanePoint(0.0, b));
        CHECK(std::abs(ev.g2.imag()) <= ev.err_bound);
        CHECK(ev.g2.real() > 0.0);
        CHECK(std::abs(ev.g3.imag()) <= ev.err_bound);
        CHECK(std::abs(ev.eta1.imag()) <= ev.err_bound);
    }
    oracle::TauSampler s(5);
    for (int i = 0; i < 10; ++i) {
        const Complex tau = s.tau(0.5, 2.5);
        const EisensteinEval a = eval(HalfPlanePoint(tau));
        const EisensteinEval b = eval(HalfPlanePoint(1.0 - std::conj(tau)));
        const double tol = 2.0 * (a.err_bound + b.err_bound);
        CHECK(std::abs(b.g2 - std::conj(a.g2)) <= tol);
        CHECK(std::abs(b.g3 - std::conj(a.g3)) <= tol);
        CHECK(std::abs(b.eta1 - std::conj(a.eta1)) <= tol);
    }
}

TEST_CASE("g3 increases along the imaginary axis") {
    for (double b = 0.8; b <= 3.0; b += 0.1) {
        const DerivativeBundle d = derivative_bundle(eval(HalfPlanePoint(0.0, b)));
        // d/db g3(ib) = i g3'(ib).
        CHECK((kI * d.g3_prime).real() > 0.0);
    }
}

TEST_CASE("normalized forms are consistent") {
    const EisensteinEval ev = eval(HalfPlanePoint(0.2, 1.1));
    CHECK(rel(ev.g2, 4.0 * constants::pi4 / 3.0 * ev.E4) < 1e-15);
    CHECK(rel(ev.g3, 8.0 * constants::pi6 / 27.0 * ev.E6) < 1e-15);
    CHECK(rel(ev.eta1, constants::pi2 / 3.0 * ev.E2) < 1e-15);
    CHECK(rel(ev.discriminant, ev.g2 * ev.g2 * ev.g2 - 27.0 * ev.g3 * ev.g3) < 1e-15);
    CHECK(std::abs(ev.discriminant) > ev.err_bound);
}
