#include <doctest.h>

#include <cmath>
#include <numeric>

#include "e6crit/modular.hpp"
#include "sampling.hpp"

using namespace e6crit;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Direct series evaluation well below the usual floor, as an oracle for the
// transformation laws.
EisensteinEval direct(Complex tau) {
    Precision p;
    p.min_im_for_series = 0.02;
    return eval(HalfPlanePoint(tau), p);
}

}  // namespace

TEST_CASE("matrix canonical form and determinant") {
    CHECK_THROWS_AS(UnimodularMatrix(1, 1, 1, 1), Error);
    const UnimodularMatrix m(-1, 0, -2, -1);
    CHECK(m.c() == 2);
    CHECK(m.d() == 1);
    CHECK(m.in_gamma0_2());
    CHECK((m * m.inverse()).is_identity());
    CHECK(m.cusp_parameter().value() == doctest::Approx(-0.5));
    CHECK(UnimodularMatrix::identity().cusp_parameter().is_infinite());
}

TEST_CASE("Mobius action") {
    const Complex tau(0.31, 0.77);
    CHECK(mobius_apply(UnimodularMatrix::identity(), tau) == tau);
    CHECK(std::abs(mobius_apply(gamma1(), Complex(0.0, 1.0)) - Complex(0.5, 0.5)) < 1e-15);
    const UnimodularMatrix g(2, 1, 3, 2);
    const Complex w = mobius_apply(g, tau);
    CHECK(w.imag() == doctest::Approx(tau.imag() / std::norm(g.factor(tau))));
    for (Complex t : {Complex(0.5, 2.0), Complex(0.2, 1.1), Complex(0.9, 1.3)}) {
        CHECK(in_F(t));
        CHECK(in_F0(mobius_apply(gamma1(), t)));
        CHECK(in_F0(mobius_apply(gamma2(), t)));
    }
}

TEST_CASE("reduction into F") {
    const Reduction a = reduce_to_F(HalfPlanePoint(0.5, 2.0));
    CHECK(a.gamma.is_identity());
    CHECK(a.reduced == Complex(0.5, 2.0));

    const Reduction b = reduce_to_F(HalfPlanePoint(0.5, 0.1));
    CHECK(in_F(b.reduced));
    CHECK(std::abs(mobius_apply(b.gamma, b.reduced) - Complex(0.5, 0.1)) < 1e-12);

    const Reduction c = reduce_to_F(HalfPlanePoint(2.3, 0.8));
    CHECK(!c.gamma.is_identity());
    CHECK(c.reduced.real() >= 0.0);
    CHECK(c.reduced.real() <= 1.0);
}

TEST_CASE("reduction into F0") {
    const Reduction a = reduce_to_F0(HalfPlanePoint(0.4, 0.9));
    CHECK(a.gamma.is_identity());

    const Complex t(-0.2, 0.3);
    const Reduction b = reduce_to_F0(HalfPlanePoint(t));
    CHECK(b.gamma.in_gamma0_2());
    CHECK(in_F0(b.reduced));
    CHECK(std::abs(mobius_apply(b.gamma, b.reduced) - t) < 1e-12);

    const Reduction c = reduce_to_F0(HalfPlanePoint(0.5, 0.5 + 1e-13));
    CHECK(c.near_boundary);
    CHECK(std::abs(std::abs(c.reduced - 0.5) - 0.5) < 1e-12);
}

TEST_CASE("round trips and idempotence on random points") {
    oracle::TauSampler s(3);
    for (int i = 0; i < 200; ++i) {
        const Complex t(s.uniform(-3.0, 3.0), std::pow(10.0, s.uniform(-2.5, 0.5)));
        for (bool zero : {false, true}) {
            const Reduction r = zero ? reduce_to_F0(HalfPlanePoint(t)) : reduce_to_F(HalfPlanePoint(t));
            CHECK(std::abs(mobius_apply(r.gamma, r.reduced) - t) <= 1e-12 * std::max(1.0, std::abs(t)));
            CHECK((zero ? in_F0(r.reduced) : in_F(r.reduced)));
            if (zero) CHECK(r.gamma.in_gamma0_2());
            const Reduction again =
                zero ? reduce_to_F0(HalfPlanePoint(r.reduced)) : reduce_to_F(HalfPlanePoint(r.reduced));
            if (!r.near_boundary) CHECK(again.gamma.is_identity());
        }
    }
}

TEST_CASE("transform_eval against direct evaluation") {
    const Complex tau(0.3, 1.4);
    const EisensteinEval ev = eval(HalfPlanePoint(tau));
    const EisensteinEval same = transform_eval(ev, UnimodularMatrix::identity());
    CHECK(same.g2 == ev.g2);
    CHECK(same.eta2 == ev.eta2);

    const UnimodularMatrix g(1, 0, 2, 1);
    const EisensteinEval moved = transform_eval(ev, g);
    const EisensteinEval ref = direct(mobius_apply(g, tau));
    CHECK(rel(moved.g2, ref.g2) < 1e-9);
    CHECK(rel(moved.g3, ref.g3) < 1e-9);
    CHECK(rel(moved.eta1, ref.eta1) < 1e-9);
    CHECK(rel(moved.eta2, ref.eta2) < 1e-9);
    CHECK(rel(moved.E2, ref.E2) < 1e-9);
}

TEST_CASE("eta1 at tau/(1-tau)") {
    const Complex tau(0.2, 1.2);
    const EisensteinEval ev = eval(HalfPlanePoint(tau));
    const Complex tp = tau / (1.0 - tau);
    const EisensteinEval ep = eval_anywhere(HalfPlanePoint(tp));
    CHECK(rel(ep.eta1, (1.0 - tau) * (ev.eta1 - ev.eta2)) < 1e-10);
}

TEST_CASE("transform consistency for random group elements") {
    oracle::TauSampler s(19);
    int tested = 0;
    while (tested < 100) {
        const long long c = s.integer(-20, 20), d = s.integer(-20, 20);
        if (c == 0 && d == 0) continue;
        if (std::gcd(c, d) != 1) continue;
        // Solve a d - b c = 1 with small a, b.
        long long a = 0, b = 0;
        for (long long x = -20; x <= 20 && a == 0 && b == 0; ++x)
            for (long long y = -20; y <= 20; ++y)
                if (x * d - y * c == 1) {
                    a = x;
                    b = y;
                    break;
                }
        if (a * d - b * c != 1) continue;
        const UnimodularMatrix g(a, b, c, d);
        const Complex tau = s.tau(0.9, 2.0);
        const Complex target = mobius_apply(g, tau);
        if (target.imag() < 0.02) continue;
        const EisensteinEval moved = transform_eval(eval(HalfPlanePoint(tau)), g);
        const EisensteinEval ref = direct(target);
        const double tol = 1e-8;
        CHECK(rel(moved.g2, ref.g2) < tol);
        CHECK(rel(moved.g3, ref.g3) < tol);
        CHECK(rel(moved.eta1, ref.eta1) < tol);
        CHECK(rel(moved.eta2, ref.eta2) < tol);
        ++tested;
    }
}
