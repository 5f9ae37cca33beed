#include <doctest.h>

#include "e6crit/serialize.hpp"

using namespace e6crit;

TEST_CASE("complex and matrix encodings") {
    CHECK(to_json(Complex(1.5, -2.0)).dump() == "[1.5,-2.0]");
    CHECK(to_json(ExtendedComplex::infinity()) == "infinity");
    CHECK(to_json(UnimodularMatrix(1, 0, 2, 1)).dump() == "[1,0,2,1]");
    const Matrix2 m{1.0, 0.0, Complex(0.5, 0.25), 1.0};
    CHECK(to_json(m).dump() == "[[1.0,0.0],[0.0,0.0],[0.5,0.25],[1.0,0.0]]");
}

TEST_CASE("report fields") {
    const Json e = to_json(eval(HalfPlanePoint(0.5, 2.0)));
    CHECK(e.contains("legendre_residual"));
    CHECK(e["tau"][1] == 2.0);

    ZeroCountReport r;
    r.family = FamilyParam::curve(3.0);
    r.count = 2;
    const Json j = to_json(r);
    for (const char* k : {"family", "domain", "count", "contour", "samples", "winding_raw",
                          "integrality_gap"})
        CHECK(j.contains(k));
    CHECK(j["count"] == 2);

    const Json z = to_json(ZeroRecord{Complex(0.5, 0.63), FamilyParam::curve_infinity(), 1e-14, 1, Half::On});
    CHECK(z["half"] == "on");
    CHECK(z["multiplicity"] == 1);
}

TEST_CASE("curve exports") {
    CurvePoint p;
    p.C = 2.0;
    p.param = 2.0;
    p.tau = {0.3, 1.1};
    p.curve = CurveId::C2;
    p.half = Half::Left;
    CurvePoint q = p;
    q.C = ExtendedReal::infinity();
    q.curve = CurveId::C1;
    q.tau = {0.5, 0.634};
    const std::vector<CurvePoint> pts{p, q};

    const std::string csv = to_csv(pts);
    CHECK(csv.rfind("curve,C,re_tau,im_tau,half,residual\r\n", 0) == 0);
    CHECK(csv.find("C2,2,0.29999999999999999,1.1000000000000001,left,0\r\n") != std::string::npos);
    CHECK(csv.find("C1,infinity,") != std::string::npos);

    const Json j = to_json(pts);
    CHECK(j.size() == 2);
    CHECK(j[1]["C"] == "infinity");

    const std::string svg = to_svg(pts);
    CHECK(svg.find("viewBox=\"-0.1 0 1.2 3\"") != std::string::npos);
    CHECK(svg.find("scale(1,-1)") != std::string::npos);
    CHECK(svg.find("class=\"domain f0\"") != std::string::npos);
}

TEST_CASE("monodromy result") {
    MonodromyResult m;
    m.D = ExtendedComplex::infinity();
    m.D_phi = ExtendedComplex::infinity();
    const Json j = to_json(m);
    CHECK(j["D"] == "infinity");
    CHECK(!j.contains("ode_matrices"));
}
