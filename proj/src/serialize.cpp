#include "e6crit/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace e6crit {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ExtendedReal& x) {
    if (x.is_infinite()) return "infinity";
    return x.value();
}

Json to_json(const ExtendedComplex& z) {
    if (z.is_infinite()) return "infinity";
    return to_json(z.value());
}

Json to_json(const UnimodularMatrix& m) {
    return Json::array({m.a(), m.b(), m.c(), m.d()});
}

Json to_json(const Matrix2& m) {
    Json out = Json::array();
    for (const Complex& v : m) out.push_back(to_json(v));
    return out;
}

Json to_json(const EisensteinEval& ev) {
    Json j;
    j["tau"] = to_json(ev.tau);
    j["E2"] = to_json(ev.E2);
    j["E4"] = to_json(ev.E4);
    j["E6"] = to_json(ev.E6);
    j["g2"] = to_json(ev.g2);
    j["g3"] = to_json(ev.g3);
    j["eta1"] = to_json(ev.eta1);
    j["eta2"] = to_json(ev.eta2);
    j["discriminant"] = to_json(ev.discriminant);
    j["dE6"] = to_json(ev.dE6);
    j["d2E6"] = to_json(ev.d2E6);
    j["critical"] = to_json(ev.critical());
    j["err_bound"] = ev.err_bound;
    j["critical_err"] = ev.critical_err;
    j["terms_used"] = ev.terms_used;
    j["legendre_residual"] = legendre_residual(ev);
    j["ramanujan_residual"] = ramanujan_residual(ev);
    return j;
}

Json to_json(const ZeroRecord& z) {
    Json j;
    j["tau"] = to_json(z.tau);
    j["param"] = z.param.to_string();
    j["residual"] = z.residual;
    j["multiplicity"] = z.multiplicity;
    j["half"] = to_string(z.half);
    return j;
}

Json to_json(const ZeroCountReport& r) {
    Json j;
    j["family"] = r.family.to_string();
    j["domain"] = to_string(r.domain);
    j["count"] = r.count;
    j["contour"] = {{"T", r.contour.T}, {"eps", r.contour.eps}};
    j["samples"] = r.samples;
    j["winding_raw"] = to_json(r.winding_raw);
    j["integrality_gap"] = r.integrality_gap;
    j["arg_count"] = r.arg_count;
    j["zero_sum"] = to_json(r.zero_sum);
    j["cusp_caps_assumed_empty"] = r.cusp_caps_assumed_empty;
    return j;
}

Json to_json(const CurvePoint& p) {
    Json j;
    j["curve"] = to_string(p.curve);
    j["C"] = to_json(p.C);
    j["param"] = p.param;
    j["tau"] = to_json(p.tau);
    j["half"] = to_string(p.half);
    j["residual"] = p.residual;
    j["dtau_dparam"] = to_json(p.dtau_dparam);
    if (p.generator) j["generator"] = {p.generator->first, p.generator->second};
    return j;
}

Json to_json(const std::vector<CurvePoint>& pts) {
    Json out = Json::array();
    for (const CurvePoint& p : pts) out.push_back(to_json(p));
    return out;
}

Json to_json(const MonodromyResult& m) {
    Json j;
    j["tau"] = to_json(m.tau);
    j["q1"] = to_json(m.q1);
    j["q2"] = to_json(m.q2);
    j["chi1"] = to_json(m.chi1);
    j["chi2"] = to_json(m.chi2);
    j["chi1_err"] = m.chi1_err;
    j["D"] = to_json(m.D);
    j["D_phi"] = to_json(m.D_phi);
    if (m.ode_matrices) {
        j["z0"] = to_json(m.z0);
        j["clearance"] = m.clearance;
        j["ode_matrices"] = {to_json(m.ode_matrices->first), to_json(m.ode_matrices->second)};
        j["ode_deviation"] = *m.ode_deviation;
        j["ode_steps"] = m.ode_steps;
    }
    if (m.ratio_increments)
        j["ratio_increments"] = {to_json(m.ratio_increments->first),
                                 to_json(m.ratio_increments->second)};
    if (m.chi_prime_residual) j["chi_prime_residual"] = *m.chi_prime_residual;
    if (m.potential_residual) j["potential_residual"] = *m.potential_residual;
    if (!m.local_loops.empty()) {
        Json loops = Json::array();
        for (const LoopCheck& l : m.local_loops)
            loops.push_back({{"center", to_json(l.center)}, {"radius", l.radius},
                             {"deviation", l.deviation}});
        j["local_loops"] = loops;
    }
    return j;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

constexpr double kViewTop = 3.0;

void arc(std::ostringstream& os, Complex center, double r, double from, double to) {
    os << "<polyline class=\"domain\" points=\"";
    constexpr int n = 64;
    for (int i = 0; i <= n; ++i) {
        const double t = from + (to - from) * i / n;
        os << fmt_short(center.real() + r * std::cos(t)) << ','
           << fmt_short(center.imag() + r * std::sin(t)) << ' ';
    }
    os << "\"/>\n";
}

const char* colour(CurveId c) {
    switch (c) {
        case CurveId::C1: return "#1f77b4";
        case CurveId::C2: return "#d62728";
        case CurveId::C3: return "#2ca02c";
    }
    return "#000000";
}

}  // namespace

std::string to_csv(const std::vector<CurvePoint>& pts) {
    std::ostringstream os;
    os << "curve,C,re_tau,im_tau,half,residual\r\n";
    for (const CurvePoint& p : pts) {
        os << csv_field(to_string(p.curve)) << ','
           << (p.C.is_infinite() ? std::string("infinity") : fmt(p.C.value())) << ','
           << fmt(p.tau.real()) << ',' << fmt(p.tau.imag()) << ',' << to_string(p.half) << ','
           << fmt(p.residual) << "\r\n";
    }
    return os.str();
}

std::string to_svg(const std::vector<CurvePoint>& pts) {
    const double pi = constants::pi;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.1 0 1.2 3\" "
       << "width=\"400\" height=\"1000\">\n"
       << "<style>.domain{fill:none;stroke:#555;stroke-width:0.004}"
       << ".f0{stroke-dasharray:0.02 0.01}.curve{fill:none;stroke-width:0.006}</style>\n"
       << "<g transform=\"translate(0," << kViewTop << ") scale(1,-1)\">\n";

    // F0: the two vertical lines and the semicircle |tau - 1/2| = 1/2.
    os << "<polyline class=\"domain f0\" points=\"0,0 0," << kViewTop << "\"/>\n"
       << "<polyline class=\"domain f0\" points=\"1,0 1," << kViewTop << "\"/>\n";
    arc(os, {0.5, 0.0}, 0.5, 0.0, pi);
    // F: arcs |tau - 1| = 1 and |tau| = 1 meeting at 1/2 + i sqrt(3)/2.
    arc(os, {1.0, 0.0}, 1.0, pi / 2.0, 2.0 * pi / 3.0);
    arc(os, {0.0, 0.0}, 1.0, pi / 3.0, pi / 2.0);

    // Curves as polylines, broken where they leave the view or jump.
    std::map<CurveId, std::vector<const CurvePoint*>> traced;
    std::vector<const CurvePoint*> dots;
    for (const CurvePoint& p : pts) {
        if (p.generator)
            dots.push_back(&p);
        else
            traced[p.curve].push_back(&p);
    }
    for (const auto& [id, list] : traced) {
        std::vector<std::vector<Complex>> runs(1);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Complex t = list[i]->tau;
            const bool visible = t.imag() <= kViewTop;
            const bool jump = i > 0 && std::abs(t - list[i - 1]->tau) > 0.25;
            if ((!visible || jump) && !runs.back().empty()) runs.emplace_back();
            if (visible) runs.back().push_back(t);
        }
        for (const auto& run : runs) {
            if (run.size() < 2) continue;
            os << "<polyline class=\"curve\" stroke=\"" << colour(id) << "\" data-curve=\""
               << to_string(id) << "\" points=\"";
            for (Complex t : run) os << fmt_short(t.real()) << ',' << fmt_short(t.imag()) << ' ';
            os << "\"/>\n";
        }
    }
    for (const CurvePoint* p : dots) {
        if (p->tau.imag() > kViewTop) continue;
        os << "<circle cx=\"" << fmt_short(p->tau.real()) << "\" cy=\"" << fmt_short(p->tau.imag())
           << "\" r=\"0.006\" fill=\"" << colour(p->curve) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace e6crit
