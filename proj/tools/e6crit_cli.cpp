#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <regex>
#include <string>

#include "criteria.hpp"
#include "e6crit/serialize.hpp"

using namespace e6crit;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts a, bi, a+bi, a-bi with optional exponents; "i" alone means 1i.
Complex parse_complex(const std::string& text) {
    static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex both("^([+-]?" + num + ")([+-])(" + num + ")?i$");
    static const std::regex real_only("^([+-]?" + num + ")$");
    static const std::regex imag_only("^([+-]?)(" + num + ")?i$");
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    std::smatch m;
    if (std::regex_match(s, m, both)) {
        const double im = m[3].matched ? std::stod(m[3]) : 1.0;
        return {std::stod(m[1]), m[2] == "-" ? -im : im};
    }
    if (std::regex_match(s, m, real_only)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(s, m, imag_only)) {
        const double im = m[2].matched ? std::stod(m[2]) : 1.0;
        return {0.0, m[1] == "-" ? -im : im};
    }
    throw UsageError("cannot parse complex number '" + text + "' (expected a+bi)");
}

UnimodularMatrix parse_matrix(const std::string& text) {
    static const std::regex re(R"(^\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw UsageError("matrix must be a,b,c,d");
    const auto v = [&](int k) { return static_cast<UnimodularMatrix::Int>(std::stoll(m[k])); };
    return UnimodularMatrix(v(1), v(2), v(3), v(4));
}

Group parse_group(const std::string& g) { return g == "sl2z" ? Group::SL2Z : Group::Gamma0_2; }

CurveId parse_curve(const std::string& c) {
    return c == "c1" ? CurveId::C1 : c == "c3" ? CurveId::C3 : CurveId::C2;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

void emit_points(const std::vector<CurvePoint>& pts, const std::string& format) {
    if (format == "csv")
        std::cout << to_csv(pts);
    else if (format == "svg")
        std::cout << to_svg(pts);
    else
        print(to_json(pts));
}

struct Config {
    double precision = 1e-10;
    double T = 12.0;
    double eps = 0.02;
    double max_step = 0.02;
    std::string format = "json";

    Precision prec() const {
        Precision p;
        p.target_abs_error = precision;
        p.validate();
        return p;
    }
};

int run_verify(std::uint64_t seed) {
    acceptance::SuiteOptions opts;
    opts.seed = seed;
    const auto results = acceptance::run_all(opts);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << acceptance::format_line(r) << '\n';
        if (!r.pass) ++failed;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical points of E6, their curves and the associated monodromy"};
    app.require_subcommand(1);

    Config cfg;
    if (const char* env = std::getenv("E6_PRECISION")) {
        try {
            cfg.precision = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "error: E6_PRECISION is not a number\n";
            return kExitUsage;
        }
    }
    app.add_option("--precision", cfg.precision, "Absolute target for series evaluation")
        ->check(CLI::PositiveNumber);

    std::string tau_text, matrix_text = "1,0,0,1", group = "gamma02", curve = "c2", family = "fc",
                domain = "f0";
    double C = 0.0, t = 0.0, C_lo = 0.05, C_hi = 50.0, max_abs_C = 20.0, rtol = 1e-10;
    int max_den = 2;
    std::uint64_t seed = acceptance::SuiteOptions{}.seed;
    bool no_ode = false;
    const auto formats = CLI::IsMember({"json", "csv", "svg"});

    auto* ev = app.add_subcommand("eval", "Eisenstein data at tau, reducing into F when needed");
    ev->add_option("--tau", tau_text, "Point a+bi")->required();

    auto* crit = app.add_subcommand("critical", "Critical points of E6 in gamma(F0) or gamma(F)");
    crit->add_option("--group", group)->check(CLI::IsMember({"gamma02", "sl2z"}));
    crit->add_option("--matrix", matrix_text, "a,b,c,d");

    auto* tr = app.add_subcommand("trace", "Trace one of the curves C1, C2, C3");
    tr->add_option("--curve", curve)->check(CLI::IsMember({"c1", "c2", "c3"}));
    tr->add_option("--Clo", C_lo);
    tr->add_option("--Chi", C_hi);
    tr->add_option("--max-step", cfg.max_step)->check(CLI::PositiveNumber);
    tr->add_option("--format", cfg.format)->check(formats);

    auto* dn = app.add_subcommand("dense", "Reduced critical points at rational parameters");
    dn->add_option("--max-denominator", max_den)->check(CLI::PositiveNumber);
    dn->add_option("--group", group)->check(CLI::IsMember({"gamma02", "sl2z"}));
    dn->add_option("--max-abs-C", max_abs_C)->check(CLI::PositiveNumber);
    dn->add_option("--format", cfg.format)->check(formats);

    auto* ct = app.add_subcommand("count", "Certified zero count by the argument principle");
    ct->add_option("--family", family)->check(CLI::IsMember({"fc", "ht"}));
    auto* c_opt = ct->add_option("--C", C);
    auto* t_opt = ct->add_option("--t", t)->check(CLI::Range(0.0, 1.0));
    c_opt->excludes(t_opt);
    ct->add_option("--domain", domain)->check(CLI::IsMember({"f0", "f"}));
    ct->add_option("--T", cfg.T)->check(CLI::PositiveNumber);
    ct->add_option("--eps", cfg.eps)->check(CLI::PositiveNumber);

    auto* mo = app.add_subcommand("monodromy", "Monodromy data of the associated ODE");
    mo->add_option("--tau", tau_text, "Point a+bi")->required();
    mo->add_option("--rtol", rtol)->check(CLI::PositiveNumber);
    mo->add_flag("--no-ode", no_ode, "Only the closed-form quasi-periods");

    auto* vf = app.add_subcommand("verify", "Run the acceptance suite");
    vf->add_option("--seed", seed, "Seed for the random-tau spot checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const Precision prec = cfg.prec();
        if (*ev) {
            const HalfPlanePoint tau(parse_complex(tau_text));
            Json j;
            if (tau.im() < prec.min_im_for_series) {
                const Reduction r = reduce_to_F(tau);
                j = to_json(eval_anywhere(tau, prec));
                j["reduction"] = {{"gamma", to_json(r.gamma)}, {"reduced", to_json(r.reduced)}};
            } else {
                j = to_json(eval(tau, prec));
            }
            // g2 vanishes exactly on the orbit of rho; flag values at that scale.
            const double E4 = std::abs(Complex(j["E4"][0], j["E4"][1]));
            j["g2_near_zero"] = E4 < 1e-6;
            print(j);
        } else if (*crit) {
            const auto pts = critical_points_in_domain(parse_matrix(matrix_text), parse_group(group), prec);
            Json arr = Json::array();
            for (Complex z : pts) arr.push_back(to_json(z));
            print({{"group", group}, {"matrix", to_json(parse_matrix(matrix_text))}, {"points", arr}});
        } else if (*tr) {
            emit_points(trace_curve(parse_curve(curve), C_lo, C_hi, {cfg.max_step, {}}, prec), cfg.format);
        } else if (*dn) {
            emit_points(dense_sample({max_den, parse_group(group), max_abs_C}, prec), cfg.format);
        } else if (*ct) {
            if (family == "ht" && c_opt->count() > 0) throw UsageError("--C applies to --family fc");
            if (family == "fc" && t_opt->count() > 0) throw UsageError("--t applies to --family ht");
            const FamilyParam p = family == "fc" ? FamilyParam::curve(C) : FamilyParam::homotopy(t);
            ContourSpec spec;
            spec.T = cfg.T;
            spec.eps = cfg.eps;
            print(to_json(count_zeros(p, domain == "f" ? DomainKind::F : DomainKind::F0, spec, prec)));
        } else if (*mo) {
            const HalfPlanePoint tau(parse_complex(tau_text));
            if (no_ode) {
                print(to_json(chi_and_D(tau, prec)));
            } else {
                OdeOptions o;
                o.rtol = rtol;
                print(to_json(ode_monodromy(tau, prec, o)));
            }
        } else if (*vf) {
            return run_verify(seed);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const ErrorKind k = e.kind();
        return k == ErrorKind::Domain || k == ErrorKind::InvalidUse || k == ErrorKind::Membership
                   ? kExitUsage
                   : kExitVerify;
    }
    return 0;
}
