// mobius-ec: coefficients, L-values, m(z) and verification suites for y^2 = x^3 + a x + b.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecmobius/errors.hpp"
#include "ecmobius/io.hpp"
#include "ecmobius/verify.hpp"

using namespace ecmobius;

namespace {

enum Exit { ok = 0, verification_failed = 1, config_error = 2, numerical_failure = 3 };

struct Globals {
    std::string curve_path;
    i64 n_max = 5000;
    double tol = 1e-10;
    std::string out = "-";
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const Globals& g, const std::string& content) {
    if (g.out == "-" || g.out.empty())
        std::cout << content << std::flush;
    else
        write_atomic(g.out, content);
}

CurveSpec load_curve(const Globals& g) {
    if (g.curve_path.empty()) fail(ErrorKind::config, "--curve is required");
    return parse_curve_file(g.curve_path);
}

ContourSpec contour_from(const Globals& g) {
    if (!(g.tol > 0.0)) fail(ErrorKind::config, "--tol must be positive");
    ContourSpec c;
    c.panel_tolerance = g.tol;
    return c;
}

void print_warnings(const std::vector<std::string>& w) {
    for (const auto& line : w) std::cerr << "warning: " << line << '\n';
}

nlohmann::ordered_json complex_json(cd v) { return nlohmann::ordered_json::array({v.real(), v.imag()}); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moebius function of an elliptic curve and the contour function m(z)"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--curve", g.curve_path, "curve file (key = value)");
    app.add_option("--nmax", g.n_max, "coefficient table size")->capture_default_str();
    app.add_option("--tol", g.tol, "quadrature panel tolerance")->capture_default_str();
    app.add_option("--out", g.out, "output path ('-' for stdout)")->capture_default_str();

    auto* coeffs = app.add_subcommand("coeffs", "write n,a_n,mu_numer,mu_sqfree for n <= nmax");

    auto* lvalue = app.add_subcommand("lvalue", "L(s,E), the completed Lambda(s) and the root number");
    std::string s_text;
    lvalue->add_option("--s", s_text, "point, e.g. 1.0+0.5i")->required();

    auto* meval = app.add_subcommand("meval", "m(z,E) by contour integration and by the explicit formula");
    std::string z_text, method = "auto";
    meval->add_option("--z", z_text, "point, e.g. 0.5+1.0i")->required();
    meval->add_option("--method", method, "direct, formula, both or auto")
        ->check(CLI::IsMember({"direct", "formula", "both", "auto"}));

    auto* zeros = app.add_subcommand("zeros", "real zeros of L(s+1/2,E) in (lo, hi)");
    double lo = 0.0, hi = 1.0;
    zeros->add_option("--lo", lo)->capture_default_str();
    zeros->add_option("--hi", hi)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
    std::string suite = "all", cache_path;
    verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()))->capture_default_str();
    verify->add_option("--coeffs", cache_path, "coefficient CSV to verify instead of recomputing");

    auto* plot = app.add_subcommand("emit-plot", "sample the explicit formula along a line");
    double from = -1.0, to = 3.0, step = 0.01, at = 0.0, exclusion = 1e-3;
    std::string axis = "real";
    plot->add_option("--from", from)->capture_default_str();
    plot->add_option("--to", to)->capture_default_str();
    plot->add_option("--step", step)->capture_default_str();
    plot->add_option("--axis", axis, "real: z = x + i*at; imag: z = at + i*t")->check(CLI::IsMember({"real", "imag"}));
    plot->add_option("--at", at, "fixed coordinate of the line")->capture_default_str();
    plot->add_option("--exclusion", exclusion, "pole exclusion radius")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (g.n_max < 16) fail(ErrorKind::config, "--nmax must be at least 16");

        if (*coeffs) {
            const CurveSpec curve = load_curve(g);
            print_warnings(curve.warnings);
            emit(g, format_coeff_csv(build_table(curve, g.n_max)));
            return ok;
        }

        if (*verify) {
            std::optional<CoefficientTable> cache;
            if (!cache_path.empty()) cache = parse_coeff_csv(read_file(cache_path));
            Session session(load_curve(g), g.n_max, contour_from(g), std::move(cache));
            print_warnings(session.curve().warnings);
            const VerificationReport report = run_verification(session, suite);
            emit(g, report.to_json());
            for (const auto& c : report.checks)
                std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  defect=" << num(c.defect) << " tol=" << num(c.tol)
                          << '\n';
            if (!report.error.empty()) {
                std::cerr << "error: " << report.error << '\n';
                return numerical_failure;
            }
            return report.overall ? ok : verification_failed;
        }

        Session session(load_curve(g), g.n_max, contour_from(g));
        const LContext& ctx = session.lfunc();
        print_warnings(ctx.warnings());

        if (*lvalue) {
            const cd s = parse_complex(s_text);
            nlohmann::ordered_json j;
            j["s"] = complex_json(s);
            j["L"] = complex_json(ctx.l_anywhere(s));
            j["Lambda"] = complex_json(ctx.lambda_completed(s));
            j["root_number"] = ctx.root_number();
            emit(g, j.dump() + "\n");
            return ok;
        }

        if (*zeros) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& zr : find_real_zeros(ctx.shifted(), lo, hi, ctx.options().tol_zero)) {
                nlohmann::ordered_json e;
                e["beta"] = zr.beta;
                e["order"] = zr.order;
                nlohmann::ordered_json t = nlohmann::ordered_json::array();
                for (cd c : zr.taylor) t.push_back(complex_json(c));
                e["taylor"] = t;
                arr.push_back(e);
            }
            emit(g, arr.dump() + "\n");
            return ok;
        }

        const Evaluator& ev = session.evaluator();

        if (*meval) {
            const cd z = parse_complex(z_text);
            if (method == "auto") method = z.imag() > 0.0 ? "both" : "formula";
            nlohmann::ordered_json j;
            j["z"] = complex_json(z);
            if (method == "direct" || method == "both") j["direct"] = complex_json(ev.m_direct(z));
            if (method == "formula" || method == "both") j["formula"] = complex_json(ev.formula8_rhs(z));
            emit(g, j.dump() + "\n");
            return ok;
        }

        if (*plot) {
            if (!(step > 0.0)) fail(ErrorKind::config, "--step must be positive");
            if (!(to >= from)) fail(ErrorKind::config, "--to must not be below --from");
            if (!(exclusion > 0.0)) fail(ErrorKind::config, "--exclusion must be positive");
            const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
            std::vector<std::optional<cd>> values(count);
            std::vector<double> coord(count);
            std::size_t inside = 0;
            for (std::size_t k = 0; k < count; ++k) coord[k] = from + static_cast<double>(k) * step;
            auto point = [&](std::size_t k) { return axis == "real" ? cd(coord[k], at) : cd(at, coord[k]); };
            for (std::size_t k = 0; k < count; ++k)
                if (ev.pole_distance(point(k)) < exclusion) ++inside;
            if (inside == count) fail(ErrorKind::config, "every sample lies inside the pole exclusion radius");
            parallel_for(count, [&](std::size_t k) {
                if (ev.pole_distance(point(k)) >= exclusion) values[k] = ev.formula8_rhs(point(k));
            });
            std::string out = axis == "real" ? "x,re_m,im_m\n" : "t,re,im\n";
            for (std::size_t k = 0; k < count; ++k) {
                out += num(coord[k]) + ',';
                if (values[k]) out += num(values[k]->real()) + ',' + num(values[k]->imag());
                else out += ',';
                out += '\n';
            }
            emit(g, out);
            return ok;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::numerical ? numerical_failure : config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
    return config_error;
}
