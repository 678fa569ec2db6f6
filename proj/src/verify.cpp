#include "ecmobius/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include <json.hpp>

#include "ecmobius/errors.hpp"

namespace ecmobius {

namespace {

constexpr cd I{0.0, 1.0};
constexpr std::uint64_t seed = 20240601;

std::string fmt_point(cd z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f%+.2fi", z.real(), z.imag());
    return buf;
}

class Runner {
public:
    explicit Runner(VerificationReport& report) : report_(report) {}

    void check(const std::string& name, const std::string& anchor, double tol, const std::function<double()>& measure) {
        const auto t0 = std::chrono::steady_clock::now();
        const double defect = measure();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report_.checks.push_back({name, anchor, defect, tol, std::isfinite(defect) && defect <= tol, secs});
    }

private:
    VerificationReport& report_;
};

void suite_convolution(Session& s, Runner& run) {
    run.check("convolution", "Dirichlet inverse: sum over d|n of mu_E(d) a_{n/d} (n/d)^{-1/2} = [n = 1]", 1e-12,
              [&] { return convolution_check(s.table(), s.table().limit); });
    run.check("hasse", "Hasse bound |a_p| <= 2 sqrt(p) for good p <= 100000 (ratio)", 1.0,
              [&] { return hasse_ratio(s.curve(), 100000); });
}

void suite_bessel(Session&, Runner& run) {
    for (double X : {0.05, 0.25, 1.0}) {
        char nm[48];
        std::snprintf(nm, sizeof nm, "mellin_j1[X=%.2f]", X);
        run.check(nm, "residue sum of Gamma(s+1/2)/Gamma(3/2-s) X^s equals J1(2/sqrt X)", 1e-10,
                  [X] { return mellin_j1_check(X); });
        std::snprintf(nm, sizeof nm, "mellin_y1[X=%.2f]", X);
        run.check(nm, "double-pole residue sum equals -Y1(w) - 2/(pi w), w = 2/sqrt X", 1e-8,
                  [X] { return mellin_y1_check(X); });
    }
    run.check("hankel_recombination", "J1(w) + i (Y1 residue sum) equals the regularized Hankel function", 1e-8, [] {
        double worst = 0.0;
        for (double X : {0.05, 0.25, 1.0}) {
            const cd w = 2.0 / std::sqrt(X);
            worst = std::max(worst, std::abs(bessel_j1(w) + I * mellin_y1_sum(X) - hankel2_1_regularized(w)));
        }
        return worst;
    });
    run.check("wronskian", "J1 Y1' - J1' Y1 = 2/(pi w), 50 points, 0.1 <= |w| <= 30, 0 <= Im w <= 3", 1e-9, [] {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> logr(std::log(0.1), std::log(30.0)), unit(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 50;) {
            const double r = std::exp(logr(rng));
            const double im = std::min(3.0, r) * unit(rng);
            const double re = std::sqrt(r * r - im * im) * (unit(rng) < 0.5 ? -1.0 : 1.0);
            const cd w(re, im);
            ++k;
            const cd j1 = bessel_j1(w), y1 = bessel_y1(w);
            const cd dj1 = bessel_j0(w) - j1 / w, dy1 = bessel_y0(w) - y1 / w;
            const double d = std::abs(j1 * dy1 - dj1 * y1 - 2.0 / (pi * w)) / (1.0 + 1.0 / std::abs(w));
            worst = std::max(worst, d);
        }
        return worst;
    });
    run.check("hankel_small_argument", "|Hreg(w)| / (|w| (1 + |log|w||)) for |w| <= 0.1 (frozen constant C = 2)", 2.0,
              [] {
                  double worst = 0.0;
                  for (int a = 0; a < 16; ++a)
                      for (double r : {1e-8, 1e-5, 1e-3, 0.01, 0.05, 0.1}) {
                          const cd w = std::polar(r, -pi + 2.0 * pi * (a + 0.5) / 16.0);
                          worst = std::max(worst, std::abs(hankel2_1_regularized(w)) / (r * (1.0 + std::abs(std::log(r)))));
                      }
                  return worst;
              });
    run.check("hankel_leading_term", "Hreg(w) - w(1/2 + i(1-2 gamma)/(2 pi) - (i/pi) log(w/2)) = O(|w|^3 log|w|)", 1.0,
              [] {
                  double worst = 0.0;
                  for (int a = 0; a < 16; ++a)
                      for (double r : {1e-3, 0.01, 0.05, 0.1}) {
                          const cd w = std::polar(r, -pi + 2.0 * pi * (a + 0.5) / 16.0);
                          const cd lead =
                              w * (0.5 + I * (1.0 - 2.0 * euler_gamma) / (2.0 * pi) - (I / pi) * std::log(0.5 * w));
                          worst = std::max(worst, std::abs(hankel2_1_regularized(w) - lead) /
                                                      (r * r * r * (1.0 + std::abs(std::log(r)))));
                      }
                  return worst;
              });
}

void suite_lambda(Session& s, Runner& run) {
    const LContext& ctx = s.lfunc();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(0.0, 2.0), im(-5.0, 5.0);
    std::vector<cd> pts;
    for (int k = 0; k < 20; ++k) {
        const double x = re(rng);
        pts.emplace_back(x, im(rng));
    }
    run.check("root_number_probes", "functional equation of the completed L-function at the fixed probes", 1e-8, [&] {
        return lambda_symmetry_defect(ctx, {cd(1.2, 0.0), cd(1.4, 0.5), cd(0.8, 1.1)});
    });
    run.check("lambda_symmetry", "Lambda(s) = eta Lambda(2-s), 20 random s, |Re s - 1| <= 1, |Im s| <= 5", 1e-9,
              [&] { return lambda_symmetry_defect(ctx, pts); });
    run.check("reflection", "L(conj s) = conj L(s)", 1e-10, [&] {
        double worst = 0.0;
        for (cd p : pts) worst = std::max(worst, std::abs(ctx.l_anywhere(std::conj(p)) - std::conj(ctx.l_anywhere(p))));
        return worst;
    });
    run.check("dirichlet_cross_check", "smoothed sum vs Dirichlet series at Re s = 4, |Im s| <= 10", 1e-8, [&] {
        double worst = 0.0;
        for (int k = -10; k <= 10; k += 2) {
            const cd p(4.0, k);
            worst = std::max(worst, std::abs(ctx.lambda_completed(p) * std::exp(-p * std::log(ctx.scale()) - log_gamma(p)) -
                                             ctx.l_dirichlet(p).value));
        }
        return worst;
    });
    run.check("taylor_vs_difference", "circle Taylor coefficient c1 vs central difference (relative)", 1e-4, [&] {
        const cd s0(0.7, 0.3);
        const auto c = taylor_at(ctx.shifted(), s0, 2, 0.05);
        const double h = 1e-4;
        const cd fd = (ctx.shifted()(s0 + h) - ctx.shifted()(s0 - h)) / (2.0 * h);
        return std::abs(c[1] - fd) / std::abs(fd);
    });
}

void suite_fe(Session& s, Runner& run) {
    const Evaluator& ev = s.evaluator();
    for (cd z : fe_points())
        run.check("fe[" + fmt_point(z) + "]", "m(z) + conj m(conj z) = -(2 pi/(eta sqrt N)) sum mu/n J1(w_n) - R(z)", 1e-6,
                  [&] { return std::abs(ev.m_direct(z) + std::conj(ev.formula8_rhs(std::conj(z))) - ev.fe_rhs(z)); });
}

void suite_formula(Session& s, Runner& run) {
    const Evaluator& ev = s.evaluator();
    for (cd z : formula_points())
        run.check("formula[" + fmt_point(z) + "]", "explicit formula for m(z) in |Im z| < 2 pi (relative to 1+|m|)", 1e-6,
                  [&] {
                      const cd m = ev.m_direct(z);
                      return std::abs(m - ev.formula8_rhs(z)) / (1.0 + std::abs(m));
                  });
    for (double x : real_axis_points()) {
        char nm[48];
        std::snprintf(nm, sizeof nm, "real_axis[x=%.1f]", x);
        run.check(nm, "Im and Re of m(x) from the Y1 and J1 series on the real axis", 1e-7, [&] {
            const cd f = ev.formula8_rhs(x);
            return std::max(std::abs(f.imag() - ev.real_axis_im(x)), std::abs(f.real() - ev.real_axis_re(x)));
        });
    }
    const DirichletPolynomial poly = synthetic_central_zero();
    for (cd z : {cd(0.3, 0.4), cd(-1.0, 2.0), cd(1.5, -0.7)}) {
        run.check("synthetic_r[" + fmt_point(z) + "]", "R(z) for a synthetic order-1 central zero vs circle quadrature",
                  1e-7, [&] { return synthetic_residue_defects(poly, z).first; });
        run.check("synthetic_r_star[" + fmt_point(z) + "]",
                  "R*(z) for a synthetic order-1 central zero vs circle quadrature", 1e-7,
                  [&] { return synthetic_residue_defects(poly, z).second; });
    }
}

void suite_residues(Session& s, Runner& run) {
    const Evaluator& ev = s.evaluator();
    const auto& table = s.table();
    for (i64 n = 1; n <= std::min<i64>(20, table.limit); ++n) {
        const double mu = table.mu_value(n);
        const bool pole = !table.mu[static_cast<std::size_t>(n)].is_zero();
        run.check("residue[n=" + std::to_string(n) + "]",
                  pole ? "Res_{z=log n} m(z) = -mu_E(n)/(2 pi i)" : "no pole at log n when mu_E(n) = 0", pole ? 1e-6 : 1e-8,
                  [&] { return std::abs(ev.residue_at_log_n(n) - (pole ? -mu / (2.0 * pi * I) : cd(0.0))); });
    }
}

using SuiteFn = void (*)(Session&, Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> all = {
        {"convolution", suite_convolution}, {"bessel", suite_bessel}, {"lambda", suite_lambda},
        {"fe", suite_fe},                   {"formula", suite_formula}, {"residues", suite_residues},
    };
    return all;
}

nlohmann::ordered_json curve_json(const CurveSpec& c) {
    nlohmann::ordered_json j;
    j["label"] = c.label;
    j["a"] = c.a;
    j["b"] = c.b;
    j["conductor"] = c.conductor;
    j["root_number"] = c.root_number ? nlohmann::ordered_json(*c.root_number) : nlohmann::ordered_json("auto");
    nlohmann::ordered_json ov = nlohmann::ordered_json::object();
    for (const auto& [p, ap] : c.ap_overrides) ov[std::to_string(p)] = ap;
    j["ap_override"] = ov;
    return j;
}

}  // namespace

Session::Session(CurveSpec curve, i64 n_max, ContourSpec contour, std::optional<CoefficientTable> table)
    : curve_(std::move(curve)), contour_(contour), n_max_(n_max) {
    if (n_max_ < 16) fail(ErrorKind::config, "n_max must be at least 16");
    if (table) {
        if (table->limit < n_max_) fail(ErrorKind::config, "coefficient cache holds fewer than n_max rows");
        table_ = std::move(*table);
        table_.limit = n_max_;
        table_.a.resize(static_cast<std::size_t>(n_max_) + 1);
        table_.mu.resize(static_cast<std::size_t>(n_max_) + 1);
        from_cache_ = true;
    } else {
        table_ = build_table(curve_, n_max_);
    }
}

Session::~Session() = default;

const LContext& Session::lfunc() {
    if (!lfunc_) lfunc_ = std::make_unique<LContext>(curve_, table_);
    return *lfunc_;
}

const Evaluator& Session::evaluator() {
    if (!evaluator_) evaluator_ = std::make_unique<Evaluator>(lfunc(), contour_);
    return *evaluator_;
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = version;
    auto c = curve_json(curve);
    c["n_max"] = n_max;
    c["panel_tolerance"] = panel_tolerance;
    j["curve"] = c;
    j["suite"] = suite;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : checks) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["anchor"] = r.anchor;
        e["defect"] = std::isfinite(r.defect) ? nlohmann::ordered_json(r.defect) : nlohmann::ordered_json(nullptr);
        e["tol"] = r.tol;
        e["pass"] = r.pass;
        e["seconds"] = r.seconds;
        arr.push_back(e);
    }
    j["checks"] = arr;
    j["overall"] = overall;
    if (!error.empty()) j["error"] = error;
    return j.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(const std::string& text) {
    VerificationReport r;
    try {
        const auto j = nlohmann::json::parse(text);
        r.version = j.at("version").get<std::string>();
        const auto& c = j.at("curve");
        std::optional<int> root;
        if (c.at("root_number").is_number()) root = c.at("root_number").get<int>();
        std::map<i64, int> ov;
        for (const auto& [k, v] : c.at("ap_override").items()) ov[std::stoll(k)] = v.get<int>();
        r.curve = make_curve(c.at("a").get<i64>(), c.at("b").get<i64>(), c.at("conductor").get<i64>(), root, ov,
                             c.at("label").get<std::string>());
        r.n_max = c.at("n_max").get<i64>();
        r.panel_tolerance = c.at("panel_tolerance").get<double>();
        r.suite = j.at("suite").get<std::string>();
        for (const auto& e : j.at("checks")) {
            CheckRecord rec;
            rec.name = e.at("name").get<std::string>();
            rec.anchor = e.at("anchor").get<std::string>();
            rec.defect = e.at("defect").is_null() ? std::nan("") : e.at("defect").get<double>();
            rec.tol = e.at("tol").get<double>();
            rec.pass = e.at("pass").get<bool>();
            rec.seconds = e.at("seconds").get<double>();
            r.checks.push_back(rec);
        }
        r.overall = j.at("overall").get<bool>();
        if (j.contains("error")) r.error = j.at("error").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::config, std::string("malformed report: ") + e.what());
    }
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : suites()) n.push_back(name);
        n.push_back("all");
        return n;
    }();
    return names;
}

VerificationReport run_verification(Session& session, const std::string& suite) {
    VerificationReport report;
    report.curve = session.curve();
    report.n_max = session.n_max();
    report.panel_tolerance = session.contour().panel_tolerance;
    report.suite = suite;
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        fail(ErrorKind::config, "unknown suite '" + suite + "'");
    Runner run(report);
    try {
        for (const auto& [name, fn] : suites())
            if (suite == "all" || suite == name) fn(session, run);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::numerical) throw;
        report.error = e.what();
    }
    report.overall = report.error.empty() && !report.checks.empty() &&
                     std::all_of(report.checks.begin(), report.checks.end(), [](const CheckRecord& c) { return c.pass; });
    return report;
}

std::vector<cd> formula_points() {
    std::vector<cd> pts;
    for (int k = 0; k < 10; ++k) pts.emplace_back(-1.0 + 0.27 * k, 0.5 + 2.5 * k / 9.0);
    return pts;
}

std::vector<cd> fe_points() {
    std::vector<cd> pts;
    for (int k = 0; k < 10; ++k) pts.emplace_back(1.4 - 0.25 * k, 0.3 + 4.9 * k / 9.0);
    return pts;
}

std::vector<double> real_axis_points() { return {0.3, 1.0, 2.5}; }

double hasse_ratio(const CurveSpec& curve, i64 limit) {
    double worst = 0.0;
    for (const auto& info : local_data_upto(curve, limit))
        if (info.kind == ReductionKind::good)
            worst = std::max(worst, std::abs(info.ap) / (2.0 * std::sqrt(static_cast<double>(info.prime))));
    return worst;
}

DirichletPolynomial synthetic_central_zero() { return DirichletPolynomial{{{1, 1.0}, {2, -2.0}}}; }

std::pair<double, double> synthetic_residue_defects(const DirichletPolynomial& poly, cd z) {
    const ShiftedL f = poly.shifted();
    const auto zeros = find_real_zeros(f, 0.0, 1.0);
    const double radius = 0.05;
    cd oracle_r = 0.0, oracle_star = 0.0;
    bool central = false;
    for (const auto& zr : zeros) {
        central = central || zr.beta == 0.5;
        oracle_r += circle_mean_integral([&](cd s) { return std::exp(s * z) / f(s); }, zr.beta, radius, 256);
        oracle_star += circle_mean_integral([&](cd s) { return tan_pi(s) * std::exp(s * z) / f(s); }, zr.beta, radius, 256);
    }
    if (!central)
        oracle_star += circle_mean_integral([&](cd s) { return tan_pi(s) * std::exp(s * z) / f(s); }, 0.5, radius, 256);
    const cd r = r_term(zeros, z), rs = r_star_term(zeros, f(0.5), z);
    return {std::abs(r - oracle_r), std::abs(rs - oracle_star)};
}

}  // namespace ecmobius
