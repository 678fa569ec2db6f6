#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ecmobius/explicit.hpp"

namespace ecmobius {

inline constexpr const char* tool_version = "0.1.0";

/// Curve, coefficient table and the lazily built analytic objects.
class Session {
public:
    Session(CurveSpec curve, i64 n_max, ContourSpec contour = {}, std::optional<CoefficientTable> table = std::nullopt);
    ~Session();

    const CurveSpec& curve() const { return curve_; }
    const ContourSpec& contour() const { return contour_; }
    i64 n_max() const { return n_max_; }
    const CoefficientTable& table() const { return table_; }
    bool table_from_cache() const { return from_cache_; }

    const LContext& lfunc();
    const Evaluator& evaluator();

private:
    CurveSpec curve_;
    ContourSpec contour_;
    i64 n_max_;
    CoefficientTable table_;
    bool from_cache_ = false;
    std::unique_ptr<LContext> lfunc_;
    std::unique_ptr<Evaluator> evaluator_;
};

struct CheckRecord {
    std::string name;
    std::string anchor;
    double defect = 0.0;
    double tol = 0.0;
    bool pass = false;
    double seconds = 0.0;
    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct VerificationReport {
    std::string version = tool_version;
    CurveSpec curve;
    i64 n_max = 0;
    double panel_tolerance = 0.0;
    std::string suite;
    std::vector<CheckRecord> checks;
    bool overall = false;
    std::string error;  // set when a numerical failure stopped the suite

    std::string to_json() const;
    static VerificationReport from_json(const std::string& text);
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite in order). A numerical failure
/// stops the run; the checks completed so far are kept and `error` is set.
/// Config and domain errors propagate.
VerificationReport run_verification(Session& session, const std::string& suite);

/// Evaluation points used by the fe and formula suites.
std::vector<cd> formula_points();
std::vector<cd> fe_points();
std::vector<double> real_axis_points();

/// Largest |a_p| / (2 sqrt p) over primes p <= limit of good reduction.
double hasse_ratio(const CurveSpec& curve, i64 limit);

/// Synthetic L(s+1/2) with a simple zero at s = 1/2: 1 - 2^{1-w}.
DirichletPolynomial synthetic_central_zero();

/// |r_term - oracle| and |r_star_term - oracle| for the synthetic table at z,
/// with oracles from circle quadrature around s = 1/2.
std::pair<double, double> synthetic_residue_defects(const DirichletPolynomial& poly, cd z);

}  // namespace ecmobius
