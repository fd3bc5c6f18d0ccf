#pragma once

#include "starprod/fixtures.hpp"
#include "starprod/predicates.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace starprod {

// One suite check together with its wall-clock cost.
struct TimedCheck {
    CheckReport check;
    long long millis = 0;
};

// Everything one verification run produces: the suite name, the
// configuration it actually ran with (degree bounds, orders, seeds,
// normalization constants — ordered key/value strings, rationals printed
// exactly), one CheckReport per check, and wall-clock timings. The overall
// status is derived, never stored: the suite passes iff every check passes.
struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<TimedCheck> checks;
    long long total_millis = 0;

    bool pass() const;
};

enum class ReportFormat { text, json };

// Renders a report. Text: suite header, config echo, one line per check with
// witness lines indented below it, per-check and total timings. JSON: the
// same content minus the timings, so identical runs produce byte-identical
// strings; rational values stay exact "p/q" strings, never floats.
std::string emit_report(const VerificationReport& report, ReportFormat format);

// Renders several suite reports as one document. A single report renders
// exactly as emit_report would; more render in sequence (text) or wrapped as
// {"suites": [...], "status": ...} (JSON), the combined status passing iff
// every suite passes.
std::string emit_reports(const std::vector<VerificationReport>& reports, ReportFormat format);

// Named verification suites. A degree of -1 selects the suite default: 6 for
// the tangential and grading suites, 4 for the chart and associativity
// checks. Every randomized ingredient is seeded, so fixing the seed fixes
// the report bit for bit.

// Transported-product basics: order 1 is the Poisson bracket, associativity
// residuals vanish through order 3, unit slots are inert above order 0.
VerificationReport gutt_suite(const std::shared_ptr<GuttWorkspace>& ws, int degree = -1);

// Degree grading: bracket-compatible positive weights exist, order-n cochains
// are homogeneous of degree -n and have slot-swap parity (-1)^n, n <= 3.
VerificationReport grading_suite(const std::shared_ptr<GuttWorkspace>& ws, int degree = -1);

// Needs correction data: the corrected order-2 cochain is tangential,
// homogeneous of degree -2, and annihilates the quadratic-invariant slot,
// while the raw order-2 cochain fails tangentiality (the failure witness is
// part of the report; the check passes because the failure is the claim).
VerificationReport tangential_suite(const FixtureBundle& bundle, int degree = -1);

// Needs a chart: round trips and canonical relations, the pushed order-2
// cochain against its stored chart-space form, the x3 reflection series
// against direct substitution, and truncation of the chart-space correction.
VerificationReport chart_suite(const FixtureBundle& bundle, int degree = -1);

// Coboundary calculus: delta^2 = 0 on seeded random operators, the order-2
// defect cobounds (with an out-of-sample re-check of the solution), and the
// skew order-1 defect admits no unary primitive.
VerificationReport cohomology_suite(const std::shared_ptr<GuttWorkspace>& ws, int degree = -1,
                                    unsigned seed = 20260815u);

} // namespace starprod
