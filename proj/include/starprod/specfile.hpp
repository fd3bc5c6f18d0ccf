#pragma once

#include "starprod/chart.hpp"
#include "starprod/lie_algebra.hpp"

#include <memory>
#include <optional>
#include <string>

namespace starprod {

class SpecError : public std::runtime_error {
public:
    SpecError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}

    int line;
};

// A Lie algebra description plus optional chart, as read from the text
// format:
//
//   # comment
//   name g54
//   dim 5
//   bracket [5,4] = x3
//   invariant x3^2/2 + x1*x5 - x2*x4
//   chart p1 = x4
//   chart q1 = x3/x1
//   inverse x1 = lambda1
//   region x1^2 + x2^2 + x3^2
//
// Brackets use 1-based coordinate indices and linear right-hand sides;
// setting [i,j] also fixes [j,i]. Chart lines introduce chart variables in
// order; inverse lines (one per x variable) come after all chart lines. The
// optional region line names the polynomial that must stay nonzero for the
// algebra's rational-coefficient companion operators to be regular.
struct AlgebraSpec {
    std::shared_ptr<LieAlgebra> algebra;
    std::optional<Chart> chart;
    std::optional<Polynomial> region;
};

AlgebraSpec parse_algebra_spec(const std::string& text);
AlgebraSpec load_algebra_spec(const std::string& path);

// Writes the spec back out in the same text format, normalized: name, dim,
// brackets [i,j] with i > j in row order, invariants, chart and inverse
// lines, region. Printing and reparsing yields an identical description.
std::string print_algebra_spec(const AlgebraSpec& spec);

} // namespace starprod
