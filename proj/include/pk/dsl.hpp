#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pk/expr_parser.hpp"
#include "pk/soliton.hpp"

namespace pk {

// Externally supplied value to compare against the computed one.
struct ReferenceValue {
    enum class Kind { connection, riemann, ricci, soliton };
    Kind kind = Kind::connection;
    std::vector<std::size_t> args;  // frame indices
    Vec vector;                     // connection, riemann
    ScalarExpr scalar;              // ricci
    Rational lambda, mu;            // soliton
    int line = 0;

    bool operator==(const ReferenceValue& o) const;
};

// Normalized content of a .pk file.
struct ManifoldDocument {
    std::string name;
    std::vector<std::string> coords;
    Symbols symbols;
    std::vector<std::string> frame_names;
    std::vector<Vec> frame;  // coordinate components of each member
    bool gram_diag = true;   // written as `gram diag` rather than `metric` lines
    Matrix gram;
    std::vector<Vec> phi;    // frame components of phi(E_a)
    Vec xi;                  // frame components
    std::optional<Vec> eta;  // coordinate covector components
    int n = 0;
    std::vector<ReferenceValue> references;

    std::size_t dimension() const { return coords.size(); }
    bool operator==(const ManifoldDocument& o) const;
};

// Line-oriented grammar:
//   manifold <id>
//   coords <id>+
//   frame <id> = <expr> d/d<coord> (+ <expr> d/d<coord>)*
//   gram diag <rational>+   |   metric <Ei> <Ej> <expr>
//   phi <Ei> -> <combination of frame members>
//   xi = <combination of frame members>
//   eta = <combination of d<coord>>          (optional)
//   n = <int>
//   reference connection <Ei> <Ej> = <combination>
//   reference riemann <Ea> <Eb> <Ec> = <combination>
//   reference ricci <Ea> <Eb> = <expr>
//   reference soliton lambda = <rational> mu = <rational>
// Throws ParseError with the offending line and column.
ManifoldDocument parse_manifold(std::string_view text);
std::string print_manifold(const ManifoldDocument& doc);

ParacontactStructure build_structure(const ManifoldDocument& doc);

// Comparison of a reference value with the computed one.
struct Note {
    std::string item;
    std::string computed;
    std::string reference;
    bool agrees = false;
};

struct SuiteResult {
    std::string manifold;
    std::size_t dimension = 0;
    int n = 0;
    std::vector<CheckReport> checks;
    std::optional<SolitonSolution> soliton;
    std::vector<Note> notes;

    bool failed() const;
};

// Check groups in execution order. A selection entry matches a check whose
// name equals it, starts with it followed by '.', or whose group it names.
const std::vector<std::string>& check_groups();

// Runs every check in dependency order and keeps the selected ones (all
// when the selection is empty). Checks whose dependencies failed are
// reported as skipped.
SuiteResult run_suite(const ManifoldDocument& doc, const std::set<std::string>& selection = {});

// The symbolic prefactor checks for all condition kinds at the given n.
SuiteResult run_factor_suite(int n);

enum class ReportFormat { text, json };
std::string emit_report(const SuiteResult& result, ReportFormat format);

}  // namespace pk
