#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "revpell/mat2z.hpp"

namespace revpell {

// x^2 - D*y^2 = N over Z.
struct PellProblem {
    Int D{0}, N{0};
    friend bool operator==(const PellProblem& a, const PellProblem& b) {
        return a.D == b.D && a.N == b.N;
    }
};

// sqrt(D) = [a0; period...] with the period ending at 2*a0.
struct CFExpansion {
    Int a0;
    std::vector<Int> period;
};

// Continued fraction of sqrt(D), D > 0 non-square.
// Throws NonPositiveError / PerfectSquareError.
CFExpansion cf_sqrt(const Int& D);

// Least (x, y), x, y > 0 with x^2 - D*y^2 = 1.
std::pair<Int, Int> fundamental_solution(const Int& D);

// Least positive solution of x^2 - D*y^2 = -1, if one exists.
std::optional<std::pair<Int, Int>> negative_pell_solution(const Int& D);

struct PellSolution {
    Int x{0}, y{0};
    friend bool operator==(const PellSolution& a, const PellSolution& b) {
        return a.x == b.x && a.y == b.y;
    }
    // (y, x) order: solution lists are sorted by y, then x.
    friend bool operator<(const PellSolution& a, const PellSolution& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
};

enum class PellKind {
    Empty,
    FiniteList,      // all solutions listed
    InfiniteClasses, // canonical class representatives + automorph
    DegenerateLines, // D = s^2, N = 0 (or D = 0): solution lines x = x0 + slope*y
};

struct PellLine {
    Int x0{0}, slope{0}; // x = x0 + slope * y, y free
    friend bool operator==(const PellLine& a, const PellLine& b) {
        return a.x0 == b.x0 && a.slope == b.slope;
    }
};

struct PellSolutionSet {
    PellProblem problem;
    PellKind kind = PellKind::Empty;
    std::vector<PellSolution> solutions; // finite list, or class representatives
    std::optional<std::pair<Int, Int>> automorph; // fundamental unit (x1, y1), D > 0 non-square
    std::vector<PellLine> lines;         // DegenerateLines only
};

// Complete solver for x^2 - D*y^2 = N, any sign of D and N.
// For D > 0 non-square and N != 0 the result is one canonical representative
// per equivalence class under the automorph group {+-u^k}.
PellSolutionSet solve_general(const PellProblem& p);

// All solutions with |y| <= y_max by direct scan; the test oracle.
std::vector<PellSolution> brute_force_solutions(const PellProblem& p, const Int& y_max);

// Unfold a solution set into the concrete solutions with |y| <= y_max.
std::vector<PellSolution> expand_solutions(const PellSolutionSet& set, const Int& y_max);

// Apply the automorph k times: sigma(x, y) = (x*x1 + D*y*y1, x*y1 + y*x1);
// negative k applies the inverse.
std::pair<Int, Int> automorph_apply(const Int& D, const std::pair<Int, Int>& unit,
                                    std::pair<Int, Int> sol, long long k);

// Same orbit under {+-u^k}?  (Only meaningful for D > 0 non-square, N != 0.)
bool same_class(const PellProblem& p, const PellSolution& s, const PellSolution& t);

enum class ConicKind { Hyperbola, Ellipse, DegenerateParallelLines };

// Conic type of the case-3 constraint quadric for L = [[a,b],[c,d]]:
// discriminant (a+d)^2 - 4 when orientation-preserving, (a-d)^2 - 4 when
// orientation-reversing.  Throws OrientationMismatchError if det(L) does not
// match the claimed orientation.
ConicKind classify_conic(const Mat2Z& L, Orientation o);

std::string to_string(PellKind k);
std::string to_string(ConicKind k);

} // namespace revpell
