#pragma once

#include <optional>
#include <string>
#include <vector>

#include "revpell/involutions.hpp"
#include "revpell/pell.hpp"

namespace revpell {

// A*L*A^-1 == L^-1, with A an involution (so A^-1 = A): checks A*L == L^-1*A.
// Throws NotUnimodularError (L) / NotAnInvolutionError (A).
bool is_r_reversible(const Mat2Z& L, const Mat2Z& A);

enum class CaseStatus { Found, NotDivisible, NotApplicable };

// Case (i): [[+-1, 0], [gamma, -+1]] reverses L iff b | d - a (gamma = (d-a)/b
// resp. (a-d)/b).  Case (ii) is the transposed story with c.
struct TriangularCase {
    CaseStatus status = CaseStatus::NotApplicable;
    std::optional<Int> gamma_plus;  // gamma for the [[ 1, 0], [g, -1]] / [[ 1, g], [0, -1]] member
    std::optional<Int> gamma_minus; // gamma for the [[-1, 0], [g,  1]] / [[-1, g], [0,  1]] member
    std::vector<Mat2Z> matrices;    // the reversors found (plus then minus)
};

enum class Case3RejectReason {
    YZero,             // beta = y = 0: not an involution parameter
    IndivisibleBy2b,   // x - (d-a)y (or x - (a+d)y) not divisible by 2b
    AlphaUnit,         // alpha = +-1: degenerate family member
    BetaDoesNotDivide, // beta does not divide 1 - alpha^2
    ConstraintViolated,// remaining reversibility equations fail on the candidate
};

struct Case3Candidate {
    PellSolution sol;
    Int alpha{0}, beta{0};
    Mat2Z matrix;
};

struct Case3Rejection {
    PellSolution sol;
    Case3RejectReason reason;
};

// Case (iii): general-family reversors correspond to solutions of
// x^2 - D y^2 = N with D = (a+d)^2 - 4, N = 4 b^2 (preserving case) via
// x = 2 b alpha + (d-a) beta, y = beta.
struct Case3Analysis {
    PellProblem problem;
    PellSolutionSet solution_set;
    long long depth = 0; // automorph applications unrolled per class, each direction
    std::vector<Case3Candidate> admissible;
    std::vector<Case3Rejection> rejected;
};

// Neither +I nor -I ever reverses a hyperbolic L: +I would force L^2 = ...
// L = L^-1, i.e. L^2 = I; -I likewise.  For det +1 that pins a = d and
// b = c = 0; for det -1 it pins tr = 0.  Both contradict hyperbolicity.
struct TrivialReversorVerdict {
    Mat2Z l_squared;
    bool plus_id_is_reversor = false;
    bool minus_id_is_reversor = false;
    std::string obstruction; // which entries of the forced system fail
};

// One machine-checked step of the orientation-reversing obstruction proof.
struct ObstructionStep {
    std::string name;
    std::string statement; // human-readable identity/conclusion, concrete values inlined
    bool verified = false;
};

struct ObstructionTrace {
    std::vector<ObstructionStep> steps;
    bool valid = false; // all steps verified
    ConicKind conic = ConicKind::Hyperbola;
};

struct ReversibilityReport {
    Mat2Z input;
    HyperbolicityVerdict hyperbolicity;
    TrivialReversorVerdict trivial;
    std::optional<TriangularCase> case1;      // orientation-preserving only
    std::optional<TriangularCase> case2;      // orientation-preserving only
    std::optional<Case3Analysis> case3;       // both orientations (exposition for reversing)
    std::vector<Mat2Z> reversors_found;       // deduplicated, lexicographic
    std::optional<ObstructionTrace> obstruction; // orientation-reversing only
    std::vector<std::string> warnings;
};

// Full three-case reversor search for hyperbolic L with det = +1.
// Throws NotHyperbolicError / OrientationReversingError.
ReversibilityReport find_reversors(const Mat2Z& L, long long case3_class_depth = 10);

// A hyperbolic det +1 matrix reversed by the given involution; `choice`
// selects among recipes (triangular families: only 0; General: 0 or 1).
// Throws InvalidParamsError on a bad spec or choice.
Mat2Z construct_reversible_anosov(const InvolutionSpec& spec, long long choice = 0);

// Proof that a hyperbolic L with det = -1 admits no linear involutive
// reversor, traced step by step on the concrete entries, with the associated
// conic/Pell data attached for exposition.
// Throws NotHyperbolicError / OrientationPreservingError.
ReversibilityReport orientation_reversing_analysis(const Mat2Z& L);

// If A reverses L, so does A*L^n for every n: return those for n in [n_lo, n_hi].
// Throws NotReversibleError if A does not reverse L.
std::vector<Mat2Z> involution_family(const Mat2Z& A, const Mat2Z& L, long long n_lo,
                                     long long n_hi);

// R, S reversors of L => R*S commutes with L (centralizer element).
bool reversor_composition_commutes(const Mat2Z& R, const Mat2Z& S, const Mat2Z& L);

std::string to_string(CaseStatus s);
std::string to_string(Case3RejectReason r);

} // namespace revpell
