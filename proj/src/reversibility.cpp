#include "revpell/reversibility.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace revpell {

bool is_r_reversible(const Mat2Z& L, const Mat2Z& A) {
    Int dt = det(L);
    if (dt != 1 && dt != -1)
        throw NotUnimodularError("is_r_reversible: det(L) = " + dt.get_str());
    if (!is_involution(A))
        throw NotAnInvolutionError("is_r_reversible: A*A != I for " + A.str());
    // A^-1 = A, so A L A^-1 = L^-1  <=>  A L = L^-1 A.
    return mat_mul(A, L) == mat_mul(inverse_unimodular(L), A);
}

namespace {

// ---- sparse polynomials in alpha, beta, gamma over Z ----------------------
// Used to machine-check the orientation-reversing obstruction: the symbolic
// reversibility equations are manipulated with the concrete matrix entries as
// coefficients, so every identity in the trace is verified, not asserted.

using Expo = std::array<int, 3>; // exponents of (alpha, beta, gamma)

struct Poly {
    std::map<Expo, Int> terms;

    static Poly constant(Int c) {
        Poly p;
        if (c != 0) p.terms[{0, 0, 0}] = std::move(c);
        return p;
    }
    static Poly var(int idx) {
        Poly p;
        Expo e{0, 0, 0};
        e[idx] = 1;
        p.terms[e] = 1;
        return p;
    }

    void add_term(const Expo& e, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend Poly operator+(const Poly& x, const Poly& y) {
        Poly r = x;
        for (const auto& [e, c] : y.terms) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& x, const Poly& y) {
        Poly r = x;
        for (const auto& [e, c] : y.terms) r.add_term(e, -c);
        return r;
    }
    friend Poly operator*(const Poly& x, const Poly& y) {
        Poly r;
        for (const auto& [e1, c1] : x.terms)
            for (const auto& [e2, c2] : y.terms)
                r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
        return r;
    }
    friend Poly operator*(const Int& c, const Poly& y) { return constant(c) * y; }

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const Poly& x, const Poly& y) { return (x - y).is_zero(); }

    std::string str() const {
        if (terms.empty()) return "0";
        static const char* names[3] = {"alpha", "beta", "gamma"};
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            Int ac = c < 0 ? Int(-c) : c;
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            first = false;
            bool has_var = e[0] || e[1] || e[2];
            if (ac != 1 || !has_var) os << ac.get_str();
            bool star = ac != 1;
            for (int v = 0; v < 3; ++v) {
                if (!e[v]) continue;
                if (star) os << "*";
                os << names[v];
                if (e[v] > 1) os << "^" << e[v];
                star = true;
            }
        }
        return os.str();
    }
};

const Poly& alpha_v() {
    static const Poly p = Poly::var(0);
    return p;
}
const Poly& beta_v() {
    static const Poly p = Poly::var(1);
    return p;
}
const Poly& gamma_v() {
    static const Poly p = Poly::var(2);
    return p;
}

struct PolyMat {
    Poly a, b, c, d;
};

PolyMat poly_mul(const PolyMat& x, const PolyMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

PolyMat poly_sub(const PolyMat& x, const PolyMat& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

PolyMat lift(const Mat2Z& m) {
    return {Poly::constant(m.a), Poly::constant(m.b), Poly::constant(m.c),
            Poly::constant(m.d)};
}

// beta * p with every beta*gamma collapsed through beta*gamma = 1 - alpha^2.
// p must be at most linear in gamma (all our equations are).
Poly beta_reduce(const Poly& p) {
    Poly r;
    for (const auto& [e, c] : p.terms) {
        if (e[2] == 0) {
            r.add_term({e[0], e[1] + 1, 0}, c);
        } else if (e[2] == 1) {
            r.add_term({e[0], e[1], 0}, c);       // c * (1) * rest
            r.add_term({e[0] + 2, e[1], 0}, -c);  // c * (-alpha^2) * rest
        } else {
            throw Error("beta_reduce: unexpected gamma degree");
        }
    }
    return r;
}

// Defect A*L - L^-1*A for the symbolic involution A; zero iff A reverses L.
PolyMat symbolic_defect(const PolyMat& A, const Mat2Z& L) {
    return poly_sub(poly_mul(A, lift(L)), poly_mul(lift(inverse_unimodular(L)), A));
}

// ---- report plumbing ------------------------------------------------------

TrivialReversorVerdict trivial_verdict(const Mat2Z& L) {
    TrivialReversorVerdict v;
    v.l_squared = mat_mul(L, L);
    // +-Id reverses L iff L = L^-1 iff L^2 = I; hyperbolic matrices never are.
    bool fixed = v.l_squared == Mat2Z::identity();
    v.plus_id_is_reversor = fixed;
    v.minus_id_is_reversor = fixed;
    Mat2Z diff = [&] {
        Mat2Z inv = inverse_unimodular(L);
        return Mat2Z{L.a - inv.a, L.b - inv.b, L.c - inv.c, L.d - inv.d};
    }();
    std::ostringstream os;
    if (det(L) == 1)
        os << "+-Id reverses L only if L = L^-1, i.e. a = d and b = c = 0; here "
           << "L - L^-1 = " << diff.str() << " != 0";
    else
        os << "+-Id reverses L only if L = L^-1, i.e. a + d = 0; here trace = "
           << trace(L).get_str() << " != 0";
    v.obstruction = os.str();
    return v;
}

// Case-3 candidates: unfold each class to `depth` automorph applications in
// both directions (with both signs), or take the finite data as-is.
std::vector<PellSolution> expand_by_depth(const PellSolutionSet& set, long long depth) {
    std::set<std::pair<Int, Int>> acc;
    switch (set.kind) {
    case PellKind::Empty:
        break;
    case PellKind::FiniteList:
        for (const auto& s : set.solutions) acc.insert({s.x, s.y});
        break;
    case PellKind::DegenerateLines: {
        const long dep = static_cast<long>(depth);
        for (const auto& line : set.lines)
            for (Int y = -dep; y <= dep; ++y)
                acc.insert({line.x0 + line.slope * y, y});
        break;
    }
    case PellKind::InfiniteClasses:
        for (const auto& r : set.solutions)
            for (int sign = 0; sign < 2; ++sign) {
                PellSolution base = sign ? PellSolution{-r.x, -r.y} : r;
                for (long long dir : {1LL, -1LL}) {
                    std::pair<Int, Int> s{base.x, base.y};
                    for (long long k = 0; k <= depth; ++k) {
                        acc.insert(s);
                        s = automorph_apply(set.problem.D, *set.automorph, s, dir);
                    }
                }
            }
        break;
    }
    std::vector<PellSolution> out;
    out.reserve(acc.size());
    for (const auto& [x, y] : acc) out.push_back({x, y});
    std::sort(out.begin(), out.end());
    return out;
}

TriangularCase solve_triangular(const Int& divisor, const Int& d_minus_a, bool lower) {
    TriangularCase tc;
    if (divisor == 0) {
        tc.status = CaseStatus::NotApplicable;
        return tc;
    }
    if (d_minus_a % divisor != 0) {
        tc.status = CaseStatus::NotDivisible;
        return tc;
    }
    tc.status = CaseStatus::Found;
    Int gp = d_minus_a / divisor;
    Int gm = -gp;
    tc.gamma_plus = gp;
    tc.gamma_minus = gm;
    if (lower) {
        tc.matrices.push_back({1, 0, gp, -1});
        tc.matrices.push_back({-1, 0, gm, 1});
    } else {
        tc.matrices.push_back({1, gp, 0, -1});
        tc.matrices.push_back({-1, gm, 0, 1});
    }
    return tc;
}

void sort_dedup(std::vector<Mat2Z>& ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
}

} // namespace

ReversibilityReport find_reversors(const Mat2Z& L, long long case3_class_depth) {
    if (case3_class_depth < 0)
        throw InvalidParamsError("find_reversors: negative case3_class_depth");
    HyperbolicityVerdict hv = classify_hyperbolicity(L);
    if (!hv.is_gl2z)
        throw NotUnimodularError("find_reversors: det = " + hv.det_value.get_str());
    if (!hv.hyperbolic)
        throw NotHyperbolicError("find_reversors: " + L.str() + " is not hyperbolic");
    if (hv.det_value == -1)
        throw OrientationReversingError(
            "find_reversors: det = -1; use orientation_reversing_analysis");

    ReversibilityReport rep;
    rep.input = L;
    rep.hyperbolicity = hv;
    rep.trivial = trivial_verdict(L);

    const Int& a = L.a;
    const Int& b = L.b;
    const Int& c = L.c;
    const Int& d = L.d;
    Int d_minus_a = d - a;

    // Case (i): A = [[e, 0], [g, -e]] reverses L iff b*g = e*(d - a).
    rep.case1 = solve_triangular(b, d_minus_a, /*lower=*/true);
    // Case (ii): A = [[e, g], [0, -e]] reverses L iff c*g = e*(d - a).
    rep.case2 = solve_triangular(c, d_minus_a, /*lower=*/false);

    // Case (iii): general family via x^2 - D y^2 = 4 b^2,
    // x = 2 b alpha + (d - a) beta, y = beta.
    Case3Analysis c3;
    c3.problem = {trace(L) * trace(L) - 4, 4 * b * b};
    c3.solution_set = solve_general(c3.problem);
    c3.depth = case3_class_depth;
    for (const PellSolution& s : expand_by_depth(c3.solution_set, case3_class_depth)) {
        if (s.y == 0) {
            c3.rejected.push_back({s, Case3RejectReason::YZero});
            continue;
        }
        Int t = s.x - d_minus_a * s.y;
        if (t % (2 * b) != 0) {
            c3.rejected.push_back({s, Case3RejectReason::IndivisibleBy2b});
            continue;
        }
        Int alpha = t / (2 * b);
        Int beta = s.y;
        Int num = 1 - alpha * alpha;
        if (num == 0) {
            c3.rejected.push_back({s, Case3RejectReason::AlphaUnit});
            continue;
        }
        if (num % beta != 0) {
            c3.rejected.push_back({s, Case3RejectReason::BetaDoesNotDivide});
            continue;
        }
        Mat2Z A{alpha, beta, num / beta, -alpha};
        if (!is_r_reversible(L, A)) { // unreachable for det +1; kept as a guard
            c3.rejected.push_back({s, Case3RejectReason::ConstraintViolated});
            continue;
        }
        c3.admissible.push_back({s, alpha, beta, A});
    }
    rep.case3 = std::move(c3);

    for (const auto& tc : {*rep.case1, *rep.case2})
        for (const auto& m : tc.matrices) rep.reversors_found.push_back(m);
    for (const auto& cand : rep.case3->admissible) rep.reversors_found.push_back(cand.matrix);
    sort_dedup(rep.reversors_found);

    rep.warnings.push_back(
        "case-3 reversors enumerated to automorph depth " +
        std::to_string(case3_class_depth) + " per solution class; the family is infinite");
    return rep;
}

Mat2Z construct_reversible_anosov(const InvolutionSpec& spec, long long choice) {
    Mat2Z A = materialize(spec); // validates parameters
    const Int& g = spec.gamma;
    Mat2Z L;
    switch (spec.family) {
    case InvolutionFamily::LowerTriangularPlus:
        if (choice != 0) throw InvalidParamsError("construct: triangular families have a single recipe (choice 0)");
        L = g == 0 ? Mat2Z{3, 4, 2, 3} : Mat2Z{g, 1, 2 * g * g - 1, 2 * g};
        break;
    case InvolutionFamily::LowerTriangularMinus:
        if (choice != 0) throw InvalidParamsError("construct: triangular families have a single recipe (choice 0)");
        L = g == 0 ? Mat2Z{3, 4, 2, 3} : Mat2Z{g, -1, 1 - 2 * g * g, 2 * g};
        break;
    case InvolutionFamily::UpperTriangularPlus:
        if (choice != 0) throw InvalidParamsError("construct: triangular families have a single recipe (choice 0)");
        L = g == 0 ? Mat2Z{3, 2, 4, 3} : Mat2Z{g, 2 * g * g - 1, 1, 2 * g};
        break;
    case InvolutionFamily::UpperTriangularMinus:
        if (choice != 0) throw InvalidParamsError("construct: triangular families have a single recipe (choice 0)");
        L = g == 0 ? Mat2Z{3, 2, 4, 3} : Mat2Z{g, 1 - 2 * g * g, -1, 2 * g};
        break;
    case InvolutionFamily::General: {
        if (choice != 0 && choice != 1)
            throw InvalidParamsError("construct: General family has recipes 0 and 1");
        const Int& al = spec.alpha;
        const Int& be = spec.beta;
        if (al == 0) {
            // trace-2*alpha recipes degenerate; pair [[0, beta], [gamma, 0]]
            // (beta = +-1 here) with an off-diagonal Anosov instead.
            L = choice == 0 ? Mat2Z{0, be, -be, 3} : Mat2Z{0, -be, be, 3};
        } else {
            L = choice == 0 ? Mat2Z{al, be, (al * al - 1) / be, al}
                            : Mat2Z{al, -be, (1 - al * al) / be, al};
        }
        break;
    }
    }
    // Recipes are closed-form; re-verify the contract anyway.
    if (det(L) != 1 || !classify_hyperbolicity(L).hyperbolic || !is_r_reversible(L, A))
        throw NoRecipeError("construct: recipe verification failed for " + A.str());
    return L;
}

ReversibilityReport orientation_reversing_analysis(const Mat2Z& L) {
    HyperbolicityVerdict hv = classify_hyperbolicity(L);
    if (!hv.is_gl2z)
        throw NotUnimodularError("orientation_reversing_analysis: det = " +
                                 hv.det_value.get_str());
    if (!hv.hyperbolic)
        throw NotHyperbolicError("orientation_reversing_analysis: " + L.str() +
                                 " is not hyperbolic");
    if (hv.det_value == 1)
        throw OrientationPreservingError(
            "orientation_reversing_analysis: det = +1; use find_reversors");

    ReversibilityReport rep;
    rep.input = L;
    rep.hyperbolicity = hv;
    rep.trivial = trivial_verdict(L);

    const Int& a = L.a;
    const Int& b = L.b;
    const Int& c = L.c;
    const Int& d = L.d;
    Int tr = trace(L);

    ObstructionTrace trace_out;
    auto push_step = [&](std::string name, std::string statement, bool ok) {
        trace_out.steps.push_back({std::move(name), std::move(statement), ok});
    };

    push_step("hyperbolicity",
              "det = -1 and trace = " + tr.get_str() + " != 0, so b != 0 and c != 0 "
              "(b = 0 or c = 0 with det -1 forces trace 0)",
              tr != 0 && b != 0 && c != 0);

    // Triangular families: one defect entry is a nonzero constant.
    struct FamilyCheck {
        const char* name;
        PolyMat A;
        int row, col;
        Int expect;
    };
    const Poly one = Poly::constant(1);
    const Poly mone = Poly::constant(-1);
    const Poly zero = Poly::constant(0);
    std::vector<FamilyCheck> families;
    families.push_back({"family_lower_plus", {one, zero, gamma_v(), mone}, 0, 1, 2 * b});
    families.push_back({"family_lower_minus", {mone, zero, gamma_v(), one}, 0, 1, -2 * b});
    families.push_back({"family_upper_plus", {one, gamma_v(), zero, mone}, 1, 0, -2 * c});
    families.push_back({"family_upper_minus", {mone, gamma_v(), zero, one}, 1, 0, 2 * c});
    for (const auto& fc : families) {
        PolyMat defect = symbolic_defect(fc.A, L);
        const Poly& entry = fc.row == 0 ? (fc.col == 0 ? defect.a : defect.b)
                                        : (fc.col == 0 ? defect.c : defect.d);
        bool ok = entry == Poly::constant(fc.expect) && fc.expect != 0;
        std::ostringstream os;
        os << "defect entry (" << fc.row << "," << fc.col << ") = " << entry.str()
           << " for every gamma; it is the nonzero constant " << fc.expect.get_str()
           << ", so no member of this family reverses L";
        push_step(fc.name, os.str(), ok);
    }

    // General family: A = [[alpha, beta], [gamma, -alpha]], beta*gamma = 1 - alpha^2.
    PolyMat A{alpha_v(), beta_v(), gamma_v(), Poly::constant(0) - alpha_v()};
    PolyMat defect = symbolic_defect(A, L);
    Poly poly1 = b * alpha_v() + d * beta_v();                       // E2 / 2
    Poly poly2 = c * (alpha_v() * beta_v()) -
                 a * (one - alpha_v() * alpha_v());                  // -(beta*E3)/2
    Poly poly3 = beta_reduce(defect.a);                              // beta*E1 reduced
    bool setup_ok = defect.b == Int(2) * poly1 &&
                    beta_reduce(defect.c) == Int(-2) * poly2 &&
                    beta_reduce(defect.d) == Poly::constant(0) - poly3;
    push_step("general_setup",
              "reversibility equations: E1 = " + defect.a.str() + ", E2 = 2*(" +
                  poly1.str() + "), E3 with beta*E3 = -2*(" + poly2.str() +
                  "), and beta*E4 = -beta*E1 after beta*gamma -> 1 - alpha^2",
              setup_ok);

    Poly polyA = poly3 - alpha_v() * poly1;
    Poly polyA_expect = a * (alpha_v() * beta_v()) + c * (beta_v() * beta_v()) -
                        Poly::constant(b);
    push_step("identity_A",
              "beta*E1 - alpha*(E2/2) = " + polyA.str() +
                  " (every reversor zeroes this)",
              polyA == polyA_expect);

    Poly polyB = alpha_v() * polyA - beta_v() * poly2;
    Poly polyB_expect = a * beta_v() - b * alpha_v();
    push_step("identity_B",
              "alpha*(" + polyA_expect.str() + ") - beta*(" + poly2.str() + ") = " +
                  polyB.str(),
              polyB == polyB_expect);

    Poly conclusion = polyB + poly1;
    Poly conclusion_expect = tr * beta_v();
    push_step("conclusion",
              "summing the two derived invariants gives " + conclusion.str() +
                  "; a general-family reversor needs beta != 0, forcing trace = 0, "
                  "but trace = " + tr.get_str() + " != 0",
              conclusion == conclusion_expect && tr != 0);

    trace_out.valid = std::all_of(trace_out.steps.begin(), trace_out.steps.end(),
                                  [](const ObstructionStep& s) { return s.verified; });
    trace_out.conic = classify_conic(L, Orientation::Reversing);
    rep.obstruction = std::move(trace_out);

    // Expository Pell data: x = 2 b alpha + (a + d) beta, y = beta turns E1
    // into x^2 - ((a-d)^2 - 4) y^2 = 4 b^2; filter its solutions through the
    // remaining equations to watch every candidate die.
    const long long depth = 10;
    Case3Analysis c3;
    c3.problem = {(a - d) * (a - d) - 4, 4 * b * b};
    c3.solution_set = solve_general(c3.problem);
    c3.depth = depth;
    for (const PellSolution& s : expand_by_depth(c3.solution_set, depth)) {
        if (s.y == 0) {
            c3.rejected.push_back({s, Case3RejectReason::YZero});
            continue;
        }
        Int t = s.x - tr * s.y;
        if (t % (2 * b) != 0) {
            c3.rejected.push_back({s, Case3RejectReason::IndivisibleBy2b});
            continue;
        }
        Int alpha = t / (2 * b);
        Int beta = s.y;
        Int num = 1 - alpha * alpha;
        if (num == 0) {
            c3.rejected.push_back({s, Case3RejectReason::AlphaUnit});
            continue;
        }
        if (num % beta != 0) {
            c3.rejected.push_back({s, Case3RejectReason::BetaDoesNotDivide});
            continue;
        }
        // E2 and E3 from the trace must also vanish; they never do.
        if (alpha * b + beta * d != 0 || alpha * beta * c - a * num != 0) {
            c3.rejected.push_back({s, Case3RejectReason::ConstraintViolated});
            continue;
        }
        Mat2Z cand{alpha, beta, num / beta, -alpha};
        if (!is_r_reversible(L, cand)) {
            c3.rejected.push_back({s, Case3RejectReason::ConstraintViolated});
            continue;
        }
        c3.admissible.push_back({s, alpha, beta, cand}); // unreachable: trace proves none
    }
    rep.case3 = std::move(c3);
    for (const auto& cand : rep.case3->admissible) rep.reversors_found.push_back(cand.matrix);

    rep.warnings.push_back("expository Pell candidates enumerated to depth " +
                           std::to_string(depth));
    return rep;
}

std::vector<Mat2Z> involution_family(const Mat2Z& A, const Mat2Z& L, long long n_lo,
                                     long long n_hi) {
    if (!is_r_reversible(L, A))
        throw NotReversibleError("involution_family: A does not reverse L");
    std::vector<Mat2Z> out;
    for (long long n = n_lo; n <= n_hi; ++n) out.push_back(mat_mul(A, mat_pow(L, n)));
    return out;
}

bool reversor_composition_commutes(const Mat2Z& R, const Mat2Z& S, const Mat2Z& L) {
    if (!is_r_reversible(L, R))
        throw NotReversibleError("reversor_composition_commutes: R does not reverse L");
    if (!is_r_reversible(L, S))
        throw NotReversibleError("reversor_composition_commutes: S does not reverse L");
    Mat2Z RS = mat_mul(R, S);
    return mat_mul(RS, L) == mat_mul(L, RS);
}

std::string to_string(CaseStatus s) {
    switch (s) {
    case CaseStatus::Found: return "found";
    case CaseStatus::NotDivisible: return "not_divisible";
    case CaseStatus::NotApplicable: return "not_applicable";
    }
    return "unknown";
}

std::string to_string(Case3RejectReason r) {
    switch (r) {
    case Case3RejectReason::YZero: return "y_zero";
    case Case3RejectReason::IndivisibleBy2b: return "indivisible_by_2b";
    case Case3RejectReason::AlphaUnit: return "alpha_unit";
    case Case3RejectReason::BetaDoesNotDivide: return "beta_does_not_divide";
    case Case3RejectReason::ConstraintViolated: return "constraint_violated";
    }
    return "unknown";
}

} // namespace revpell
