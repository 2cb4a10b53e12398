#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "revpell/json_io.hpp"

using namespace revpell;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("not an integer: '" + s + "'");
    }
}

Mat2Z parse_matrix(const std::vector<std::string>& entries) {
    return {parse_int(entries[0]), parse_int(entries[1]), parse_int(entries[2]),
            parse_int(entries[3])};
}

const char* error_kind(const Error& e) {
    if (dynamic_cast<const NotUnimodularError*>(&e)) return "not_unimodular";
    if (dynamic_cast<const NotAnInvolutionError*>(&e)) return "not_an_involution";
    if (dynamic_cast<const TrivialInvolutionError*>(&e)) return "trivial_involution";
    if (dynamic_cast<const InvalidParamsError*>(&e)) return "invalid_params";
    if (dynamic_cast<const NotHyperbolicError*>(&e)) return "not_hyperbolic";
    if (dynamic_cast<const PerfectSquareError*>(&e)) return "perfect_square";
    if (dynamic_cast<const NonPositiveError*>(&e)) return "non_positive";
    if (dynamic_cast<const OrientationReversingError*>(&e)) return "orientation_reversing";
    if (dynamic_cast<const OrientationPreservingError*>(&e)) return "orientation_preserving";
    if (dynamic_cast<const OrientationMismatchError*>(&e)) return "orientation_mismatch";
    if (dynamic_cast<const NotReversibleError*>(&e)) return "not_reversible";
    if (dynamic_cast<const NoRecipeError*>(&e)) return "no_recipe";
    return "error";
}

void emit(const Json& envelope, bool json_mode, const std::string& human) {
    if (json_mode)
        std::cout << envelope.dump(2) << "\n";
    else
        std::cout << human;
}

std::string gamma_cell(const TriangularCase& tc, bool plus) {
    if (tc.status != CaseStatus::Found) return "-";
    return "g=" + (plus ? *tc.gamma_plus : *tc.gamma_minus).get_str();
}

std::string conic_label(ConicKind k) {
    switch (k) {
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::DegenerateParallelLines: return "two lines";
    }
    return "?";
}

std::string render_report_human(const ReversibilityReport& r) {
    std::ostringstream os;
    os << "matrix:       " << r.input.str() << "\n";
    os << "det:          " << r.hyperbolicity.det_value.get_str() << "  (orientation-"
       << to_string(*r.hyperbolicity.orientation) << ")\n";
    os << "trace:        " << r.hyperbolicity.trace_value.get_str() << "\n";
    os << "hyperbolic:   " << (r.hyperbolicity.hyperbolic ? "yes" : "no") << " ["
       << to_string(r.hyperbolicity.reason) << "]\n";
    os << "trivial +-Id: not reversors (" << r.trivial.obstruction << ")\n";
    if (r.case1) {
        os << "case 1 (lower triangular): " << to_string(r.case1->status);
        if (r.case1->status == CaseStatus::Found)
            os << "  gamma+ = " << r.case1->gamma_plus->get_str()
               << ", gamma- = " << r.case1->gamma_minus->get_str();
        os << "\n";
    }
    if (r.case2) {
        os << "case 2 (upper triangular): " << to_string(r.case2->status);
        if (r.case2->status == CaseStatus::Found)
            os << "  gamma+ = " << r.case2->gamma_plus->get_str()
               << ", gamma- = " << r.case2->gamma_minus->get_str();
        os << "\n";
    }
    if (r.case3) {
        const auto& c3 = *r.case3;
        os << "case 3 Pell equation: x^2 - (" << c3.problem.D.get_str() << ")y^2 = "
           << c3.problem.N.get_str() << "  [" << to_string(c3.solution_set.kind) << "]\n";
        if (c3.solution_set.automorph)
            os << "  automorph: (" << c3.solution_set.automorph->first.get_str() << ", "
               << c3.solution_set.automorph->second.get_str() << ")\n";
        os << "  class representatives:";
        for (const auto& s : c3.solution_set.solutions)
            os << " (" << s.x.get_str() << "," << s.y.get_str() << ")";
        os << "\n  admissible candidates (depth " << c3.depth
           << "): " << c3.admissible.size() << ", rejected: " << c3.rejected.size()
           << "\n";
    }
    if (r.obstruction) {
        os << "obstruction trace (" << (r.obstruction->valid ? "valid" : "INVALID")
           << "), conic: " << conic_label(r.obstruction->conic) << "\n";
        for (const auto& s : r.obstruction->steps)
            os << "  [" << (s.verified ? "ok" : "FAIL") << "] " << s.name << ": "
               << s.statement << "\n";
    }
    os << "reversors found: " << r.reversors_found.size() << "\n";
    size_t shown = std::min<size_t>(r.reversors_found.size(), 12);
    for (size_t i = 0; i < shown; ++i) os << "  " << r.reversors_found[i].str() << "\n";
    if (shown < r.reversors_found.size())
        os << "  ... (" << r.reversors_found.size() - shown << " more)\n";
    for (const auto& w : r.warnings) os << "note: " << w << "\n";
    return os.str();
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const std::vector<std::string>& raw, long long depth, bool json_mode) {
    Mat2Z L = parse_matrix(raw);
    Json input;
    input["matrix"] = to_json(L);
    input["depth"] = depth;

    HyperbolicityVerdict hv = classify_hyperbolicity(L);
    if (!hv.is_gl2z)
        throw NotUnimodularError("det = " + hv.det_value.get_str() + ", expected +-1");
    if (!hv.hyperbolic) {
        std::string which = hv.det_value == 1
                                ? "H1 failed: trace^2 - 4 = " +
                                      Int(hv.trace_value * hv.trace_value - 4).get_str() +
                                      " is not positive"
                                : "H2 failed: trace = 0 makes trace^2 + 4 a perfect square";
        throw NotHyperbolicError(L.str() + " is not hyperbolic (" + which + ")");
    }

    ReversibilityReport rep = hv.det_value == 1 ? find_reversors(L, depth)
                                                : orientation_reversing_analysis(L);
    if (hv.det_value == -1 && depth != 10)
        rep.warnings.push_back("--depth is ignored for orientation-reversing analysis");
    emit(make_envelope("analyze", input, to_json(rep), rep.warnings), json_mode,
         render_report_human(rep));
    return 0;
}

// ---- pell ------------------------------------------------------------------

int cmd_pell(const std::string& rawD, const std::string& rawN,
             std::optional<long long> ymax, bool json_mode) {
    PellProblem p{parse_int(rawD), parse_int(rawN)};
    Json input;
    input["D"] = to_json(p.D);
    input["N"] = to_json(p.N);
    input["y_max"] = ymax ? Json(*ymax) : Json(nullptr);

    PellSolutionSet set = solve_general(p);
    Json result;
    result["solution_set"] = to_json(set);
    std::vector<std::string> warnings;
    if (set.kind == PellKind::InfiniteClasses || set.kind == PellKind::DegenerateLines)
        warnings.push_back("solution set is infinite; representatives shown");

    std::ostringstream os;
    os << "x^2 - (" << p.D.get_str() << ")y^2 = " << p.N.get_str() << "\n";
    os << "kind: " << to_string(set.kind) << "\n";
    if (set.automorph)
        os << "automorph: (" << set.automorph->first.get_str() << ", "
           << set.automorph->second.get_str() << ")\n";
    if (!set.solutions.empty()) {
        os << (set.kind == PellKind::InfiniteClasses ? "class representatives:"
                                                     : "solutions:");
        for (const auto& s : set.solutions)
            os << " (" << s.x.get_str() << "," << s.y.get_str() << ")";
        os << "\n";
    }
    for (const auto& l : set.lines)
        os << "line: x = " << l.x0.get_str() << " + " << l.slope.get_str() << "*y\n";

    if (ymax) {
        if (*ymax < 0) throw UsageError("--ymax must be non-negative");
        Int ym(static_cast<long>(*ymax));
        auto expanded = expand_solutions(set, ym);
        auto brute = brute_force_solutions(p, ym);
        bool agree = expanded == brute;
        Json ex = Json::array(), br = Json::array();
        for (const auto& s : expanded) ex.push_back(to_json(s));
        for (const auto& s : brute) br.push_back(to_json(s));
        result["expanded"] = ex;
        result["brute_force"] = br;
        result["agreement"] = agree;
        os << "solutions with |y| <= " << *ymax << ": " << expanded.size()
           << "  (oracle agreement: " << (agree ? "yes" : "NO") << ")\n";
    }

    emit(make_envelope("pell", input, result, warnings), json_mode, os.str());
    return 0;
}

// ---- construct ---------------------------------------------------------------

InvolutionFamily family_from_name(const std::string& name) {
    if (name == "lower+") return InvolutionFamily::LowerTriangularPlus;
    if (name == "lower-") return InvolutionFamily::LowerTriangularMinus;
    if (name == "upper+") return InvolutionFamily::UpperTriangularPlus;
    if (name == "upper-") return InvolutionFamily::UpperTriangularMinus;
    if (name == "general") return InvolutionFamily::General;
    throw UsageError("unknown family '" + name +
                     "' (expected lower+, lower-, upper+, upper-, general)");
}

int cmd_construct(const std::string& family, const std::vector<std::string>& params,
                  long long choice, bool json_mode) {
    InvolutionFamily f = family_from_name(family);
    InvolutionSpec spec;
    if (f == InvolutionFamily::General) {
        if (params.size() != 2)
            throw UsageError("general family takes two parameters: alpha beta");
        spec = InvolutionSpec::general(parse_int(params[0]), parse_int(params[1]));
    } else {
        if (params.size() != 1)
            throw UsageError("triangular families take one parameter: gamma");
        spec = InvolutionSpec::triangular(f, parse_int(params[0]));
    }

    Json input;
    input["spec"] = to_json(spec);
    input["choice"] = choice;

    Mat2Z L = construct_reversible_anosov(spec, choice);
    Mat2Z A = materialize(spec);
    HyperbolicityVerdict hv = classify_hyperbolicity(L);
    bool inv_ok = is_involution(A);
    bool rev_ok = is_r_reversible(L, A);

    Json result;
    result["involution"] = to_json(A);
    result["anosov"] = to_json(L);
    Json verification;
    verification["is_involution"] = inv_ok;
    verification["is_r_reversible"] = rev_ok;
    verification["hyperbolicity"] = to_json(hv);
    result["verification"] = verification;

    std::ostringstream os;
    os << "involution A: " << A.str() << "\n";
    os << "anosov L:     " << L.str() << "\n";
    os << "verified:     is_involution=" << (inv_ok ? "yes" : "NO")
       << " is_r_reversible=" << (rev_ok ? "yes" : "NO")
       << " hyperbolic=" << (hv.hyperbolic ? "yes" : "NO")
       << " det=" << hv.det_value.get_str() << "\n";
    emit(make_envelope("construct", input, result, {}), json_mode, os.str());
    return 0;
}

// ---- fixset ------------------------------------------------------------------

int cmd_fixset(const std::vector<std::string>& raw, bool json_mode) {
    Mat2Z A = parse_matrix(raw);
    Json input;
    input["matrix"] = to_json(A);

    auto curves = fixed_point_curves(A);
    InvolutionSpec spec = classify_involution(A);

    Json result;
    result["family"] = to_json(spec);
    Json cs = Json::array();
    for (const auto& c : curves) cs.push_back(to_json(c));
    result["curves"] = cs;
    result["count"] = curves.size();

    std::ostringstream os;
    os << "involution: " << A.str() << "  [" << to_string(spec.family) << "]\n";
    os << "fixed-point set: " << curves.size() << " closed curve(s)\n";
    for (const auto& c : curves) {
        os << "  direction (" << c.dir_x.get_str() << ", " << c.dir_y.get_str()
           << "), through (" << c.offset_x.get_num().get_str();
        if (c.offset_x.get_den() != 1) os << "/" << c.offset_x.get_den().get_str();
        os << ", " << c.offset_y.get_num().get_str();
        if (c.offset_y.get_den() != 1) os << "/" << c.offset_y.get_den().get_str();
        os << ")\n";
    }
    emit(make_envelope("fixset", input, result, {}), json_mode, os.str());
    return 0;
}

// ---- enumerate -----------------------------------------------------------------

int cmd_enumerate(long long bound, bool json_mode) {
    Json input;
    input["bound"] = bound;
    auto list = enumerate_involutions(bound);
    Json result;
    result["count"] = list.size();
    Json ms = Json::array();
    for (const auto& m : list) ms.push_back(to_json(m));
    result["involutions"] = ms;

    std::ostringstream os;
    os << list.size() << " involution(s) with |entries| <= " << bound << "\n";
    for (const auto& m : list) os << "  " << m.str() << "\n";
    emit(make_envelope("enumerate", input, result, {}), json_mode, os.str());
    return 0;
}

// ---- table ---------------------------------------------------------------------

struct Example1Expected {
    Mat2Z anosov;
    bool has_gammas;
    Int g_case1_plus, g_case2_plus, g_case1_minus, g_case2_minus;
    PellProblem pell;
    std::optional<Mat2Z> instance; // a known reversor that must be rediscovered
};

struct Example2Expected {
    Mat2Z anosov;
    Int delta;
    PellProblem pell;
    std::optional<size_t> count; // nullopt = infinite
    ConicKind conic;
};

int cmd_table(const std::string& which, bool json_mode) {
    Json input;
    input["which"] = which;

    if (which == "example1") {
        const std::vector<Example1Expected> expected = {
            {{2, 1, 3, 2}, true, 0, 0, 0, 0, {12, 4}, Mat2Z{2, 1, -3, -2}},
            {{2, 1, 1, 1}, true, -1, -1, 1, 1, {5, 4}, Mat2Z{5, 3, -8, -5}},
            {{4, 9, 7, 16}, false, 0, 0, 0, 0, {396, 324}, std::nullopt},
        };
        Json rows = Json::array();
        std::ostringstream os;
        os << "Anosov            [[1,0],[g,-1]]  [[1,g],[0,-1]]  [[-1,0],[g,1]]  "
              "[[-1,g],[0,1]]  general\n";
        bool all_match = true;
        for (const auto& exp : expected) {
            ReversibilityReport rep = find_reversors(exp.anosov, 10);
            bool found = rep.case1->status == CaseStatus::Found &&
                         rep.case2->status == CaseStatus::Found;
            bool gammas_ok =
                exp.has_gammas
                    ? (found && *rep.case1->gamma_plus == exp.g_case1_plus &&
                       *rep.case2->gamma_plus == exp.g_case2_plus &&
                       *rep.case1->gamma_minus == exp.g_case1_minus &&
                       *rep.case2->gamma_minus == exp.g_case2_minus)
                    : (rep.case1->status == CaseStatus::NotDivisible &&
                       rep.case2->status == CaseStatus::NotDivisible);
            bool pell_ok = rep.case3->problem == exp.pell;
            // "verified": every representative satisfies the equation exactly.
            for (const auto& s : rep.case3->solution_set.solutions)
                pell_ok = pell_ok &&
                          s.x * s.x - rep.case3->problem.D * s.y * s.y ==
                              rep.case3->problem.N;
            bool instance_ok =
                exp.instance
                    ? std::find(rep.reversors_found.begin(), rep.reversors_found.end(),
                                *exp.instance) != rep.reversors_found.end()
                    : rep.reversors_found.empty();
            bool row_match = gammas_ok && pell_ok && instance_ok;
            all_match = all_match && row_match;

            Json row;
            row["anosov"] = to_json(exp.anosov);
            Json expj;
            if (exp.has_gammas)
                expj["gammas"] =
                    Json::array({to_json(exp.g_case1_plus), to_json(exp.g_case2_plus),
                                 to_json(exp.g_case1_minus), to_json(exp.g_case2_minus)});
            else
                expj["gammas"] = Json(nullptr);
            expj["pell"] = to_json(exp.pell);
            expj["instance"] = exp.instance ? to_json(*exp.instance) : Json(nullptr);
            row["expected"] = expj;
            Json cmp;
            cmp["case1"] = to_json(*rep.case1);
            cmp["case2"] = to_json(*rep.case2);
            cmp["pell"] = to_json(rep.case3->problem);
            cmp["reversor_count"] = rep.reversors_found.size();
            row["computed"] = cmp;
            row["match"] = row_match;
            rows.push_back(row);

            os << exp.anosov.str() << "   " << gamma_cell(*rep.case1, true)
               << "             " << gamma_cell(*rep.case2, true) << "             "
               << gamma_cell(*rep.case1, false) << "             "
               << gamma_cell(*rep.case2, false) << "             ";
            if (exp.instance && instance_ok)
                os << exp.instance->str();
            else
                os << (rep.reversors_found.empty() ? "-" : "?");
            os << "   [" << (row_match ? "MATCH" : "MISMATCH") << "]\n";
        }
        Json result;
        result["rows"] = rows;
        result["match"] = all_match;
        os << (all_match ? "MATCH" : "MISMATCH") << "\n";
        emit(make_envelope("table", input, result, {}), json_mode, os.str());
        return 0;
    }

    if (which == "example2") {
        const std::vector<Example2Expected> expected = {
            {{2, 3, 1, 1}, -3, {-3, 36}, 6, ConicKind::Ellipse},
            {{3, 4, 1, 1}, 0, {0, 64}, std::nullopt, ConicKind::DegenerateParallelLines},
            {{4, 5, 1, 1}, 5, {5, 100}, std::nullopt, ConicKind::Hyperbola},
        };
        Json rows = Json::array();
        std::ostringstream os;
        os << "Anosov           Delta  Pell equation     #sols  conic       "
              "involutions\n";
        bool all_match = true;
        for (const auto& exp : expected) {
            ReversibilityReport rep = orientation_reversing_analysis(exp.anosov);
            const auto& c3 = *rep.case3;
            Int delta = c3.problem.D;
            bool infinite = c3.solution_set.kind == PellKind::InfiniteClasses ||
                            c3.solution_set.kind == PellKind::DegenerateLines;
            std::optional<size_t> count;
            if (!infinite) count = c3.solution_set.solutions.size();
            bool row_match = delta == exp.delta && c3.problem == exp.pell &&
                             count == exp.count &&
                             rep.obstruction->conic == exp.conic &&
                             rep.reversors_found.empty() && rep.obstruction->valid;
            // every listed solution/representative satisfies the equation
            for (const auto& s : c3.solution_set.solutions)
                row_match = row_match &&
                            s.x * s.x - c3.problem.D * s.y * s.y == c3.problem.N;
            all_match = all_match && row_match;

            Json row;
            row["anosov"] = to_json(exp.anosov);
            Json expj;
            expj["delta"] = to_json(exp.delta);
            expj["pell"] = to_json(exp.pell);
            expj["count"] = exp.count ? Json(*exp.count) : Json("infinite");
            expj["conic"] = to_string(exp.conic);
            row["expected"] = expj;
            Json cmp;
            cmp["delta"] = to_json(delta);
            cmp["pell"] = to_json(c3.problem);
            cmp["count"] = count ? Json(*count) : Json("infinite");
            cmp["conic"] = to_string(rep.obstruction->conic);
            cmp["reversor_count"] = rep.reversors_found.size();
            cmp["obstruction_valid"] = rep.obstruction->valid;
            row["computed"] = cmp;
            row["match"] = row_match;
            rows.push_back(row);

            os << exp.anosov.str() << "   " << delta.get_str() << "    x^2-("
               << c3.problem.D.get_str() << ")y^2=" << c3.problem.N.get_str() << "   "
               << (count ? std::to_string(*count) : std::string("inf")) << "    "
               << conic_label(rep.obstruction->conic) << "    -   ["
               << (row_match ? "MATCH" : "MISMATCH") << "]\n";
        }
        Json result;
        result["rows"] = rows;
        result["match"] = all_match;
        os << (all_match ? "MATCH" : "MISMATCH") << "\n";
        emit(make_envelope("table", input, result, {}), json_mode, os.str());
        return 0;
    }

    throw UsageError("unknown table '" + which + "' (expected example1 or example2)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact reversibility analysis for hyperbolic toral automorphisms"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable output");

    auto* analyze = app.add_subcommand("analyze", "three-case reversor search");
    std::vector<std::string> analyze_matrix;
    long long analyze_depth = 10;
    analyze->add_option("matrix", analyze_matrix, "entries a b c d (row-major)")
        ->expected(4)
        ->required();
    analyze->add_option("--depth", analyze_depth, "case-3 automorph depth (default 10)");

    auto* pell = app.add_subcommand("pell", "solve x^2 - D y^2 = N");
    std::string pell_D, pell_N;
    long long pell_ymax = -1;
    bool pell_has_ymax = false;
    pell->add_option("D", pell_D)->required();
    pell->add_option("N", pell_N)->required();
    auto* ymax_opt = pell->add_option("--ymax", pell_ymax, "also run the brute-force oracle");

    auto* construct = app.add_subcommand("construct", "reversible Anosov from an involution");
    std::string construct_family;
    std::vector<std::string> construct_params;
    long long construct_choice = 0;
    construct->add_option("family", construct_family, "lower+ lower- upper+ upper- general")
        ->required();
    construct->add_option("params", construct_params, "gamma | alpha beta")
        ->expected(1, 2)
        ->required();
    construct->add_option("--choice", construct_choice, "recipe index (general: 0 or 1)");

    auto* fixset = app.add_subcommand("fixset", "fixed-point curves of an involution");
    std::vector<std::string> fixset_matrix;
    fixset->add_option("matrix", fixset_matrix, "entries a b c d")->expected(4)->required();

    auto* table = app.add_subcommand("table", "regenerate a worked-example table");
    std::string table_which;
    table->add_option("which", table_which, "example1 | example2")->required();

    auto* enumerate = app.add_subcommand("enumerate", "list involutions by entry bound");
    long long enum_bound = 1;
    enumerate->add_option("--bound", enum_bound, "max |entry| (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit 0; any parse problem is usage
    }
    pell_has_ymax = ymax_opt->count() > 0;

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (analyze->parsed()) return cmd_analyze(analyze_matrix, analyze_depth, json_mode);
        if (pell->parsed())
            return cmd_pell(pell_D, pell_N,
                            pell_has_ymax ? std::optional<long long>(pell_ymax)
                                          : std::nullopt,
                            json_mode);
        if (construct->parsed())
            return cmd_construct(construct_family, construct_params, construct_choice,
                                 json_mode);
        if (fixset->parsed()) return cmd_fixset(fixset_matrix, json_mode);
        if (table->parsed()) return cmd_table(table_which, json_mode);
        if (enumerate->parsed()) return cmd_enumerate(enum_bound, json_mode);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        if (json_mode) {
            Json err;
            err["schema_version"] = "1";
            err["command"] = command;
            err["error"] = Json{{"kind", "usage"}, {"message", e.what()}};
            std::cout << err.dump(2) << "\n";
        }
        return 2;
    } catch (const InvalidParamsError& e) {
        // Bad parameters are a usage problem (e.g. construct with beta | 1-alpha^2 violated).
        std::cerr << "usage error: " << e.what() << "\n";
        if (json_mode) {
            Json err;
            err["schema_version"] = "1";
            err["command"] = command;
            err["error"] = Json{{"kind", "invalid_params"}, {"message", e.what()}};
            std::cout << err.dump(2) << "\n";
        }
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (json_mode) {
            Json err;
            err["schema_version"] = "1";
            err["command"] = command;
            err["error"] = Json{{"kind", error_kind(e)}, {"message", e.what()}};
            std::cout << err.dump(2) << "\n";
        }
        return 3;
    }
}
