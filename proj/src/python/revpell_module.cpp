#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "revpell/json_io.hpp"

namespace py = pybind11;
using namespace revpell;

namespace pybind11 {
namespace detail {

// GMP integers cross the boundary as Python ints (via decimal strings, exact).
template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        PyObject* s = PyObject_Str(src.ptr());
        if (!s) return false;
        const char* text = PyUnicode_AsUTF8(s);
        bool ok = text != nullptr;
        if (ok) {
            try {
                value = mpz_class(text);
            } catch (const std::invalid_argument&) {
                ok = false;
            }
        }
        Py_DECREF(s);
        return ok;
    }

    static handle cast(const mpz_class& v, return_value_policy, handle) {
        return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    }
};

// GMP rationals become fractions.Fraction (exact).
template <>
struct type_caster<mpq_class> {
    PYBIND11_TYPE_CASTER(mpq_class, const_name("Fraction"));

    bool load(handle src, bool) {
        object s = py::str(src);
        std::string text = s.cast<std::string>();
        try {
            value = mpq_class(text);
            value.canonicalize();
        } catch (const std::invalid_argument&) {
            return false;
        }
        return true;
    }

    static handle cast(const mpq_class& v, return_value_policy, handle) {
        object fraction = module_::import("fractions").attr("Fraction");
        object num = reinterpret_steal<object>(
            PyLong_FromString(v.get_num().get_str().c_str(), nullptr, 10));
        object den = reinterpret_steal<object>(
            PyLong_FromString(v.get_den().get_str().c_str(), nullptr, 10));
        return fraction(num, den).release();
    }
};

} // namespace detail
} // namespace pybind11

namespace {

template <typename T>
std::string json_of(const T& v) {
    return to_json(v).dump(2);
}

} // namespace

PYBIND11_MODULE(_revpell, m) {
    m.doc() = "exact reversibility analysis for hyperbolic toral automorphisms";

    // ---- exceptions ----------------------------------------------------------
    auto& base_exc = py::register_exception<Error>(m, "RevpellError");
    py::register_exception<NotUnimodularError>(m, "NotUnimodularError", base_exc);
    py::register_exception<NotAnInvolutionError>(m, "NotAnInvolutionError", base_exc);
    py::register_exception<TrivialInvolutionError>(m, "TrivialInvolutionError", base_exc);
    py::register_exception<InvalidParamsError>(m, "InvalidParamsError", base_exc);
    py::register_exception<NotHyperbolicError>(m, "NotHyperbolicError", base_exc);
    py::register_exception<PerfectSquareError>(m, "PerfectSquareError", base_exc);
    py::register_exception<NonPositiveError>(m, "NonPositiveError", base_exc);
    py::register_exception<OrientationReversingError>(m, "OrientationReversingError",
                                                      base_exc);
    py::register_exception<OrientationPreservingError>(m, "OrientationPreservingError",
                                                       base_exc);
    py::register_exception<OrientationMismatchError>(m, "OrientationMismatchError",
                                                     base_exc);
    py::register_exception<NotReversibleError>(m, "NotReversibleError", base_exc);
    py::register_exception<NoRecipeError>(m, "NoRecipeError", base_exc);

    // ---- enums ---------------------------------------------------------------
    py::enum_<Orientation>(m, "Orientation")
        .value("PRESERVING", Orientation::Preserving)
        .value("REVERSING", Orientation::Reversing);
    py::enum_<HyperbolicityReason>(m, "HyperbolicityReason")
        .value("NOT_UNIMODULAR", HyperbolicityReason::NotUnimodular)
        .value("H1_PASS", HyperbolicityReason::H1Pass)
        .value("H1_FAIL", HyperbolicityReason::H1Fail)
        .value("H2_PASS", HyperbolicityReason::H2Pass)
        .value("H2_FAIL", HyperbolicityReason::H2Fail);
    py::enum_<InvolutionFamily>(m, "InvolutionFamily")
        .value("LOWER_TRIANGULAR_PLUS", InvolutionFamily::LowerTriangularPlus)
        .value("LOWER_TRIANGULAR_MINUS", InvolutionFamily::LowerTriangularMinus)
        .value("UPPER_TRIANGULAR_PLUS", InvolutionFamily::UpperTriangularPlus)
        .value("UPPER_TRIANGULAR_MINUS", InvolutionFamily::UpperTriangularMinus)
        .value("GENERAL", InvolutionFamily::General);
    py::enum_<PellKind>(m, "PellKind")
        .value("EMPTY", PellKind::Empty)
        .value("FINITE_LIST", PellKind::FiniteList)
        .value("INFINITE_CLASSES", PellKind::InfiniteClasses)
        .value("DEGENERATE_LINES", PellKind::DegenerateLines);
    py::enum_<ConicKind>(m, "ConicKind")
        .value("HYPERBOLA", ConicKind::Hyperbola)
        .value("ELLIPSE", ConicKind::Ellipse)
        .value("DEGENERATE_PARALLEL_LINES", ConicKind::DegenerateParallelLines);
    py::enum_<CaseStatus>(m, "CaseStatus")
        .value("FOUND", CaseStatus::Found)
        .value("NOT_DIVISIBLE", CaseStatus::NotDivisible)
        .value("NOT_APPLICABLE", CaseStatus::NotApplicable);
    py::enum_<Case3RejectReason>(m, "Case3RejectReason")
        .value("Y_ZERO", Case3RejectReason::YZero)
        .value("INDIVISIBLE_BY_2B", Case3RejectReason::IndivisibleBy2b)
        .value("ALPHA_UNIT", Case3RejectReason::AlphaUnit)
        .value("BETA_DOES_NOT_DIVIDE", Case3RejectReason::BetaDoesNotDivide)
        .value("CONSTRAINT_VIOLATED", Case3RejectReason::ConstraintViolated);

    // ---- core types ------------------------------------------------------------
    py::class_<Mat2Z>(m, "Mat2Z")
        .def(py::init<Int, Int, Int, Int>(), py::arg("a"), py::arg("b"), py::arg("c"),
             py::arg("d"))
        .def_readwrite("a", &Mat2Z::a)
        .def_readwrite("b", &Mat2Z::b)
        .def_readwrite("c", &Mat2Z::c)
        .def_readwrite("d", &Mat2Z::d)
        .def_static("identity", &Mat2Z::identity)
        .def("__repr__", &Mat2Z::str)
        .def("__eq__", [](const Mat2Z& x, const Mat2Z& y) { return x == y; })
        .def("__ne__", [](const Mat2Z& x, const Mat2Z& y) { return x != y; })
        .def("__mul__", &mat_mul)
        .def("__pow__", [](const Mat2Z& x, long long n) { return mat_pow(x, n); })
        .def("det", &det)
        .def("trace", &trace)
        .def("inverse", &inverse_unimodular);

    py::class_<HyperbolicityVerdict>(m, "HyperbolicityVerdict")
        .def_readonly("is_gl2z", &HyperbolicityVerdict::is_gl2z)
        .def_readonly("det_value", &HyperbolicityVerdict::det_value)
        .def_readonly("trace_value", &HyperbolicityVerdict::trace_value)
        .def_readonly("orientation", &HyperbolicityVerdict::orientation)
        .def_readonly("hyperbolic", &HyperbolicityVerdict::hyperbolic)
        .def_readonly("reason", &HyperbolicityVerdict::reason)
        .def("json", &json_of<HyperbolicityVerdict>);

    py::class_<InvolutionSpec>(m, "InvolutionSpec")
        .def_static("triangular", &InvolutionSpec::triangular)
        .def_static("general", &InvolutionSpec::general)
        .def_readonly("family", &InvolutionSpec::family)
        .def_readonly("gamma", &InvolutionSpec::gamma)
        .def_readonly("alpha", &InvolutionSpec::alpha)
        .def_readonly("beta", &InvolutionSpec::beta)
        .def("json", &json_of<InvolutionSpec>);

    py::class_<FixedCurve>(m, "FixedCurve")
        .def_readonly("dir_x", &FixedCurve::dir_x)
        .def_readonly("dir_y", &FixedCurve::dir_y)
        .def_readonly("offset_x", &FixedCurve::offset_x)
        .def_readonly("offset_y", &FixedCurve::offset_y)
        .def("json", &json_of<FixedCurve>);

    py::class_<PellProblem>(m, "PellProblem")
        .def(py::init<Int, Int>(), py::arg("D"), py::arg("N"))
        .def_readonly("D", &PellProblem::D)
        .def_readonly("N", &PellProblem::N)
        .def("__eq__", [](const PellProblem& x, const PellProblem& y) { return x == y; });

    py::class_<PellSolution>(m, "PellSolution")
        .def(py::init<Int, Int>(), py::arg("x"), py::arg("y"))
        .def_readonly("x", &PellSolution::x)
        .def_readonly("y", &PellSolution::y)
        .def("__repr__",
             [](const PellSolution& s) {
                 return "(" + s.x.get_str() + ", " + s.y.get_str() + ")";
             })
        .def("__eq__",
             [](const PellSolution& a, const PellSolution& b) { return a == b; })
        .def("__lt__", [](const PellSolution& a, const PellSolution& b) { return a < b; });

    py::class_<PellLine>(m, "PellLine")
        .def_readonly("x0", &PellLine::x0)
        .def_readonly("slope", &PellLine::slope);

    py::class_<PellSolutionSet>(m, "PellSolutionSet")
        .def_readonly("problem", &PellSolutionSet::problem)
        .def_readonly("kind", &PellSolutionSet::kind)
        .def_readonly("solutions", &PellSolutionSet::solutions)
        .def_readonly("automorph", &PellSolutionSet::automorph)
        .def_readonly("lines", &PellSolutionSet::lines)
        .def("json", &json_of<PellSolutionSet>);

    py::class_<CFExpansion>(m, "CFExpansion")
        .def_readonly("a0", &CFExpansion::a0)
        .def_readonly("period", &CFExpansion::period);

    py::class_<TriangularCase>(m, "TriangularCase")
        .def_readonly("status", &TriangularCase::status)
        .def_readonly("gamma_plus", &TriangularCase::gamma_plus)
        .def_readonly("gamma_minus", &TriangularCase::gamma_minus)
        .def_readonly("matrices", &TriangularCase::matrices);

    py::class_<Case3Candidate>(m, "Case3Candidate")
        .def_readonly("sol", &Case3Candidate::sol)
        .def_readonly("alpha", &Case3Candidate::alpha)
        .def_readonly("beta", &Case3Candidate::beta)
        .def_readonly("matrix", &Case3Candidate::matrix);

    py::class_<Case3Rejection>(m, "Case3Rejection")
        .def_readonly("sol", &Case3Rejection::sol)
        .def_readonly("reason", &Case3Rejection::reason);

    py::class_<Case3Analysis>(m, "Case3Analysis")
        .def_readonly("problem", &Case3Analysis::problem)
        .def_readonly("solution_set", &Case3Analysis::solution_set)
        .def_readonly("depth", &Case3Analysis::depth)
        .def_readonly("admissible", &Case3Analysis::admissible)
        .def_readonly("rejected", &Case3Analysis::rejected);

    py::class_<TrivialReversorVerdict>(m, "TrivialReversorVerdict")
        .def_readonly("l_squared", &TrivialReversorVerdict::l_squared)
        .def_readonly("plus_id_is_reversor", &TrivialReversorVerdict::plus_id_is_reversor)
        .def_readonly("minus_id_is_reversor",
                      &TrivialReversorVerdict::minus_id_is_reversor)
        .def_readonly("obstruction", &TrivialReversorVerdict::obstruction);

    py::class_<ObstructionStep>(m, "ObstructionStep")
        .def_readonly("name", &ObstructionStep::name)
        .def_readonly("statement", &ObstructionStep::statement)
        .def_readonly("verified", &ObstructionStep::verified);

    py::class_<ObstructionTrace>(m, "ObstructionTrace")
        .def_readonly("steps", &ObstructionTrace::steps)
        .def_readonly("valid", &ObstructionTrace::valid)
        .def_readonly("conic", &ObstructionTrace::conic);

    py::class_<ReversibilityReport>(m, "ReversibilityReport")
        .def_readonly("input", &ReversibilityReport::input)
        .def_readonly("hyperbolicity", &ReversibilityReport::hyperbolicity)
        .def_readonly("trivial", &ReversibilityReport::trivial)
        .def_readonly("case1", &ReversibilityReport::case1)
        .def_readonly("case2", &ReversibilityReport::case2)
        .def_readonly("case3", &ReversibilityReport::case3)
        .def_readonly("reversors_found", &ReversibilityReport::reversors_found)
        .def_readonly("obstruction", &ReversibilityReport::obstruction)
        .def_readonly("warnings", &ReversibilityReport::warnings)
        .def("json", &json_of<ReversibilityReport>);

    // ---- operations -------------------------------------------------------------
    m.def("classify_hyperbolicity", &classify_hyperbolicity, py::arg("m"));
    m.def("is_involution", &is_involution, py::arg("m"));
    m.def("materialize", &materialize, py::arg("spec"));
    m.def("classify_involution", &classify_involution, py::arg("m"));
    m.def("enumerate_involutions", &enumerate_involutions, py::arg("entry_bound"));
    m.def("fixed_point_curves", &fixed_point_curves, py::arg("m"));
    m.def("cf_sqrt", &cf_sqrt, py::arg("D"));
    m.def("fundamental_solution", &fundamental_solution, py::arg("D"));
    m.def("negative_pell_solution", &negative_pell_solution, py::arg("D"));
    m.def("solve_general", &solve_general, py::arg("problem"));
    m.def("brute_force_solutions", &brute_force_solutions, py::arg("problem"),
          py::arg("y_max"));
    m.def("expand_solutions", &expand_solutions, py::arg("set"), py::arg("y_max"));
    m.def("automorph_apply", &automorph_apply, py::arg("D"), py::arg("unit"),
          py::arg("sol"), py::arg("k"));
    m.def("same_class", &same_class, py::arg("problem"), py::arg("s"), py::arg("t"));
    m.def("classify_conic", &classify_conic, py::arg("m"), py::arg("orientation"));
    m.def("is_r_reversible", &is_r_reversible, py::arg("l"), py::arg("r"));
    m.def("find_reversors", &find_reversors, py::arg("l"),
          py::arg("case3_class_depth") = 10);
    m.def("construct_reversible_anosov", &construct_reversible_anosov, py::arg("spec"),
          py::arg("choice") = 0);
    m.def("orientation_reversing_analysis", &orientation_reversing_analysis,
          py::arg("l"));
    m.def("involution_family", &involution_family, py::arg("a"), py::arg("l"),
          py::arg("n_lo"), py::arg("n_hi"));
    m.def("reversor_composition_commutes", &reversor_composition_commutes, py::arg("r"),
          py::arg("s"), py::arg("l"));
}
