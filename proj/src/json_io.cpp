#include "revpell/json_io.hpp"

namespace revpell {

Json to_json(const Int& v) { return v.get_str(); }

Json to_json(const Rat& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Json to_json(const Mat2Z& m) {
    return Json::array({Json::array({to_json(m.a), to_json(m.b)}),
                        Json::array({to_json(m.c), to_json(m.d)})});
}

Json to_json(const HyperbolicityVerdict& v) {
    Json j;
    j["is_gl2z"] = v.is_gl2z;
    j["det"] = to_json(v.det_value);
    j["trace"] = to_json(v.trace_value);
    j["orientation"] = v.orientation ? Json(to_string(*v.orientation)) : Json(nullptr);
    j["hyperbolic"] = v.hyperbolic;
    j["reason"] = to_string(v.reason);
    return j;
}

Json to_json(const InvolutionSpec& s) {
    Json j;
    j["family"] = to_string(s.family);
    if (s.family == InvolutionFamily::General) {
        j["alpha"] = to_json(s.alpha);
        j["beta"] = to_json(s.beta);
    } else {
        j["gamma"] = to_json(s.gamma);
    }
    return j;
}

Json to_json(const FixedCurve& c) {
    Json j;
    j["direction"] = Json::array({to_json(c.dir_x), to_json(c.dir_y)});
    j["offset"] = Json::array({to_json(c.offset_x), to_json(c.offset_y)});
    return j;
}

Json to_json(const CFExpansion& cf) {
    Json j;
    j["a0"] = to_json(cf.a0);
    Json per = Json::array();
    for (const auto& t : cf.period) per.push_back(to_json(t));
    j["period"] = per;
    j["period_length"] = cf.period.size();
    return j;
}

Json to_json(const PellProblem& p) {
    Json j;
    j["D"] = to_json(p.D);
    j["N"] = to_json(p.N);
    return j;
}

Json to_json(const PellSolution& s) {
    return Json::array({to_json(s.x), to_json(s.y)});
}

Json to_json(const PellLine& l) {
    Json j;
    j["x0"] = to_json(l.x0);
    j["slope"] = to_json(l.slope);
    return j;
}

Json to_json(const PellSolutionSet& s) {
    Json j;
    j["problem"] = to_json(s.problem);
    j["kind"] = to_string(s.kind);
    Json sols = Json::array();
    for (const auto& x : s.solutions) sols.push_back(to_json(x));
    j["solutions"] = sols;
    j["automorph"] = s.automorph ? Json::array({to_json(s.automorph->first),
                                                to_json(s.automorph->second)})
                                 : Json(nullptr);
    Json lines = Json::array();
    for (const auto& l : s.lines) lines.push_back(to_json(l));
    j["lines"] = lines;
    return j;
}

Json to_json(const TriangularCase& c) {
    Json j;
    j["status"] = to_string(c.status);
    j["gamma_plus"] = c.gamma_plus ? to_json(*c.gamma_plus) : Json(nullptr);
    j["gamma_minus"] = c.gamma_minus ? to_json(*c.gamma_minus) : Json(nullptr);
    Json ms = Json::array();
    for (const auto& m : c.matrices) ms.push_back(to_json(m));
    j["matrices"] = ms;
    return j;
}

Json to_json(const Case3Candidate& c) {
    Json j;
    j["solution"] = to_json(c.sol);
    j["alpha"] = to_json(c.alpha);
    j["beta"] = to_json(c.beta);
    j["matrix"] = to_json(c.matrix);
    return j;
}

Json to_json(const Case3Rejection& r) {
    Json j;
    j["solution"] = to_json(r.sol);
    j["reason"] = to_string(r.reason);
    return j;
}

Json to_json(const Case3Analysis& a) {
    Json j;
    j["problem"] = to_json(a.problem);
    j["solution_set"] = to_json(a.solution_set);
    j["depth"] = a.depth;
    Json adm = Json::array();
    for (const auto& c : a.admissible) adm.push_back(to_json(c));
    j["admissible"] = adm;
    Json rej = Json::array();
    for (const auto& r : a.rejected) rej.push_back(to_json(r));
    j["rejected"] = rej;
    return j;
}

Json to_json(const TrivialReversorVerdict& v) {
    Json j;
    j["l_squared"] = to_json(v.l_squared);
    j["plus_id_is_reversor"] = v.plus_id_is_reversor;
    j["minus_id_is_reversor"] = v.minus_id_is_reversor;
    j["obstruction"] = v.obstruction;
    return j;
}

Json to_json(const ObstructionStep& s) {
    Json j;
    j["name"] = s.name;
    j["statement"] = s.statement;
    j["verified"] = s.verified;
    return j;
}

Json to_json(const ObstructionTrace& t) {
    Json j;
    Json steps = Json::array();
    for (const auto& s : t.steps) steps.push_back(to_json(s));
    j["steps"] = steps;
    j["valid"] = t.valid;
    j["conic"] = to_string(t.conic);
    return j;
}

Json to_json(const ReversibilityReport& r) {
    Json j;
    j["input"] = to_json(r.input);
    j["hyperbolicity"] = to_json(r.hyperbolicity);
    j["trivial_reversors"] = to_json(r.trivial);
    j["case1"] = r.case1 ? to_json(*r.case1) : Json(nullptr);
    j["case2"] = r.case2 ? to_json(*r.case2) : Json(nullptr);
    j["case3"] = r.case3 ? to_json(*r.case3) : Json(nullptr);
    Json revs = Json::array();
    for (const auto& m : r.reversors_found) revs.push_back(to_json(m));
    j["reversors_found"] = revs;
    j["obstruction"] = r.obstruction ? to_json(*r.obstruction) : Json(nullptr);
    j["warnings"] = r.warnings;
    return j;
}

Json make_envelope(const std::string& command, Json input, Json result,
                   const std::vector<std::string>& warnings) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = command;
    j["input"] = std::move(input);
    j["result"] = std::move(result);
    j["warnings"] = warnings;
    return j;
}

} // namespace revpell
