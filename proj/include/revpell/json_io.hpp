#pragma once

#include <json.hpp>

#include "revpell/involutions.hpp"
#include "revpell/pell.hpp"
#include "revpell/reversibility.hpp"

// JSON rendering of the library types.  All unbounded integers are emitted as
// decimal strings so output is lossless regardless of magnitude; rationals as
// "p/q".  Key order is fixed (ordered_json) so serialized output is
// byte-stable for identical inputs.
namespace revpell {

using Json = nlohmann::ordered_json;

Json to_json(const Int& v);
Json to_json(const Rat& v);
Json to_json(const Mat2Z& m);
Json to_json(const HyperbolicityVerdict& v);
Json to_json(const InvolutionSpec& s);
Json to_json(const FixedCurve& c);
Json to_json(const CFExpansion& cf);
Json to_json(const PellProblem& p);
Json to_json(const PellSolution& s);
Json to_json(const PellLine& l);
Json to_json(const PellSolutionSet& s);
Json to_json(const TriangularCase& c);
Json to_json(const Case3Candidate& c);
Json to_json(const Case3Rejection& r);
Json to_json(const Case3Analysis& a);
Json to_json(const TrivialReversorVerdict& v);
Json to_json(const ObstructionStep& s);
Json to_json(const ObstructionTrace& t);
Json to_json(const ReversibilityReport& r);

// Top-level CLI envelope: {schema_version, command, input, result, warnings}.
Json make_envelope(const std::string& command, Json input, Json result,
                   const std::vector<std::string>& warnings);

} // namespace revpell
