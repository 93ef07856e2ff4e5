#pragma once

#include <json.hpp>

#include "ssg/automaton.hpp"
#include "ssg/certificate.hpp"
#include "ssg/compiled.hpp"
#include "ssg/constructions.hpp"
#include "ssg/linearize.hpp"
#include "ssg/virtual_endo.hpp"

namespace ssg {

using Json = nlohmann::json;

// Exact integers serialise as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; the readers accept both.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json mat_to_json(const IntMat& m);
IntMat mat_from_json(const Json& j);

Json heis_elem_to_json(const HeisElem& g);      // [a, b, c]
HeisElem heis_elem_from_json(const Json& j);

Json heis_endo_to_json(const HeisEndo& e);      // {"A": [[a1,a2],[b1,b2]], "c": [c1,c2]}
HeisEndo heis_endo_from_json(const Json& j);

Json heis_lattice_to_json(const HeisLattice& l);  // triangular basis rows
HeisLattice heis_lattice_from_json(const Json& j);

Json zlattice_to_json(const ZLattice& l);
ZLattice zlattice_from_json(const Json& j);

Json automaton_to_json(const AutomatonPtr& aut);
AutomatonPtr automaton_from_json(const Json& j);

Json family_to_json(const FamilyPtr& fam);
FamilyPtr family_from_json(const Json& j);

Json endo_system_to_json(const EndoSystem& sys);
EndoSystem endo_system_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json cert_report_to_json(const CertReport& report);
Json verify_report_to_json(const VerifyReport& report);
Json probe_to_json(const ProbeResult& probe);
Json triviality_to_json(const TrivialityResult& result);
Json linear_rep_to_json(const LinearRep& rep);

// Depth-bounded export of a lazily compiled action in the automaton schema:
// states are the elements reachable as sections of the codomain generators,
// named by canonical element expressions. The state x degree budget guards
// against huge alphabets.
Json compiled_to_json(const CompiledAction& action, int depth,
                      std::size_t budget = Budgets{}.closure_words);

}  // namespace ssg
