#pragma once

#include <json.hpp>

#include "almostperiods/bdr.hpp"
#include "almostperiods/koszul.hpp"
#include "almostperiods/modules.hpp"
#include "almostperiods/tower.hpp"

namespace almostperiods {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// rationals are always serialized as "a/b" strings
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json params_to_json(const ModelParams& p);
ModelParams params_from_json(const Json& j);

Json eldiv_to_json(const EldivSeq& g);
EldivSeq eldiv_from_json(const Json& j);

Json matrix_to_json(const PuiseuxField& f, const MatrixOverO& m);
MatrixOverO matrix_from_json(const PuiseuxField& f, const Json& j);

Json module_to_json(const FPTorsionModule& m);
FPTorsionModule module_from_json(const Json& j);

Json witt_to_json(const WittRing& w, const WittElem& x);
WittElem witt_from_json(const WittRing& w, const Json& j);

Json bdr_to_json(const BdrRing& b, const BdRElem& x);
BdRElem bdr_from_json(const BdrRing& b, const Json& j);

Json zpm_to_json(const ZpmMatrix& m);
ZpmMatrix zpm_from_json(const Json& j);

Json snf_to_json(const PuiseuxField& f, const SnfResult& s);
Json exact_report_to_json(const ExactReport& r);
Json tower_report_to_json(const TowerReport& r);
Json shape_to_json(const CohomologyShape& s, int m);
Json cohom_table_to_json(const CohomTable& t);
Json fd_report_to_json(const FiniteDifferenceReport& r);

} // namespace almostperiods
