#pragma once

#include "json.hpp" // vendored single-header nlohmann/json

#include "metarep/representation.hpp"
#include "metarep/twisted.hpp"

namespace metarep {

using json = nlohmann::ordered_json;

json cycnum_to_json(const CycNum& x);
CycNum cycnum_from_json(const json& j);

json cycmat_to_json(const CycMat& m);
CycMat cycmat_from_json(const json& j);

json laurent_to_json(const LaurentPoly& p);
json cycpoly_to_json(const CycPoly& p);

json representation_to_json(const Representation& rep);
/// Re-ingest an emitted exact representation (generator images only).
Representation representation_from_json(const json& j);

json finabt_to_json(const FinAbT& h);
json cohomology_to_json(const CohomologyReport& r);
json cover_betti_to_json(const CoverBettiReport& r);

} // namespace metarep
