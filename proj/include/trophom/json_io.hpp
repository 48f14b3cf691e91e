#pragma once

#include <json.hpp>

#include "trophom/homology.hpp"
#include "trophom/quotient_complex.hpp"

namespace trophom {

// {"rank": r, "torsion": [d1, ...]}
nlohmann::json homology_group_to_json(const HomologyGroup& group);
HomologyGroup homology_group_from_json(const nlohmann::json& j);

// {"rows": r, "cols": c, "entries": [[i, j, v], ...]} sorted by (i, j).
// Values outside the int64 range are written as decimal strings.
nlohmann::json matrix_to_json(const SparseIntMatrix& m);
SparseIntMatrix matrix_from_json(const nlohmann::json& j);

// Per-dimension orbit counts plus boundary triplets, for external
// verification of the chain complex.
nlohmann::json quotient_complex_to_json(const QuotientComplex& complex);

}  // namespace trophom
