// SPDX-License-Identifier: Apache-2.0
//
// JSON shapes emitted by the command-line tool.
//
//   matrix (real)     [[1, 0.0, ...], ...]
//   matrix (complex)  [[[1, 0], [re, im], ...], ...]
//   psd               {"eigenvalues": [...], "min_eig", "is_psd", "tolerance"}
//
// Doubles are written in shortest round-trip form, so every value parses
// back to the identical binary64.

#pragma once

#include <json.hpp>

#include "pcc/corr_matrix.hpp"
#include "pcc/enumeration.hpp"
#include "pcc/psd.hpp"
#include "pcc/sampling.hpp"

namespace pcc::cli {

using Json = nlohmann::ordered_json;

Json to_json(const CorrMatrix& m);
Json to_json(const PsdReport& r);
Json to_json(const EnumerationSummary& s, std::size_t max_witnesses);
Json to_json(const McReport& r);

/// Accepts a bare matrix array or an object with "matrix" (and optionally
/// "mode"). Complex entries are [re, im] pairs.
CorrMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace pcc::cli
