#pragma once

#include <json.hpp>

#include "bess/pencil.hpp"
#include "bess/realize.hpp"

namespace bess {

using Json = nlohmann::ordered_json;

/// Pencil as {"schema", "field", "nvars", "size", "coeffs"} with the constant
/// coefficient first and entries printed row-major in the field's canonical
/// element notation.
Json pencil_to_json(const Pencil& p);

/// Realization: the pencil object plus a "top" block size.
Json realization_to_json(const Realization& r);

/// Inverse of pencil_to_json; throws SyntaxError on malformed input.
Pencil pencil_from_json(const Json& j);

/// Inverse of realization_to_json; throws SyntaxError on malformed input.
Realization realization_from_json(const Json& j);

/// Decision outcome with its certificate (and any attached realization).
Json verdict_to_json(const Verdict& v);

/// Point-by-point evaluation comparison record.
Json transcript_to_json(const VerifyTranscript& t);

}  // namespace bess
