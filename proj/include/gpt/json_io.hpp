#pragma once

#include <json.hpp>

#include <string>

#include "gpt/entropy.hpp"
#include "gpt/measurement.hpp"

namespace gpt::io {

using json = nlohmann::json;

/// State schema:
///   {"theory":"classical","signature":{"d":N},"table":[[num,den],...]}
///   {"theory":"boxworld","signature":{"parts":[{"inputs":k,"outputs":m},...]},
///    "table":[[num,den],...]}   (row-major, inputs outer, outputs inner;
///                                tuples flattened with part 0 most significant)
///   {"theory":"quantum","signature":{"d":N},"matrix":[[re,im],...]}  (row-major)
AnyState state_from_json(const json& j);
json state_to_json(const AnyState& s);

AnyState load_state(const std::string& path);
void save_state(const std::string& path, const AnyState& s);

json report_to_json(const std::string& quantity, const entropy::Report& r);

/// Entropy values are printed with 10 decimal places everywhere.
std::string format_bits(double value);

}  // namespace gpt::io
