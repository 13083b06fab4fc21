#pragma once

#include <filesystem>
#include <json.hpp>

#include "qpg/linalg.hpp"

namespace qpg {

using Json = nlohmann::json;

/// {"rows": n, "cols": m, "entries": [[re, im], ...]} in row-major order.
Json matrix_to_json(const CMatrix& m);
/// Inverse of matrix_to_json; throws InputError on malformed input.
CMatrix matrix_from_json(const Json& j);

/// [[re, im], ...]
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Writes `j` pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace qpg
