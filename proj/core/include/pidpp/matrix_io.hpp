#pragma once

#include "pidpp/matrix.hpp"

#include <string>
#include <string_view>

namespace pidpp {

// Text format: first line `n`, then n rows of entries (`p/q` or integer literals);
// lines whose first non-blank character is `#` are comments.
Matrix parse_matrix_text(std::string_view text);
std::string format_matrix_text(const Matrix& m);

// JSON mirror: {"n": int, "entries": [["p/q", ...], ...]}.
Matrix parse_matrix_json(std::string_view text);
std::string format_matrix_json(const Matrix& m);

// Chooses the JSON reader when the first non-blank character is '{'.
Matrix parse_matrix(std::string_view text);
Matrix read_matrix_file(const std::string& path);

}  // namespace pidpp
