#pragma once

#include <string>

#include "gnewton/linalg.hpp"

namespace gnewton::cli {

// One row per line, whitespace separated numbers, '#' starts a comment.
Matrix parse_matrix_text(const std::string& text);
Matrix read_matrix_file(const std::string& path);
std::string format_matrix(const Matrix& m);

}  // namespace gnewton::cli
