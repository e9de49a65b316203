#ifndef PHERM_MATRIXIO_HPP
#define PHERM_MATRIXIO_HPP

#include <string>

#include "pherm/numfield.hpp"

namespace pherm {

/// File format: UTF-8 JSON object with integer "n" and "entries" holding
/// n rows of n entries, each entry a two-element array [re, im].
Matrix read_matrix(const std::string& path);
Matrix parse_matrix(const std::string& text);

std::string format_matrix(const Matrix& m);
void write_matrix(const std::string& path, const Matrix& m);

/// FNV-1a digest of the canonically formatted entries; stable across runs.
std::string matrix_digest(const Matrix& m);

}  // namespace pherm

#endif
