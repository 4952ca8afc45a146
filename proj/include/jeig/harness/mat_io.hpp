#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "jeig/matrix.hpp"

namespace jeig::harness {

// Matrix text format: line 1 = "rows cols", then values in column-major
// order. Human mode prints 17 significant digits; exact mode prints C99
// hexfloat, which round-trips bitwise. The reader accepts both.
void write_matrix(const std::string& path, const DenseMatrix& M, bool exact);
DenseMatrix read_matrix(const std::string& path);

// Sign-vector file: line 1 = n, then n values each -1 or 1.
void write_signs(const std::string& path, const SignVector& J);
SignVector read_signs(const std::string& path);

void write_values(const std::string& path, const std::vector<double>& v, bool exact);
std::vector<double> read_values(const std::string& path);

// I/O failures surface as this (CLI exit code 4).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jeig::harness
