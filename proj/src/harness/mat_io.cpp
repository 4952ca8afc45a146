#include "jeig/harness/mat_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace jeig::harness {

namespace {

std::string fmt_value(double v, bool exact) {
    char buf[64];
    if (exact)
        std::snprintf(buf, sizeof buf, "%a", v);
    else
        std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_values(std::istream& in, std::size_t count,
                                 const std::string& path) {
    std::vector<double> vals;
    vals.reserve(count);
    std::string tok;
    while (vals.size() < count && in >> tok) {
        const char* s = tok.c_str();
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end == s || *end != '\0')
            throw io_error("bad numeric token '" + tok + "' in " + path);
        vals.push_back(v);
    }
    if (vals.size() < count) throw io_error("truncated file: " + path);
    return vals;
}

}  // namespace

void write_matrix(const std::string& path, const DenseMatrix& M, bool exact) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for write: " + path);
    out << M.rows() << ' ' << M.cols() << '\n';
    for (std::size_t j = 0; j < M.cols(); ++j) {
        for (std::size_t i = 0; i < M.rows(); ++i) {
            out << fmt_value(M(i, j), exact);
            out << (i + 1 == M.rows() ? '\n' : ' ');
        }
    }
    if (!out) throw io_error("write failed: " + path);
}

DenseMatrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    long long rows = -1, cols = -1;
    in >> rows >> cols;
    if (!in || rows < 0 || cols < 0) throw io_error("bad header in " + path);
    auto vals = parse_values(in, static_cast<std::size_t>(rows) * cols, path);
    return DenseMatrix(static_cast<std::size_t>(rows),
                       static_cast<std::size_t>(cols), std::move(vals));
}

void write_signs(const std::string& path, const SignVector& J) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for write: " + path);
    out << J.size() << '\n';
    for (std::size_t k = 0; k < J.size(); ++k) out << static_cast<int>(J[k]) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

SignVector read_signs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    long long n = -1;
    in >> n;
    if (!in || n < 0) throw io_error("bad header in " + path);
    std::vector<double> s;
    s.reserve(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
        int v = 0;
        in >> v;
        if (!in || (v != 1 && v != -1)) throw io_error("bad sign entry in " + path);
        s.push_back(static_cast<double>(v));
    }
    return SignVector(std::move(s));
}

void write_values(const std::string& path, const std::vector<double>& v, bool exact) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for write: " + path);
    out << v.size() << '\n';
    for (double x : v) out << fmt_value(x, exact) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

std::vector<double> read_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    long long n = -1;
    in >> n;
    if (!in || n < 0) throw io_error("bad header in " + path);
    return parse_values(in, static_cast<std::size_t>(n), path);
}

}  // namespace jeig::harness
