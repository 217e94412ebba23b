#ifndef GMUSIC_IO_HPP
#define GMUSIC_IO_HPP

//
// File formats used by the CLI.
//
// CMAT v1: first line "# <rows> <cols>", then rows*cols lines of "<re> <im>"
// in decimal scientific notation (17 significant digits), row-major.
//
// Vector files: one "<re> <im>" line per entry.
//

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmusic/errors.hpp"
#include "gmusic/linalg.hpp"

namespace gmusic {

inline void write_cmat(std::ostream& os, const ComplexMatrix& m) {
    os << "# " << m.rows() << " " << m.cols() << "\n";
    os.precision(17);
    os << std::scientific;
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            os << m(j, k).real() << " " << m(j, k).imag() << "\n";
}

inline void write_cmat(const std::string& path, const ComplexMatrix& m) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_cmat(os, m);
    if (!os) throw io_error("write failed: " + path);
}

inline ComplexMatrix read_cmat(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw io_error("CMAT: missing header");
    std::istringstream hs(header);
    char hash = 0;
    Eigen::Index rows = 0, cols = 0;
    if (!(hs >> hash >> rows >> cols) || hash != '#' || rows < 1 || cols < 1)
        throw io_error("CMAT: malformed header: " + header);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j)
        for (Eigen::Index k = 0; k < cols; ++k) {
            double re = 0, im = 0;
            if (!(is >> re >> im)) throw io_error("CMAT: truncated entry list");
            m(j, k) = Complex(re, im);
        }
    return m;
}

inline ComplexMatrix read_cmat(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open: " + path);
    return read_cmat(is);
}

inline void write_cvector(const std::string& path, const std::vector<Complex>& v) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    os.precision(17);
    os << std::scientific;
    for (const Complex& e : v) os << e.real() << " " << e.imag() << "\n";
    if (!os) throw io_error("write failed: " + path);
}

inline std::vector<Complex> read_cvector(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open: " + path);
    std::vector<Complex> v;
    double re = 0, im = 0;
    while (is >> re >> im) v.emplace_back(re, im);
    if (v.empty()) throw io_error("vector file has no entries: " + path);
    return v;
}

} // namespace gmusic

#endif
