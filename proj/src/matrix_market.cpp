#include "twogrid/matrix_market.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace twogrid {

namespace {

// Shortest representation that round-trips a double exactly.
std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

struct Banner {
    bool coordinate = false;
};

Banner read_banner(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw io_error("matrix market: empty stream");
    std::istringstream ls(line);
    std::string tag, object, format, field, symmetry;
    ls >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket" || lower(object) != "matrix")
        throw io_error("matrix market: bad banner: " + line);
    format = lower(format);
    if (format != "coordinate" && format != "array")
        throw io_error("matrix market: unsupported format: " + format);
    if (lower(field) != "real" || lower(symmetry) != "general")
        throw io_error("matrix market: only 'real general' matrices are supported");
    return Banner{format == "coordinate"};
}

std::string next_data_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size() || line[i] == '%') continue;
        return line;
    }
    throw io_error("matrix market: unexpected end of stream");
}

} // namespace

void write_matrix_market(const SparseMatrix& m, std::ostream& out,
                         const std::vector<std::string>& comments) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    for (const auto& c : comments) out << "% " << c << "\n";
    out << m.n_rows << " " << m.n_cols << " " << m.nnz() << "\n";
    for (Index r = 0; r < m.n_rows; ++r)
        for (Index p = m.row_offsets[r]; p < m.row_offsets[r + 1]; ++p)
            out << (r + 1) << " " << (m.col_indices[p] + 1) << " "
                << format_value(m.values[p]) << "\n";
    if (!out) throw io_error("matrix market: write failed");
}

void write_matrix_market(const SparseMatrix& m, const std::string& path,
                         const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    write_matrix_market(m, out, comments);
}

SparseMatrix read_matrix_market(std::istream& in) {
    const Banner banner = read_banner(in);
    if (!banner.coordinate)
        throw io_error("matrix market: expected coordinate format for sparse read");

    std::istringstream header(next_data_line(in));
    Index rows = 0, cols = 0, count = 0;
    header >> rows >> cols >> count;
    if (!header || rows < 0 || cols < 0 || count < 0)
        throw io_error("matrix market: bad size line");

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(count));
    for (Index k = 0; k < count; ++k) {
        std::istringstream ls(next_data_line(in));
        Index i = 0, j = 0;
        double v = 0.0;
        ls >> i >> j >> v;
        if (!ls || i < 1 || i > rows || j < 1 || j > cols)
            throw io_error("matrix market: bad entry line");
        entries.push_back({i - 1, j - 1, v});
    }
    return from_triplets(rows, cols, std::move(entries));
}

SparseMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open for reading: " + path);
    return read_matrix_market(in);
}

void write_matrix_market_dense(const DenseMatrix& m, std::ostream& out,
                               const std::vector<std::string>& comments) {
    out << "%%MatrixMarket matrix array real general\n";
    for (const auto& c : comments) out << "% " << c << "\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            out << format_value(m(i, j)) << "\n";
    if (!out) throw io_error("matrix market: write failed");
}

void write_matrix_market_dense(const DenseMatrix& m, const std::string& path,
                               const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    write_matrix_market_dense(m, out, comments);
}

DenseMatrix read_matrix_market_dense(std::istream& in) {
    const Banner banner = read_banner(in);
    if (banner.coordinate)
        throw io_error("matrix market: expected array format for dense read");

    std::istringstream header(next_data_line(in));
    Index rows = 0, cols = 0;
    header >> rows >> cols;
    if (!header || rows < 0 || cols < 0) throw io_error("matrix market: bad size line");

    DenseMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            std::istringstream ls(next_data_line(in));
            double v = 0.0;
            ls >> v;
            if (!ls) throw io_error("matrix market: bad value line");
            m(i, j) = v;
        }
    }
    return m;
}

} // namespace twogrid
