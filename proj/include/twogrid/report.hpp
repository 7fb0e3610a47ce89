#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twogrid/analysis.hpp"
#include "twogrid/sparse_matrix.hpp"

namespace twogrid {

// Minimal chart description rendered to SVG. Series draw as polyline plus
// markers; marker shape cycles per series.
struct PlotSeries {
    std::string name;
    std::vector<std::array<double, 2>> points;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

void line_chart_svg(const PlotSpec& plot, const std::string& out_path);

// Sparsity plot: one filled square per stored nonzero. When
// block_boundary is set, grid lines mark the 2x2 block structure.
void spy_svg(const SparseMatrix& m, const std::string& out_path,
             std::optional<Index> block_boundary = {});

// Rate comparison: theory_rate, err_rate, res_rate and rho_exact versus n_c.
void rates_svg(const std::vector<RateRecord>& records, const std::string& out_path);

void write_rates_csv_file(const std::vector<RateRecord>& records, const std::string& out_path);
std::vector<RateRecord> read_rates_csv_file(const std::string& path);

} // namespace twogrid
