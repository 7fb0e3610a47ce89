#include "twogrid/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twogrid {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 70.0;

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return Range{lo - pad, hi + pad};
}

// Round tick step to 1/2/5 times a power of ten.
std::vector<double> ticks(const Range& r, int target = 6) {
    const double span = r.hi - r.lo;
    double step = std::pow(10.0, std::floor(std::log10(span / target)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * mult) <= target) {
            step *= mult;
            break;
        }
    }
    std::vector<double> out;
    const double first = std::ceil(r.lo / step) * step;
    for (double t = first; t <= r.hi + 1e-12 * span; t += step)
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return out;
}

void marker(std::ostream& out, int series_index, double x, double y, const char* color) {
    switch (series_index % 4) {
    case 0:
        out << "<circle cx='" << fmt(x) << "' cy='" << fmt(y) << "' r='4' fill='" << color
            << "'/>\n";
        break;
    case 1:
        out << "<rect x='" << fmt(x - 3.5) << "' y='" << fmt(y - 3.5)
            << "' width='7' height='7' fill='" << color << "'/>\n";
        break;
    case 2:
        out << "<path d='M " << fmt(x) << " " << fmt(y - 4.5) << " L " << fmt(x + 4.5) << " "
            << fmt(y + 4.5) << " L " << fmt(x - 4.5) << " " << fmt(y + 4.5) << " Z' fill='"
            << color << "'/>\n";
        break;
    default:
        out << "<path d='M " << fmt(x - 4.5) << " " << fmt(y) << " L " << fmt(x) << " "
            << fmt(y - 4.5) << " L " << fmt(x + 4.5) << " " << fmt(y) << " L " << fmt(x) << " "
            << fmt(y + 4.5) << " Z' fill='" << color << "'/>\n";
        break;
    }
}

} // namespace

void line_chart_svg(const PlotSpec& plot, const std::string& out_path) {
    if (plot.series.empty()) throw std::invalid_argument("line_chart_svg: no series");
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    bool first = true;
    for (const auto& s : plot.series) {
        if (s.points.empty()) throw std::invalid_argument("line_chart_svg: empty series " + s.name);
        for (const auto& pt : s.points) {
            if (!std::isfinite(pt[0]) || !std::isfinite(pt[1]))
                throw std::invalid_argument("line_chart_svg: non-finite coordinate");
            if (first) {
                x_lo = x_hi = pt[0];
                y_lo = y_hi = pt[1];
                first = false;
            }
            x_lo = std::min(x_lo, pt[0]);
            x_hi = std::max(x_hi, pt[0]);
            y_lo = std::min(y_lo, pt[1]);
            y_hi = std::max(y_hi, pt[1]);
        }
    }
    const Range xr = padded_range(x_lo, x_hi);
    const Range yr = padded_range(y_lo, y_hi);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto map_x = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    const auto map_y = [&](double y) {
        return kMarginTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
    };

    std::ofstream out(out_path);
    if (!out) throw io_error("cannot open for writing: " + out_path);

    out << "<?xml version='1.0' encoding='UTF-8'?>\n"
        << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << kWidth
        << "' height='" << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
        << "<rect width='" << kWidth << "' height='" << kHeight << "' fill='white'/>\n";

    out << "<text x='" << kWidth / 2 << "' y='28' text-anchor='middle' font-size='18'>"
        << xml_escape(plot.title) << "</text>\n";

    // axes, ticks, grid
    out << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='" << plot_w
        << "' height='" << plot_h << "' fill='none' stroke='black'/>\n";
    for (double t : ticks(xr)) {
        const double x = map_x(t);
        out << "<line x1='" << fmt(x) << "' y1='" << fmt(kMarginTop) << "' x2='" << fmt(x)
            << "' y2='" << fmt(kMarginTop + plot_h) << "' stroke='#dddddd'/>\n"
            << "<text x='" << fmt(x) << "' y='" << fmt(kMarginTop + plot_h + 20)
            << "' text-anchor='middle' font-size='12'>" << fmt(t) << "</text>\n";
    }
    for (double t : ticks(yr)) {
        const double y = map_y(t);
        out << "<line x1='" << fmt(kMarginLeft) << "' y1='" << fmt(y) << "' x2='"
            << fmt(kMarginLeft + plot_w) << "' y2='" << fmt(y) << "' stroke='#dddddd'/>\n"
            << "<text x='" << fmt(kMarginLeft - 8) << "' y='" << fmt(y + 4)
            << "' text-anchor='end' font-size='12'>" << fmt(t) << "</text>\n";
    }
    out << "<text x='" << kWidth / 2 << "' y='" << kHeight - 15
        << "' text-anchor='middle' font-size='14'>" << xml_escape(plot.x_label) << "</text>\n"
        << "<text x='20' y='" << kHeight / 2 << "' text-anchor='middle' font-size='14' "
        << "transform='rotate(-90 20 " << kHeight / 2 << ")'>" << xml_escape(plot.y_label)
        << "</text>\n";

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const char* color = kSeriesColors[s % (sizeof(kSeriesColors) / sizeof(*kSeriesColors))];
        const auto& pts = plot.series[s].points;
        if (pts.size() > 1) {
            out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
            for (const auto& pt : pts) out << fmt(map_x(pt[0])) << "," << fmt(map_y(pt[1])) << " ";
            out << "'/>\n";
        }
        for (const auto& pt : pts)
            marker(out, static_cast<int>(s), map_x(pt[0]), map_y(pt[1]), color);
    }

    // legend
    const double legend_x = kMarginLeft + 12;
    double legend_y = kMarginTop + 16;
    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const char* color = kSeriesColors[s % (sizeof(kSeriesColors) / sizeof(*kSeriesColors))];
        marker(out, static_cast<int>(s), legend_x, legend_y - 4, color);
        out << "<text x='" << legend_x + 12 << "' y='" << legend_y << "' font-size='13'>"
            << xml_escape(plot.series[s].name) << "</text>\n";
        legend_y += 18;
    }

    out << "</svg>\n";
    if (!out) throw io_error("write failed: " + out_path);
}

void spy_svg(const SparseMatrix& m, const std::string& out_path,
             std::optional<Index> block_boundary) {
    const double grid = 600.0;
    const double margin = 60.0;
    const double canvas = grid + 2 * margin;
    const double cell = m.n_rows > 0 ? grid / double(std::max(m.n_rows, m.n_cols)) : grid;
    const double mark = std::max(cell, 0.75);

    std::ofstream out(out_path);
    if (!out) throw io_error("cannot open for writing: " + out_path);

    out << "<?xml version='1.0' encoding='UTF-8'?>\n"
        << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << canvas
        << "' height='" << canvas << "' viewBox='0 0 " << canvas << " " << canvas << "'>\n"
        << "<rect width='" << canvas << "' height='" << canvas << "' fill='white'/>\n"
        << "<rect x='" << margin << "' y='" << margin << "' width='" << grid << "' height='"
        << grid << "' fill='none' stroke='black'/>\n";

    out << "<text x='" << canvas / 2 << "' y='" << margin - 20
        << "' text-anchor='middle' font-size='16'>" << m.n_rows << " x " << m.n_cols << ", "
        << m.nnz() << " nonzeros</text>\n";
    out << "<text x='" << canvas / 2 << "' y='" << canvas - 18
        << "' text-anchor='middle' font-size='13'>column</text>\n"
        << "<text x='22' y='" << canvas / 2 << "' text-anchor='middle' font-size='13' "
        << "transform='rotate(-90 22 " << canvas / 2 << ")'>row</text>\n";

    for (Index r = 0; r < m.n_rows; ++r) {
        for (Index p = m.row_offsets[r]; p < m.row_offsets[r + 1]; ++p) {
            const double x = margin + double(m.col_indices[p]) * cell;
            const double y = margin + double(r) * cell;
            out << "<rect x='" << fmt(x) << "' y='" << fmt(y) << "' width='" << fmt(mark)
                << "' height='" << fmt(mark) << "' fill='#1f3b73'/>\n";
        }
    }

    if (block_boundary && *block_boundary > 0 && *block_boundary < m.n_rows) {
        const double offset = margin + double(*block_boundary) * cell;
        out << "<line x1='" << fmt(offset) << "' y1='" << margin << "' x2='" << fmt(offset)
            << "' y2='" << fmt(margin + grid) << "' stroke='#999999' stroke-dasharray='6 4'/>\n"
            << "<line x1='" << margin << "' y1='" << fmt(offset) << "' x2='"
            << fmt(margin + grid) << "' y2='" << fmt(offset)
            << "' stroke='#999999' stroke-dasharray='6 4'/>\n";
    }

    out << "</svg>\n";
    if (!out) throw io_error("write failed: " + out_path);
}

void rates_svg(const std::vector<RateRecord>& records, const std::string& out_path) {
    if (records.empty()) throw std::invalid_argument("rates_svg: no records");

    PlotSpec plot;
    plot.title = "Two-grid reduction rates vs coarse-space size";
    plot.x_label = "n_c";
    plot.y_label = "rate";
    plot.series.resize(4);
    plot.series[0].name = "theory 1 - lambda_{nc+1}";
    plot.series[1].name = "error rate (power)";
    plot.series[2].name = "residual rate (power)";
    plot.series[3].name = "spectral radius (exact)";
    for (const auto& r : records) {
        const auto x = double(r.n_c);
        plot.series[0].points.push_back({x, r.theory_rate});
        plot.series[1].points.push_back({x, r.err_rate});
        plot.series[2].points.push_back({x, r.res_rate});
        plot.series[3].points.push_back({x, r.rho_exact});
    }
    line_chart_svg(plot, out_path);
}

void write_rates_csv_file(const std::vector<RateRecord>& records, const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + out_path);
    write_rates_csv(records, out);
    if (!out) throw io_error("write failed: " + out_path);
}

std::vector<RateRecord> read_rates_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open for reading: " + path);
    return read_rates_csv(in);
}

} // namespace twogrid
