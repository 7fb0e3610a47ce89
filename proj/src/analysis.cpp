#include "twogrid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "twogrid/lapack.hpp"
#include "twogrid/rng.hpp"
#include "twogrid/twogrid.hpp"

namespace twogrid {

double spectral_radius(const DenseMatrix& e) {
    if (e.rows() != e.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
    double rho = 0.0;
    for (const auto& z : lapack::eigenvalues(e)) rho = std::max(rho, std::abs(z));
    return rho;
}

PowerResult power_rates(const DenseMatrix& e, const DenseMatrix& a_op, int iters,
                        std::uint64_t seed) {
    if (iters < 1) throw std::invalid_argument("power_rates: iters must be >= 1");
    const Index n = e.rows();

    Rng rng(seed);
    Vector iterate = rng.unit_vector(n);

    PowerResult result;
    result.history.reserve(static_cast<std::size_t>(iters));
    for (int k = 0; k < iters; ++k) {
        const Vector next = e * iterate;
        const double next_norm = next.norm();
        if (next_norm == 0.0) {
            result.err_rate = 0.0;
            result.res_rate = 0.0;
            result.degenerate = true;
            result.history.push_back({0.0, 0.0});
            return result;
        }
        result.err_rate = next_norm;                                   // ||e_{k+1}|| / ||e_k||, e_k unit
        result.res_rate = (a_op * next).norm() / (a_op * iterate).norm();
        result.history.push_back({result.err_rate, result.res_rate});
        iterate = next / next_norm;
    }
    return result;
}

TheoryRate theory_rate(const Spectrum& spec, Index n_c) {
    const auto n = static_cast<Index>(spec.values.size());
    if (n_c < 0 || n_c >= n) throw std::invalid_argument("theory_rate: n_c out of range");
    TheoryRate rate;
    rate.theory = 1.0 - spec.values[static_cast<std::size_t>(n_c)];
    rate.robust = 0.0;
    for (Index i = n_c; i < n; ++i)
        rate.robust = std::max(rate.robust, std::abs(1.0 - spec.values[static_cast<std::size_t>(i)]));
    return rate;
}

std::vector<RateRecord> sweep(const DenseMatrix& a_op, const DenseMatrix& m_sym,
                              const Spectrum& spec, const std::vector<Index>& nc_list,
                              int iters, std::uint64_t seed) {
    if (nc_list.empty()) throw std::invalid_argument("sweep: nc_list must be nonempty");

    std::vector<Index> sorted = nc_list;
    std::sort(sorted.begin(), sorted.end());

    std::vector<RateRecord> records;
    records.reserve(sorted.size());
    for (const Index n_c : sorted) {
        const Interpolation p = optimal_interpolation(spec, n_c);
        const DenseMatrix e = two_grid_error(a_op, m_sym, p);

        RateRecord rec;
        rec.n_c = n_c;
        rec.iters = iters;
        rec.lambda_next = n_c < static_cast<Index>(spec.values.size())
                              ? spec.values[static_cast<std::size_t>(n_c)]
                              : 1.0;
        if (n_c < static_cast<Index>(spec.values.size())) {
            const TheoryRate rate = theory_rate(spec, n_c);
            rec.theory_rate = rate.theory;
            rec.robust_rate = rate.robust;
        }
        rec.rho_exact = spectral_radius(e);
        const PowerResult pw = power_rates(e, a_op, iters, seed);
        rec.err_rate = pw.err_rate;
        rec.res_rate = pw.res_rate;
        records.push_back(rec);
    }
    return records;
}

void write_rates_csv(const std::vector<RateRecord>& records, std::ostream& out) {
    out << "n_c,lambda_next,theory_rate,robust_rate,rho_exact,err_rate,res_rate,iters\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      static_cast<long long>(r.n_c), r.lambda_next, r.theory_rate, r.robust_rate,
                      r.rho_exact, r.err_rate, r.res_rate, r.iters);
        out << buf;
    }
}

std::vector<RateRecord> read_rates_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw io_error("rates csv: empty stream");
    if (line.rfind("n_c,", 0) != 0) throw io_error("rates csv: missing header");

    std::vector<RateRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        RateRecord r;
        long long n_c = 0;
        ls >> n_c >> r.lambda_next >> r.theory_rate >> r.robust_rate >> r.rho_exact >>
            r.err_rate >> r.res_rate >> r.iters;
        if (!ls) throw io_error("rates csv: malformed row: " + line);
        r.n_c = static_cast<Index>(n_c);
        records.push_back(r);
    }
    return records;
}

} // namespace twogrid
