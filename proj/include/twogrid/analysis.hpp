#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "twogrid/eigsolve.hpp"
#include "twogrid/types.hpp"

namespace twogrid {

// Convergence measurements for one coarse-space size.
struct RateRecord {
    Index n_c = 0;
    double lambda_next = 0.0;   // (n_c+1)-th pencil eigenvalue
    double theory_rate = 0.0;   // 1 - lambda_next
    double robust_rate = 0.0;   // max_{i > n_c} |1 - lambda_i|
    double rho_exact = 0.0;     // spectral radius of the error propagator
    double err_rate = 0.0;      // power-method error reduction rate
    double res_rate = 0.0;      // power-method residual reduction rate
    int iters = 0;
};

// Largest eigenvalue magnitude, dense.
double spectral_radius(const DenseMatrix& e);

struct PowerResult {
    double err_rate = 0.0;
    double res_rate = 0.0;
    // Per-iteration (error ratio, residual ratio), ratios taken before the
    // iterate is renormalized.
    std::vector<std::array<double, 2>> history;
    bool degenerate = false;    // iterate collapsed to zero
};

// Power iteration e_{k+1} = E e_k from a seeded random unit start vector with
// per-step normalization; reports the final-iteration ratios
// ||e_{k+1}||/||e_k|| and ||A e_{k+1}||/||A e_k||.
PowerResult power_rates(const DenseMatrix& e, const DenseMatrix& a_op, int iters,
                        std::uint64_t seed);

struct TheoryRate {
    double theory = 0.0;
    double robust = 0.0;
};

// theory = 1 - values[n_c] (zero-based, i.e. the (n_c+1)-th eigenvalue);
// robust = max over i >= n_c of |1 - values[i]|.
TheoryRate theory_rate(const Spectrum& spec, Index n_c);

// Builds the spectral interpolation and error propagator per n_c and fills a
// RateRecord for each, in ascending n_c order.
std::vector<RateRecord> sweep(const DenseMatrix& a_op, const DenseMatrix& m_sym,
                              const Spectrum& spec, const std::vector<Index>& nc_list,
                              int iters, std::uint64_t seed);

// CSV with header n_c,lambda_next,theory_rate,robust_rate,rho_exact,err_rate,res_rate,iters
// and 17-significant-digit values, so records round-trip exactly.
void write_rates_csv(const std::vector<RateRecord>& records, std::ostream& out);
std::vector<RateRecord> read_rates_csv(std::istream& in);

} // namespace twogrid
