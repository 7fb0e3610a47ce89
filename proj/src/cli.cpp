#include "twogrid/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "twogrid/analysis.hpp"
#include "twogrid/blocksys.hpp"
#include "twogrid/lapack.hpp"
#include "twogrid/matrix_market.hpp"
#include "twogrid/report.hpp"
#include "twogrid/rng.hpp"
#include "twogrid/smoother.hpp"
#include "twogrid/twogrid.hpp"

namespace twogrid {

namespace {

// Everything each analysis command needs, built once from the config.
struct Pipeline {
    SparseMatrix a;
    BlockSystem block;          // populated unless spd_mode
    DenseMatrix op;             // the analyzed operator, dense
    Smoother smoother;
    Spectrum spectrum;
    Index n = 0;
};

DenseMatrix operator_dense(const RunConfig& config, SparseMatrix& a_out, BlockSystem& block_out) {
    a_out = generate(config.problem);
    if (config.spd_mode) return to_dense(a_out);
    block_out = build_block(a_out);
    return to_dense(block_out.block);
}

Pipeline build_pipeline(const RunConfig& config) {
    Pipeline p;
    p.op = operator_dense(config, p.a, p.block);
    p.n = p.op.rows();
    p.smoother = build_kaczmarz(p.op);

    EigOptions opt;
    opt.imag_tol = config.imag_tol;
    p.spectrum = generalized_eig(p.op, p.smoother.m_sym, opt);
    return p;
}

std::vector<Index> effective_nc_list(const RunConfig& config, Index n) {
    std::vector<Index> nc = config.nc_list.empty() ? default_nc_list(n) : config.nc_list;
    if (!std::is_sorted(nc.begin(), nc.end()))
        throw std::invalid_argument("nc_list must be ascending");
    for (Index v : nc)
        if (v < 1 || v > n)
            throw std::invalid_argument("nc_list entry out of range for operator size " +
                                        std::to_string(n));
    return nc;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory " + dir + ": " + ec.message());
}

int log_level() {
    const char* env = std::getenv("TWOGRID_LOG");
    if (!env) return 0;
    const std::string v = env;
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void info(std::ostream& out, const std::string& msg) {
    if (log_level() >= 1) out << "[info] " << msg << "\n";
}

// Element-wise Kaczmarz sweep: forward Gauss-Seidel on (A A^T) y = b with the
// substitution x = A^T y. Used by verify as the row-action reference for the
// matrix form.
Vector kaczmarz_sweep_elementwise(const DenseMatrix& a, const Vector& x0, const Vector& b) {
    const DenseMatrix at_prod = a * a.transpose();
    Vector y = Eigen::PartialPivLU<DenseMatrix>(a.transpose()).solve(x0);
    for (Index i = 0; i < a.rows(); ++i)
        y[i] += (b[i] - at_prod.row(i).dot(y)) / at_prod(i, i);
    return a.transpose() * y;
}

} // namespace

std::vector<Index> default_nc_list(Index n) {
    std::vector<Index> nc;
    for (Index k : {1, 2, 4, 6, 8, 10, 12, 14}) {
        const Index v = std::max<Index>(1, n * k / 16);
        if (nc.empty() || v != nc.back()) nc.push_back(v);
    }
    while (!nc.empty() && nc.back() > n) nc.pop_back();
    return nc;
}

std::string config_header(const RunConfig& config) {
    std::ostringstream out;
    out << "# " << describe(config.problem) << "\n";
    out << "# mode: " << (config.spd_mode ? "spd (operator A)" : "block (2x2 pairing of A)")
        << "\n";
    out << "# power_iters: " << config.power_iters << "  seed: " << config.power_seed
        << "  imag_tol: " << config.imag_tol << "  dense_limit: " << config.dense_limit << "\n";
    out << "# nc_list: ";
    if (config.nc_list.empty()) {
        out << "(default sweep)";
    } else {
        for (std::size_t i = 0; i < config.nc_list.size(); ++i)
            out << (i ? "," : "") << config.nc_list[i];
    }
    out << "\n# out_dir: " << config.out_dir << "\n";
    return out.str();
}

void cmd_gen(const RunConfig& config, std::ostream& out) {
    out << config_header(config);
    ensure_out_dir(config.out_dir);

    const SparseMatrix a = generate(config.problem);
    const std::string a_path = join_path(config.out_dir, "a.mtx");
    write_matrix_market(a, a_path, {describe(config.problem)});
    out << "wrote " << a_path << " (" << a.n_rows << "x" << a.n_cols << ", " << a.nnz()
        << " nonzeros)\n";

    if (!config.spd_mode) {
        const BlockSystem bs = build_block(a);
        const std::string b_path = join_path(config.out_dir, "block.mtx");
        write_matrix_market(bs.block, b_path,
                            {describe(config.problem), "block pairing [0 A; A^T 0], k=" +
                                                           std::to_string(bs.k)});
        out << "wrote " << b_path << " (" << bs.block.n_rows << "x" << bs.block.n_cols << ", "
            << bs.block.nnz() << " nonzeros)\n";
    }
}

bool VerifyResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

VerifyResult cmd_verify(const RunConfig& config, std::ostream& out) {
    out << config_header(config);
    const Pipeline p = build_pipeline(config);
    info(out, "pipeline built, n = " + std::to_string(p.n));

    VerifyResult result;
    auto add = [&](const std::string& name, double measured, double tol, bool pass) {
        result.checks.push_back({name, measured, tol, pass});
    };

    {
        const BlockSystem bs = config.spd_mode ? build_block(p.a) : p.block;
        const PairingReport pr =
            verify_block_spectrum(bs, 1e-10 * lapack::singular_values(to_dense(bs.a))[0],
                                  config.dense_limit);
        add("block spectrum pairing eig(block) = {+/-sigma(A)}", pr.max_pairing_error,
            1e-10 * lapack::singular_values(to_dense(bs.a))[0], pr.ok);
    }

    {
        const Index n = p.n;
        const DenseMatrix lhs =
            DenseMatrix::Identity(n, n) -
            Eigen::PartialPivLU<DenseMatrix>(p.smoother.m_sym).solve(p.op);
        const DenseMatrix rhs =
            (DenseMatrix::Identity(n, n) -
             Eigen::PartialPivLU<DenseMatrix>(p.smoother.m).solve(p.op)) *
            (DenseMatrix::Identity(n, n) -
             Eigen::PartialPivLU<DenseMatrix>(p.smoother.m.transpose()).solve(p.op));
        const double rel = (lhs - rhs).norm() / rhs.norm();
        add("symmetrized smoother identity I - Msym^-1 A = (I - M^-1 A)(I - M^-T A)", rel, 1e-10,
            rel <= 1e-10);
    }

    {
        Rng rng(config.power_seed);
        const Vector x0 = rng.unit_vector(p.n);
        const Vector b = rng.unit_vector(p.n);
        const Vector sweep_x = kaczmarz_sweep_elementwise(p.op, x0, b);
        const Vector matrix_x =
            x0 + Eigen::PartialPivLU<DenseMatrix>(p.smoother.m).solve(b - p.op * x0);
        const double err = (sweep_x - matrix_x).cwiseAbs().maxCoeff();
        add("matrix-form Kaczmarz equals element-wise sweep", err, 1e-12, err <= 1e-12);
    }

    {
        const DenseMatrix prop =
            DenseMatrix::Identity(p.n, p.n) -
            Eigen::PartialPivLU<DenseMatrix>(p.smoother.m_sym).solve(p.op);
        const double rho = spectral_radius(prop);
        add("symmetrized smoother is convergent, rho(I - Msym^-1 A) < 1", rho, 1.0, rho < 1.0);
    }

    {
        // The positivity form of smoother convergence holds on the original
        // operator family; for the indefinite block pairing the spectral
        // radius check above is the meaningful statement.
        const DenseMatrix a_dense = to_dense(p.a);
        const Smoother sa = config.spd_mode ? p.smoother : kaczmarz_matrix(a_dense);
        const ConvergenceReport cr = check_convergent(sa.m, a_dense);
        add("original operator: M + M^T - A SPD (min eigenvalue > 0)", cr.min_eig, 0.0, cr.ok);
    }

    {
        const double resid = orthonormality_residual(p.spectrum, p.smoother.m_sym);
        add("eigenvector orthonormality |V^T Msym V - diag(signs)|", resid, 1e-8, resid <= 1e-8);
    }

    {
        const std::vector<Index> nc_list = effective_nc_list(config, p.n);
        double worst = 0.0;
        for (const Index n_c : nc_list) {
            const Interpolation interp = optimal_interpolation(p.spectrum, n_c);
            const DenseMatrix e = two_grid_error(p.op, p.smoother.m_sym, interp);
            const double ann =
                (e * p.spectrum.vectors.leftCols(n_c)).norm() / p.spectrum.vectors.norm();
            worst = std::max(worst, ann);
        }
        add("coarse-space annihilation |E P'| / |V| over nc_list", worst, 1e-8, worst <= 1e-8);
    }

    for (const auto& c : result.checks) {
        char buf[192];
        std::snprintf(buf, sizeof(buf), "[%s] %-68s measured=%.3e tol=%.3e\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.tol);
        out << buf;
    }
    out << (result.all_pass() ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return result;
}

void cmd_sweep(const RunConfig& config, std::ostream& out) {
    out << config_header(config);
    ensure_out_dir(config.out_dir);

    const Pipeline p = build_pipeline(config);
    const std::vector<Index> nc_list = effective_nc_list(config, p.n);
    info(out, "sweeping " + std::to_string(nc_list.size()) + " coarse-space sizes");

    const std::vector<RateRecord> records =
        sweep(p.op, p.smoother.m_sym, p.spectrum, nc_list, config.power_iters, config.power_seed);

    const std::string csv_path = join_path(config.out_dir, "rates.csv");
    write_rates_csv_file(records, csv_path);
    const std::string svg_path = join_path(config.out_dir, "rates.svg");
    rates_svg(records, svg_path);

    const std::string spy_path = join_path(config.out_dir, "spy.svg");
    if (config.spd_mode)
        spy_svg(p.a, spy_path);
    else
        spy_svg(p.block.block, spy_path, p.block.k);

    out << "wrote " << csv_path << ", " << svg_path << ", " << spy_path << "\n";
    for (const auto& r : records) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "n_c=%4lld  theory=%.6f  robust=%.6f  rho=%.6f  err=%.6f  res=%.6f\n",
                      static_cast<long long>(r.n_c), r.theory_rate, r.robust_rate, r.rho_exact,
                      r.err_rate, r.res_rate);
        out << buf;
    }
}

void cmd_spy(const RunConfig& config, std::ostream& out) {
    out << config_header(config);
    ensure_out_dir(config.out_dir);

    const SparseMatrix a = generate(config.problem);
    const std::string path = join_path(config.out_dir, "spy.svg");
    if (config.spd_mode) {
        spy_svg(a, path);
    } else {
        const BlockSystem bs = build_block(a);
        spy_svg(bs.block, path, bs.k);
    }
    out << "wrote " << path << "\n";
}

void cmd_spectrum(const RunConfig& config, std::ostream& out) {
    out << config_header(config);
    ensure_out_dir(config.out_dir);

    const Pipeline p = build_pipeline(config);
    const std::string csv_path = join_path(config.out_dir, "spectrum.csv");
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw io_error("cannot open for writing: " + csv_path);
    write_spectrum_csv(p.spectrum, csv);
    out << "wrote " << csv_path << " (" << p.spectrum.values.size() << " eigenvalues, max_imag="
        << p.spectrum.max_imag << ")\n";

    if (config.dump_vectors) {
        const std::string vec_path = join_path(config.out_dir, "vectors.mtx");
        write_matrix_market_dense(p.spectrum.vectors, vec_path, {describe(config.problem)});
        out << "wrote " << vec_path << "\n";
    }
}

} // namespace twogrid
