#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twogrid/matgen.hpp"
#include "twogrid/types.hpp"

namespace twogrid {

// Effective configuration of one CLI invocation. Defaults follow the test
// problems' standard parameters (alpha = 0.1, b = [sqrt(2/3), sqrt(1/3)],
// 500 power iterations).
struct RunConfig {
    ProblemSpec problem;
    bool spd_mode = false;           // analyze A itself instead of the 2x2 block pairing
    std::vector<Index> nc_list;      // empty -> a default sweep over n/16 multiples
    int power_iters = 500;
    std::uint64_t power_seed = 1;
    double imag_tol = 1e-8;
    Index dense_limit = 1024;
    std::string out_dir = ".";
    bool dump_vectors = false;       // spectrum command: also write eigenvectors
};

std::vector<Index> default_nc_list(Index n);

// Human-readable header naming every effective parameter; each command prints
// it before its report so outputs are self-describing.
std::string config_header(const RunConfig& config);

// gen: write the operator (and its block pairing unless spd_mode) as Matrix
// Market files a.mtx / block.mtx under out_dir.
void cmd_gen(const RunConfig& config, std::ostream& out);

struct VerifyCheck {
    std::string name;
    double measured = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct VerifyResult {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

// verify: run the cross-module identity checks (block-spectrum pairing,
// smoother identities, smoother convergence, eigenvector orthonormality,
// coarse-space annihilation) and report each with its measured residual.
VerifyResult cmd_verify(const RunConfig& config, std::ostream& out);

// sweep: full pipeline; writes rates.csv, rates.svg and spy.svg under out_dir.
void cmd_sweep(const RunConfig& config, std::ostream& out);

// spy: write spy.svg for the configured operator.
void cmd_spy(const RunConfig& config, std::ostream& out);

// spectrum: write spectrum.csv (and vectors.mtx when dump_vectors) under out_dir.
void cmd_spectrum(const RunConfig& config, std::ostream& out);

} // namespace twogrid
