#include "twogrid/matgen.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>

#include "twogrid/rng.hpp"

namespace twogrid {

std::array<double, 2> ProblemSpec::default_advection() {
    return {std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0)};
}

void validate(const ProblemSpec& spec) {
    switch (spec.kind) {
    case ProblemKind::poisson2d:
        if (spec.grid_n < 1) throw std::invalid_argument("poisson2d: grid_n must be >= 1");
        break;
    case ProblemKind::advdiff2d:
        if (spec.grid_n < 1) throw std::invalid_argument("advdiff2d: grid_n must be >= 1");
        if (!(spec.alpha > 0.0)) throw std::invalid_argument("advdiff2d: alpha must be > 0");
        break;
    case ProblemKind::random:
        if (spec.n < 1) throw std::invalid_argument("random: n must be >= 1");
        if (!(spec.density > 0.0 && spec.density <= 1.0))
            throw std::invalid_argument("random: density must be in (0,1]");
        break;
    }
}

SparseMatrix poisson_2d(int grid_n) {
    if (grid_n < 1) throw std::invalid_argument("poisson_2d: grid_n must be >= 1");
    const Index g = grid_n;
    const double h = 1.0 / (grid_n + 1);
    const double inv_h2 = 1.0 / (h * h);

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(5 * g * g));
    for (Index iy = 0; iy < g; ++iy) {
        for (Index ix = 0; ix < g; ++ix) {
            const Index node = iy * g + ix;
            entries.push_back({node, node, 4.0 * inv_h2});
            if (ix > 0) entries.push_back({node, node - 1, -inv_h2});
            if (ix + 1 < g) entries.push_back({node, node + 1, -inv_h2});
            if (iy > 0) entries.push_back({node, node - g, -inv_h2});
            if (iy + 1 < g) entries.push_back({node, node + g, -inv_h2});
        }
    }
    return from_triplets(g * g, g * g, std::move(entries));
}

SparseMatrix advdiff_2d(int grid_n, double alpha, std::array<double, 2> b_vec) {
    if (grid_n < 1) throw std::invalid_argument("advdiff_2d: grid_n must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("advdiff_2d: alpha must be > 0");

    const Index g = grid_n;
    const double h = 2.0 / (grid_n + 1);
    const double inv_h2 = 1.0 / (h * h);
    const double diff = alpha * inv_h2;
    const double b1 = b_vec[0];
    const double b2 = b_vec[1];

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(5 * g * g));
    for (Index iy = 0; iy < g; ++iy) {
        for (Index ix = 0; ix < g; ++ix) {
            const Index node = iy * g + ix;
            entries.push_back({node, node, 4.0 * diff + (std::abs(b1) + std::abs(b2)) / h});
            // Upwinding biases each advection term toward the inflow side, so
            // the off-diagonal contribution lands on exactly one neighbor.
            if (ix > 0) entries.push_back({node, node - 1, -diff - (b1 > 0.0 ? b1 / h : 0.0)});
            if (ix + 1 < g) entries.push_back({node, node + 1, -diff + (b1 < 0.0 ? b1 / h : 0.0)});
            if (iy > 0) entries.push_back({node, node - g, -diff - (b2 > 0.0 ? b2 / h : 0.0)});
            if (iy + 1 < g) entries.push_back({node, node + g, -diff + (b2 < 0.0 ? b2 / h : 0.0)});
        }
    }
    return from_triplets(g * g, g * g, std::move(entries));
}

SparseMatrix random_nonsym(int n, double density, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_nonsym: n must be >= 1");
    if (!(density > 0.0 && density <= 1.0))
        throw std::invalid_argument("random_nonsym: density must be in (0,1]");

    const auto dim = static_cast<std::uint64_t>(n);
    const auto target = static_cast<std::uint64_t>(std::llround(density * double(dim) * double(dim)));

    Rng rng(seed);
    std::map<std::pair<Index, Index>, double> off_diag;
    for (std::uint64_t k = 0; k < target; ++k) {
        const auto i = static_cast<Index>(rng.uniform_index(dim));
        const auto j = static_cast<Index>(rng.uniform_index(dim));
        const double v = rng.uniform_pm1();
        if (i == j) continue;                 // diagonal is reserved for the dominance shift
        off_diag.emplace(std::make_pair(i, j), v);  // first draw wins on collision
    }

    std::vector<double> row_abs_sum(static_cast<std::size_t>(n), 0.0);
    std::vector<Triplet> entries;
    entries.reserve(off_diag.size() + static_cast<std::size_t>(n));
    for (const auto& [pos, v] : off_diag) {
        entries.push_back({pos.first, pos.second, v});
        row_abs_sum[static_cast<std::size_t>(pos.first)] += std::abs(v);
    }
    for (Index i = 0; i < n; ++i)
        entries.push_back({i, i, 1.0 + row_abs_sum[static_cast<std::size_t>(i)]});

    return from_triplets(n, n, std::move(entries));
}

SparseMatrix generate(const ProblemSpec& spec) {
    validate(spec);
    switch (spec.kind) {
    case ProblemKind::poisson2d:
        return poisson_2d(spec.grid_n);
    case ProblemKind::advdiff2d:
        return advdiff_2d(spec.grid_n, spec.alpha, spec.b_vec);
    case ProblemKind::random:
        return random_nonsym(spec.n, spec.density, spec.seed);
    }
    throw std::invalid_argument("generate: unknown problem kind");
}

std::string describe(const ProblemSpec& spec) {
    char buf[256];
    switch (spec.kind) {
    case ProblemKind::poisson2d:
        std::snprintf(buf, sizeof(buf), "problem: kind=poisson2d grid_n=%d", spec.grid_n);
        break;
    case ProblemKind::advdiff2d:
        std::snprintf(buf, sizeof(buf),
                      "problem: kind=advdiff2d grid_n=%d alpha=%.17g bx=%.17g by=%.17g",
                      spec.grid_n, spec.alpha, spec.b_vec[0], spec.b_vec[1]);
        break;
    case ProblemKind::random:
        std::snprintf(buf, sizeof(buf), "problem: kind=random n=%d density=%.17g seed=%llu",
                      spec.n, spec.density, static_cast<unsigned long long>(spec.seed));
        break;
    }
    return buf;
}

std::string to_string(ProblemKind kind) {
    switch (kind) {
    case ProblemKind::poisson2d: return "poisson2d";
    case ProblemKind::advdiff2d: return "advdiff2d";
    case ProblemKind::random: return "random";
    }
    return "?";
}

ProblemKind problem_kind_from_string(const std::string& name) {
    if (name == "poisson2d" || name == "poisson") return ProblemKind::poisson2d;
    if (name == "advdiff2d" || name == "advdiff") return ProblemKind::advdiff2d;
    if (name == "random") return ProblemKind::random;
    throw std::invalid_argument("unknown problem kind: " + name);
}

} // namespace twogrid
