#ifndef HYPERSTAR_STAR_MATRIX_HPP
#define HYPERSTAR_STAR_MATRIX_HPP

// Star-dependent matrices: M_uv = F(Γ(u), Γ(v)) for u != v and M_uu = G(Γ(u)).
// Such a matrix is constant on unit blocks, so the unit partition is equitable
// and M splits into a quotient part (unit-constant vectors) and a local part
// spanned by the differences 1_u - 1_v inside each unit.

#include <hyperstar/collisions.hpp>
#include <hyperstar/hypergraph.hpp>
#include <hyperstar/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace hyperstar {

using StarSpan = std::span<const edge_id>;

/// F and G of a star-dependent matrix. Both may read only the stars and the
/// global parameters of the hypergraph, never a vertex id.
struct StarKernel {
    std::string name;
    std::function<double(StarSpan, StarSpan, const Hypergraph&)> offdiag;
    std::function<double(StarSpan, const Hypergraph&)> diag;
    bool symmetric = true;
};

inline std::size_t intersection_size(StarSpan a, StarSpan b) {
    std::size_t count = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

/// Co-degree adjacency: F = |Γ(u) ∩ Γ(v)|, G = |Γ(u)|.
inline StarKernel codegree_kernel() {
    return {"codegree",
            [](StarSpan a, StarSpan b, const Hypergraph&) { return static_cast<double>(intersection_size(a, b)); },
            [](StarSpan a, const Hypergraph&) { return static_cast<double>(a.size()); }, true};
}

/// Weighted adjacency: F = Σ_{e ∈ Γ(u)∩Γ(v)} 1/(|e|-1) = |Γ(u) ∩ Γ(v)| / (k-1), G = 0.
inline StarKernel banerjee_kernel() {
    return {"banerjee",
            [](StarSpan a, StarSpan b, const Hypergraph& h) {
                return static_cast<double>(intersection_size(a, b)) / static_cast<double>(h.k() - 1);
            },
            [](StarSpan, const Hypergraph&) { return 0.0; }, true};
}

/// Laplacian convention: F = -|Γ(u) ∩ Γ(v)| / (k-1), G = |Γ(u)|.
inline StarKernel laplacian_kernel() {
    return {"laplacian",
            [](StarSpan a, StarSpan b, const Hypergraph& h) {
                return -static_cast<double>(intersection_size(a, b)) / static_cast<double>(h.k() - 1);
            },
            [](StarSpan a, const Hypergraph&) { return static_cast<double>(a.size()); }, true};
}

/// Random-walk transition: F = |Γ(u) ∩ Γ(v)| / ((k-1) |Γ(u)|), zero row for isolated u; G = 0.
inline StarKernel randomwalk_kernel() {
    return {"randomwalk",
            [](StarSpan a, StarSpan b, const Hypergraph& h) {
                if (a.empty()) return 0.0;
                return static_cast<double>(intersection_size(a, b)) /
                       (static_cast<double>(h.k() - 1) * static_cast<double>(a.size()));
            },
            [](StarSpan, const Hypergraph&) { return 0.0; }, false};
}

inline StarKernel kernel_by_name(const std::string& name) {
    if (name == "codegree") return codegree_kernel();
    if (name == "banerjee") return banerjee_kernel();
    if (name == "laplacian") return laplacian_kernel();
    if (name == "randomwalk") return randomwalk_kernel();
    throw invalid_input("unknown kernel '" + name + "' (expected codegree, banerjee, laplacian or randomwalk)");
}

inline constexpr std::size_t max_matrix_dimension = 4096;

struct StarMatrix {
    std::string kernel_name;
    DenseMatrix entries;

    std::size_t n() const { return entries.rows(); }
    double operator()(std::size_t u, std::size_t v) const { return entries(u, v); }
};

inline StarMatrix build_matrix(const Hypergraph& h, const StarKernel& kernel) {
    const std::size_t n = h.n();
    if (n > max_matrix_dimension)
        throw capacity_error("dense matrices are capped at n <= " + std::to_string(max_matrix_dimension) +
                             ", got n = " + std::to_string(n));
    DenseMatrix m(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        auto su = h.star_edges(static_cast<vertex_t>(u));
        for (std::size_t v = 0; v < n; ++v) {
            double value = (u == v) ? kernel.diag(su, h) : kernel.offdiag(su, h.star_edges(static_cast<vertex_t>(v)), h);
            if (!std::isfinite(value))
                throw numeric_error("kernel '" + kernel.name + "' produced a non-finite entry at row " +
                                    std::to_string(u) + " (vertex " + std::to_string(u) + "), column " +
                                    std::to_string(v));
            m(u, v) = value;
        }
    }
    return {kernel.name, std::move(m)};
}

namespace detail {

// Order-independent sum: the same multiset always yields the same double.
inline double canonical_sum(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
}

inline double part_row_sum(const DenseMatrix& m, std::size_t u, const std::vector<vertex_t>& part,
                           std::vector<double>& scratch) {
    scratch.clear();
    for (vertex_t w : part) scratch.push_back(m(u, w));
    return canonical_sum(scratch);
}

inline void check_cover(std::size_t n, std::span<const std::vector<vertex_t>> parts) {
    std::vector<char> seen(n, 0);
    std::size_t total = 0;
    for (const auto& part : parts) {
        if (part.empty()) throw invalid_input("partition has an empty part");
        for (vertex_t v : part) {
            if (v >= n || seen[v]) throw invalid_input("partition does not cover [0, n) exactly once");
            seen[v] = 1;
            ++total;
        }
    }
    if (total != n) throw invalid_input("partition does not cover [0, n) exactly once");
}

} // namespace detail

struct EquitableCheck {
    bool equitable = true;
    double max_deviation = 0.0;
};

/// Largest |Σ_{w∈P_j} M_uw - Σ_{w∈P_j} M_vw| over parts j and same-part pairs u, v.
inline EquitableCheck verify_equitable(const StarMatrix& m, std::span<const std::vector<vertex_t>> parts,
                                       double tol) {
    detail::check_cover(m.n(), parts);
    EquitableCheck out;
    std::vector<double> scratch;
    for (const auto& pi : parts) {
        if (pi.size() < 2) continue;
        for (const auto& pj : parts) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (vertex_t u : pi) {
                double s = detail::part_row_sum(m.entries, u, pj, scratch);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            out.max_deviation = std::max(out.max_deviation, hi - lo);
        }
    }
    out.equitable = out.max_deviation <= tol;
    return out;
}

inline EquitableCheck verify_equitable(const StarMatrix& m, const UnitPartition& p, double tol) {
    if (p.n() != m.n()) throw invalid_input("partition and matrix have different vertex counts");
    auto parts = p.parts();
    return verify_equitable(m, parts, tol);
}

/// Quotient over the unit partition: beta_ij = Σ_{w ∈ P_j} M_uw for any u ∈ P_i.
struct UnitContraction {
    std::vector<std::vector<vertex_t>> parts;
    DenseMatrix beta;
};

inline UnitContraction quotient(const StarMatrix& m, const UnitPartition& p, double tol = 0.0) {
    if (p.n() != m.n()) throw invalid_input("partition and matrix have different vertex counts");
    UnitContraction q{p.parts(), {}};
    auto check = verify_equitable(m, q.parts, tol);
    if (!check.equitable)
        throw numeric_error("partition is not equitable for the matrix (deviation " +
                            std::to_string(check.max_deviation) + ")");
    const std::size_t count = q.parts.size();
    q.beta = DenseMatrix(count, count);
    std::vector<double> scratch;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            q.beta(i, j) = detail::part_row_sum(m.entries, q.parts[i].front(), q.parts[j], scratch);
    return q;
}

/// D^{1/2} beta D^{-1/2} with D = diag(part sizes). Symmetric when M is; the
/// result is symmetrised exactly by averaging mirrored entries.
inline DenseMatrix symmetrized_quotient(const UnitContraction& q) {
    const std::size_t count = q.parts.size();
    DenseMatrix s(count, count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            s(i, j) = q.beta(i, j) * std::sqrt(static_cast<double>(q.parts[i].size()) /
                                               static_cast<double>(q.parts[j].size()));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));
    return s;
}

/// Unit-lift: the vertex vector taking value f[i] on every vertex of part i.
inline std::vector<double> lift(std::span<const std::vector<vertex_t>> parts, std::span<const double> f) {
    if (f.size() != parts.size())
        throw invalid_input("lift needs one value per part (" + std::to_string(parts.size()) + "), got " +
                            std::to_string(f.size()));
    std::size_t n = 0;
    for (const auto& part : parts) n += part.size();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (vertex_t v : parts[i]) {
            if (v >= n) throw invalid_input("partition does not cover [0, n) exactly once");
            x[v] = f[i];
        }
    return x;
}

inline std::vector<double> lift(const UnitPartition& p, std::span<const double> f) {
    auto parts = p.parts();
    return lift(parts, f);
}

/// Basis of H_loc: 1_{w0} - 1_{wi} for every nontrivial unit W = {w0 < w1 < ...}.
inline std::vector<std::vector<double>> local_basis(const UnitPartition& p) {
    std::vector<std::vector<double>> basis;
    for (std::size_t i = 0; i < p.unit_count(); ++i) {
        auto unit = p.unit(i);
        for (std::size_t j = 1; j < unit.size(); ++j) {
            std::vector<double> x(p.n(), 0.0);
            x[unit.vertices[0]] = 1.0;
            x[unit.vertices[j]] = -1.0;
            basis.push_back(std::move(x));
        }
    }
    return basis;
}

/// M_uu - M_uv for each nontrivial unit, repeated |W| - 1 times. Throws if the
/// value is not identical across all pairs in a unit.
inline std::vector<double> unit_eigenvalues(const StarMatrix& m, const UnitPartition& p) {
    if (p.n() != m.n()) throw invalid_input("partition and matrix have different vertex counts");
    std::vector<double> out;
    for (std::size_t i = 0; i < p.unit_count(); ++i) {
        auto unit = p.unit(i);
        if (!unit.nontrivial()) continue;
        const double value = m(unit.vertices[0], unit.vertices[0]) - m(unit.vertices[0], unit.vertices[1]);
        for (vertex_t u : unit.vertices)
            for (vertex_t v : unit.vertices)
                if (u != v && m(u, u) - m(u, v) != value)
                    throw numeric_error("unit-eigenvalue differs between pairs of unit containing vertex " +
                                        std::to_string(u) + "; matrix is not star-dependent");
        out.insert(out.end(), unit.size() - 1, value);
    }
    return out;
}

inline std::string matrix_to_csv(const DenseMatrix& m) {
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << '\n';
    }
    return os.str();
}

inline std::string quotient_to_csv(const UnitContraction& q) {
    std::string out = "# parts:";
    for (const auto& part : q.parts) {
        out += " {";
        for (std::size_t i = 0; i < part.size(); ++i) out += (i ? "," : "") + std::to_string(part[i]);
        out += '}';
    }
    out += '\n';
    return out + matrix_to_csv(q.beta);
}

} // namespace hyperstar

#endif // HYPERSTAR_STAR_MATRIX_HPP
