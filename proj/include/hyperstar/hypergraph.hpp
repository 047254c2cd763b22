#ifndef HYPERSTAR_HYPERGRAPH_HPP
#define HYPERSTAR_HYPERGRAPH_HPP

#include <hyperstar/combinatorics.hpp>
#include <hyperstar/error.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace hyperstar {

using edge_id = std::uint32_t;

/// Star of a vertex: ids of the edges containing it, ascending.
struct VertexStar {
    vertex_t vertex{};
    std::vector<edge_id> edge_ids;

    std::size_t degree() const { return edge_ids.size(); }
    bool isolated() const { return edge_ids.empty(); }
    friend bool operator==(const VertexStar&, const VertexStar&) = default;
};

namespace detail {

inline std::string format_edge(std::span<const vertex_t> edge) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < edge.size(); ++i) os << (i ? "," : "") << edge[i];
    os << ']';
    return os.str();
}

// Colexicographic order on ascending k-sets: compare from the largest element down.
inline bool colex_less(std::span<const vertex_t> a, std::span<const vertex_t> b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

} // namespace detail

/// Immutable k-uniform hypergraph on vertices 0..n-1. Edges are stored sorted
/// internally and in colexicographic order globally; an edge's id is its position.
class Hypergraph {
public:
    /// Validates and canonicalises an arbitrary edge list.
    static Hypergraph create(std::uint64_t n, std::uint64_t k,
                             const std::vector<std::vector<vertex_t>>& raw_edges) {
        check_shape(n, k, raw_edges.size());
        std::vector<std::vector<vertex_t>> edges;
        edges.reserve(raw_edges.size());
        for (const auto& raw : raw_edges) {
            if (raw.size() != k)
                throw invalid_input("edge " + detail::format_edge(raw) + " has arity " +
                                    std::to_string(raw.size()) + ", expected " + std::to_string(k));
            auto edge = raw;
            std::sort(edge.begin(), edge.end());
            if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
                throw invalid_input("edge " + detail::format_edge(raw) + " repeats a vertex");
            if (edge.back() >= n)
                throw invalid_input("edge " + detail::format_edge(raw) + " has a vertex out of range [0, " +
                                    std::to_string(n) + ")");
            edges.push_back(std::move(edge));
        }
        std::sort(edges.begin(), edges.end(),
                  [](const auto& a, const auto& b) { return detail::colex_less(a, b); });
        auto dup = std::adjacent_find(edges.begin(), edges.end());
        if (dup != edges.end()) throw invalid_input("duplicate edge " + detail::format_edge(*dup));

        std::vector<vertex_t> flat;
        flat.reserve(edges.size() * k);
        for (const auto& e : edges) flat.insert(flat.end(), e.begin(), e.end());
        return Hypergraph(n, k, std::move(flat));
    }

    /// Builds from a flat edge array that is already canonical (each edge ascending,
    /// edges strictly increasing in colex order). The ordering is verified.
    static Hypergraph from_canonical(std::uint64_t n, std::uint64_t k, std::vector<vertex_t> flat) {
        if (k == 0 || flat.size() % k != 0) throw invalid_input("flat edge array is not a multiple of k");
        check_shape(n, k, flat.size() / k);
        const std::size_t m = flat.size() / k;
        for (std::size_t e = 0; e < m; ++e) {
            std::span<const vertex_t> edge(flat.data() + e * k, k);
            for (std::size_t i = 0; i < k; ++i) {
                if (edge[i] >= n || (i > 0 && edge[i] <= edge[i - 1]))
                    throw invalid_input("edge " + detail::format_edge(edge) + " is not an ascending k-set of [0, n)");
            }
            if (e > 0 && !detail::colex_less({flat.data() + (e - 1) * k, k}, edge))
                throw invalid_input("edge " + detail::format_edge(edge) + " is out of canonical order or duplicated");
        }
        return Hypergraph(n, k, std::move(flat));
    }

    std::uint64_t n() const { return n_; }
    std::uint64_t k() const { return k_; }
    std::size_t m() const { return k_ ? edges_.size() / k_ : 0; }

    std::span<const vertex_t> edge(edge_id e) const {
        if (e >= m()) throw invalid_input("edge id " + std::to_string(e) + " out of range");
        return {edges_.data() + static_cast<std::size_t>(e) * k_, k_};
    }
    std::span<const vertex_t> edges_flat() const { return edges_; }

    std::vector<std::vector<vertex_t>> edge_list() const {
        std::vector<std::vector<vertex_t>> out;
        out.reserve(m());
        for (std::size_t e = 0; e < m(); ++e) {
            auto s = edge(static_cast<edge_id>(e));
            out.emplace_back(s.begin(), s.end());
        }
        return out;
    }

    /// Edge ids containing v, ascending (no copy).
    std::span<const edge_id> star_edges(vertex_t v) const {
        check_vertex(v);
        return {star_ids_.data() + star_offsets_[v], star_ids_.data() + star_offsets_[v + 1]};
    }

    VertexStar star(vertex_t v) const {
        auto s = star_edges(v);
        return {v, {s.begin(), s.end()}};
    }

    std::size_t degree(vertex_t v) const { return star_edges(v).size(); }

    void check_vertex(vertex_t v) const {
        if (v >= n_) throw invalid_input("vertex " + std::to_string(v) + " out of range [0, " +
                                         std::to_string(n_) + ")");
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
    }

private:
    Hypergraph(std::uint64_t n, std::uint64_t k, std::vector<vertex_t> flat)
        : n_(n), k_(k), edges_(std::move(flat)) {
        star_offsets_.assign(n_ + 1, 0);
        for (vertex_t v : edges_) ++star_offsets_[v + 1];
        std::partial_sum(star_offsets_.begin(), star_offsets_.end(), star_offsets_.begin());
        star_ids_.resize(edges_.size());
        std::vector<std::size_t> cursor(star_offsets_.begin(), star_offsets_.end() - 1);
        // Visiting edges in id order leaves every star sorted.
        for (std::size_t i = 0; i < edges_.size(); ++i)
            star_ids_[cursor[edges_[i]]++] = static_cast<edge_id>(i / k_);
    }

    static void check_shape(std::uint64_t n, std::uint64_t k, std::size_t m) {
        if (n < 1) throw invalid_input("hypergraph needs n >= 1");
        if (n > std::numeric_limits<vertex_t>::max())
            throw capacity_error("vertex count " + std::to_string(n) + " exceeds 32-bit vertex ids");
        if (k < 2) throw invalid_input("uniformity k must be >= 2");
        if (k > n && m > 0)
            throw invalid_input("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n) +
                                " but the edge list is not empty");
        if (m > std::numeric_limits<edge_id>::max())
            throw capacity_error("edge count exceeds 32-bit edge ids");
    }

    std::uint64_t n_, k_;
    std::vector<vertex_t> edges_;
    std::vector<std::size_t> star_offsets_;
    std::vector<edge_id> star_ids_;
};

inline Hypergraph new_hypergraph(std::uint64_t n, std::uint64_t k,
                                 const std::vector<std::vector<vertex_t>>& raw_edges) {
    return Hypergraph::create(n, k, raw_edges);
}

/// |Γ(u) ∩ Γ(v)| for u != v.
inline std::size_t codegree(const Hypergraph& h, vertex_t u, vertex_t v) {
    h.check_vertex(u);
    h.check_vertex(v);
    if (u == v) throw invalid_input("codegree is defined for distinct vertices only");
    auto a = h.star_edges(u);
    auto b = h.star_edges(v);
    std::size_t count = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

} // namespace hyperstar

#endif // HYPERSTAR_HYPERGRAPH_HPP
