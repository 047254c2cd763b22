#ifndef HYPERSTAR_COLLISIONS_HPP
#define HYPERSTAR_COLLISIONS_HPP

#include <hyperstar/hypergraph.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

namespace hyperstar {

/// Vertices with the same non-empty star, and that star.
struct UnitView {
    std::span<const vertex_t> vertices;
    std::span<const edge_id> support;

    std::size_t size() const { return vertices.size(); }
    bool nontrivial() const { return vertices.size() >= 2; }
};

/// Partition of the vertex set into units (classes of equal non-empty stars,
/// including singletons) plus the isolated vertices, which stay separate singletons.
/// Units are ordered by their smallest vertex.
class UnitPartition {
public:
    static constexpr std::uint32_t isolated_mark = std::numeric_limits<std::uint32_t>::max();

    std::uint64_t n() const { return unit_of_.size(); }
    std::size_t unit_count() const { return unit_offsets_.size() - 1; }

    UnitView unit(std::size_t i) const {
        return {{vertices_.data() + unit_offsets_[i], vertices_.data() + unit_offsets_[i + 1]},
                {support_.data() + support_offsets_[i], support_.data() + support_offsets_[i + 1]}};
    }

    std::span<const vertex_t> isolated() const { return isolated_; }

    /// Unit index of v, or isolated_mark.
    std::uint32_t unit_of(vertex_t v) const { return unit_of_.at(v); }

    /// Every part of the partition (units and isolated singletons), ordered by
    /// smallest member vertex. This is the vertex partition quotients are taken over.
    std::vector<std::vector<vertex_t>> parts() const {
        std::vector<std::vector<vertex_t>> out;
        out.reserve(unit_count() + isolated_.size());
        for (vertex_t v = 0; v < n(); ++v) {
            auto u = unit_of_[v];
            if (u == isolated_mark) out.push_back({v});
            else if (unit(u).vertices.front() == v) out.emplace_back(unit(u).vertices.begin(), unit(u).vertices.end());
        }
        return out;
    }

    std::size_t part_count() const { return unit_count() + isolated_.size(); }

private:
    friend UnitPartition build_partition(const Hypergraph& h);

    std::vector<vertex_t> vertices_;
    std::vector<std::size_t> unit_offsets_{0};
    std::vector<edge_id> support_;
    std::vector<std::size_t> support_offsets_{0};
    std::vector<vertex_t> isolated_;
    std::vector<std::uint32_t> unit_of_;
};

/// Groups vertices by exact star equality. Every vertex of a unit lies in the
/// unit's smallest support edge, so candidates are bucketed by their first edge
/// id (at most k per bucket) and then compared in full.
inline UnitPartition build_partition(const Hypergraph& h) {
    const auto n = static_cast<vertex_t>(h.n());
    const std::size_t m = h.m();
    UnitPartition part;
    part.unit_of_.assign(n, UnitPartition::isolated_mark);

    std::vector<std::uint32_t> bucket_offsets(m + 1, 0);
    for (vertex_t v = 0; v < n; ++v) {
        auto s = h.star_edges(v);
        if (!s.empty()) ++bucket_offsets[s.front() + 1];
    }
    for (std::size_t e = 0; e < m; ++e) bucket_offsets[e + 1] += bucket_offsets[e];
    std::vector<vertex_t> bucketed(bucket_offsets.back());
    {
        std::vector<std::uint32_t> cursor(bucket_offsets.begin(), bucket_offsets.end() - 1);
        for (vertex_t v = 0; v < n; ++v) {
            auto s = h.star_edges(v);
            if (!s.empty()) bucketed[cursor[s.front()]++] = v;
        }
    }

    // Assign a representative (smallest equal vertex) per non-isolated vertex.
    std::vector<vertex_t> representative(n, 0);
    for (std::size_t e = 0; e < m; ++e) {
        const auto begin = bucket_offsets[e], end = bucket_offsets[e + 1];
        for (auto i = begin; i < end; ++i) {
            const vertex_t v = bucketed[i];
            representative[v] = v;
            auto sv = h.star_edges(v);
            for (auto j = begin; j < i; ++j) {
                const vertex_t u = bucketed[j];
                if (representative[u] != u) continue;
                auto su = h.star_edges(u);
                if (std::equal(sv.begin(), sv.end(), su.begin(), su.end())) {
                    representative[v] = u;
                    break;
                }
            }
        }
    }

    std::vector<std::uint32_t> count(n, 0);
    for (vertex_t v = 0; v < n; ++v)
        if (!h.star_edges(v).empty()) ++count[representative[v]];

    std::vector<std::size_t> start(n, 0);
    for (vertex_t v = 0; v < n; ++v) {
        if (h.star_edges(v).empty()) {
            part.isolated_.push_back(v);
            continue;
        }
        if (representative[v] == v) {
            const auto id = static_cast<std::uint32_t>(part.unit_offsets_.size() - 1);
            part.unit_of_[v] = id;
            start[v] = part.vertices_.size();
            part.vertices_.resize(part.vertices_.size() + count[v]);
            part.unit_offsets_.push_back(part.vertices_.size());
            auto s = h.star_edges(v);
            part.support_.insert(part.support_.end(), s.begin(), s.end());
            part.support_offsets_.push_back(part.support_.size());
            count[v] = 0;
        }
        const vertex_t r = representative[v];
        part.unit_of_[v] = part.unit_of_[r];
        part.vertices_[start[r] + count[r]++] = v;
    }
    return part;
}

/// Collision and unit statistics of one hypergraph.
struct CollisionCensus {
    std::uint64_t n{}, k{}, m{};
    std::uint64_t isolated{};                 // I_n
    std::uint64_t degenerate_pairs{};         // X_0 = C(I_n, 2)
    std::map<std::uint64_t, std::uint64_t> pairs_by_support;  // r -> X_r (r >= 1, nonzero only)
    std::map<std::uint64_t, std::uint64_t> units_by_size;     // size -> U_size (size >= 2, nonzero only)
    std::uint64_t nontrivial_units{};         // Y
    std::uint64_t local_dimension{};          // dim H_loc = sum (|W| - 1)

    std::uint64_t X(std::uint64_t r) const {
        if (r == 0) return degenerate_pairs;
        auto it = pairs_by_support.find(r);
        return it == pairs_by_support.end() ? 0 : it->second;
    }
    std::uint64_t U(std::uint64_t size) const {
        auto it = units_by_size.find(size);
        return it == units_by_size.end() ? 0 : it->second;
    }
    /// Number of units of size >= 3.
    std::uint64_t large_units() const {
        std::uint64_t total = 0;
        for (auto [size, c] : units_by_size)
            if (size >= 3) total += c;
        return total;
    }
    /// Σ_{r >= from} X_r.
    std::uint64_t pairs_from(std::uint64_t from) const {
        std::uint64_t total = 0;
        for (auto [r, c] : pairs_by_support)
            if (r >= from) total += c;
        return total;
    }
    friend bool operator==(const CollisionCensus&, const CollisionCensus&) = default;
};

inline CollisionCensus census(const Hypergraph& h, const UnitPartition& part) {
    CollisionCensus c;
    c.n = h.n();
    c.k = h.k();
    c.m = h.m();
    c.isolated = part.isolated().size();
    c.degenerate_pairs = c.isolated < 2 ? 0 : c.isolated * (c.isolated - 1) / 2;
    for (std::size_t i = 0; i < part.unit_count(); ++i) {
        auto unit = part.unit(i);
        if (!unit.nontrivial()) continue;
        const std::uint64_t size = unit.size();
        c.pairs_by_support[unit.support.size()] += size * (size - 1) / 2;
        c.units_by_size[size] += 1;
        c.nontrivial_units += 1;
        c.local_dimension += size - 1;
    }
    return c;
}

inline CollisionCensus census(const Hypergraph& h) { return census(h, build_partition(h)); }

inline nlohmann::json to_json(const CollisionCensus& c) {
    nlohmann::json X = nlohmann::json::object(), U = nlohmann::json::object();
    for (auto [r, count] : c.pairs_by_support) X[std::to_string(r)] = count;
    for (auto [size, count] : c.units_by_size) U[std::to_string(size)] = count;
    return {{"n", c.n},   {"k", c.k}, {"m", c.m}, {"I_n", c.isolated}, {"X0", c.degenerate_pairs},
            {"X", X},     {"U", U},   {"Y", c.nontrivial_units},       {"dim_loc", c.local_dimension}};
}

/// Two-column CSV (field,value); X_r and U_m appear as X_<r> and U_<m>.
inline std::string to_csv(const CollisionCensus& c) {
    std::string out = "field,value\n";
    auto row = [&](const std::string& key, std::uint64_t v) { out += key + ',' + std::to_string(v) + '\n'; };
    row("n", c.n);
    row("k", c.k);
    row("m", c.m);
    row("I_n", c.isolated);
    row("X0", c.degenerate_pairs);
    for (auto [r, count] : c.pairs_by_support) row("X" + std::to_string(r), count);
    for (auto [size, count] : c.units_by_size) row("U" + std::to_string(size), count);
    row("Y", c.nontrivial_units);
    row("dim_loc", c.local_dimension);
    return out;
}

} // namespace hyperstar

#endif // HYPERSTAR_COLLISIONS_HPP
