#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <qsha/error.hpp>
#include <qsha/rational.hpp>

namespace qsha {

/// Dimension vector: one nonnegative integer per vertex.
using DimensionVector = std::vector<int>;

inline DimensionVector zero_vector(int n) { return DimensionVector(static_cast<std::size_t>(n), 0); }

inline DimensionVector unit_vector(int n, int k) {
    DimensionVector v = zero_vector(n);
    v.at(static_cast<std::size_t>(k)) = 1;
    return v;
}

inline DimensionVector operator+(const DimensionVector& a, const DimensionVector& b) {
    if (a.size() != b.size()) throw StructuralError("dimension vectors of different length");
    DimensionVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

inline DimensionVector scale(const DimensionVector& a, int s) {
    DimensionVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

inline int total_dimension(const DimensionVector& v) {
    return std::accumulate(v.begin(), v.end(), 0);
}

inline bool is_zero(const DimensionVector& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

/// Generators of the extended quiver: an arrow h of the base quiver, its
/// reversal h*, or the loop B_i at a vertex.
enum class GenKind { Arrow, Reversed, Loop };

struct Generator {
    GenKind kind;
    int index; // arrow id for Arrow/Reversed, vertex for Loop

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator arrow_gen(int k) { return {GenKind::Arrow, k}; }
inline Generator reversed_gen(int k) { return {GenKind::Reversed, k}; }
inline Generator loop_gen(int i) { return {GenKind::Loop, i}; }

inline std::string to_string(const Generator& g) {
    switch (g.kind) {
    case GenKind::Arrow: return "h:" + std::to_string(g.index);
    case GenKind::Reversed: return "hs:" + std::to_string(g.index);
    case GenKind::Loop: return "B:" + std::to_string(g.index);
    }
    throw InternalError("bad generator kind");
}

inline Generator parse_generator(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw StructuralError("bad generator id: " + s);
    const std::string head = s.substr(0, colon);
    int idx = 0;
    try {
        idx = std::stoi(s.substr(colon + 1));
    } catch (const std::exception&) {
        throw StructuralError("bad generator id: " + s);
    }
    if (head == "h") return arrow_gen(idx);
    if (head == "hs") return reversed_gen(idx);
    if (head == "B") return loop_gen(idx);
    throw StructuralError("bad generator id: " + s);
}

/// Directed arrow; `from` is the outgoing vertex out(h) and `to` the
/// incoming vertex inc(h).
struct Arrow {
    int from = 0;
    int to = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A quiver together with a symmetrizer: positive integers l_ij attached to
/// every ordered adjacent pair of vertices. Arrow ids are the storage order
/// and fix the numbering h_1,...,h_n used by weight functions.
class QuiverWithSymmetrizer {
public:
    QuiverWithSymmetrizer(int vertices, std::vector<Arrow> arrows,
                          std::map<std::pair<int, int>, int> symmetrizer)
        : vertices_(vertices), arrows_(std::move(arrows)), symmetrizer_(std::move(symmetrizer)) {
        if (vertices_ < 0) throw StructuralError("negative vertex count");
        for (const Arrow& a : arrows_) {
            if (a.from < 0 || a.from >= vertices_ || a.to < 0 || a.to >= vertices_)
                throw StructuralError("arrow endpoint out of range");
            if (a.from == a.to)
                throw StructuralError("self-loops in the base quiver are not supported");
        }
        for (const auto& [key, l] : symmetrizer_) {
            if (l <= 0) throw StructuralError("symmetrizer entries must be positive");
            if (!symmetrizer_.count({key.second, key.first}))
                throw StructuralError("symmetrizer must be defined for both orders of a pair");
        }
        for (const Arrow& a : arrows_) {
            if (!symmetrizer_.count({a.from, a.to}) || !symmetrizer_.count({a.to, a.from}))
                throw StructuralError("missing symmetrizer entry for an adjacent pair");
        }
    }

    int vertex_count() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }

    bool adjacent(int i, int j) const { return symmetrizer_.count({i, j}) != 0; }

    /// l_ij; defined exactly for adjacent ordered pairs.
    int symmetrizer(int i, int j) const {
        const auto it = symmetrizer_.find({i, j});
        if (it == symmetrizer_.end())
            throw StructuralError("symmetrizer l_{" + std::to_string(i) + "," + std::to_string(j) +
                                  "} is not defined");
        return it->second;
    }

    const std::map<std::pair<int, int>, int>& symmetrizer_map() const { return symmetrizer_; }

    /// Arrow ids between the unordered pair {i,j}, in storage order.
    std::vector<int> arrows_between(int i, int j) const {
        std::vector<int> ids;
        for (int k = 0; k < arrow_count(); ++k) {
            const Arrow& a = arrows_[static_cast<std::size_t>(k)];
            if ((a.from == i && a.to == j) || (a.from == j && a.to == i)) ids.push_back(k);
        }
        return ids;
    }

    /// Deterministic topological-sort test (Kahn's algorithm).
    bool has_oriented_cycle() const {
        std::vector<int> indeg(static_cast<std::size_t>(vertices_), 0);
        for (const Arrow& a : arrows_) ++indeg[static_cast<std::size_t>(a.to)];
        std::vector<int> queue;
        for (int i = 0; i < vertices_; ++i)
            if (indeg[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
        int seen = 0;
        while (!queue.empty()) {
            const int i = queue.back();
            queue.pop_back();
            ++seen;
            for (const Arrow& a : arrows_)
                if (a.from == i && --indeg[static_cast<std::size_t>(a.to)] == 0)
                    queue.push_back(a.to);
        }
        return seen != vertices_;
    }

    friend bool operator==(const QuiverWithSymmetrizer&, const QuiverWithSymmetrizer&) = default;

private:
    int vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::pair<int, int>, int> symmetrizer_;
};

/// The extended quiver: the base quiver plus a reversed arrow h* for each h
/// and one loop B_i per vertex.
class ExtendedQuiver {
public:
    explicit ExtendedQuiver(QuiverWithSymmetrizer base) : base_(std::move(base)) {}

    const QuiverWithSymmetrizer& base() const { return base_; }
    int vertex_count() const { return base_.vertex_count(); }
    int arrow_count() const { return base_.arrow_count(); }

    /// All generators: h_0..h_{m-1}, then hs_0..hs_{m-1}, then B_0..B_{n-1}.
    std::vector<Generator> generators() const {
        std::vector<Generator> gens;
        gens.reserve(static_cast<std::size_t>(2 * arrow_count() + vertex_count()));
        for (int k = 0; k < arrow_count(); ++k) gens.push_back(arrow_gen(k));
        for (int k = 0; k < arrow_count(); ++k) gens.push_back(reversed_gen(k));
        for (int i = 0; i < vertex_count(); ++i) gens.push_back(loop_gen(i));
        return gens;
    }

    /// out(a): the vertex the generator leaves.
    int source(const Generator& g) const {
        check_range(g);
        switch (g.kind) {
        case GenKind::Arrow: return base_.arrows()[static_cast<std::size_t>(g.index)].from;
        case GenKind::Reversed: return base_.arrows()[static_cast<std::size_t>(g.index)].to;
        case GenKind::Loop: return g.index;
        }
        throw InternalError("bad generator kind");
    }

    /// inc(a): the vertex the generator enters.
    int target(const Generator& g) const {
        check_range(g);
        switch (g.kind) {
        case GenKind::Arrow: return base_.arrows()[static_cast<std::size_t>(g.index)].to;
        case GenKind::Reversed: return base_.arrows()[static_cast<std::size_t>(g.index)].from;
        case GenKind::Loop: return g.index;
        }
        throw InternalError("bad generator kind");
    }

    friend bool operator==(const ExtendedQuiver&, const ExtendedQuiver&) = default;

private:
    void check_range(const Generator& g) const {
        const int limit = (g.kind == GenKind::Loop) ? vertex_count() : arrow_count();
        if (g.index < 0 || g.index >= limit)
            throw StructuralError("generator " + to_string(g) + " out of range");
    }

    QuiverWithSymmetrizer base_;
};

inline ExtendedQuiver extend_quiver(QuiverWithSymmetrizer q) { return ExtendedQuiver(std::move(q)); }

/// Weight function m on vertices, arrows, and reversed arrows.
struct WeightFunction {
    std::vector<int> vertex;   // m_i
    std::vector<int> arrow;    // m_h, indexed by arrow id
    std::vector<int> reversed; // m_{h*}, indexed by arrow id

    friend bool operator==(const WeightFunction&, const WeightFunction&) = default;
};

/// Checks m_i l_ij = m_j l_ji on every adjacent pair.
inline bool vertex_weights_compatible(const QuiverWithSymmetrizer& q,
                                      const std::vector<int>& m_vertex) {
    if (static_cast<int>(m_vertex.size()) != q.vertex_count()) return false;
    for (const auto& [key, lij] : q.symmetrizer_map()) {
        const auto [i, j] = key;
        const int lji = q.symmetrizer(j, i);
        if (static_cast<long long>(m_vertex[static_cast<std::size_t>(i)]) * lij !=
            static_cast<long long>(m_vertex[static_cast<std::size_t>(j)]) * lji)
            return false;
    }
    return true;
}

/// Assigns arrow weights per adjacent pair: with d = m_i l_ij and n arrows
/// h_1,...,h_n between the pair (in id order), m_{h_p} = (n+2-2p)d and
/// m_{h_p*} = (-n+2p)d. Requires an acyclic base quiver.
inline WeightFunction default_weights(const QuiverWithSymmetrizer& q,
                                      const std::vector<int>& m_vertex) {
    if (static_cast<int>(m_vertex.size()) != q.vertex_count())
        throw StructuralError("vertex weight vector has wrong length");
    if (q.has_oriented_cycle())
        throw UnsupportedInputError("default weights require a quiver without oriented cycles");
    if (!vertex_weights_compatible(q, m_vertex))
        throw WeightError("vertex weights violate m_i l_ij = m_j l_ji");

    WeightFunction w;
    w.vertex = m_vertex;
    w.arrow.assign(static_cast<std::size_t>(q.arrow_count()), 0);
    w.reversed.assign(static_cast<std::size_t>(q.arrow_count()), 0);

    std::vector<bool> done(static_cast<std::size_t>(q.arrow_count()), false);
    for (int k = 0; k < q.arrow_count(); ++k) {
        if (done[static_cast<std::size_t>(k)]) continue;
        const Arrow& a = q.arrows()[static_cast<std::size_t>(k)];
        const std::vector<int> ids = q.arrows_between(a.from, a.to);
        const int n = static_cast<int>(ids.size());
        // acyclicity forces a common orientation, so m_i l_ij is the same d
        // whichever endpoint plays the role of i
        const int d = m_vertex[static_cast<std::size_t>(a.from)] * q.symmetrizer(a.from, a.to);
        for (int p = 1; p <= n; ++p) {
            const int id = ids[static_cast<std::size_t>(p - 1)];
            w.arrow[static_cast<std::size_t>(id)] = (n + 2 - 2 * p) * d;
            w.reversed[static_cast<std::size_t>(id)] = (-n + 2 * p) * d;
            done[static_cast<std::size_t>(id)] = true;
        }
    }
    return w;
}

/// True iff for every arrow h both specialization conditions hold:
/// t1 m_h + t2 m_{h*} + t3 m_{inc(h)} l_{inc(h),out(h)} = 0 and the same with
/// the roles of inc and out exchanged in the third term.
inline bool check_specialization(const QuiverWithSymmetrizer& q, const WeightFunction& w,
                                 const Rational& t1, const Rational& t2, const Rational& t3) {
    for (int k = 0; k < q.arrow_count(); ++k) {
        const Arrow& a = q.arrows()[static_cast<std::size_t>(k)];
        const int inc = a.to, out = a.from;
        const Rational base = t1 * w.arrow[static_cast<std::size_t>(k)] +
                              t2 * w.reversed[static_cast<std::size_t>(k)];
        const Rational lhs1 =
            base + t3 * w.vertex[static_cast<std::size_t>(inc)] * q.symmetrizer(inc, out);
        const Rational lhs2 =
            base + t3 * w.vertex[static_cast<std::size_t>(out)] * q.symmetrizer(out, inc);
        if (lhs1 != 0 || lhs2 != 0) return false;
    }
    return true;
}

} // namespace qsha
