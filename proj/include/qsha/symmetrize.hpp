#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include <qsha/mpoly.hpp>
#include <qsha/quiver.hpp>
#include <qsha/ratexpr.hpp>

namespace qsha {

/// A slot relabelling per color: map[i][s] is the new slot of lambda(i, s).
/// Index 0 of each inner vector is unused (slots are 1-based).
using SlotMap = std::vector<std::vector<int>>;

inline SlotMap identity_slot_map(const DimensionVector& v) {
    SlotMap map(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        map[i].resize(static_cast<std::size_t>(v[i]) + 1);
        std::iota(map[i].begin(), map[i].end(), 0);
    }
    return map;
}

/// Permutation group order |S_v| = prod v_i!.
inline Integer symmetric_group_order(const DimensionVector& v) {
    Integer n(1);
    for (int vi : v) n *= factorial(static_cast<unsigned>(vi));
    return n;
}

/// Throws unless every lambda variable of p lies within the dimension
/// vector (color < |v|, 1 <= slot <= v[color]).
inline void require_variables_within(const MPoly& p, const DimensionVector& v) {
    for (const Variable& var : p.variables()) {
        if (!var.is_lambda()) continue;
        if (var.color() >= static_cast<int>(v.size()) ||
            var.slot() > v[static_cast<std::size_t>(var.color())])
            throw DomainError("variable " + to_string(var) + " outside the dimension vector");
    }
}

inline MPoly apply_slot_map(const MPoly& p, const SlotMap& map) {
    return p.rename([&map](const Variable& var) {
        if (!var.is_lambda()) return var;
        const auto color = static_cast<std::size_t>(var.color());
        if (color >= map.size() || var.slot() >= static_cast<int>(map[color].size()))
            throw DomainError("variable " + to_string(var) + " outside the slot map");
        return Variable::lambda(var.color(), map[color][static_cast<std::size_t>(var.slot())]);
    });
}

inline RatExpr apply_slot_map(const RatExpr& r, const SlotMap& map) {
    return RatExpr(apply_slot_map(r.num(), map), apply_slot_map(r.den(), map));
}

namespace detail {

/// Runs fn for every element of S_v, presented as a slot map.
inline void for_each_permutation(const DimensionVector& v,
                                 const std::function<void(const SlotMap&)>& fn) {
    SlotMap map = identity_slot_map(v);
    std::function<void(std::size_t)> rec = [&](std::size_t color) {
        if (color == map.size()) {
            fn(map);
            return;
        }
        std::vector<int> perm(static_cast<std::size_t>(v[color]));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            for (std::size_t s = 0; s < perm.size(); ++s) map[color][s + 1] = perm[s];
            rec(color + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(0);
}

/// Runs fn for every sigma in Sh(v1, v2) = prod_i Sh(v1^i, v2^i). Per color,
/// a (p,q)-shuffle is determined by the p positions the first block lands
/// on, in order; the second block fills the rest, in order.
inline void for_each_shuffle(const DimensionVector& v1, const DimensionVector& v2,
                             const std::function<void(const SlotMap&)>& fn) {
    if (v1.size() != v2.size()) throw StructuralError("dimension vectors of different length");
    const DimensionVector v = v1 + v2;
    SlotMap map = identity_slot_map(v);
    std::function<void(std::size_t)> rec = [&](std::size_t color) {
        if (color == map.size()) {
            fn(map);
            return;
        }
        const int p = v1[color], q = v2[color];
        std::vector<int> positions(static_cast<std::size_t>(p));
        std::iota(positions.begin(), positions.end(), 1); // lexicographically first p-subset
        const auto emit = [&] {
            std::vector<bool> taken(static_cast<std::size_t>(p + q) + 1, false);
            for (std::size_t s = 0; s < positions.size(); ++s) {
                map[color][s + 1] = positions[s];
                taken[static_cast<std::size_t>(positions[s])] = true;
            }
            int next = 1;
            for (int t = 1; t <= q; ++t) {
                while (taken[static_cast<std::size_t>(next)]) ++next;
                map[color][static_cast<std::size_t>(p + t)] = next++;
            }
            rec(color + 1);
        };
        if (p == 0) {
            emit();
        } else {
            while (true) {
                emit();
                // advance to the next p-subset of {1..p+q}
                int i = p - 1;
                while (i >= 0 && positions[static_cast<std::size_t>(i)] == q + i + 1) --i;
                if (i < 0) break;
                ++positions[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < p; ++j)
                    positions[static_cast<std::size_t>(j)] =
                        positions[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    };
    rec(0);
}

} // namespace detail

/// Full symmetrization: the sum over S_v of slot permutations of a.
inline MPoly symmetrize(const MPoly& a, const DimensionVector& v) {
    require_variables_within(a, v);
    MPoly sum;
    detail::for_each_permutation(v, [&](const SlotMap& map) { sum += apply_slot_map(a, map); });
    return sum;
}

inline RatExpr symmetrize(const RatExpr& a, const DimensionVector& v) {
    require_variables_within(a.num(), v);
    require_variables_within(a.den(), v);
    RatExpr sum;
    detail::for_each_permutation(v, [&](const SlotMap& map) { sum += apply_slot_map(a, map); });
    return sum;
}

/// Sum over (v1, v2)-shuffles of slot permutations of a.
inline MPoly shuffle_sum(const MPoly& a, const DimensionVector& v1, const DimensionVector& v2) {
    require_variables_within(a, v1 + v2);
    MPoly sum;
    detail::for_each_shuffle(v1, v2, [&](const SlotMap& map) { sum += apply_slot_map(a, map); });
    return sum;
}

inline RatExpr shuffle_sum(const RatExpr& a, const DimensionVector& v1,
                           const DimensionVector& v2) {
    require_variables_within(a.num(), v1 + v2);
    require_variables_within(a.den(), v1 + v2);
    RatExpr sum;
    detail::for_each_shuffle(v1, v2, [&](const SlotMap& map) { sum += apply_slot_map(a, map); });
    return sum;
}

/// Invariance under the adjacent-transposition generators of each S_{v^i}.
inline bool is_symmetric(const MPoly& a, const DimensionVector& v) {
    require_variables_within(a, v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (int s = 1; s < v[i]; ++s) {
            SlotMap map = identity_slot_map(v);
            std::swap(map[i][static_cast<std::size_t>(s)],
                      map[i][static_cast<std::size_t>(s) + 1]);
            if (apply_slot_map(a, map) != a) return false;
        }
    }
    return true;
}

/// The shift embedding of the second tensor factor: lambda(i, t) becomes
/// lambda(i, t + v1^i).
inline MPoly shift_slots(const MPoly& p, const DimensionVector& v1) {
    return p.rename([&v1](const Variable& var) {
        if (!var.is_lambda()) return var;
        if (var.color() >= static_cast<int>(v1.size()))
            throw DomainError("variable " + to_string(var) + " outside the quiver");
        return Variable::lambda(var.color(),
                                var.slot() + v1[static_cast<std::size_t>(var.color())]);
    });
}

inline RatExpr shift_slots(const RatExpr& r, const DimensionVector& v1) {
    return RatExpr(shift_slots(r.num(), v1), shift_slots(r.den(), v1));
}

} // namespace qsha
