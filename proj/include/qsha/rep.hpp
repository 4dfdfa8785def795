#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include <qsha/matrix.hpp>
#include <qsha/path_algebra.hpp>
#include <qsha/quiver.hpp>
#include <qsha/random.hpp>

namespace qsha {

/// A representation of the extended quiver: one rational matrix per
/// generator, of shape v^{inc(a)} x v^{out(a)}.
struct QuiverRep {
    DimensionVector dim;
    std::map<Generator, QMatrix> matrices;
};

inline QMatrix expected_shape(const ExtendedQuiver& eq, const DimensionVector& dim,
                              const Generator& g) {
    return QMatrix(dim.at(static_cast<std::size_t>(eq.target(g))),
                   dim.at(static_cast<std::size_t>(eq.source(g))));
}

/// Checks that every generator of the extended quiver has a matrix of the
/// correct shape.
inline void validate_rep(const ExtendedQuiver& eq, const QuiverRep& rep) {
    if (static_cast<int>(rep.dim.size()) != eq.vertex_count())
        throw StructuralError("dimension vector length mismatch");
    for (const Generator& g : eq.generators()) {
        const auto it = rep.matrices.find(g);
        if (it == rep.matrices.end())
            throw StructuralError("representation is missing the matrix for " + to_string(g));
        const int wanted_rows = rep.dim[static_cast<std::size_t>(eq.target(g))];
        const int wanted_cols = rep.dim[static_cast<std::size_t>(eq.source(g))];
        if (it->second.rows() != wanted_rows || it->second.cols() != wanted_cols)
            throw StructuralError("matrix for " + to_string(g) + " has the wrong shape");
    }
}

/// Evaluates a path on a representation: generators act right to left, so
/// the matrix is the left-to-right product over the stored sequence. The
/// empty path evaluates to the identity of its vertex.
inline QMatrix path_matrix(const QuiverRep& rep, const Path& p) {
    if (p.generators().empty())
        return QMatrix::identity(rep.dim.at(static_cast<std::size_t>(p.source())));
    std::optional<QMatrix> acc;
    for (const Generator& g : p.generators()) {
        const auto it = rep.matrices.find(g);
        if (it == rep.matrices.end())
            throw StructuralError("representation is missing the matrix for " + to_string(g));
        acc = acc ? (*acc) * it->second : it->second;
    }
    return *acc;
}

/// tr W at the representation: sum of c_u tr(product along u) over terms.
inline Rational trace_potential(const QuiverRep& rep, const NCPoly& w) {
    Rational t(0);
    for (const auto& [p, c] : w.terms()) {
        if (!p.is_cycle()) throw DomainError("trace of a non-cycle term");
        t += c * path_matrix(rep, p).trace();
    }
    return t;
}

/// Evaluates the cyclic derivative of w by a at the representation; shape
/// v^{out(a)} x v^{inc(a)}.
inline QMatrix evaluate_derivative(const ExtendedQuiver& eq, const QuiverRep& rep, const NCPoly& w,
                                   const Generator& a) {
    const NCPoly deriv = cyclic_derivative(eq, w, a);
    QMatrix m(rep.dim.at(static_cast<std::size_t>(eq.source(a))),
              rep.dim.at(static_cast<std::size_t>(eq.target(a))));
    for (const auto& [p, c] : deriv.terms()) m = m + c * path_matrix(rep, p);
    return m;
}

/// Membership in the critical locus: every cyclic derivative vanishes.
inline bool is_critical(const ExtendedQuiver& eq, const QuiverRep& rep, const NCPoly& w) {
    for (const Generator& g : eq.generators())
        if (!evaluate_derivative(eq, rep, w, g).is_zero()) return false;
    return true;
}

/// The trace form of the Euler identity for a degree-1 cut:
///   tr W(x) = sum over a in the cut of tr( dW/da(x) * x_a ),
/// checked exactly. Precondition: check_cut(w, cut).
inline bool check_euler_trace_identity(const ExtendedQuiver& eq, const QuiverRep& rep,
                                       const NCPoly& w, const std::set<Generator>& cut) {
    if (!check_cut(w, cut))
        throw DomainError("the generator subset is not a cut for this potential");
    Rational rhs(0);
    for (const Generator& a : cut) {
        const auto it = rep.matrices.find(a);
        if (it == rep.matrices.end())
            throw StructuralError("representation is missing the matrix for " + to_string(a));
        rhs += (evaluate_derivative(eq, rep, w, a) * it->second).trace();
    }
    return trace_potential(rep, w) == rhs;
}

struct JacobianReductionResult {
    bool in_J = false;                      // all dW/dh vanish on the cut-free rep
    bool ok = false;                        // the reduction property verified
    std::map<Generator, QMatrix> witness;   // for a non-member: cut matrices with tr W != 0
};

/// Checks the dimensional-reduction property on a representation of the quiver
/// with the cut H removed (matrices for h* and B only; any h-matrices in the
/// input are ignored). For a member of J, tr W vanishes for `trials` random
/// cut coordinates. For a non-member, a witness cut coordinate with
/// tr W != 0 is constructed through the trace pairing: l_h = (dW/dh(x))^T.
inline JacobianReductionResult check_jacobian_reduction(const ExtendedQuiver& eq, const QuiverRep& rep_without_cut,
                                    int trials, std::uint64_t seed) {
    const NCPoly w = build_potential(eq);
    QuiverRep rep = rep_without_cut;
    // dW/dh only involves h* and B, so evaluating it with zeroed cut
    // coordinates is exact
    for (int k = 0; k < eq.arrow_count(); ++k)
        rep.matrices[arrow_gen(k)] = expected_shape(eq, rep.dim, arrow_gen(k));

    std::map<Generator, QMatrix> derivatives;
    bool in_J = true;
    for (int k = 0; k < eq.arrow_count(); ++k) {
        QMatrix d = evaluate_derivative(eq, rep, w, arrow_gen(k));
        if (!d.is_zero()) in_J = false;
        derivatives.emplace(arrow_gen(k), std::move(d));
    }

    JacobianReductionResult result;
    result.in_J = in_J;
    if (in_J) {
        Sampler sampler(seed);
        result.ok = true;
        for (int t = 0; t < trials; ++t) {
            QuiverRep probe = rep;
            for (int k = 0; k < eq.arrow_count(); ++k) {
                const QMatrix shape = expected_shape(eq, rep.dim, arrow_gen(k));
                probe.matrices[arrow_gen(k)] = sampler.matrix(shape.rows(), shape.cols());
            }
            if (trace_potential(probe, w) != 0) {
                result.ok = false;
                break;
            }
        }
    } else {
        QuiverRep probe = rep;
        for (int k = 0; k < eq.arrow_count(); ++k) {
            QMatrix l = derivatives.at(arrow_gen(k)).transpose();
            result.witness.emplace(arrow_gen(k), l);
            probe.matrices[arrow_gen(k)] = std::move(l);
        }
        // tr W(x + l) = sum_h tr(dW/dh(x) l_h) = sum of squared entries > 0
        result.ok = trace_potential(probe, w) != 0;
    }
    return result;
}

/// Seeded random representation; used by property checks.
inline QuiverRep random_rep(const ExtendedQuiver& eq, const DimensionVector& dim,
                            Sampler& sampler) {
    QuiverRep rep;
    rep.dim = dim;
    for (const Generator& g : eq.generators()) {
        const QMatrix shape = expected_shape(eq, dim, g);
        rep.matrices.emplace(g, sampler.matrix(shape.rows(), shape.cols()));
    }
    return rep;
}

} // namespace qsha
