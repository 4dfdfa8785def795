#pragma once

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include <qsha/quiver.hpp>

namespace qsha {

/// A symmetrizable generalized Cartan matrix A with symmetrizer diagonal D.
struct CartanData {
    std::vector<std::vector<int>> A;
    std::vector<int> D;

    int rank() const { return static_cast<int>(A.size()); }
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Reports every violated Cartan invariant; empty report iff (A, D) is a
/// valid Cartan matrix with symmetrizer. Throws on structurally broken input
/// (non-square matrix, D of the wrong length).
inline ValidationReport validate_cartan(const CartanData& data) {
    const int n = data.rank();
    for (const auto& row : data.A)
        if (static_cast<int>(row.size()) != n) throw StructuralError("Cartan matrix is not square");
    if (static_cast<int>(data.D.size()) != n)
        throw StructuralError("symmetrizer diagonal has wrong length");

    ValidationReport report;
    auto complain = [&report](std::string msg) { report.violations.push_back(std::move(msg)); };

    for (int i = 0; i < n; ++i) {
        if (data.A[i][i] != 2) complain("a_" + std::to_string(i) + std::to_string(i) + " != 2");
        if (data.D[i] <= 0) complain("d_" + std::to_string(i) + " is not positive");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (data.A[i][j] > 0)
                complain("a_" + std::to_string(i) + std::to_string(j) + " > 0 off the diagonal");
            if ((data.A[i][j] != 0) != (data.A[j][i] != 0))
                complain("a_" + std::to_string(i) + std::to_string(j) +
                         " and its transpose are not both zero or both nonzero");
            if (static_cast<long long>(data.D[i]) * data.A[i][j] !=
                static_cast<long long>(data.D[j]) * data.A[j][i])
                complain("d_" + std::to_string(i) + " a_" + std::to_string(i) + std::to_string(j) +
                         " != d_" + std::to_string(j) + " a_" + std::to_string(j) +
                         std::to_string(i));
        }
    }
    return report;
}

/// The quiver with symmetrizer of a Cartan matrix: for each i < j with
/// a_ij != 0 there are |gcd(a_ij, a_ji)| arrows i -> j, and the symmetrizer
/// is l_ij = |a_ij / gcd(a_ij, a_ji)|.
inline QuiverWithSymmetrizer cartan_to_quiver(const CartanData& data) {
    const ValidationReport report = validate_cartan(data);
    if (!report.ok()) throw StructuralError("invalid Cartan data: " + report.violations.front());

    const int n = data.rank();
    std::vector<Arrow> arrows;
    std::map<std::pair<int, int>, int> symmetrizer;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (data.A[i][j] == 0) continue;
            const int g = std::gcd(data.A[i][j], data.A[j][i]);
            for (int k = 0; k < g; ++k) arrows.push_back({i, j});
            symmetrizer[{i, j}] = std::abs(data.A[i][j]) / g;
            symmetrizer[{j, i}] = std::abs(data.A[j][i]) / g;
        }
    }
    return QuiverWithSymmetrizer(n, std::move(arrows), std::move(symmetrizer));
}

} // namespace qsha
