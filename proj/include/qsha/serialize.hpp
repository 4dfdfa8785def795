#pragma once

#include <json.hpp>

#include <string>
#include <utility>

#include <qsha/cartan.hpp>
#include <qsha/mpoly.hpp>
#include <qsha/path_algebra.hpp>
#include <qsha/rep.hpp>
#include <qsha/shuffle.hpp>
#include <qsha/suite.hpp>

namespace qsha {

using nlohmann::json;

// ---- Cartan data: {"A": [[...]], "D": [...]} -------------------------------

inline json cartan_to_json(const CartanData& data) {
    return json{{"A", data.A}, {"D", data.D}};
}

inline CartanData cartan_from_json(const json& j) {
    try {
        CartanData data;
        data.A = j.at("A").get<std::vector<std::vector<int>>>();
        data.D = j.at("D").get<std::vector<int>>();
        return data;
    } catch (const json::exception& e) {
        throw StructuralError(std::string("bad Cartan JSON: ") + e.what());
    }
}

// ---- Quiver: {"vertices", "arrows", "symmetrizer", "vertex_weights"} -------

inline json quiver_to_json(const QuiverWithSymmetrizer& q,
                           const std::vector<int>* vertex_weights = nullptr) {
    json arrows = json::array();
    for (const Arrow& a : q.arrows()) arrows.push_back({{"from", a.from}, {"to", a.to}});
    json sym = json::object();
    for (const auto& [key, l] : q.symmetrizer_map())
        sym[std::to_string(key.first) + "," + std::to_string(key.second)] = l;
    json j{{"vertices", q.vertex_count()}, {"arrows", std::move(arrows)},
           {"symmetrizer", std::move(sym)}};
    if (vertex_weights) j["vertex_weights"] = *vertex_weights;
    return j;
}

/// Returns the quiver and, when present, its vertex weights.
inline std::pair<QuiverWithSymmetrizer, std::optional<std::vector<int>>>
quiver_from_json(const json& j) {
    try {
        const int vertices = j.at("vertices").get<int>();
        std::vector<Arrow> arrows;
        for (const json& a : j.at("arrows"))
            arrows.push_back({a.at("from").get<int>(), a.at("to").get<int>()});
        std::map<std::pair<int, int>, int> sym;
        for (const auto& [key, value] : j.at("symmetrizer").items()) {
            const auto comma = key.find(',');
            if (comma == std::string::npos)
                throw StructuralError("symmetrizer key is not \"i,j\": " + key);
            sym[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] =
                value.get<int>();
        }
        std::optional<std::vector<int>> weights;
        if (j.contains("vertex_weights")) weights = j.at("vertex_weights").get<std::vector<int>>();
        return {QuiverWithSymmetrizer(vertices, std::move(arrows), std::move(sym)),
                std::move(weights)};
    } catch (const json::exception& e) {
        throw StructuralError(std::string("bad quiver JSON: ") + e.what());
    }
}

// ---- NCPoly: [{"coeff": "p/q", "path": ["h:0", ...]}] ----------------------

inline json ncpoly_to_json(const NCPoly& w) {
    json terms = json::array();
    for (const auto& [p, c] : w.terms()) {
        json ids = json::array();
        for (const Generator& g : p.generators()) ids.push_back(to_string(g));
        json term{{"coeff", to_string(c)}, {"path", std::move(ids)}};
        if (p.generators().empty()) term["at"] = p.source();
        terms.push_back(std::move(term));
    }
    return terms;
}

inline NCPoly ncpoly_from_json(const json& j, const ExtendedQuiver& eq) {
    try {
        NCPoly w;
        for (const json& term : j) {
            const Rational c = parse_rational(term.at("coeff").get<std::string>());
            std::vector<Generator> gens;
            for (const json& id : term.at("path")) gens.push_back(parse_generator(id.get<std::string>()));
            if (gens.empty())
                w.add_term(c, Path(term.at("at").get<int>()));
            else
                w.add_term(c, Path(eq, std::move(gens)));
        }
        return w;
    } catch (const json::exception& e) {
        throw StructuralError(std::string("bad NCPoly JSON: ") + e.what());
    }
}

// ---- Polynomials: [{"c": "p/q", "m": {"l:0:1": 2, "hbar": 1}}] -------------

inline json mpoly_to_json(const MPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json mono = json::object();
        for (const auto& [v, e] : m) mono[to_string(v)] = e;
        terms.push_back(json{{"c", to_string(c)}, {"m", std::move(mono)}});
    }
    return terms;
}

inline MPoly mpoly_from_json(const json& j) {
    try {
        MPoly p;
        for (const json& term : j) {
            Monomial m;
            for (const auto& [key, e] : term.at("m").items())
                m.emplace_back(parse_variable(key), e.get<int>());
            std::sort(m.begin(), m.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            p.add_term(parse_rational(term.at("c").get<std::string>()), m);
        }
        return p;
    } catch (const json::exception& e) {
        throw StructuralError(std::string("bad polynomial JSON: ") + e.what());
    }
}

// ---- Shuffle elements ------------------------------------------------------

inline std::string to_string(KernelMode mode) {
    return mode == KernelMode::GenericT ? "generic-t" : "twisted-hbar";
}

inline KernelMode kernel_mode_from_string(const std::string& s) {
    if (s == "generic-t") return KernelMode::GenericT;
    if (s == "twisted-hbar") return KernelMode::TwistedHbar;
    throw StructuralError("unknown mode: " + s);
}

inline json shuffle_element_to_json(const ShuffleElement& e, KernelMode mode) {
    return json{{"grade", e.grade}, {"poly", mpoly_to_json(e.value)}, {"mode", to_string(mode)}};
}

inline std::pair<ShuffleElement, KernelMode> shuffle_element_from_json(const json& j) {
    try {
        ShuffleElement e;
        e.grade = j.at("grade").get<DimensionVector>();
        e.value = mpoly_from_json(j.at("poly"));
        return {std::move(e), kernel_mode_from_string(j.at("mode").get<std::string>())};
    } catch (const json::exception& e) {
        throw StructuralError(std::string("bad shuffle element JSON: ") + e.what());
    }
}

// ---- Representations: {"dim": [...], "matrices": {"h:0": [["p/q",...]]}} ---

inline json matrix_to_json(const QMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline QMatrix matrix_from_json(const json& j, int rows, int cols) {
    QMatrix m(rows, cols);
    if (static_cast<int>(j.size()) != rows) throw StructuralError("matrix JSON has wrong row count");
    for (int r = 0; r < rows; ++r) {
        const json& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<int>(row.size()) != cols)
            throw StructuralError("matrix JSON has wrong column count");
        for (int c = 0; c < cols; ++c)
            m(r, c) = parse_rational(row.at(static_cast<std::size_t>(c)).get<std::string>());
    }
    return m;
}

inline json rep_to_json(const QuiverRep& rep) {
    json mats = json::object();
    for (const auto& [g, m] : rep.matrices) mats[to_string(g)] = matrix_to_json(m);
    return json{{"dim", rep.dim}, {"matrices", std::move(mats)}};
}

/// Missing generators default to zero matrices.
inline QuiverRep rep_from_json(const json& j, const ExtendedQuiver& eq) {
    try {
        QuiverRep rep;
        rep.dim = j.at("dim").get<DimensionVector>();
        if (static_cast<int>(rep.dim.size()) != eq.vertex_count())
            throw StructuralError("rep dimension vector does not match the quiver");
        const json& mats = j.at("matrices");
        for (const Generator& g : eq.generators()) {
            const QMatrix shape = expected_shape(eq, rep.dim, g);
            const std::string key = to_string(g);
            rep.matrices[g] = mats.contains(key)
                                  ? matrix_from_json(mats.at(key), shape.rows(), shape.cols())
                                  : shape;
        }
        return rep;
    } catch (const json::exception& e) {
        throw StructuralError(std::string("bad representation JSON: ") + e.what());
    }
}

// ---- Verification reports --------------------------------------------------

inline json pair_report_to_json(const PairReport& p, bool timings) {
    json j{{"pair", {p.k, p.l}}};
    if (p.y1) {
        if (p.y1->ok())
            j["Y1"] = "ok";
        else
            j["Y1"] = json{{"residual", p.y1->relation_ok ? "closed-form mismatch" : p.y1->residual}};
    }
    if (p.y1_modes)
        j["Y1_modes"] = json{{"R", p.y1_modes->R},
                             {"ok", p.y1_modes->ok},
                             {"detail", p.y1_modes->describe()}};
    if (p.serre) {
        if (p.serre->ok)
            j["serre"] = "ok";
        else
            j["serre"] = json{{"residual", to_string(p.serre->residual)}};
    }
    if (p.closed_forms) j["closed_forms"] = json{{"ok", p.closed_forms->ok()},
                                                 {"detail", p.closed_forms->describe()}};
    if (timings) j["timing_ms"] = p.timing_ms;
    return j;
}

inline json suite_report_to_json(const SuiteReport& report, bool timings) {
    json pairs = json::array();
    for (const PairReport& p : report.pairs) pairs.push_back(pair_report_to_json(p, timings));
    return json{{"all_ok", report.all_ok()},
                {"d_relatively_prime", report.d_relatively_prime},
                {"pairs", std::move(pairs)}};
}

} // namespace qsha
