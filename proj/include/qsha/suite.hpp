#pragma once

#include <chrono>
#include <future>
#include <optional>
#include <vector>

#include <qsha/yangian.hpp>

namespace qsha {

/// Which checks to run and how hard to push them.
struct SuiteOptions {
    bool y1 = true;
    bool y1_modes = true;
    bool serre = true;
    bool closed_forms = true;
    int max_degree = 3;  // R for the mode-level check
    int star_bound = 4;  // n bound for the star-power closed form
    int pq_bound = 4;    // p+q bound for the two-sided closed form
    bool corrupt_sign = false;
    int jobs = 1;
    std::optional<std::pair<int, int>> only_pair;
};

struct PairReport {
    int k = 0, l = 0;
    std::optional<Y1Result> y1;
    std::optional<ModesResult> y1_modes;
    std::optional<SerreResult> serre;
    std::optional<ClosedFormsResult> closed_forms;
    long long timing_ms = 0;

    bool ok() const {
        if (y1 && !y1->ok()) return false;
        if (y1_modes && !y1_modes->ok) return false;
        if (serre && !serre->ok) return false;
        if (closed_forms && !closed_forms->ok()) return false;
        return true;
    }
};

struct SuiteReport {
    bool d_relatively_prime = true;
    std::vector<PairReport> pairs;

    bool all_ok() const {
        for (const PairReport& p : pairs)
            if (!p.ok()) return false;
        return true;
    }
};

namespace detail {

inline PairReport run_pair(const YangianContext& ctx, int k, int l, const SuiteOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    PairReport report;
    report.k = k;
    report.l = l;
    if (opts.y1) report.y1 = verify_Y1(ctx, k, l);
    if (opts.y1_modes) report.y1_modes = verify_Y1_modes(ctx, k, l, opts.max_degree);
    if (opts.serre && k != l) report.serre = verify_serre(ctx, k, l);
    if (opts.closed_forms) {
        if (k == l)
            report.closed_forms =
                verify_closed_forms(ctx, k, std::nullopt, opts.star_bound, opts.pq_bound);
        else if (ctx.adjacent(k, l))
            report.closed_forms = verify_closed_forms(ctx, k, l, opts.star_bound, opts.pq_bound);
    }
    report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return report;
}

} // namespace detail

/// Runs every selected check for one ordered pair.
inline PairReport verify_pair(const YangianContext& ctx, int k, int l, const SuiteOptions& opts) {
    return detail::run_pair(ctx, k, l, opts);
}

/// Runs the selected verifications over every ordered pair (k,l), including
/// the diagonal (where only the quadratic relation and its modes apply).
/// Pair verifications are independent; with jobs > 1 they run concurrently
/// and the report is assembled in pair order regardless of scheduling.
inline SuiteReport run_suite(const CartanData& cartan, const SuiteOptions& opts) {
    const YangianContext ctx(cartan, opts.corrupt_sign);
    SuiteReport report;
    report.d_relatively_prime = ctx.d_relatively_prime();

    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < ctx.rank(); ++k)
        for (int l = 0; l < ctx.rank(); ++l) {
            if (opts.only_pair && *opts.only_pair != std::make_pair(k, l)) continue;
            pairs.emplace_back(k, l);
        }

    if (opts.jobs <= 1) {
        for (const auto& [k, l] : pairs) report.pairs.push_back(detail::run_pair(ctx, k, l, opts));
        return report;
    }
    std::vector<std::future<PairReport>> futures;
    futures.reserve(pairs.size());
    for (const auto& [k, l] : pairs) {
        futures.push_back(
            std::async(std::launch::async, [&ctx, k = k, l = l, &opts] {
                return detail::run_pair(ctx, k, l, opts);
            }));
        // crude throttle: wait for the batch once `jobs` futures are pending
        if (static_cast<int>(futures.size()) % opts.jobs == 0)
            for (auto& f : futures) f.wait();
    }
    for (auto& f : futures) report.pairs.push_back(f.get());
    return report;
}

} // namespace qsha
