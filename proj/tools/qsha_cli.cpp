// qsha -- exact-arithmetic toolbox for quivers with symmetrizers, their
// superpotentials, the twisted shuffle algebra, and the Yangian relations.

#include <CLI11.hpp>

#include <qsha/qsha.hpp>
#include <qsha/serialize.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

bool log_enabled() {
    const char* env = std::getenv("QSHA_LOG");
    return env != nullptr && *env != '\0';
}

void log_note(const std::string& msg) {
    if (log_enabled()) std::cerr << "[qsha] " << msg << "\n";
}

qsha::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qsha::StructuralError("cannot open " + path);
    qsha::json j;
    try {
        in >> j;
    } catch (const qsha::json::exception& e) {
        throw qsha::StructuralError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-" || path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw qsha::StructuralError("cannot write " + path);
    out << text << "\n";
}

/// Quiver JSON + vertex weights -> the shuffle kernel configuration.
qsha::KernelConfig config_from_quiver_json(const qsha::json& j, qsha::KernelMode mode,
                                           bool corrupt = false) {
    auto [quiver, weights] = qsha::quiver_from_json(j);
    if (!weights)
        throw qsha::StructuralError("quiver JSON needs \"vertex_weights\" for shuffle kernels");
    qsha::WeightFunction wf = qsha::default_weights(quiver, *weights);
    return qsha::KernelConfig(qsha::extend_quiver(quiver), std::move(wf), mode, corrupt);
}

int cmd_cartan_to_quiver(const std::string& input, const std::string& output) {
    const qsha::CartanData cartan = qsha::cartan_from_json(read_json_file(input));
    const qsha::ValidationReport report = qsha::validate_cartan(cartan);
    if (!report.ok()) {
        for (const std::string& v : report.violations) std::cerr << "invalid Cartan data: " << v << "\n";
        return kExitUsage;
    }
    const qsha::QuiverWithSymmetrizer quiver = qsha::cartan_to_quiver(cartan);
    const qsha::WeightFunction weights = qsha::default_weights(quiver, cartan.D);
    qsha::json j = qsha::quiver_to_json(quiver, &cartan.D);
    j["arrow_weights"] = weights.arrow;
    j["reversed_arrow_weights"] = weights.reversed;
    write_output(output, j.dump(2));
    return kExitOk;
}

int cmd_potential(const std::string& input, const std::string& output) {
    auto [quiver, weights] = qsha::quiver_from_json(read_json_file(input));
    const qsha::ExtendedQuiver eq = qsha::extend_quiver(quiver);
    const qsha::NCPoly w = qsha::build_potential(eq);
    qsha::json derivatives = qsha::json::object();
    for (const qsha::Generator& g : eq.generators())
        derivatives[qsha::to_string(g)] = qsha::ncpoly_to_json(qsha::cyclic_derivative(eq, w, g));
    const qsha::json j{{"potential", qsha::ncpoly_to_json(w)},
                       {"derivatives", std::move(derivatives)}};
    write_output(output, j.dump(2));
    return kExitOk;
}

int cmd_shuffle(const std::string& f1_path, const std::string& f2_path,
                const std::string& quiver_path, bool twisted_flag, const std::string& output) {
    auto [f1, mode1] = qsha::shuffle_element_from_json(read_json_file(f1_path));
    auto [f2, mode2] = qsha::shuffle_element_from_json(read_json_file(f2_path));
    if (mode1 != mode2) throw qsha::StructuralError("the two factors carry different modes");
    const qsha::KernelMode mode =
        twisted_flag ? qsha::KernelMode::TwistedHbar : mode1;
    const qsha::KernelConfig cfg = config_from_quiver_json(read_json_file(quiver_path), mode);
    for (const qsha::ShuffleElement* e : {&f1, &f2}) {
        if (static_cast<int>(e->grade.size()) != cfg.quiver.vertex_count())
            throw qsha::StructuralError("grade length does not match the quiver");
        qsha::require_variables_within(e->value, e->grade);
    }
    const qsha::ShuffleElement product = qsha::shuffle_mul(f1, f2, cfg);
    write_output(output, qsha::shuffle_element_to_json(product, mode).dump(2));
    return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& suite, int max_degree,
               const std::string& pairs, int jobs, bool corrupt, std::size_t max_terms,
               double timeout_s, const std::string& format, bool timings,
               const std::string& output) {
    qsha::set_term_limit(max_terms);
    const qsha::CartanData cartan = qsha::cartan_from_json(read_json_file(input));
    const qsha::ValidationReport validation = qsha::validate_cartan(cartan);
    if (!validation.ok()) {
        for (const std::string& v : validation.violations)
            std::cerr << "invalid Cartan data: " << v << "\n";
        return kExitUsage;
    }

    qsha::SuiteOptions opts;
    opts.y1 = suite == "all" || suite == "y1";
    opts.y1_modes = suite == "all" || suite == "y1";
    opts.serre = suite == "all" || suite == "serre";
    opts.closed_forms = suite == "all" || suite == "closed-forms";
    opts.max_degree = max_degree;
    opts.corrupt_sign = corrupt;
    opts.jobs = jobs;
    if (pairs != "all") {
        const auto comma = pairs.find(',');
        if (comma == std::string::npos)
            throw qsha::StructuralError("--pairs expects \"all\" or \"k,l\"");
        opts.only_pair = {std::stoi(pairs.substr(0, comma)), std::stoi(pairs.substr(comma + 1))};
    }

    const qsha::YangianContext ctx(cartan, corrupt);
    if (!ctx.d_relatively_prime())
        std::cerr << "warning: the symmetrizer entries d_i are not relatively prime\n";

    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
    std::vector<std::pair<int, int>> pair_list;
    for (int k = 0; k < ctx.rank(); ++k)
        for (int l = 0; l < ctx.rank(); ++l)
            if (!opts.only_pair || *opts.only_pair == std::make_pair(k, l))
                pair_list.emplace_back(k, l);

    qsha::SuiteReport report;
    report.d_relatively_prime = ctx.d_relatively_prime();
    const std::size_t batch = static_cast<std::size_t>(std::max(jobs, 1));
    for (std::size_t i = 0; i < pair_list.size(); i += batch) {
        if (timeout_s > 0 && std::chrono::steady_clock::now() > deadline) {
            std::cerr << "timeout after " << timeout_s << " s\n";
            return kExitUsage;
        }
        const std::size_t end = std::min(i + batch, pair_list.size());
        std::vector<std::future<qsha::PairReport>> futures;
        for (std::size_t j = i; j < end; ++j) {
            const auto [k, l] = pair_list[j];
            log_note("verifying pair (" + std::to_string(k) + "," + std::to_string(l) + ")");
            futures.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                         [&ctx, k = k, l = l, &opts] {
                                             return qsha::verify_pair(ctx, k, l, opts);
                                         }));
        }
        for (auto& f : futures) report.pairs.push_back(f.get());
    }

    const qsha::json j = qsha::suite_report_to_json(report, timings);
    if (format == "json") {
        write_output(output, j.dump(2));
    } else {
        std::ostringstream text;
        text << "cartan rank " << ctx.rank() << ", d relatively prime: "
             << (report.d_relatively_prime ? "yes" : "no") << "\n";
        for (const qsha::PairReport& p : report.pairs) {
            text << "pair (" << p.k << "," << p.l << "):";
            if (p.y1) text << " Y1=" << (p.y1->ok() ? "ok" : "FAIL");
            if (p.y1_modes) text << " Y1_modes=" << (p.y1_modes->ok ? "ok" : "FAIL");
            if (p.serre) text << " serre=" << (p.serre->ok ? "ok" : "FAIL");
            if (p.closed_forms) text << " closed_forms=" << (p.closed_forms->ok() ? "ok" : "FAIL");
            if (timings) text << " (" << p.timing_ms << " ms)";
            text << "\n";
        }
        text << (report.all_ok() ? "all checks passed" : "counterexample found");
        write_output(output, text.str());
    }
    return report.all_ok() ? kExitOk : kExitCounterexample;
}

int cmd_rep_check(const std::string& quiver_path, const std::string& rep_path, int trials,
                  std::uint64_t seed, const std::string& output) {
    auto [quiver, weights] = qsha::quiver_from_json(read_json_file(quiver_path));
    const qsha::ExtendedQuiver eq = qsha::extend_quiver(quiver);
    const qsha::QuiverRep rep = qsha::rep_from_json(read_json_file(rep_path), eq);
    qsha::validate_rep(eq, rep);
    const qsha::NCPoly w = qsha::build_potential(eq);

    std::set<qsha::Generator> cut;
    for (int k = 0; k < eq.arrow_count(); ++k) cut.insert(qsha::arrow_gen(k));

    const qsha::JacobianReductionResult zj = qsha::check_jacobian_reduction(eq, rep, trials, seed);
    qsha::json j{{"trW", qsha::to_string(qsha::trace_potential(rep, w))},
                 {"critical", qsha::is_critical(eq, rep, w)},
                 {"euler", qsha::check_euler_trace_identity(eq, rep, w, cut)},
                 {"in_J", zj.in_J},
                 {"jacobian_reduction", zj.ok}};
    if (!zj.in_J) {
        qsha::json witness = qsha::json::object();
        for (const auto& [g, m] : zj.witness) witness[qsha::to_string(g)] = qsha::matrix_to_json(m);
        j["witness"] = std::move(witness);
    }
    write_output(output, j.dump(2));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for quivers with symmetrizers, shuffle "
                 "algebras, and Yangian relations"};
    app.require_subcommand(1);

    std::string input, output = "-";
    std::string f1_path, f2_path, quiver_path, rep_path;
    std::string suite = "all", pairs = "all", format = "json";
    int max_degree = 3, jobs = 1, trials = 20;
    std::uint64_t seed = 1;
    bool twisted = false, corrupt = false, timings = false;
    std::size_t max_terms = 1'000'000;
    double timeout_s = 0;

    CLI::App* c2q = app.add_subcommand("cartan-to-quiver",
                                       "construct the quiver with symmetrizer and default weights");
    c2q->add_option("input", input, "Cartan data JSON")->required();
    c2q->add_option("--output", output, "output path, - for stdout");

    CLI::App* pot = app.add_subcommand("potential",
                                       "emit the potential and all cyclic derivatives");
    pot->add_option("input", input, "quiver JSON")->required();
    pot->add_option("--output", output, "output path, - for stdout");

    CLI::App* shf = app.add_subcommand("shuffle", "multiply two shuffle elements");
    shf->add_option("f1", f1_path, "first factor JSON")->required();
    shf->add_option("f2", f2_path, "second factor JSON")->required();
    shf->add_option("--quiver", quiver_path, "quiver JSON with vertex_weights")->required();
    shf->add_flag("--twisted", twisted, "force the sign-twisted product");
    shf->add_option("--output", output, "output path, - for stdout");

    CLI::App* ver = app.add_subcommand("verify", "verify the Yangian relations");
    ver->add_option("input", input, "Cartan data JSON")->required();
    ver->add_option("--suite", suite, "y1 | serre | closed-forms | all")
        ->check(CLI::IsMember({"y1", "serre", "closed-forms", "all"}));
    ver->add_option("--max-degree", max_degree, "mode-level degree bound R");
    ver->add_option("--pairs", pairs, "all or k,l");
    ver->add_option("--jobs", jobs, "concurrent pair verifications");
    ver->add_option("--max-terms", max_terms, "polynomial term budget");
    ver->add_option("--timeout-s", timeout_s, "abort after this many seconds");
    ver->add_option("--format", format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));
    ver->add_flag("--timings", timings, "include per-pair timings in the report");
    ver->add_flag("--corrupt-sign", corrupt)->group(""); // hidden negative-control hook
    ver->add_option("--output", output, "output path, - for stdout");

    CLI::App* rpc = app.add_subcommand("rep-check",
                                       "evaluate a representation against the potential");
    rpc->add_option("--quiver", quiver_path, "quiver JSON")->required();
    rpc->add_option("--rep", rep_path, "representation JSON")->required();
    rpc->add_option("--trials", trials, "random cut samples for the J check");
    rpc->add_option("--seed", seed, "sampler seed");
    rpc->add_option("--output", output, "output path, - for stdout");

    try {
        app.parse(argc, argv);
        if (c2q->parsed()) return cmd_cartan_to_quiver(input, output);
        if (pot->parsed()) return cmd_potential(input, output);
        if (shf->parsed()) return cmd_shuffle(f1_path, f2_path, quiver_path, twisted, output);
        if (ver->parsed())
            return cmd_verify(input, suite, max_degree, pairs, jobs, corrupt, max_terms, timeout_s,
                              format, timings, output);
        if (rpc->parsed()) return cmd_rep_check(quiver_path, rep_path, trials, seed, output);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const qsha::InternalError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitCounterexample;
    } catch (const qsha::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
