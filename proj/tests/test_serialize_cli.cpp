#include <catch2/catch_amalgamated.hpp>

#include <qsha/serialize.hpp>

#include "oracles.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace qsha;

namespace {

const CartanData kB2{{{2, -1}, {-2, 2}}, {2, 1}};

struct CliRun {
    int exit_code = -1;
    std::string stdout_text;
};

std::string temp_dir() {
    static int counter = 0;
    std::string dir = "/tmp/qsha_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++);
    if (std::system(("mkdir -p " + dir).c_str()) != 0) throw std::runtime_error("mkdir failed");
    return dir;
}

std::string write_file(const std::string& dir, const std::string& name, const std::string& text) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

CliRun run_cli(const std::string& args) {
    const std::string dir = temp_dir();
    const std::string out_path = dir + "/stdout.txt";
    const std::string cmd = std::string(QSHA_CLI_PATH) + " " + args + " > " + out_path + " 2>" +
                            dir + "/stderr.txt";
    const int status = std::system(cmd.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    run.stdout_text = ss.str();
    return run;
}

std::string b2_json() { return cartan_to_json(kB2).dump(); }

} // namespace

TEST_CASE("JSON round trips") {
    SECTION("Cartan data") {
        const CartanData back = cartan_from_json(cartan_to_json(kB2));
        CHECK(back.A == kB2.A);
        CHECK(back.D == kB2.D);
    }
    SECTION("quiver with weights") {
        const QuiverWithSymmetrizer q = cartan_to_quiver(kB2);
        const json j = quiver_to_json(q, &kB2.D);
        auto [back, weights] = quiver_from_json(j);
        CHECK(back == q);
        REQUIRE(weights.has_value());
        CHECK(*weights == kB2.D);
    }
    SECTION("noncommutative polynomials") {
        const ExtendedQuiver eq = extend_quiver(cartan_to_quiver(kB2));
        const NCPoly w = build_potential(eq);
        CHECK(ncpoly_from_json(ncpoly_to_json(w), eq) == w);
        NCPoly with_idempotent = w;
        with_idempotent.add_term(Rational(1, 3), Path(1));
        CHECK(ncpoly_from_json(ncpoly_to_json(with_idempotent), eq) == with_idempotent);
    }
    SECTION("polynomials and shuffle elements") {
        Sampler s(3);
        const DimensionVector v{2, 1};
        const MPoly p = random_symmetric_poly(s, v) +
                        MPoly::variable(Variable::param(Param::t1)) *
                            MPoly::variable(Variable::param(Param::hbar));
        CHECK(mpoly_from_json(mpoly_to_json(p)) == p);
        const ShuffleElement e{v, p};
        auto [back, mode] = shuffle_element_from_json(
            shuffle_element_to_json(e, KernelMode::TwistedHbar));
        CHECK(back.grade == e.grade);
        CHECK(back.value == e.value);
        CHECK(mode == KernelMode::TwistedHbar);
    }
    SECTION("representations, with zero-fill for missing matrices") {
        const ExtendedQuiver eq = extend_quiver(cartan_to_quiver(kB2));
        Sampler s(5);
        const QuiverRep rep = random_rep(eq, {2, 1}, s);
        const QuiverRep back = rep_from_json(rep_to_json(rep), eq);
        CHECK(back.matrices == rep.matrices);

        const json partial{{"dim", {1, 1}},
                           {"matrices", {{"hs:0", {{"1"}}}, {"B:0", {{"4"}}}, {"B:1", {{"2"}}}}}};
        const QuiverRep filled = rep_from_json(partial, eq);
        CHECK(filled.matrices.at(arrow_gen(0)).is_zero());
        CHECK(filled.matrices.at(loop_gen(0))(0, 0) == Rational(4));
    }
}

TEST_CASE("rational string forms") {
    CHECK(to_string(Rational(-3, 6)) == "-1/2");
    CHECK(parse_rational("7/2") == Rational(7, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK_THROWS_AS(parse_rational("x"), StructuralError);
    CHECK_THROWS_AS(parse_rational("1/0"), StructuralError);
    CHECK(parse_generator("hs:3") == reversed_gen(3));
    CHECK_THROWS_AS(parse_generator("q:1"), StructuralError);
}

TEST_CASE("cli: cartan-to-quiver") {
    const std::string dir = temp_dir();
    SECTION("B2 emits the quiver, symmetrizer, and default weights") {
        const std::string in = write_file(dir, "b2.json", b2_json());
        const CliRun run = run_cli("cartan-to-quiver " + in);
        REQUIRE(run.exit_code == 0);
        const json j = json::parse(run.stdout_text);
        CHECK(j.at("vertices") == 2);
        CHECK(j.at("arrows").size() == 1);
        CHECK(j.at("symmetrizer").at("0,1") == 1);
        CHECK(j.at("symmetrizer").at("1,0") == 2);
        CHECK(j.at("vertex_weights") == json({2, 1}));
        CHECK(j.at("arrow_weights") == json({2}));
        CHECK(j.at("reversed_arrow_weights") == json({2}));
    }
    SECTION("A1 has no arrows") {
        const std::string in = write_file(dir, "a1.json", R"({"A": [[2]], "D": [1]})");
        const CliRun run = run_cli("cartan-to-quiver " + in);
        REQUIRE(run.exit_code == 0);
        CHECK(json::parse(run.stdout_text).at("arrows").empty());
    }
    SECTION("invalid symmetrizer exits 2") {
        const std::string in =
            write_file(dir, "bad.json", R"({"A": [[2,-1],[-2,2]], "D": [1,1]})");
        CHECK(run_cli("cartan-to-quiver " + in).exit_code == 2);
    }
    SECTION("malformed JSON exits 2") {
        const std::string in = write_file(dir, "garbage.json", "{not json");
        CHECK(run_cli("cartan-to-quiver " + in).exit_code == 2);
    }
}

TEST_CASE("cli: potential") {
    const std::string dir = temp_dir();
    const std::string quiver = write_file(
        dir, "q.json", quiver_to_json(cartan_to_quiver(kB2), &kB2.D).dump());
    const CliRun run = run_cli("potential " + quiver);
    REQUIRE(run.exit_code == 0);
    const json j = json::parse(run.stdout_text);
    CHECK(j.at("potential").size() == 2);
    CHECK(j.at("derivatives").size() == 4); // h, h*, B_0, B_1
}

TEST_CASE("cli: shuffle") {
    const std::string dir = temp_dir();
    const std::string quiver = write_file(
        dir, "q.json", quiver_to_json(cartan_to_quiver(kB2), &kB2.D).dump());
    const ShuffleElement one = one_at(2, 0);
    const ShuffleElement f{{0, 1}, MPoly::variable(Variable::lambda(1, 1))};
    const std::string f1 = write_file(
        dir, "f1.json", shuffle_element_to_json(one, KernelMode::TwistedHbar).dump());
    const std::string f2 = write_file(
        dir, "f2.json", shuffle_element_to_json(f, KernelMode::TwistedHbar).dump());

    SECTION("product emits grade and polynomial") {
        const CliRun run = run_cli("shuffle " + f1 + " " + f2 + " --quiver " + quiver);
        REQUIRE(run.exit_code == 0);
        auto [product, mode] = shuffle_element_from_json(json::parse(run.stdout_text));
        CHECK(product.grade == DimensionVector{1, 1});
        // x_{0,0} star x_{1,1}: l(1,1) (l(1,1) - l(0,1) + hbar)
        const MPoly ll = MPoly::variable(Variable::lambda(1, 1));
        const MPoly lk = MPoly::variable(Variable::lambda(0, 1));
        CHECK(product.value == ll * (ll - lk + MPoly::variable(Variable::param(Param::hbar))));
    }
    SECTION("grade inconsistent with the polynomial exits 2") {
        const ShuffleElement bad{{0, 1}, MPoly::variable(Variable::lambda(0, 1))};
        const std::string f3 = write_file(
            dir, "f3.json", shuffle_element_to_json(bad, KernelMode::TwistedHbar).dump());
        CHECK(run_cli("shuffle " + f3 + " " + f2 + " --quiver " + quiver).exit_code == 2);
    }
    SECTION("the grade-0 unit acts as the identity") {
        const std::string u = write_file(
            dir, "unit.json",
            shuffle_element_to_json(unit_element(2), KernelMode::TwistedHbar).dump());
        const CliRun run = run_cli("shuffle " + u + " " + f2 + " --quiver " + quiver);
        REQUIRE(run.exit_code == 0);
        auto [product, mode] = shuffle_element_from_json(json::parse(run.stdout_text));
        CHECK(product.grade == f.grade);
        CHECK(product.value == f.value);
    }
}

TEST_CASE("cli: verify") {
    const std::string dir = temp_dir();
    const std::string a2 = write_file(dir, "a2.json", R"({"A": [[2,-1],[-1,2]], "D": [1,1]})");

    SECTION("valid data verifies with exit 0") {
        const CliRun run = run_cli("verify " + a2 + " --suite y1 --max-degree 1");
        REQUIRE(run.exit_code == 0);
        const json j = json::parse(run.stdout_text);
        CHECK(j.at("all_ok") == true);
        CHECK(j.at("pairs").size() == 4);
        CHECK(j.at("pairs").at(0).contains("Y1"));
    }
    SECTION("the corrupted sign is detected with exit 1") {
        const CliRun run =
            run_cli("verify " + a2 + " --suite y1 --max-degree 0 --corrupt-sign --pairs 0,1");
        REQUIRE(run.exit_code == 1);
        const json j = json::parse(run.stdout_text);
        CHECK(j.at("all_ok") == false);
        CHECK(j.at("pairs").at(0).at("Y1").contains("residual"));
    }
    SECTION("reports are byte-identical across runs") {
        const std::string args = "verify " + a2 + " --suite serre";
        const CliRun first = run_cli(args);
        const CliRun second = run_cli(args);
        REQUIRE(first.exit_code == 0);
        CHECK(first.stdout_text == second.stdout_text);
    }
    SECTION("text format renders the same result") {
        const CliRun run = run_cli("verify " + a2 + " --suite y1 --max-degree 0 --format text");
        CHECK(run.exit_code == 0);
        CHECK(run.stdout_text.find("all checks passed") != std::string::npos);
    }
    SECTION("malformed input exits 2") {
        const std::string bad = write_file(dir, "bad.json", "[1,2");
        CHECK(run_cli("verify " + bad).exit_code == 2);
    }
}

TEST_CASE("cli: rep-check") {
    const std::string dir = temp_dir();
    const std::string quiver = write_file(
        dir, "q.json", quiver_to_json(cartan_to_quiver(kB2), &kB2.D).dump());

    SECTION("zero rep is critical with zero trace") {
        const std::string rep =
            write_file(dir, "zero.json", R"({"dim": [1,1], "matrices": {}})");
        const CliRun run = run_cli("rep-check --quiver " + quiver + " --rep " + rep);
        REQUIRE(run.exit_code == 0);
        const json j = json::parse(run.stdout_text);
        CHECK(j.at("trW") == "0");
        CHECK(j.at("critical") == true);
        CHECK(j.at("in_J") == true);
        CHECK(j.at("euler") == true);
    }
    SECTION("scalar J-member") {
        const std::string rep = write_file(
            dir, "member.json",
            R"({"dim": [1,1], "matrices": {"hs:0": [["1"]], "B:0": [["4"]], "B:1": [["2"]]}})");
        const CliRun run = run_cli("rep-check --quiver " + quiver + " --rep " + rep);
        REQUIRE(run.exit_code == 0);
        const json j = json::parse(run.stdout_text);
        CHECK(j.at("in_J") == true);
        CHECK(j.at("jacobian_reduction") == true);
        CHECK(j.at("euler") == true);
    }
    SECTION("non-member reports a witness") {
        const std::string rep = write_file(
            dir, "nonmember.json",
            R"({"dim": [1,1], "matrices": {"hs:0": [["1"]], "B:0": [["1"]], "B:1": [["3"]]}})");
        const CliRun run = run_cli("rep-check --quiver " + quiver + " --rep " + rep);
        REQUIRE(run.exit_code == 0);
        const json j = json::parse(run.stdout_text);
        CHECK(j.at("in_J") == false);
        CHECK(j.at("jacobian_reduction") == true);
        REQUIRE(j.contains("witness"));
        CHECK(j.at("witness").contains("h:0"));
    }
}
