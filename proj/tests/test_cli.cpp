#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"
#include "wquant/factor.hpp"
#include "wquant/quadrature.hpp"

using namespace wquant;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Data rows of a CSV output (comment and header lines dropped).
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("knots on the real line are symmetric") {
        const auto r = run_cli({"knots", "--quantizer", "exp", "--a", "1", "--alpha", "2", "--n", "4", "--domain", "real"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("# ", 0) == 0);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 9);
        CHECK(rows.front()[1] == "-inf");
        CHECK(rows.back()[1] == "inf");
        for (std::size_t i = 0; i < 9; ++i) CHECK(std::stod(rows[i][1]) == -std::stod(rows[8 - i][1]));
        CHECK(std::stod(rows[6][1]) == doctest::Approx(2 * std::log(2.0)));
    }

    TEST_CASE("knots for the other quantizers") {
        auto r = run_cli({"knots", "--quantizer", "lognormal", "--c", "2", "--alpha", "1", "--n", "4"});
        REQUIRE(r.code == 0);
        auto rows = csv_rows(r.out);
        CHECK(std::stod(rows[3][1]) == doctest::Approx(2.0));
        r = run_cli({"knots", "--quantizer", "student", "--a", "3", "--alpha", "1.5", "--n", "4"});
        REQUIRE(r.code == 0);
        rows = csv_rows(r.out);
        CHECK(std::stod(rows[2][1]) == doctest::Approx(std::pow(0.5, -1.0) - 1.0));
        r = run_cli({"knots", "--quantizer", "json", "--kappa", R"({"family":"gaussian","sigma":1})", "--alpha", "2",
                     "--n", "4", "--domain", "real"});
        CHECK(r.code == 0);
        CHECK(csv_rows(r.out).size() == 9);
    }

    TEST_CASE("fctr example1 and families") {
        auto r = run_cli({"fctr", "--family", "example1", "--sigma2", "1"});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["fctr"].get<double>() == 1.0);
        CHECK(j["kind"] == "exact-closed-form");
        CHECK(j.contains("config"));

        r = run_cli({"fctr", "--family", "example1", "--sigma2", "0.5"});
        CHECK(nlohmann::json::parse(r.out)["fctr"] == "inf");

        r = run_cli({"fctr", "--family", "gauss-gauss", "--p", "2", "--q", "1", "--r", "1", "--a", "1"});
        CHECK(round3(nlohmann::json::parse(r.out)["fctr"].get<double>()) == "1.135");

        r = run_cli({"fctr", "--family", "student", "--nu", "3", "--b", "2", "--alpha", "1"});
        j = nlohmann::json::parse(r.out);
        CHECK(round3(j["fctr"].get<double>()) == "1.427");

        r = run_cli({"fctr", "--family", "logistic", "--lambda", "2", "--b", "1", "--alpha", "1"});
        j = nlohmann::json::parse(r.out);
        CHECK(j["kind"] == "upper-bound");
        CHECK(round3(j["fctr"].get<double>()) == "3.341");

        r = run_cli({"fctr", "--family", "lognormal", "--sigma", "1", "--p", "inf", "--q", "1", "--alpha", "1.5"});
        CHECK(round3(nlohmann::json::parse(r.out)["fctr"].get<double>()) == "1.058");
    }

    TEST_CASE("fctr optimize and numeric paths") {
        auto r = run_cli({"fctr", "--family", "gauss-gauss", "--r", "2", "--optimize"});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["a"].get<double>() == doctest::Approx(gauss_gauss_a_star(1, 2, 2)).epsilon(1e-5));
        CHECK(j["fctr"].get<double>() == doctest::Approx(std::pow(2 * std::exp(1.0) / std::numbers::pi, 1.0)).epsilon(1e-9));

        r = run_cli({"fctr", "--family", "example1", "--optimize", "--scan"});
        j = nlohmann::json::parse(r.out);
        CHECK(j["sigma2"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));

        r = run_cli({"fctr", "--family", "gauss-exp", "--lambda", "3", "--numeric"});
        REQUIRE(r.code == 0);
        j = nlohmann::json::parse(r.out);
        CHECK(j["kind"] == "numeric");
        const double closed = fctr_gauss_exp(1, 3, {Exponent(1.0), Exponent(1.0), 1}).fctr;
        CHECK(j["fctr"].get<double>() == doctest::Approx(closed).epsilon(1e-6));

        r = run_cli({"fctr", "--family", "generic", "--rho", R"({"family":"gaussian","sigma":1})", "--kappa",
                     R"({"family":"gaussian","sigma":1})", "--p", "inf"});
        REQUIRE(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["fctr"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("convergence output matches the library") {
        const auto r = run_cli({"convergence", "--r", "2", "--n-list", "16,32,64"});
        REQUIRE(r.code == 0);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0][2] == "nan");
        const auto rho = WeightFunction::gaussian_density(1.0);
        const auto lib = convergence_study(test_functions::gaussian_bump(), rho, WeightFunction::constant_one(), rho,
                                           {Exponent::infinity(), Exponent(1.0), 2}, {16, 32, 64});
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::stod(rows[i][1]) == lib[i].error);
        CHECK(std::abs(std::stod(rows[2][2]) - 2.0) < 0.2);
    }

    TEST_CASE("approximate and integrate") {
        auto r = run_cli({"approximate", "--f", "rational", "--psi", R"({"family":"gaussian-shape","lambda":2})", "--kappa",
                          R"({"family":"exp-kernel","a":1.5})", "--p", "2", "--q", "2", "--r", "2", "--n", "8"});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["knots"].size() == 17);
        CHECK(j["cells"].size() == 16);
        CHECK(j["error"].get<double>() <= j["bound"].get<double>());
        CHECK(j["exponents"]["alpha"].get<double>() == 2.0);

        r = run_cli({"approximate", "--form", "lagrange", "--r", "3", "--n", "4"});
        REQUIRE(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["cells"][0].contains("nodes"));

        // Quantizer with E = infinity: the bound is reported as vacuous.
        r = run_cli({"approximate", "--kappa", R"({"family":"gaussian","sigma":0.5})", "--n", "4"});
        REQUIRE(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["bound"] == "inf");

        r = run_cli({"integrate", "--n", "64", "--r", "2"});
        REQUIRE(r.code == 0);
        j = nlohmann::json::parse(r.out);
        CHECK(j["reference"].get<double>() == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK(j["error"].get<double>() < 1e-3);
    }

    TEST_CASE("example1 curve") {
        const auto r = run_cli({"example1-curve", "--grid", "0.4,0.5,1,2,4"});
        REQUIRE(r.code == 0);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 5);
        CHECK(rows[0][1] == "inf");
        CHECK(rows[1][1] == "inf");
        CHECK(rows[2][1] == "1");
        CHECK(std::stod(rows[3][1]) == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-15));
        CHECK(std::stod(rows[4][1]) == doctest::Approx(4 / std::sqrt(7.0)).epsilon(1e-15));
        const auto g = run_cli({"example1-curve", "--from", "0.5", "--to", "1.5", "--points", "11"});
        const auto grows = csv_rows(g.out);
        CHECK(grows[5][0] == "1");
        CHECK(grows[5][1] == "1");
    }

    TEST_CASE("tables golden files") {
        const auto dir = std::filesystem::temp_directory_path() / "wquant_tables_test";
        std::filesystem::remove_all(dir);
        const auto r = run_cli({"tables", "--out-dir", dir.string()});
        REQUIRE(r.code == 0);
        std::size_t files = 0;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            ++files;
            std::ifstream in(entry.path());
            std::stringstream ss;
            ss << in.rdbuf();
            for (const auto& row : csv_rows(ss.str())) {
                REQUIRE(row.size() == 8);
                // Rounded values either equal the printed ones or are flagged.
                CHECK((row[2] == row[3]) == (row[7] == "match"));
                CHECK((row[7] == "match" || row[7] == "MISMATCH"));
            }
        }
        CHECK(files == 8);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("determinism") {
        const std::vector<std::string> args = {"approximate", "--f", "sinexp", "--rho",
                                               R"({"family":"exp-kernel","a":1,"domain":[0,"inf"]})", "--r", "2", "--n", "8"};
        const auto a = run_cli(args);
        const auto b = run_cli(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
    }

    TEST_CASE("exit codes") {
        CHECK(run_cli({}).code == cli::kBadParameters);
        CHECK(run_cli({"knots", "--alpha", "1"}).code == cli::kBadParameters);
        CHECK(run_cli({"fctr", "--family", "gauss-gauss", "--lambda", "0.5"}).code == cli::kBadParameters);
        CHECK(run_cli({"fctr", "--family", "nope"}).code == cli::kBadParameters);
        CHECK(run_cli({"knots", "--quantizer", "student", "--a", "1", "--alpha", "2", "--n", "4"}).code ==
              cli::kBadParameters);
        CHECK(run_cli({"approximate", "--rho", "{not json"}).code == cli::kBadParameters);
        CHECK(run_cli({"--help"}).code == cli::kOk);
        // A divergent reference integral.
        const auto r = run_cli({"integrate", "--f", "rational", "--rho", R"({"family":"student-quantizer","a":0.5})",
                                "--kappa", R"({"family":"exp-kernel","a":1})"});
        CHECK(r.code == cli::kNoConvergence);
        CHECK(r.err.find("error:") != std::string::npos);
    }
}
