#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using llrss::cli::run_cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string seed42_sample() {
    const auto r = cli({"sample", "--n", "100", "--alpha", "1", "--beta", "5", "--seed", "42"});
    REQUIRE(r.code == 0);
    return r.out;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    const auto no_tau = cli({"fit", "--input", "-", "--estimator", "dpd"}, "1\n2\n3\n");
    CHECK(no_tau.code == 2);
    CHECK(no_tau.err.find("--tau") != std::string::npos);
    CHECK(cli({"fit", "--input", "-", "--estimator", "mle", "--tau", "0.2"}, "1\n2\n3\n").code == 2);
    CHECK(cli({"fit", "--input", "-", "--estimator", "dpd", "--tau", "0"}, "1\n2\n3\n").code == 2);
    CHECK(cli({"fit", "--input", "-", "--estimator", "rm", "--cov"}, "1\n2\n3\n").code == 2);
    CHECK(cli({"fit", "--input", "-", "--estimator", "xyz"}, "1\n2\n3\n").code == 2);
    CHECK(cli({"fit", "--input", "/nonexistent/file.csv", "--estimator", "hl"}).code == 2);
    CHECK(cli({"simulate", "--reps", "0"}).code == 2);
    CHECK(cli({"simulate", "--case", "1"}).code == 2);
    CHECK(cli({"simulate", "--p", "0.1"}).code == 2);
    CHECK(cli({"simulate", "--case", "1", "--p", "0.1", "--p-grid"}).code == 2);
    CHECK(cli({"simulate", "--case", "7", "--p", "0.1"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("malformed CSV names the offending line") {
    const auto bad = cli({"fit", "--input", "-", "--estimator", "hl"}, "# comment\n1.2\n0.7\nabc\n");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 4") != std::string::npos);
    const auto neg = cli({"fit", "--input", "-", "--estimator", "hl"}, "1.2\n-3\n");
    CHECK(neg.code == 2);
    CHECK(neg.err.find("line 2") != std::string::npos);
    const auto dup = cli({"fit", "--input", "-", "--estimator", "hl"}, "rank,y\n1,1.0\n1,2.0\n");
    CHECK(dup.code == 2);
    CHECK(dup.err.find("appears twice") != std::string::npos);
    const auto size = cli({"fit", "--input", "-", "--estimator", "hl"}, "y,set_size\n1.0,3\n2.0,3\n");
    CHECK(size.code == 2);
    CHECK(size.err.find("line 2") != std::string::npos);
    CHECK(cli({"fit", "--input", "-", "--estimator", "hl"}, "").code == 2);
    CHECK(cli({"fit", "--input", "-", "--estimator", "hl"}, "1,2\n3,4\n").code == 2);
}

TEST_CASE("ranked input is reordered by rank") {
    const auto a = cli({"fit", "--input", "-", "--estimator", "rm", "--format", "json"},
                       "rank,set_size,y\n3,3,4.0\n1,3,1.0\n2,3,2.0\n");
    const auto b = cli({"fit", "--input", "-", "--estimator", "rm", "--format", "json"}, "1.0\n2.0\n4.0\n");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(json::parse(a.out)["alpha"] == json::parse(b.out)["alpha"]);
}

TEST_CASE("single-value input cannot identify the likelihood fit") {
    const auto r = cli({"fit", "--input", "-", "--estimator", "mle"}, "2.0\n");
    CHECK(r.code == 3);
    CHECK(r.err.find("did not converge") != std::string::npos);
    CHECK(r.err.find("\"schema_version\"") != std::string::npos);
}

TEST_CASE("fit on a generated clean sample") {
    const std::string data = seed42_sample();
    const auto dpd = cli({"fit", "--input", "-", "--estimator", "dpd", "--tau", "0.2", "--cov"}, data);
    REQUIRE(dpd.code == 0);
    const auto d = json::parse(dpd.out);
    CHECK(d["converged"] == true);
    const double se = d["covariance"]["se_alpha"].get<double>();
    CHECK(se > 0.0);
    CHECK(std::abs(d["alpha"].get<double>() - 1.0) < 3.0 * se);

    const auto mle = json::parse(cli({"fit", "--input", "-", "--estimator", "mle"}, data).out);
    const auto lim = json::parse(cli({"fit", "--input", "-", "--estimator", "dpd", "--tau", "0.001"}, data).out);
    CHECK(std::abs(mle["alpha"].get<double>() - lim["alpha"].get<double>()) < 1e-3);
    CHECK(std::abs(mle["beta"].get<double>() - lim["beta"].get<double>()) < 1e-3);

    const auto csv = cli({"fit", "--input", "-", "--estimator", "sm", "--format", "csv"}, data);
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("estimator,tau,n,alpha,beta,converged,iterations,se_alpha,se_beta\nsm,NA,100,", 0) == 0);
}

TEST_CASE("file input and output") {
    const auto dir = std::filesystem::temp_directory_path() / "llrss_cli_test";
    std::filesystem::create_directories(dir);
    const auto data = (dir / "sample.csv").string();
    REQUIRE(cli({"sample", "--n", "30", "--seed", "3", "--out", data}).code == 0);
    CHECK(cli({"fit", "--input", data, "--estimator", "hl"}).code == 0);

    const auto out = (dir / "sim.csv").string();
    REQUIRE(cli({"simulate", "--n", "10", "--reps", "3", "--taus", "0.2,0.5", "--threads", "1", "--out", out}).code == 0);
    std::ifstream is(out);
    std::string header;
    std::getline(is, header);
    CHECK(header == "estimator,tau,n,alpha_true,beta_true,case,p,bias,rmse,alpha_hat_mean,beta_hat_mean,failures");
    std::filesystem::remove_all(dir);
}

TEST_CASE("simulate is deterministic and emits one row per estimator and grid point") {
    const std::vector<std::string> args = {"simulate", "--n", "10", "--reps", "4", "--taus", "0.3",
                                           "--case", "2", "--p-grid", "--seed", "5", "--estimators", "mle,dpd"};
    const auto a = cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == cli(args).out);
    std::istringstream in(a.out);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 1 + 9 * 2);

    const auto js = cli({"simulate", "--n", "10", "--reps", "2", "--format", "json", "--estimators", "rm"});
    REQUIRE(js.code == 0);
    CHECK(json::parse(js.out)["schema_version"] == 1);
}

TEST_CASE("verify exit codes") {
    const auto ok = cli({"verify"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(ok.out.find("sign A3: oracle supports minus") != std::string::npos);
    const auto flipped = cli({"verify", "--flip-a3"});
    CHECK(flipped.code == 1);
    CHECK(flipped.out.find("FAIL j_alpha") != std::string::npos);
    CHECK(flipped.err.find("j_alpha") != std::string::npos);
}
