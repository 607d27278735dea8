#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "llrss/asymptotics.hpp"
#include "llrss/report.hpp"

using namespace llrss;

namespace {

SimSummary fake_summary() {
    SimConfig c;
    c.n = 100;
    c.scenario = {ContaminationCase::case1, 0.05};
    SimSummary s{c, {}, 1.5};
    s.rows.push_back({EstimatorKind::mle, std::nullopt, 0.103194, 0.124456, 1.0, 5.1, 1000, 0});
    s.rows.push_back({EstimatorKind::dpd, 0.2, 0.0920349, 0.109012, 1.0, 5.005, 998, 2});
    s.rows.push_back({EstimatorKind::rm, std::nullopt, std::nan(""), std::nan(""), std::nan(""), std::nan(""), 0, 1000});
    return s;
}

}  // namespace

TEST_CASE("simulation CSV") {
    std::ostringstream os;
    report::write_sim_csv(os, {fake_summary()});
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "estimator,tau,n,alpha_true,beta_true,case,p,bias,rmse,alpha_hat_mean,beta_hat_mean,failures");
    std::getline(in, line);
    CHECK(line == "mle,0.00000,100,1.00000,5.00000,1,0.05000,0.10319,0.12446,1.00000,5.10000,0");
    std::getline(in, line);
    CHECK(line == "dpd,0.20000,100,1.00000,5.00000,1,0.05000,0.09203,0.10901,1.00000,5.00500,2");
    std::getline(in, line);
    CHECK(line == "rm,NA,100,1.00000,5.00000,1,0.05000,NA,NA,NA,NA,1000");

    std::ostringstream no_header;
    report::write_sim_csv(no_header, {fake_summary()}, false);
    CHECK(no_header.str().rfind("mle,", 0) == 0);
}

TEST_CASE("simulation JSON") {
    std::ostringstream os;
    report::write_sim_json(os, {fake_summary(), fake_summary()});
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["schema_version"] == report::kSchemaVersion);
    CHECK(doc["kind"] == "simulation");
    REQUIRE(doc["runs"].size() == 2);
    const auto& rows = doc["runs"][0]["rows"];
    CHECK(rows[0]["bias"].get<double>() == 0.103194);
    CHECK(rows[1]["tau"].get<double>() == 0.2);
    CHECK(rows[2]["rmse"].is_null());
    CHECK(rows[2]["tau"].is_null());
    CHECK(doc["runs"][0]["config"]["case"] == "1");
}

TEST_CASE("fit reports") {
    report::FitReport fit;
    fit.estimator = "dpd";
    fit.tau = 0.2;
    fit.n = 100;
    fit.alpha = 1.01;
    fit.beta = 4.9;
    fit.converged = true;
    fit.iterations = 42;
    CHECK_THROWS_AS(fit.standard_errors(), std::logic_error);
    fit.cov = asym::sandwich({1.01, 4.9}, 100, Tuning(0.2));
    const auto se = fit.standard_errors();
    CHECK(se[0] == doctest::Approx(std::sqrt(fit.cov->sigma[0][0] / 100.0)));

    std::ostringstream js;
    report::write_fit_json(js, fit);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["schema_version"] == report::kSchemaVersion);
    CHECK(doc["alpha"].get<double>() == 1.01);
    CHECK(doc["covariance"]["se_beta"].get<double>() == doctest::Approx(se[1]));
    CHECK(doc["covariance"]["sigma"][0][1] == doc["covariance"]["sigma"][1][0]);

    std::ostringstream csv;
    report::write_fit_csv(csv, fit);
    CHECK(csv.str().rfind("estimator,tau,n,alpha,beta,converged,iterations,se_alpha,se_beta\ndpd,0.20000,100,1.01000,4.90000,true,42,", 0) == 0);

    report::FitReport rm{"rm", std::nullopt, 30, 1.0, 5.0};
    std::ostringstream rcsv;
    report::write_fit_csv(rcsv, rm);
    CHECK(rcsv.str().find("rm,NA,30,1.00000,5.00000,NA,NA,NA,NA") != std::string::npos);
}
