#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "fracsub/config.hpp"
#include "fracsub/convergence.hpp"
#include "fracsub/error.hpp"
#include "fracsub/parallel.hpp"
#include "fracsub/self_check.hpp"
#include "fracsub/studies.hpp"
#include "fracsub/tables.hpp"

namespace fracsub {
namespace {

TEST(Rates, ObservedRate) {
    EXPECT_NEAR(*observed_rate(4.0, 1.0), 2.0, 1e-15);
    EXPECT_NEAR(*observed_rate(16.0, 1.0, 4.0), 2.0, 1e-15);
    EXPECT_FALSE(observed_rate(0.0, 1.0).has_value());
    EXPECT_FALSE(observed_rate(1.0, 0.0).has_value());
    EXPECT_FALSE(observed_rate(std::nan(""), 1.0).has_value());
    EXPECT_FALSE(observed_rate(INFINITY, 1.0).has_value());
}

TEST(Rates, ScaleInvariance) {
    const std::vector<double> p{20, 40, 80, 160};
    const std::vector<double> e{3e-2, 1.4e-2, 7.1e-3, 3.2e-3};
    const auto a = make_report(ConvergenceAxis::Time, p, e);
    for (double c : {1e-6, 3.0, 1e5}) {
        std::vector<double> s = e;
        for (double& v : s) v *= c;
        const auto b = make_report(ConvergenceAxis::Time, p, s);
        for (std::size_t i = 1; i < p.size(); ++i) EXPECT_NEAR(*a.rows[i].rate, *b.rows[i].rate, 1e-12);
        EXPECT_NEAR(*a.average_rate, *b.average_rate, 1e-12);
    }
    EXPECT_FALSE(a.rows[0].rate.has_value());
    double mean = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) mean += std::log2(e[i - 1] / e[i]) / 3.0;
    EXPECT_NEAR(*a.average_rate, mean, 1e-14);
}

TEST(Rates, ReportValidation) {
    EXPECT_THROW(make_report(ConvergenceAxis::Time, {20, 20}, {1, 1}), ConfigError);
    EXPECT_THROW(make_report(ConvergenceAxis::Time, {40, 20}, {1, 1}), ConfigError);
    EXPECT_THROW(make_report(ConvergenceAxis::Time, {0, 20}, {1, 1}), ConfigError);
    const auto z = make_report(ConvergenceAxis::Space, {8, 16, 32}, {0, 0, 0});
    for (const auto& r : z.rows) EXPECT_FALSE(r.rate.has_value());
    EXPECT_FALSE(z.average_rate.has_value());
}

TEST(Csv, RoundTrip) {
    const auto rep = make_report(ConvergenceAxis::Time, {20, 40, 80}, {1.2491e-02, 6.1250e-03, 3.0285e-03});
    auto recs = to_records(rep, "GLBE", 0.1, -0.5, std::nullopt);
    const auto more = to_records(rep, "FBDF22", 0.7, std::nullopt, 2.0);
    recs.insert(recs.end(), more.begin(), more.end());
    std::stringstream ss;
    write_csv(ss, recs);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kCsvHeader);
    const auto back = read_csv(ss);
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(back[i].scheme, recs[i].scheme);
        EXPECT_EQ(back[i].alpha, recs[i].alpha);
        EXPECT_EQ(back[i].exponent, recs[i].exponent);
        EXPECT_EQ(back[i].param, recs[i].param);
        EXPECT_NEAR(back[i].error, recs[i].error, 5e-7 * recs[i].error);
        EXPECT_EQ(back[i].rate.has_value(), recs[i].rate.has_value());
        if (recs[i].rate) {
            EXPECT_NEAR(*back[i].rate, *recs[i].rate, 0.005);
        }
        EXPECT_EQ(back[i].rate_theory, recs[i].rate_theory);
    }
    std::stringstream again;
    write_csv(again, back);
    std::stringstream first;
    write_csv(first, recs);
    EXPECT_EQ(again.str(), first.str());

    std::stringstream bad("scheme,alpha\nGLBE,0.5\n");
    EXPECT_THROW(read_csv(bad), ConfigError);
    std::stringstream bad_row(std::string(kCsvHeader) + "\nGLBE,zero,,20,1e-3,,\n");
    EXPECT_THROW(read_csv(bad_row), ConfigError);
}

TEST(Config, TomlAndJsonAgree) {
    const RunConfig t = parse_config_toml(R"(
kind = "pde"
scheme = "fbdf22"
alpha = 0.7
exponents = [-0.5, -0.2]
dimension = 2
mass = "galerkin"
meshes = [16]
steps = [10, 20]
case = "b"
)");
    const RunConfig j = parse_config_json(R"({"kind": "pde", "scheme": "fbdf22", "alpha": 0.7, "exponents": [-0.5, -0.2],
        "dimension": 2, "mass": "galerkin", "meshes": [16], "steps": [10, 20], "case": "b"})");
    for (const RunConfig* c : {&t, &j}) {
        EXPECT_EQ(c->kind, StudyKind::PdeTime);
        EXPECT_EQ(c->scheme, Scheme::FBDF22);
        EXPECT_EQ(c->alpha, 0.7);
        EXPECT_EQ(c->exponents, (std::vector<double>{-0.5, -0.2}));
        EXPECT_EQ(c->dimension, 2);
        EXPECT_EQ(c->mass, MassTreatment::Galerkin);
        EXPECT_EQ(c->subdivisions, std::vector<int>{16});
        EXPECT_EQ(c->steps, (std::vector<int>{10, 20}));
        EXPECT_EQ(c->example_case, 'b');
    }
}

TEST(Config, CustomData) {
    const RunConfig c = parse_config_toml(R"(
kind = "pde"
meshes = [8]
steps = [4, 8]
[source]
projection = "interpolation"
[[source.term]]
c = 2.0
mu = -0.5
profile = "pow:-0.25"
[initial]
profile = "indicator:0.25,0.75"
)");
    EXPECT_TRUE(c.custom_data);
    ASSERT_EQ(c.source.terms.size(), 1u);
    EXPECT_NEAR(c.source.terms[0].coefficient(), 2.0, 1e-15);
    EXPECT_EQ(c.source.terms[0].mu, -0.5);
    EXPECT_EQ(c.rules.source, ProjectionRule::Interpolation);
    EXPECT_FALSE(c.initial.is_zero());
}

TEST(Config, Rejections) {
    EXPECT_THROW(parse_config_toml("kind = \"fode\"\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse_config_toml("kind = \"fode\"\nalpha = \n"), ConfigError);
    EXPECT_THROW(parse_config_json("{\"kind\": \"fode\", \"bogus\": 1}"), ConfigError);
    EXPECT_THROW(parse_config_json("{\"kind\": "), ConfigError);
    EXPECT_THROW(parse_config_toml("scheme = \"bdf3\"\n"), ConfigError);
    EXPECT_THROW(parse_config_toml("mass = \"diagonal\"\n"), ConfigError);
    EXPECT_THROW(parse_config_toml("steps = []\n"), ConfigError);
    EXPECT_THROW(parse_config_toml("steps = [40, 20]\n"), ConfigError);
    EXPECT_THROW(parse_config_toml("alpha = 1.2\n"), DomainError);
    // nu below alpha - 1 leaves the admissible range; nu = alpha - 1 is the Dirac case
    EXPECT_THROW(parse_config_toml("kind = \"fode\"\nalpha = 0.5\nexponents = [-0.6]\n"), DomainError);
    EXPECT_NO_THROW(parse_config_toml("kind = \"fode\"\nalpha = 0.5\nexponents = [-0.5]\n"));
    EXPECT_THROW(parse_config_toml("kind = \"pde\"\nexponents = [-1.0]\n"), DomainError);
    EXPECT_THROW(load_run_config("/nonexistent/run.toml"), ConfigError);
}

TEST(Studies, GlbeScalarStudy) {
    const auto rep = fode_study(Scheme::GLBE, {0.1, -0.5, -1.0, 1.0}, {20, 40, 80, 160, 320});
    const double expected[] = {1.2491e-02, 6.1250e-03, 3.0285e-03, 1.5042e-03, 7.4894e-04};
    ASSERT_EQ(rep.rows.size(), 5u);
    ASSERT_TRUE(rep.valid);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(rep.rows[i].error, expected[i], 1e-3 * expected[i]) << i;
    EXPECT_NEAR(*rep.average_rate, 1.01, 0.03);
}

TEST(Studies, ZeroDataStudiesReportNoRates) {
    PdeProblem p;
    p.mesh = {1, 16};
    const auto rep = pde_temporal_study(Scheme::FBDF22, 0.5, p, {10, 20, 40});
    for (const auto& r : rep.rows) {
        EXPECT_EQ(r.error, 0.0);
        EXPECT_FALSE(r.rate.has_value());
    }
    EXPECT_FALSE(rep.average_rate.has_value());
    const auto sp = spatial_study(0.5, p, {8, 16, 32});
    for (const auto& r : sp.rows) EXPECT_EQ(r.error, 0.0);
    EXPECT_FALSE(sp.average_rate.has_value());
}

TEST(Studies, NonNestedMeshChainRejected) {
    const PdeProblem p = spatial_example(1, -0.5);
    EXPECT_THROW(spatial_study(0.5, p, {8, 12, 24}), ConfigError);
    EXPECT_THROW(spatial_study(0.5, p, {16, 8}), ConfigError);
}

TEST(Studies, RunStudyOneReportPerExponent) {
    RunConfig cfg;
    cfg.kind = StudyKind::Fode;
    cfg.scheme = Scheme::FBDF22;
    cfg.alpha = 0.5;
    cfg.exponents = {-0.3, -0.1};
    cfg.steps = {160, 320};
    const auto reps = run_study(cfg);
    ASSERT_EQ(reps.size(), 2u);
    EXPECT_NEAR(reps[0].rows[0].error, 8.0490e-06, 1e-3 * 8.0490e-06);
    EXPECT_NEAR(reps[1].rows[1].error, 3.6535e-07, 1e-3 * 3.6535e-07);
}

TEST(Parallel, CoversRangeAndPropagatesErrors) {
    std::vector<int> hit(257, 0);
    parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; }, 4);
    for (int h : hit) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, [](std::size_t i) { if (i == 7) throw NumericalFailure("job 7"); }, 3),
                 NumericalFailure);
    EXPECT_GE(worker_count(), 1u);
}

TEST(Parallel, TablesIndependentOfThreadCount) {
    setenv("FRACSUB_THREADS", "1", 1);
    EXPECT_EQ(worker_count(), 1u);
    const auto serial = compute_table(3);
    setenv("FRACSUB_THREADS", "4", 1);
    const auto threaded = compute_table(3);
    unsetenv("FRACSUB_THREADS");
    ASSERT_EQ(serial.records.size(), threaded.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        EXPECT_EQ(serial.records[i].error, threaded.records[i].error);
        EXPECT_EQ(serial.records[i].rate, threaded.records[i].rate);
    }
}

TEST(Tables, ScalarTablesReproduced) {
    for (int id : {1, 2, 3}) {
        const auto r = compute_table(id);
        EXPECT_TRUE(r.passed()) << "table " << id << ": " << r.failed_count() << " failed checks";
        EXPECT_EQ(r.checks.size(), 54u)  // 9 rows of 5 errors and an average rate
            << "table " << id;
    }
    EXPECT_THROW(golden_table(9), ConfigError);
    EXPECT_EQ(parse_tolerance_profile("strict"), ToleranceProfile::Strict);
    EXPECT_THROW(parse_tolerance_profile("loose"), ConfigError);
}

TEST(SelfChecks, AllInvariantsHold) {
    const auto checks = run_self_checks();
    EXPECT_GE(checks.size(), 10u);
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": deviation " << c.deviation << " bound " << c.bound;
}

}  // namespace
}  // namespace fracsub
