#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracsub/config.hpp"
#include "fracsub/convergence.hpp"
#include "fracsub/cq_weights.hpp"
#include "fracsub/error.hpp"
#include "fracsub/mittag_leffler.hpp"
#include "fracsub/self_check.hpp"
#include "fracsub/studies.hpp"
#include "fracsub/tables.hpp"

namespace {

using namespace fracsub;

constexpr int kExitInput = 2;
constexpr int kExitFailure = 3;

void print_report(const ConvergenceReport& rep, const char* param) {
    std::printf("%8s  %14s  %6s\n", param, "error", "rate");
    for (const auto& row : rep.rows) {
        if (row.rate) std::printf("%8.0f  %14.6E  %6.2f\n", row.param, row.error, *row.rate);
        else std::printf("%8.0f  %14.6E  %6s\n", row.param, row.error, "-");
    }
    if (rep.average_rate) std::printf("average rate %.2f\n", *rep.average_rate);
    if (!rep.valid) std::printf("study aborted: %s\n", rep.message.c_str());
}

int cmd_weights(const std::string& scheme, double alpha, std::size_t n, const std::string& csv) {
    CqScheme s;
    if (scheme == "gl") s = CqScheme::GL;
    else if (scheme == "fbdf2") s = CqScheme::FBDF2;
    else throw ConfigError("scheme must be 'gl' or 'fbdf2'");
    const CqKernel k = make_kernel(s, FractionalOrder(alpha), n);
    std::ofstream file;
    if (!csv.empty()) {
        file.open(csv);
        if (!file) throw ConfigError("cannot write " + csv);
    }
    std::ostream& os = csv.empty() ? std::cout : file;
    os << "j,weight\n";
    char buf[64];
    for (std::size_t j = 0; j < k.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%zu,%.16e\n", j, k[j]);
        os << buf;
    }
    return 0;
}

int cmd_table(int id, const std::string& out, const std::string& profile) {
    const TableResult res = reproduce_table(id, out, parse_tolerance_profile(profile));
    for (const auto& f : res.failures) std::printf("ABORT %s\n", f.c_str());
    for (const auto& c : res.checks) {
        if (c.passed) continue;
        std::printf("FAIL  %s: expected %.5E, measured %.5E, accepted [%.5E, %.5E]\n", c.label.c_str(), c.expected,
                    c.measured, c.lo, c.hi);
    }
    std::printf("table %d: %zu of %zu checks passed (%s profile), csv in %s/table%d.csv\n", id,
                res.checks.size() - res.failed_count(), res.checks.size(), profile.c_str(), out.c_str(), id);
    std::printf("%s\n", res.passed() ? "PASS" : "FAIL");
    return res.passed() ? 0 : kExitFailure;
}

int cmd_check() {
    bool ok = true;
    for (const auto& r : run_self_checks()) {
        std::printf("%s  %-48s %.3e (bound %.1e)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.deviation, r.bound);
        ok = ok && r.passed;
    }
    return ok ? 0 : kExitFailure;
}

int cmd_study(const std::string& path) {
    const RunConfig cfg = load_run_config(path);
    const auto reports = run_study(cfg);
    const char* param = cfg.kind == StudyKind::Space ? "1/h" : "N";
    std::vector<TableRecord> records;
    bool ok = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::optional<double> exponent;
        if (!cfg.custom_data) {
            exponent = cfg.exponents[i];
            std::printf("%s = %.2f\n", cfg.kind == StudyKind::Fode ? "nu" : "mu", cfg.exponents[i]);
        }
        print_report(reports[i], param);
        ok = ok && reports[i].valid;
        const std::string label = cfg.kind == StudyKind::Space ? "Lumped" : to_string(cfg.scheme);
        auto recs = to_records(reports[i], label, cfg.alpha, exponent, std::nullopt);
        records.insert(records.end(), recs.begin(), recs.end());
    }
    if (!cfg.output.empty()) {
        std::ofstream os(cfg.output);
        if (!os) throw ConfigError("cannot write " + cfg.output);
        write_csv(os, records);
    }
    return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-stepping schemes for sub-diffusion with singular sources"};
    app.require_subcommand(1);

    std::string scheme = "glbe", wscheme = "gl", csv, out = ".", profile = "paper", config, mass = "lumped";
    std::string example_case = "a";
    double alpha = 0.5, beta = 1.0, x = 0.0, nu = -0.5, mu = -0.5, lambda = -1.0, T = 1.0;
    std::size_t n = 10;
    int id = 1, dim = 1, M = 128;
    std::vector<int> steps{20, 40, 80, 160, 320};

    auto* weights = app.add_subcommand("weights", "Convolution-quadrature weights as CSV");
    weights->add_option("--scheme", wscheme, "gl or fbdf2")->check(CLI::IsMember({"gl", "fbdf2"}));
    weights->add_option("--alpha", alpha)->required();
    weights->add_option("--n", n, "highest index")->required();
    weights->add_option("--csv", csv, "output file (default stdout)");

    auto* ml = app.add_subcommand("ml", "Mittag-Leffler function E_{alpha,beta}(x)");
    ml->add_option("--alpha", alpha)->required();
    ml->add_option("--beta", beta)->required();
    ml->add_option("--x", x)->required();

    auto* fode = app.add_subcommand("fode", "Scalar test problem with exact solution t^nu");
    fode->add_option("--scheme", scheme, "glbe, fbdf22, cbe or usbd");
    fode->add_option("--alpha", alpha);
    fode->add_option("--nu", nu);
    fode->add_option("--lambda", lambda);
    fode->add_option("--T", T);
    fode->add_option("--N", steps, "step count or comma list")->delimiter(',');

    auto* pde = app.add_subcommand("pde", "Fully discrete example against the exact semidiscrete solution");
    pde->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
    pde->add_option("--scheme", scheme);
    pde->add_option("--alpha", alpha);
    pde->add_option("--mu", mu);
    pde->add_option("--M", M, "subdivisions per axis");
    pde->add_option("--N", steps, "step count or comma list")->delimiter(',');
    pde->add_option("--case", example_case)->check(CLI::IsMember({"a", "b"}));
    pde->add_option("--mass", mass)->check(CLI::IsMember({"lumped", "galerkin"}));
    pde->add_option("--T", T);

    auto* table = app.add_subcommand("table", "Reproduce a published error table");
    table->add_option("--id", id)->required()->check(CLI::Range(1, 8));
    table->add_option("--out", out, "output directory");
    table->add_option("--tolerance-profile", profile)->check(CLI::IsMember({"paper", "strict"}));

    auto* check = app.add_subcommand("check", "Run the invariant self-checks");

    auto* study = app.add_subcommand("study", "Run a study from a TOML or JSON configuration");
    study->add_option("--config", config)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*weights) return cmd_weights(wscheme, alpha, n, csv);
        if (*ml) {
            std::printf("%.14e\n", ml_eval(alpha, beta, x));
            return 0;
        }
        if (*fode) {
            const auto rep = fode_study(parse_scheme(scheme), {alpha, nu, lambda, T}, steps);
            print_report(rep, "N");
            return rep.valid ? 0 : kExitFailure;
        }
        if (*pde) {
            PdeProblem p = fully_discrete_example(dim, example_case[0], mu, M);
            p.mass = mass == "lumped" ? MassTreatment::Lumped : MassTreatment::Galerkin;
            p.T = T;
            const auto rep = pde_temporal_study(parse_scheme(scheme), alpha, p, steps);
            print_report(rep, "N");
            return rep.valid ? 0 : kExitFailure;
        }
        if (*table) return cmd_table(id, out, profile);
        if (*check) return cmd_check();
        if (*study) return cmd_study(config);
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const DimensionMismatch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const NumericalFailure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitFailure;
    }
    return 0;
}
