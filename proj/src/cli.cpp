#include "sphericity/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "sphericity/calibration.hpp"
#include "sphericity/contour.hpp"
#include "sphericity/csv.hpp"
#include "sphericity/errors.hpp"
#include "sphericity/matrix.hpp"
#include "sphericity/montecarlo.hpp"
#include "sphericity/normal.hpp"
#include "sphericity/populations.hpp"
#include "sphericity/stats.hpp"

namespace sphericity::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitReject = 2;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<TestKind> parse_tests_list(const std::string& csv) {
    std::vector<TestKind> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        const std::string t = (a == std::string::npos) ? "" : item.substr(a, b - a + 1);
        if (t == "john") out.push_back(TestKind::John);
        else if (t == "qlrt") out.push_back(TestKind::QLRT);
        else if (t == "chen") out.push_back(TestKind::Chen);
        else if (t == "srivastava" || t == "sri") out.push_back(TestKind::Srivastava);
        else throw Error(ErrorCode::InvalidArgument, "unknown test '" + t + "'");
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "no tests requested");
    return out;
}

struct TestCommandResult {
    std::vector<TestResult> results;
    double nu4 = 3.0;
    bool nu4_estimated = false;
    Eigen::Index p = 0, n = 0;
    double level = 0.05;
    std::vector<std::string> notes;
};

TestCommandResult run_tests_on_file(const std::string& input, bool header,
                                    const std::vector<TestKind>& tests, double level,
                                    std::optional<double> nu4_opt) {
    TestCommandResult out;
    out.level = level;
    const DataMatrix x(read_csv_matrix(input, header));
    out.p = x.p();
    out.n = x.n();

    if (nu4_opt) {
        if (!(*nu4_opt >= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "--nu4 must be >= 1");
        }
        out.nu4 = *nu4_opt;
    } else {
        out.nu4 = estimate_nu4(x);
        out.nu4_estimated = true;
        out.notes.push_back("note: nu4 was ESTIMATED from the data as " + fmt6(out.nu4) +
                            "; the null calibrations assume nu4 is known. Pass --nu4 to override.");
    }
    if (out.p <= out.n) {
        out.notes.push_back(
            "warning: p <= n. The John and QLRT calibrations here are ultra-dimensional "
            "(p/n -> infinity); John's statistic keeps the same null law in every regime "
            "(dimension-proof), so prefer --tests john, and read QLRT results with care.");
    }

    const bool want_qlrt = std::find(tests.begin(), tests.end(), TestKind::QLRT) != tests.end();
    const Eigen::MatrixXd gram = gram_matrix(x.values());

    SpectralSummary s;
    bool qlrt_degenerate = false;
    try {
        s = summarize_gram(gram, out.p, false, want_qlrt);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularGram || !want_qlrt) throw;
        s = summarize_gram(gram, out.p, false, false);
        qlrt_degenerate = true;
    }

    const std::vector<double> levels{0.01, 0.05, 0.10, level};
    for (TestKind t : tests) {
        StatisticValue stat;
        switch (t) {
            case TestKind::John: stat = john_U(s); break;
            case TestKind::QLRT:
                if (qlrt_degenerate) {
                    stat = {TestKind::QLRT, std::numeric_limits<double>::infinity(), out.n, out.p, true};
                } else {
                    stat = qlrt_L(s);
                }
                break;
            case TestKind::Chen: stat = chen_Un_from_gram(gram, out.p, ChenMethod::Reduced); break;
            case TestKind::Srivastava: stat = srivastava_Wn(s); break;
        }
        out.results.push_back(standardize(stat, make_null_model(t, out.nu4, out.n, out.p), levels));
    }
    return out;
}

void print_test_table(const TestCommandResult& r, std::ostream& os) {
    for (const auto& note : r.notes) os << note << "\n";
    os << "p = " << r.p << "  n = " << r.n << "  level = " << fmt6(r.level)
       << "  nu4 = " << fmt6(r.nu4) << (r.nu4_estimated ? " (estimated)" : " (given)") << "\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s %14s %14s %14s  %s\n", "test", "statistic", "z",
                  "p-value", "decision");
    os << buf;
    for (const auto& res : r.results) {
        std::snprintf(buf, sizeof buf, "%-12s %14.6g %14.6g %14.6g  %s%s\n",
                      test_kind_name(res.statistic.kind), res.statistic.value, res.z, res.p_value,
                      res.rejected(r.level) ? "reject H0" : "accept H0",
                      res.statistic.degenerate ? " (degenerate: singular Gram)" : "");
        os << buf;
    }
}

void print_test_csv(const TestCommandResult& r, std::ostream& os) {
    os << "test,statistic,z,p_value,reject,nu4,nu4_estimated\n";
    for (const auto& res : r.results) {
        os << test_kind_name(res.statistic.kind) << ',' << fmt17(res.statistic.value) << ','
           << fmt17(res.z) << ',' << fmt17(res.p_value) << ',' << (res.rejected(r.level) ? 1 : 0)
           << ',' << fmt17(r.nu4) << ',' << (r.nu4_estimated ? 1 : 0) << "\n";
    }
}

void print_test_json(const TestCommandResult& r, std::ostream& os) {
    nlohmann::json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["level"] = r.level;
    j["nu4"] = r.nu4;
    j["nu4_estimated"] = r.nu4_estimated;
    j["notes"] = r.notes;
    j["results"] = nlohmann::json::array();
    for (const auto& res : r.results) {
        nlohmann::json row;
        row["test"] = test_kind_name(res.statistic.kind);
        row["statistic"] = res.statistic.degenerate ? nlohmann::json("inf")
                                                    : nlohmann::json(res.statistic.value);
        row["z"] = res.statistic.degenerate ? nlohmann::json("inf") : nlohmann::json(res.z);
        row["p_value"] = res.p_value;
        row["reject"] = res.rejected(r.level);
        row["degenerate"] = res.statistic.degenerate;
        j["results"].push_back(row);
    }
    os << j.dump(2) << "\n";
}

struct ContourCheck {
    CorrectionFn fn;
    int n;
    double p;
    double nu4;
    double rho;
    int nodes;
    double value = 0.0;
    double closed_form = 0.0;
    double diff = 0.0;
    bool enforced = false;  // counted toward the exit status
    bool pass = true;
};

double closed_form_of(CorrectionFn f, int n, double p, double nu4) {
    switch (f) {
        case CorrectionFn::F1: return nu4 - 2.0;
        case CorrectionFn::F2: return 0.0;
        case CorrectionFn::F3: return -(nu4 - 2.0) / 2.0 + double(n) * double(n) / (3.0 * p);
    }
    return 0.0;
}

int run_contour_checks(std::optional<int> n_opt, std::optional<double> p_opt,
                       std::optional<double> nu4_opt, std::optional<double> rho_opt, int nodes,
                       std::ostream& os) {
    std::vector<ContourCheck> checks;
    const std::vector<int> ns = n_opt ? std::vector<int>{*n_opt} : std::vector<int>{4, 8, 16};
    const std::vector<double> ps_f12 =
        p_opt ? std::vector<double>{*p_opt} : std::vector<double>{1e4, 1e6};
    const std::vector<double> ps_f3 =
        p_opt ? std::vector<double>{*p_opt} : std::vector<double>{1e4, 1e5, 1e6};
    const std::vector<double> nu4s =
        nu4_opt ? std::vector<double>{*nu4_opt} : std::vector<double>{3.0, 4.5};

    for (int n : ns)
        for (double nu4 : nu4s) {
            for (double p : ps_f12)
                for (CorrectionFn f : {CorrectionFn::F1, CorrectionFn::F2}) {
                    ContourCheck c{f, n, p, nu4, rho_opt ? *rho_opt : default_rho(f, n, p),
                                   nodes, 0, 0, 0, true, true};
                    checks.push_back(c);
                }
            for (double p : ps_f3) {
                ContourCheck c{CorrectionFn::F3, n, p, nu4,
                               rho_opt ? *rho_opt : default_rho(CorrectionFn::F3, n, p), nodes,
                               0, 0, 0, p >= 1e6, true};
                checks.push_back(c);
            }
        }

    os << "function                      n        p  nu4      rho   nodes        numeric    closed_form        |diff|\n";
    bool all_pass = true;
    // residuals keyed by (fn==F3, n, nu4) to check monotone decay over p
    std::map<std::pair<int, double>, std::vector<std::pair<double, double>>> f3_resid;
    for (auto& c : checks) {
        const ContourResult res = correction_integral(c.fn, c.n, c.p, c.nu4, c.rho, c.nodes);
        c.value = res.value;
        c.closed_form = closed_form_of(c.fn, c.n, c.p, c.nu4);
        c.diff = std::fabs(c.value - c.closed_form);
        const double tol = c.fn == CorrectionFn::F3 ? 5e-6 : 1e-6;
        c.pass = !c.enforced || c.diff <= tol;
        if (!c.pass) all_pass = false;
        if (c.fn == CorrectionFn::F3) f3_resid[{c.n, c.nu4}].push_back({c.p, c.diff});
        char buf[200];
        std::snprintf(buf, sizeof buf, "%-26s %4d %8.3g %4.2g %8.4g %7d %14.8g %14.8g %13.3e  %s\n",
                      correction_fn_name(c.fn), c.n, c.p, c.nu4, c.rho, c.nodes, c.value,
                      c.closed_form, c.diff,
                      c.enforced ? (c.pass ? "PASS" : "FAIL") : "info");
        os << buf;
    }
    for (auto& [key, v] : f3_resid) {
        if (v.size() < 2) continue;
        std::sort(v.begin(), v.end());
        bool monotone = true;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i].second > v[i - 1].second) monotone = false;
        os << "f3 residual decay in p at n=" << key.first << " nu4=" << key.second << ": "
           << (monotone ? "monotone (PASS)" : "NOT monotone (FAIL)") << "\n";
        if (!monotone) all_pass = false;
    }
    return all_pass ? kExitOk : kExitError;
}

int run_lemma_check(const std::string& which_s, const std::string& pop_s,
                    const std::string& sigma_s, Eigen::Index p, Eigen::Index n, int reps,
                    std::uint64_t seed, int workers, std::ostream& os) {
    LemmaId which;
    if (which_s == "L1") which = LemmaId::L1;
    else if (which_s == "L2") which = LemmaId::L2;
    else if (which_s == "L3") which = LemmaId::L3;
    else if (which_s == "L4") which = LemmaId::L4;
    else throw Error(ErrorCode::InvalidArgument, "--which must be one of L1,L2,L3,L4");

    PopulationSpec pop;
    if (pop_s == "gaussian") pop.entry_dist = EntryDist::StdNormal;
    else if (pop_s == "gamma") pop.entry_dist = EntryDist::CenteredGamma;
    else throw Error(ErrorCode::InvalidArgument, "--pop must be gaussian or gamma");

    if (sigma_s == "identity") {
        pop.sigma.kind = ScaledIdentity{1.0};
    } else if (sigma_s == "power1") {
        pop.sigma.kind = TwoPointDiagonal{0.5, 1.0, 0.5};
    } else if (sigma_s == "power2") {
        pop.sigma.kind = TwoPointDiagonal{0.5, 1.0, 0.75};
    } else {
        throw Error(ErrorCode::InvalidArgument, "--sigma must be identity, power1 or power2");
    }
    if ((which == LemmaId::L1 || which == LemmaId::L2) && sigma_s != "identity") {
        throw Error(ErrorCode::InvalidArgument, "L1/L2 are null-setting lemmas; use --sigma identity");
    }

    const LemmaMomentReport r = verify_lemma_moments(which, pop, p, n, reps, seed, workers);
    os << lemma_report_text(r);

    const bool assert_bands = which == LemmaId::L1 || which == LemmaId::L3;
    if (!assert_bands) {
        os << "(L2/L4 report finite-size discrepancies without asserting a rate)\n";
        return kExitOk;
    }
    bool ok = true;
    for (int i = 0; i < 2; ++i) {
        const auto ii = std::size_t(i);
        if (std::fabs(r.mean[ii] - r.target_mean[ii]) > 3.0 * r.mean_stderr[ii]) ok = false;
        const double tv = r.target_cov[ii][ii];
        if (std::fabs(r.cov[ii][ii] - tv) > 0.15 * tv) ok = false;
    }
    if (std::fabs(r.cov[0][1] - r.target_cov[0][1]) > 3.0 * r.cov_stderr) ok = false;
    os << (ok ? "moment bands: PASS\n" : "moment bands: FAIL\n");
    return ok ? kExitOk : kExitError;
}

std::string default_report_path(const std::string& plan_path) {
    const std::filesystem::path p(plan_path);
    return p.stem().string() + "_report.csv";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sphericity tests for p >> n covariance data"};
    app.require_subcommand(1);

    // ---- test ----
    auto* t = app.add_subcommand("test", "run sphericity tests on a CSV data matrix");
    std::string input, tests_csv = "john,qlrt", output = "table";
    bool header = false;
    double level = 0.05;
    std::optional<double> nu4_opt;
    t->add_option("--input,-i,input", input, "CSV file, p rows (variables) x n columns (observations)")
        ->required();
    t->add_flag("--header", header, "skip the first CSV line");
    t->add_option("--tests", tests_csv, "comma list: john,qlrt,chen,srivastava");
    t->add_option("--level", level, "one-sided test level")->check(CLI::Range(1e-12, 1.0 - 1e-12));
    t->add_option("--nu4", nu4_opt, "fourth moment of standardized entries (default: estimated)");
    t->add_option("--output", output, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    // ---- simulate ----
    auto* s = app.add_subcommand("simulate", "run a Monte Carlo size/power plan");
    std::string plan_path, out_path;
    int workers = 0;
    std::string sim_output = "table";
    std::optional<std::uint64_t> seed_opt;
    s->add_option("--plan,plan", plan_path, "plan file (key=value format; see plans/)")->required();
    s->add_option("--out", out_path, "report CSV path (default: <plan>_report.csv)");
    s->add_option("--workers", workers, "worker threads (0 = all)");
    s->add_option("--seed", seed_opt, "override the plan's master seed");
    s->add_option("--output", sim_output, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    // ---- verify ----
    auto* v = app.add_subcommand("verify", "numerical verification oracles");
    v->require_subcommand(1);
    auto* vc = v->add_subcommand("contour", "mean-correction contour integrals vs closed forms");
    std::optional<int> vc_n;
    std::optional<double> vc_p, vc_nu4, vc_rho;
    int vc_nodes = 4096;
    vc->add_option("--n", vc_n, "sample size (default grid: 4,8,16)");
    vc->add_option("--p", vc_p, "dimension (default grid: 1e4,1e6; F3 adds 1e5)");
    vc->add_option("--nu4", vc_nu4, "fourth moment (default grid: 3,4.5)");
    vc->add_option("--rho", vc_rho, "contour radius (default: per-function)");
    vc->add_option("--nodes", vc_nodes, "quadrature nodes, power of two >= 256");

    auto* vl = v->add_subcommand("lemma", "eigenvalue-statistic CLT moment checks");
    std::string vl_which = "L1", vl_pop = "gaussian", vl_sigma;
    std::uint64_t vl_seed = 20240901;
    Eigen::Index vl_p = 6400, vl_n = 64;
    int vl_reps = 2000, vl_workers = 0;
    vl->add_option("--which", vl_which, "L1|L2|L3|L4")->required();
    vl->add_option("--pop", vl_pop, "gaussian|gamma");
    vl->add_option("--sigma", vl_sigma, "identity|power1|power2 (default: identity for L1/L2, power1 otherwise)");
    vl->add_option("--p", vl_p, "dimension");
    vl->add_option("--n", vl_n, "sample size");
    vl->add_option("--reps", vl_reps, "replications");
    vl->add_option("--seed", vl_seed, "master seed");
    vl->add_option("--workers", vl_workers, "worker threads (0 = all)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("sphtest");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (t->parsed()) {
            const auto tests = parse_tests_list(tests_csv);
            const TestCommandResult r = run_tests_on_file(input, header, tests, level, nu4_opt);
            if (output == "table") print_test_table(r, out);
            else if (output == "csv") print_test_csv(r, out);
            else print_test_json(r, out);
            for (const auto& res : r.results)
                if (res.rejected(level)) return kExitReject;
            return kExitOk;
        }
        if (s->parsed()) {
            ExperimentPlan plan = parse_plan_file(plan_path);
            if (seed_opt) plan.master_seed = *seed_opt;
            const SimulationReport report = run_size_power(plan, workers);
            const std::string csv = report_csv(report);
            const std::string report_path = out_path.empty() ? default_report_path(plan_path) : out_path;
            {
                std::ofstream f(report_path, std::ios::binary);
                if (!f) throw Error(ErrorCode::FileNotFound, "cannot write " + report_path);
                f << csv;
            }
            {
                std::ofstream f(report_path + ".manifest", std::ios::binary);
                f << manifest_text(report);
            }
            if (sim_output == "table") out << report_table(report, plan);
            else if (sim_output == "csv") out << csv;
            else {
                nlohmann::json j;
                j["rows"] = nlohmann::json::array();
                for (const auto& row : report.rows) {
                    j["rows"].push_back({{"p", row.p},
                                         {"n", row.n},
                                         {"test", test_kind_name(row.test)},
                                         {"scenario", row.scenario},
                                         {"rate", row.rate},
                                         {"stderr", row.stderr_},
                                         {"replications", row.replications},
                                         {"seed", row.seed}});
                }
                j["runtime_seconds"] = report.runtime_seconds;
                out << j.dump(2) << "\n";
            }
            out << "report written to " << report_path << " (+.manifest)\n";
            return kExitOk;
        }
        if (vc->parsed()) {
            return run_contour_checks(vc_n, vc_p, vc_nu4, vc_rho, vc_nodes, out);
        }
        if (vl->parsed()) {
            if (vl_sigma.empty())
                vl_sigma = (vl_which == "L1" || vl_which == "L2") ? "identity" : "power1";
            return run_lemma_check(vl_which, vl_pop, vl_sigma, vl_p, vl_n, vl_reps, vl_seed,
                                   vl_workers, out);
        }
    } catch (const Error& e) {
        err << error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace sphericity::cli
