#include "sphericity/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sphericity/calibration.hpp"
#include "sphericity/errors.hpp"
#include "sphericity/normal.hpp"
#include "sphericity/power.hpp"

namespace sphericity {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

[[noreturn]] void plan_fail(int line, const std::string& msg) {
    throw Error(ErrorCode::PlanParseError, "plan line " + std::to_string(line) + ": " + msg);
}

TestKind parse_test_kind(const std::string& name, int line) {
    if (name == "john") return TestKind::John;
    if (name == "qlrt") return TestKind::QLRT;
    if (name == "chen") return TestKind::Chen;
    if (name == "srivastava" || name == "sri") return TestKind::Srivastava;
    plan_fail(line, "unknown test '" + name + "'");
}

double parse_double(const std::string& s, int line, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        plan_fail(line, std::string("cannot parse ") + what + " from '" + s + "'");
    }
}

long long parse_int(const std::string& s, int line, const char* what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        plan_fail(line, std::string("cannot parse ") + what + " from '" + s + "'");
    }
}

std::string sigma_to_string(const SigmaSpec& s) {
    if (const auto* si = std::get_if<ScaledIdentity>(&s.kind)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "identity %.17g", si->sigma2);
        return buf;
    }
    if (const auto* tp = std::get_if<TwoPointDiagonal>(&s.kind)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "twopoint %.17g %.17g %.17g", tp->a, tp->b, tp->delta);
        return buf;
    }
    if (const auto* ed = std::get_if<ExplicitDiagonal>(&s.kind)) {
        std::string out = "diagonal";
        char buf[32];
        for (double v : ed->diag) {
            std::snprintf(buf, sizeof buf, " %.17g", v);
            out += buf;
        }
        return out;
    }
    return "spd p=" + std::to_string(std::get<ExplicitSPD>(s.kind).matrix.rows());
}

}  // namespace

ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    plan.replications = 0;
    bool saw_reps = false;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) plan_fail(lineno, "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "grid") {
            for (const auto& cell : split(value, ',')) {
                const auto x = cell.find('x');
                if (x == std::string::npos) plan_fail(lineno, "grid cell must look like 320x64");
                const long long p = parse_int(trim(cell.substr(0, x)), lineno, "p");
                const long long n = parse_int(trim(cell.substr(x + 1)), lineno, "n");
                if (p < 1 || n < 1) plan_fail(lineno, "grid dimensions must be positive");
                plan.grid.emplace_back(p, n);
            }
        } else if (key == "tests") {
            for (const auto& t : split(value, ',')) plan.tests.push_back(parse_test_kind(t, lineno));
        } else if (key == "population") {
            if (value == "gaussian") plan.entry_dist = EntryDist::StdNormal;
            else if (value == "gamma") plan.entry_dist = EntryDist::CenteredGamma;
            else plan_fail(lineno, "population must be gaussian or gamma");
        } else if (key == "level") {
            plan.level = parse_double(value, lineno, "level");
            if (!(plan.level > 0.0 && plan.level < 1.0)) plan_fail(lineno, "level must lie in (0,1)");
        } else if (key == "replications") {
            const long long r = parse_int(value, lineno, "replications");
            if (r < 100) plan_fail(lineno, "replications must be >= 100 for a reported rate");
            plan.replications = int(r);
            saw_reps = true;
        } else if (key == "seed") {
            plan.master_seed = std::uint64_t(parse_int(value, lineno, "seed"));
        } else if (key == "chen_method") {
            if (value == "reduced") plan.chen_method = ChenMethod::Reduced;
            else if (value == "bruteforce") plan.chen_method = ChenMethod::BruteForce;
            else plan_fail(lineno, "chen_method must be reduced or bruteforce");
        } else if (key == "chen_max_p") {
            plan.chen_max_p = parse_int(value, lineno, "chen_max_p");
        } else if (key == "scenario") {
            const auto colon = value.find(':');
            if (colon == std::string::npos) plan_fail(lineno, "scenario must look like 'name: identity 1.0'");
            Scenario sc;
            sc.name = trim(value.substr(0, colon));
            const auto body = split(trim(value.substr(colon + 1)), ' ');
            std::vector<std::string> tok;
            for (const auto& t : body)
                if (!t.empty()) tok.push_back(t);
            if (tok.empty()) plan_fail(lineno, "scenario body is empty");
            if (tok[0] == "identity") {
                if (tok.size() != 2) plan_fail(lineno, "identity takes one value: sigma^2");
                sc.sigma.kind = ScaledIdentity{parse_double(tok[1], lineno, "sigma^2")};
            } else if (tok[0] == "twopoint") {
                if (tok.size() != 4) plan_fail(lineno, "twopoint takes: a b delta  (delta = proportion of b)");
                sc.sigma.kind = TwoPointDiagonal{parse_double(tok[1], lineno, "a"),
                                                 parse_double(tok[2], lineno, "b"),
                                                 parse_double(tok[3], lineno, "delta")};
            } else {
                plan_fail(lineno, "unknown scenario kind '" + tok[0] + "'");
            }
            plan.scenarios.push_back(std::move(sc));
        } else {
            plan_fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (plan.grid.empty()) throw Error(ErrorCode::PlanParseError, "plan: no grid cells");
    if (plan.tests.empty()) throw Error(ErrorCode::PlanParseError, "plan: no tests");
    if (plan.scenarios.empty()) throw Error(ErrorCode::PlanParseError, "plan: no scenarios");
    if (!saw_reps) throw Error(ErrorCode::PlanParseError, "plan: replications is required");
    return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "plan file not found: " + path);
    return parse_plan(in);
}

namespace {

struct CellTraces {
    double t1 = 0.0;      // trace1
    double t2 = 0.0;      // trace2
    double logdet = 0.0;
    bool singular = false;
};

CellTraces traces_of(const Eigen::MatrixXd& g, Eigen::Index p, Eigen::Index n, bool need_logdet) {
    CellTraces t;
    t.t1 = g.trace() / double(p);
    t.t2 = g.squaredNorm() / (double(p) * double(p));
    if (need_logdet) {
        try {
            t.logdet = spd_log_determinant(g / double(p), 1e-12 * t.t1 / double(n));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularGram) throw;
            t.singular = true;
        }
    }
    return t;
}

int resolve_workers(int workers) {
    return workers > 0 ? workers : omp_get_max_threads();
}

}  // namespace

SimulationReport run_size_power(const ExperimentPlan& plan, int workers) {
    if (plan.replications < 1) {
        throw Error(ErrorCode::InvalidArgument, "run_size_power: replications must be >= 1");
    }
    const auto t_start = std::chrono::steady_clock::now();
    const int nthreads = resolve_workers(workers);
    const double z_alpha = normal_upper_quantile(plan.level);
    const int reps = plan.replications;

    const bool want_qlrt =
        std::find(plan.tests.begin(), plan.tests.end(), TestKind::QLRT) != plan.tests.end();

    SimulationReport report;
    report.manifest.master_seed = plan.master_seed;
    report.manifest.entry_dist = entry_dist_name(plan.entry_dist);
    report.manifest.level = plan.level;
    report.manifest.replications = reps;
    report.manifest.workers = nthreads;
    for (const auto& sc : plan.scenarios)
        report.manifest.sigma_specs.push_back(sc.name + ": " + sigma_to_string(sc.sigma));

    for (std::size_t ci = 0; ci < plan.grid.size(); ++ci) {
        const auto [p, n] = plan.grid[ci];
        for (std::size_t si = 0; si < plan.scenarios.size(); ++si) {
            const Scenario& sc = plan.scenarios[si];
            PopulationSpec pop;
            pop.entry_dist = plan.entry_dist;
            pop.sigma = sc.sigma;
            pop.sigma.p = p;
            const double nu4 = pop.nu4();
            const std::uint64_t sub_seed =
                derive_seed(plan.master_seed, std::uint64_t(ci) * plan.scenarios.size() + si);

            // bit k: rejection of plan.tests[k]; bit 16: degenerate Gram
            std::vector<std::uint32_t> flags(std::size_t(reps), 0u);
            std::string first_error;

#pragma omp parallel for schedule(static) num_threads(nthreads)
            for (int r = 0; r < reps; ++r) {
                try {
                    const DataMatrix x = sample(pop, p, n, SeedSpec{sub_seed, std::uint64_t(r)});
                    const Eigen::MatrixXd g = gram_matrix(x.values(), GramKernel::Serial);
                    const CellTraces tr = traces_of(g, p, n, want_qlrt);
                    std::uint32_t bits = 0;
                    for (std::size_t k = 0; k < plan.tests.size(); ++k) {
                        double z;
                        switch (plan.tests[k]) {
                            case TestKind::John: {
                                const double u = double(p) * tr.t2 / (tr.t1 * tr.t1) - 1.0;
                                z = (double(n) * u - double(p) - (nu4 - 2.0)) / 2.0;
                                break;
                            }
                            case TestKind::QLRT: {
                                if (tr.singular) {
                                    // singular Gram: infinite statistic, counted
                                    // as a rejection and tallied separately
                                    bits |= (1u << k) | (1u << 16);
                                    continue;
                                }
                                const double l = (double(p) / double(n)) *
                                                 (double(n) * std::log(tr.t1 / double(n)) - tr.logdet);
                                z = l - double(n) / 2.0 -
                                    double(n) * double(n) / (6.0 * double(p)) - (nu4 - 2.0) / 2.0;
                                break;
                            }
                            case TestKind::Chen: {
                                if (plan.chen_max_p > 0 && p > plan.chen_max_p) continue;
                                const StatisticValue un = chen_Un_from_gram(g, p, plan.chen_method);
                                z = double(n) * un.value / 2.0;
                                break;
                            }
                            case TestKind::Srivastava: {
                                const double trs = (double(p) / double(n)) * tr.t1;
                                const double trs2 =
                                    (double(p) * double(p)) / (double(n) * double(n)) * tr.t2;
                                const double cn =
                                    double(n) * double(n) / ((double(n) - 1.0) * (double(n) + 2.0));
                                z = 0.5 * double(n) *
                                    (cn * (trs2 - trs * trs / double(n)) / double(p) /
                                         ((trs / double(p)) * (trs / double(p))) -
                                     1.0);
                                break;
                            }
                            default: continue;
                        }
                        if (z > z_alpha) bits |= (1u << k);
                    }
                    flags[std::size_t(r)] = bits;
                } catch (const std::exception& e) {
#pragma omp critical
                    if (first_error.empty()) first_error = e.what();
                }
            }
            if (!first_error.empty()) {
                throw Error(ErrorCode::InvalidArgument,
                            "run_size_power: replicate failed: " + first_error);
            }

            // reduce strictly by replicate index
            std::vector<int> rejects(plan.tests.size(), 0);
            int degenerate = 0;
            for (int r = 0; r < reps; ++r) {
                const std::uint32_t bits = flags[std::size_t(r)];
                for (std::size_t k = 0; k < plan.tests.size(); ++k)
                    if (bits & (1u << k)) ++rejects[k];
                if (bits & (1u << 16)) ++degenerate;
            }
            for (std::size_t k = 0; k < plan.tests.size(); ++k) {
                if (plan.tests[k] == TestKind::Chen && plan.chen_max_p > 0 && p > plan.chen_max_p)
                    continue;
                RateRow row;
                row.p = p;
                row.n = n;
                row.test = plan.tests[k];
                row.scenario = sc.name;
                row.rate = double(rejects[k]) / double(reps);
                row.stderr_ = std::sqrt(row.rate * (1.0 - row.rate) / double(reps));
                row.replications = reps;
                row.seed = plan.master_seed;
                row.degenerate = (plan.tests[k] == TestKind::QLRT) ? degenerate : 0;
                report.rows.push_back(std::move(row));
            }
        }
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

std::string report_csv(const SimulationReport& report) {
    std::string out = "p,n,test,scenario,rate,stderr,replications,seed\n";
    char buf[256];
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%s,%s,%.17g,%.17g,%d,%llu\n",
                      (long long)r.p, (long long)r.n, test_kind_name(r.test), r.scenario.c_str(),
                      r.rate, r.stderr_, r.replications, (unsigned long long)r.seed);
        out += buf;
    }
    return out;
}

std::string manifest_text(const SimulationReport& report) {
    const RunManifest& m = report.manifest;
    std::string out;
    out += "generator=" + m.generator + "\n";
    out += "gaussian_method=" + m.gaussian_method + "\n";
    out += "master_seed=" + std::to_string(m.master_seed) + "\n";
    out += "entry_dist=" + m.entry_dist + "\n";
    for (const auto& s : m.sigma_specs) out += "sigma=" + s + "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "level=%.17g\n", m.level);
    out += buf;
    out += "replications=" + std::to_string(m.replications) + "\n";
    out += "workers=" + std::to_string(m.workers) + "\n";
    return out;
}

namespace {

const RateRow* find_row(const SimulationReport& rep, Eigen::Index p, Eigen::Index n, TestKind t,
                        const std::string& scenario) {
    for (const auto& r : rep.rows)
        if (r.p == p && r.n == n && r.test == t && r.scenario == scenario) return &r;
    return nullptr;
}

}  // namespace

std::string report_table(const SimulationReport& report, const ExperimentPlan& plan) {
    std::ostringstream os;
    char buf[64];

    const bool power_layout = plan.grid.size() == 1 && plan.scenarios.size() >= 2;
    if (power_layout) {
        const auto [p, n] = plan.grid[0];
        const double nu4 = plan.entry_dist == EntryDist::StdNormal ? 3.0 : 4.5;
        os << "(p,n) = (" << p << "," << n << ")  population = "
           << entry_dist_name(plan.entry_dist) << "  level = " << plan.level << "\n";
        os << "scenario        ";
        for (TestKind t : plan.tests) {
            std::snprintf(buf, sizeof buf, "%12s-emp", test_kind_name(t));
            os << buf;
            if (t == TestKind::John || t == TestKind::QLRT) {
                std::snprintf(buf, sizeof buf, "%12s-thy", test_kind_name(t));
                os << buf;
            }
        }
        os << "\n";
        for (const auto& sc : plan.scenarios) {
            std::snprintf(buf, sizeof buf, "%-16s", sc.name.c_str());
            os << buf;
            SigmaSpec sized = sc.sigma;
            sized.p = p;
            for (TestKind t : plan.tests) {
                const RateRow* row = find_row(report, p, n, t, sc.name);
                if (row) std::snprintf(buf, sizeof buf, "%16.6g", row->rate);
                else std::snprintf(buf, sizeof buf, "%16s", "-");
                os << buf;
                if (t == TestKind::John || t == TestKind::QLRT) {
                    if (sigma_is_diagonal(sized)) {
                        const SigmaFunctionals f = functionals(sized);
                        const double beta = (t == TestKind::John)
                                                ? john_power(f, nu4, n, p, plan.level)
                                                : qlrt_power(f, nu4, n, p, plan.level);
                        std::snprintf(buf, sizeof buf, "%16.6g", beta);
                    } else {
                        std::snprintf(buf, sizeof buf, "%16s", "-");
                    }
                    os << buf;
                }
            }
            os << "\n";
        }
        return os.str();
    }

    os << "population = " << entry_dist_name(plan.entry_dist) << "  level = " << plan.level
       << "  replications = " << plan.replications << "\n";
    os << "(p,n)           ";
    for (const auto& sc : plan.scenarios)
        for (TestKind t : plan.tests) {
            std::snprintf(buf, sizeof buf, "%11s/%s", sc.name.c_str(), test_kind_name(t));
            os << buf;
        }
    os << "\n";
    for (const auto& [p, n] : plan.grid) {
        std::snprintf(buf, sizeof buf, "(%lld,%lld)", (long long)p, (long long)n);
        os << buf << std::string(16 - std::min<std::size_t>(16, std::string(buf).size()), ' ');
        for (const auto& sc : plan.scenarios)
            for (TestKind t : plan.tests) {
                const RateRow* row = find_row(report, p, n, t, sc.name);
                if (row) std::snprintf(buf, sizeof buf, "%*.*g", 11 + int(sc.name.size()) + 1, 6, row->rate);
                else std::snprintf(buf, sizeof buf, "%*s", 11 + int(sc.name.size()) + 1, "-");
                os << buf;
            }
        os << "\n";
    }
    return os.str();
}

LemmaMomentReport verify_lemma_moments(LemmaId which, const PopulationSpec& pop, Eigen::Index p,
                                       Eigen::Index n, int replications,
                                       std::uint64_t master_seed, int workers) {
    if (replications < 2) {
        throw Error(ErrorCode::InvalidArgument, "verify_lemma_moments: needs >= 2 replications");
    }
    const bool null_lemma = which == LemmaId::L1 || which == LemmaId::L2;
    if (null_lemma) {
        const auto* si = std::get_if<ScaledIdentity>(&pop.sigma.kind);
        if (!si || si->sigma2 != 1.0) {
            throw Error(ErrorCode::InvalidArgument,
                        "verify_lemma_moments: L1/L2 are null-setting lemmas; Sigma must be identity with sigma^2 = 1");
        }
    }
    const double nu4 = pop.nu4();
    SigmaSpec sized = pop.sigma;
    sized.p = p;
    const SigmaFunctionals f = functionals(sized);
    const double g = f.gamma, th = f.theta, om = f.omega;
    const double np = double(n) / double(p);
    const double pn = double(p) / double(n);
    const bool need_logdet = which == LemmaId::L2 || which == LemmaId::L4;

    const auto nreps = std::size_t(replications);
    std::vector<double> c1(nreps);
    std::vector<double> c2(nreps);
    std::string first_error;
    const int nthreads = resolve_workers(workers);

#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (int r = 0; r < replications; ++r) {
        try {
            PopulationSpec local = pop;
            local.sigma = sized;
            const DataMatrix x = sample(local, p, n, SeedSpec{master_seed, std::uint64_t(r)});
            const Eigen::MatrixXd gm = gram_matrix(x.values(), GramKernel::Serial);
            const CellTraces tr = traces_of(gm, p, n, need_logdet);
            if (tr.singular) throw Error(ErrorCode::SingularGram, "singular Gram in lemma replicate");
            double a = 0.0, b = 0.0;
            switch (which) {
                case LemmaId::L1:
                    a = pn * (tr.t2 - 2.0 * tr.t1 + double(n)) - double(n) - (nu4 - 2.0);
                    b = std::sqrt(pn) * (tr.t1 - double(n));
                    break;
                case LemmaId::L2:
                    a = std::sqrt(pn) * (tr.t1 - double(n));
                    b = std::sqrt(pn) * tr.logdet + 0.5 * std::sqrt(double(n) * double(n) * np) +
                        (double(n) * double(n) / (6.0 * double(p))) * std::sqrt(np) +
                        0.5 * (nu4 - 2.0) * std::sqrt(np);
                    break;
                case LemmaId::L3:
                    a = double(p) * (tr.t2 - 2.0 * g * tr.t1 + double(n) * g * g) /
                            (double(n) * th) -
                        double(n) - ((om / th) * (nu4 - 3.0) + 1.0);
                    b = std::sqrt(pn / th) * (tr.t1 - double(n) * g);
                    break;
                case LemmaId::L4: {
                    const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
                    a = std::sqrt(pn / th) * (tr.t1 - double(n) * g);
                    b = std::sqrt(pn) * tr.logdet - std::sqrt(double(p) * double(n)) * std::log(g) +
                        (th / (2.0 * g2)) * std::sqrt(double(n) * double(n) * np) +
                        ((th * th / (2.0 * g4) - th * std::sqrt(th) / (3.0 * g3)) *
                             (double(n) * double(n) / double(p)) +
                         th / (2.0 * g2) + (om / (2.0 * g2)) * (nu4 - 3.0)) *
                            std::sqrt(np);
                    break;
                }
            }
            c1[std::size_t(r)] = a;
            c2[std::size_t(r)] = b;
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) {
        throw Error(ErrorCode::InvalidArgument, "verify_lemma_moments: " + first_error);
    }

    LemmaMomentReport rep;
    rep.which = which;
    rep.p = p;
    rep.n = n;
    rep.replications = replications;
    rep.nu4 = nu4;

    const double nr = double(replications);
    double m1 = 0.0, m2 = 0.0;
    for (int r = 0; r < replications; ++r) {
        m1 += c1[std::size_t(r)];
        m2 += c2[std::size_t(r)];
    }
    m1 /= nr;
    m2 /= nr;
    double v11 = 0.0, v22 = 0.0, v12 = 0.0;
    for (int r = 0; r < replications; ++r) {
        const double d1 = c1[std::size_t(r)] - m1;
        const double d2 = c2[std::size_t(r)] - m2;
        v11 += d1 * d1;
        v22 += d2 * d2;
        v12 += d1 * d2;
    }
    v11 /= nr - 1.0;
    v22 /= nr - 1.0;
    v12 /= nr - 1.0;

    rep.mean = {m1, m2};
    rep.mean_stderr = {std::sqrt(v11 / nr), std::sqrt(v22 / nr)};
    rep.cov = {{{v11, v12}, {v12, v22}}};
    rep.var_stderr = {v11 * std::sqrt(2.0 / (nr - 1.0)), v22 * std::sqrt(2.0 / (nr - 1.0))};
    rep.cov_stderr = std::sqrt((v11 * v22 + v12 * v12) / nr);

    rep.target_mean = {0.0, 0.0};
    switch (which) {
        case LemmaId::L1:
            rep.target_cov = {{{4.0, 0.0}, {0.0, nu4 - 1.0}}};
            break;
        case LemmaId::L2: {
            const double c = (nu4 - 1.0) * (1.0 + np);
            rep.target_cov = {{{nu4 - 1.0, c}, {c, nu4 - 1.0 + np * (2.0 * nu4 - 1.0)}}};
            break;
        }
        case LemmaId::L3: {
            const double r2 = (om / th) * (nu4 - 3.0) + 2.0;
            rep.target_cov = {{{4.0, 0.0}, {0.0, r2}}};
            break;
        }
        case LemmaId::L4: {
            const double r0 = (om / th) * (nu4 - 3.0) + 2.0;
            const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
            const double off = r0 * (std::sqrt(th) / g + th * std::sqrt(th) / g3 * np);
            const double v2t = r0 * th / g2 + (2.0 * (om / th) * (nu4 - 3.0) + 5.0) * th * th * np / g4;
            rep.target_cov = {{{r0, off}, {off, v2t}}};
            break;
        }
    }
    return rep;
}

std::string lemma_report_text(const LemmaMomentReport& r) {
    static const char* names[] = {"L1", "L2", "L3", "L4"};
    std::ostringstream os;
    char buf[256];
    os << "lemma " << names[int(r.which)] << "  (p,n)=(" << r.p << "," << r.n << ")  reps="
       << r.replications << "  nu4=" << r.nu4 << "\n";
    for (int i = 0; i < 2; ++i) {
        std::snprintf(buf, sizeof buf,
                      "  coord %d: mean %+.6g (stderr %.3g, target %+.3g)   var %.6g (target %.6g)\n",
                      i + 1, r.mean[std::size_t(i)], r.mean_stderr[std::size_t(i)],
                      r.target_mean[std::size_t(i)], r.cov[std::size_t(i)][std::size_t(i)],
                      r.target_cov[std::size_t(i)][std::size_t(i)]);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "  cov %+.6g (stderr %.3g, target %+.6g)\n", r.cov[0][1],
                  r.cov_stderr, r.target_cov[0][1]);
    os << buf;
    return os.str();
}

}  // namespace sphericity
