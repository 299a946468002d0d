#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sphericity/populations.hpp"
#include "sphericity/stats.hpp"

namespace sphericity {

struct Scenario {
    std::string name;
    SigmaSpec sigma;  // sigma.p is taken from the grid cell at run time
};

struct ExperimentPlan {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> grid;  // (p, n)
    std::vector<TestKind> tests;
    EntryDist entry_dist = EntryDist::StdNormal;
    std::vector<Scenario> scenarios;
    double level = 0.05;
    int replications = 2000;
    std::uint64_t master_seed = 0;
    ChenMethod chen_method = ChenMethod::Reduced;
    Eigen::Index chen_max_p = 0;  // 0 = no limit; else skip Chen above this p
};

/// Parse the key=value plan format (see plans/ for the documented
/// grammar). Throws PlanParseError with a line diagnostic.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan parse_plan_file(const std::string& path);

struct RateRow {
    Eigen::Index p;
    Eigen::Index n;
    TestKind test;
    std::string scenario;
    double rate;
    double stderr_;  // sqrt(rate (1-rate) / replications)
    int replications;
    std::uint64_t seed;
    int degenerate = 0;  // replicates rejected through a singular Gram
};

struct RunManifest {
    std::string generator = "philox4x32-10";
    std::string gaussian_method = "inverse-cdf-ppnd16";
    std::uint64_t master_seed = 0;
    std::string entry_dist;
    std::vector<std::string> sigma_specs;  // one per scenario
    double level = 0.05;
    int replications = 0;
    int workers = 0;
};

struct SimulationReport {
    std::vector<RateRow> rows;
    RunManifest manifest;
    double runtime_seconds = 0.0;
};

/// Run the replication experiment. Replicates map to streams by
/// replicate index, never by arrival order, so the report is
/// bit-identical for any worker count. workers = 0 uses the OpenMP
/// default.
SimulationReport run_size_power(const ExperimentPlan& plan, int workers = 0);

std::string report_csv(const SimulationReport& report);
std::string manifest_text(const SimulationReport& report);

/// Paper-style table rendering: grid cells as rows with scenario-grouped
/// test columns; a single-cell multi-scenario plan renders scenarios as
/// rows with empirical and theoretical power side by side.
std::string report_table(const SimulationReport& report, const ExperimentPlan& plan);

enum class LemmaId { L1, L2, L3, L4 };

struct LemmaMomentReport {
    LemmaId which;
    Eigen::Index p, n;
    int replications;
    double nu4;
    std::array<double, 2> mean;
    std::array<double, 2> mean_stderr;
    std::array<std::array<double, 2>, 2> cov;      // sample covariance
    std::array<double, 2> var_stderr;              // stderr of the variance estimates
    double cov_stderr;                             // stderr of the off-diagonal estimate
    std::array<double, 2> target_mean;             // asserted limits
    std::array<std::array<double, 2>, 2> target_cov;
};

/// Simulate the lemma's two-coordinate eigenvalue statistic and report
/// empirical moments next to the asserted limits. All four statistics
/// reduce to companion trace moments and the log-determinant, so no
/// eigendecomposition is run.
LemmaMomentReport verify_lemma_moments(LemmaId which, const PopulationSpec& pop, Eigen::Index p,
                                       Eigen::Index n, int replications,
                                       std::uint64_t master_seed, int workers = 0);

std::string lemma_report_text(const LemmaMomentReport& r);

}  // namespace sphericity
