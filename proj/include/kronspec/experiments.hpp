#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kronspec/estimators.hpp"
#include "kronspec/metrics.hpp"
#include "kronspec/random_graphs.hpp"

namespace kronspec {

/// Factor families an experiment can draw from. RingLattice is a debug
/// family: circulant 4-regular factors (density ignored), for which both
/// estimators are exact.
enum class FactorFamily { ER, WS, BA, RingLattice };

std::string to_string(FactorFamily f);
FactorFamily parse_factor_family(const std::string& name);

enum class Basis { Laplacian, Normalized };  // w-basis and v-basis
std::string to_string(Basis b);

struct ExperimentConfig {
    FactorFamily model = FactorFamily::ER;
    std::size_t n1 = 30;
    std::size_t n2 = 50;
    double density = 0.10;
    std::size_t runs = 100;
    std::vector<EstimatorMethod> estimators = {EstimatorMethod::SayamaLaplacian,
                                               EstimatorMethod::NormalizedLaplacian};
    Ordering ordering{};
    bool correlations = true;
    std::uint64_t master_seed = 1;
    std::string output_dir = "kronspec-out";
    double ws_beta = 0.25;
    std::size_t max_retries = 100;
    std::size_t kde_grid_size = 512;
    /// Required for orders above (50,100); those need a >= 20000-dim solve.
    bool allow_large = false;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// FNV-1a over the canonical JSON of the config, output_dir excluded.
std::string config_hash(const ExperimentConfig& config);

/// git-describe string baked in at build time.
std::string version_string();

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed1 = 0;
    std::uint64_t seed2 = 0;
    double density1 = 0.0;
    double density2 = 0.0;
    std::map<EstimatorMethod, std::vector<double>> errors;  // length n1*n2 - 1
    std::map<Basis, std::vector<PairCorrelation>> correlations;
    double wall_seconds = 0.0;
};

struct ReportBundle {
    ExperimentConfig config;
    std::vector<RunRecord> runs;
    std::map<EstimatorMethod, ErrorProfile> profiles;
    std::map<Basis, DensityCurve> curves;
    std::map<Basis, PassCount> normality;  // filled when runs >= 30
};

/// Factor pair for one run. Both factors are connected and at least one is
/// non-bipartite, so the product is connected.
struct FactorPair {
    Graph g1;
    Graph g2;
    std::uint64_t seed1;
    std::uint64_t seed2;
};
FactorPair generate_factor_pair(const ExperimentConfig& config, std::size_t run);

/// One run without aggregation.
RunRecord execute_run(const ExperimentConfig& config, std::size_t run);

/// All runs (worker pool capped by KRONSPEC_THREADS) plus aggregation.
/// Does not touch the filesystem.
ReportBundle run_experiment(const ExperimentConfig& config);

/// Writes errors_<estimator>.csv, kde_<basis>.csv, runs.csv and report.json
/// into config.output_dir (created if missing) and returns the file names.
/// Wall times go to timing.json, the only non-deterministic output.
std::vector<std::filesystem::path> write_bundle(const ReportBundle& bundle);

std::vector<std::string> figure_ids();

struct FigureOptions {
    std::optional<std::size_t> runs;  // overrides the figure's run count
    std::uint64_t master_seed = 1;
    double ws_beta = 0.25;
};

/// Runs the configuration grid behind a figure and writes one CSV per panel
/// plus manifest.json (panel -> file). Throws std::invalid_argument on an
/// unknown id.
nlohmann::json reproduce_figure(const std::string& figure_id, const std::filesystem::path& output_dir,
                                const FigureOptions& options = {});

/// Runs every closed-form and Monte-Carlo theory check and writes
/// theory_report.json: check id -> {inputs, predicted, observed, pass}.
nlohmann::json theory_suite(const std::filesystem::path& output_dir, std::uint64_t seed = 7);

/// Worker count: KRONSPEC_THREADS if set (>= 1), else hardware concurrency.
std::size_t worker_count();

}  // namespace kronspec
