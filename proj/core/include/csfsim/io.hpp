#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csfsim/estimate.hpp"
#include "csfsim/sim.hpp"

namespace csfsim {

/// Shortest-round-trip decimal rendering of a double (std::to_chars).
/// Integral values print without a decimal point.
std::string format_double(double v);

/// Reproducibility record written beside each dataset CSV.
struct ExperimentManifest {
    std::uint64_t master_seed = 0;
    int iterations = 0;
    int games_per_team = 162;
    double league_mean_rpg = 4.07;
    double dispersion = 4.0;
    double extra_inning_mean_divisor = 9.0;
    std::string schedule_source = "builtin";
    std::string tool_version;
    std::string config_digest;
};

/// Reads a `team_id,name,off_rpg,def_rpg` CSV. Errors carry the file name,
/// the 1-based line number, and the offending field.
std::vector<TeamParams> load_team_params(const std::string& path);

void write_team_params(const std::string& path, const std::vector<TeamParams>& teams);

/// Sidecar manifest path for a dataset: "x.csv" -> "x.manifest.json".
std::string manifest_path_for(const std::string& dataset_path);

/// Writes the dataset as `iteration,team_id,wins,losses,rs,ra` rows ordered
/// by (iteration, team_id), plus the sidecar manifest JSON.
void write_dataset(const std::string& path, const SimDataset& data,
                   const ExperimentManifest& manifest);

/// Reads a dataset CSV back, validating every row invariant (wins+losses
/// constant across rows, non-negative wins, positive runs, per-iteration
/// conservation of wins and runs for whole-number seasons). Loads the
/// sidecar manifest when present to recover seed and digest.
SimDataset read_dataset(const std::string& path);

ExperimentManifest read_manifest(const std::string& path);
void write_manifest(const std::string& path, const ExperimentManifest& manifest);

/// Expands a `home_id,away_id,count` matchup CSV into an ordered schedule.
Schedule load_schedule(const std::string& path);

enum class ReportFormat { text, json, csv };

ReportFormat report_format_from_string(const std::string& name);

/// Splits a natural-log-scale magnitude into (mantissa, base-10 exponent)
/// with mantissa in [1, 10). Survives magnitudes far beyond double range.
struct DecimalSci {
    double mantissa;
    long exponent;
};
DecimalSci decimal_sci_from_ln(double natural_log);

/// Renders the model comparison. Text mirrors the five-metric table layout;
/// json and csv carry full double precision. JSON output is canonical:
/// parse + re-render is byte-identical.
std::string render_comparison(const ComparisonReport& report, ReportFormat format);

std::string render_fit_json(const FitReport& report);

}  // namespace csfsim
