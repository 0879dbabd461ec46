#include "csfsim/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace csfsim {

namespace {

using nlohmann::json;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line,
                    const std::string& field_name) {
    double v = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        fail(path, line, "cannot parse " + field_name + " value '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s, const std::string& path, std::size_t line,
                const std::string& field_name) {
    long v = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        fail(path, line, "cannot parse " + field_name + " value '" + s + "'");
    }
    return v;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open for reading");
    }
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    return out;
}

json manifest_to_json(const ExperimentManifest& m) {
    json j;
    j["master_seed"] = m.master_seed;
    j["iterations"] = m.iterations;
    j["games_per_team"] = m.games_per_team;
    j["league_mean_rpg"] = m.league_mean_rpg;
    j["dispersion"] = m.dispersion;
    j["extra_inning_mean_divisor"] = m.extra_inning_mean_divisor;
    j["schedule_source"] = m.schedule_source;
    j["tool_version"] = m.tool_version;
    j["config_digest"] = m.config_digest;
    return j;
}

json fit_to_json(const FitReport& r) {
    json j;
    j["form"] = to_string(r.form);
    j["coefficients"] = r.coefficients;
    j["standard_errors"] = r.standard_errors;
    j["n"] = r.n;
    j["k"] = r.k;
    j["rss"] = r.rss;
    j["r2"] = r.r2;
    j["r2_uncentered"] = r.r2_uncentered;
    j["rmse"] = r.rmse;
    j["rmse_win_pct"] = r.rmse_win_pct;
    j["perfect_fit"] = r.perfect_fit;
    if (r.perfect_fit) {
        j["loglik"] = nullptr;
        j["aic"] = nullptr;
    } else {
        j["loglik"] = r.loglik;
        j["aic"] = r.aic;
    }
    j["fixed_effects"] = r.options.fixed_effects;
    j["intercept"] = r.options.intercept;
    j["degenerate_policy"] = r.options.degenerate_policy == DegeneratePolicy::drop
                                 ? "drop"
                                 : "clamp-half-win";
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::vector<TeamParams> load_team_params(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        fail(path, 1, "empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "team_id,name,off_rpg,def_rpg") {
        fail(path, 1, "expected header 'team_id,name,off_rpg,def_rpg'");
    }

    std::vector<TeamParams> teams;
    std::vector<int> seen_ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            fail(path, line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        TeamParams team;
        team.team_id = static_cast<int>(parse_long(fields[0], path, line_no, "team_id"));
        team.name = fields[1];
        team.off_rpg = parse_double(fields[2], path, line_no, "off_rpg");
        team.def_rpg = parse_double(fields[3], path, line_no, "def_rpg");
        if (team.name.empty()) {
            fail(path, line_no, "field name must be non-empty");
        }
        if (!(team.off_rpg > 0.0)) {
            fail(path, line_no, "field off_rpg must be > 0");
        }
        if (!(team.def_rpg > 0.0)) {
            fail(path, line_no, "field def_rpg must be > 0");
        }
        if (std::find(seen_ids.begin(), seen_ids.end(), team.team_id) != seen_ids.end()) {
            fail(path, line_no, "duplicate team_id " + std::to_string(team.team_id));
        }
        seen_ids.push_back(team.team_id);
        teams.push_back(std::move(team));
    }
    if (teams.empty()) {
        fail(path, line_no, "no team rows");
    }
    return teams;
}

void write_team_params(const std::string& path, const std::vector<TeamParams>& teams) {
    auto out = open_output(path);
    out << "team_id,name,off_rpg,def_rpg\n";
    for (const auto& team : teams) {
        if (team.name.find(',') != std::string::npos) {
            throw std::runtime_error(path + ": team name '" + team.name +
                                     "' contains a comma");
        }
        out << team.team_id << ',' << team.name << ',' << format_double(team.off_rpg) << ','
            << format_double(team.def_rpg) << '\n';
    }
}

std::string manifest_path_for(const std::string& dataset_path) {
    const std::string suffix = ".csv";
    if (dataset_path.size() > suffix.size() &&
        dataset_path.compare(dataset_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return dataset_path.substr(0, dataset_path.size() - suffix.size()) + ".manifest.json";
    }
    return dataset_path + ".manifest.json";
}

void write_manifest(const std::string& path, const ExperimentManifest& manifest) {
    json j = manifest_to_json(manifest);
    j["manifest_digest"] = fnv1a_hex(j.dump());
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

ExperimentManifest read_manifest(const std::string& path) {
    auto in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    const std::string stored = j.value("manifest_digest", "");
    j.erase("manifest_digest");
    if (stored != fnv1a_hex(j.dump())) {
        throw std::runtime_error(path + ": manifest digest mismatch");
    }
    ExperimentManifest m;
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.iterations = j.at("iterations").get<int>();
    m.games_per_team = j.at("games_per_team").get<int>();
    m.league_mean_rpg = j.at("league_mean_rpg").get<double>();
    m.dispersion = j.at("dispersion").get<double>();
    m.extra_inning_mean_divisor = j.at("extra_inning_mean_divisor").get<double>();
    m.schedule_source = j.at("schedule_source").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config_digest = j.at("config_digest").get<std::string>();
    return m;
}

void write_dataset(const std::string& path, const SimDataset& data,
                   const ExperimentManifest& manifest) {
    auto rows = data.rows;
    std::sort(rows.begin(), rows.end(), [](const TeamSeasonLine& a, const TeamSeasonLine& b) {
        return std::tie(a.iteration, a.team_id) < std::tie(b.iteration, b.team_id);
    });
    auto out = open_output(path);
    out << "iteration,team_id,wins,losses,rs,ra\n";
    for (const auto& row : rows) {
        out << row.iteration << ',' << row.team_id << ',' << format_double(row.wins) << ','
            << format_double(row.losses) << ',' << format_double(row.rs) << ','
            << format_double(row.ra) << '\n';
    }
    write_manifest(manifest_path_for(path), manifest);
}

SimDataset read_dataset(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        fail(path, 1, "empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "iteration,team_id,wins,losses,rs,ra") {
        fail(path, 1, "expected header 'iteration,team_id,wins,losses,rs,ra'");
    }

    SimDataset data;
    double games_per_team = -1.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 6) {
            fail(path, line_no, "expected 6 fields, got " + std::to_string(fields.size()));
        }
        TeamSeasonLine row;
        row.iteration = static_cast<int>(parse_long(fields[0], path, line_no, "iteration"));
        row.team_id = static_cast<int>(parse_long(fields[1], path, line_no, "team_id"));
        row.wins = parse_double(fields[2], path, line_no, "wins");
        row.losses = parse_double(fields[3], path, line_no, "losses");
        row.rs = parse_double(fields[4], path, line_no, "rs");
        row.ra = parse_double(fields[5], path, line_no, "ra");

        const double games = row.wins + row.losses;
        if (games_per_team < 0.0) {
            games_per_team = games;
        } else if (games != games_per_team) {
            fail(path, line_no,
                 "wins+losses = " + format_double(games) + " differs from " +
                     format_double(games_per_team) + " on earlier rows");
        }
        if (row.wins < 0.0 || row.wins > games || !(games > 0.0)) {
            fail(path, line_no, "wins must lie in [0, wins+losses]");
        }
        if (!(row.rs > 0.0) || !(row.ra > 0.0)) {
            fail(path, line_no, "run totals must be > 0");
        }
        data.rows.push_back(row);
    }
    if (data.rows.empty()) {
        fail(path, line_no, "no data rows");
    }

    const std::string mpath = manifest_path_for(path);
    if (std::ifstream probe(mpath); probe.good()) {
        const ExperimentManifest m = read_manifest(mpath);
        data.master_seed = m.master_seed;
        data.config_digest = m.config_digest;
    }
    return data;
}

Schedule load_schedule(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        fail(path, 1, "empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "home_id,away_id,count") {
        fail(path, 1, "expected header 'home_id,away_id,count'");
    }
    Schedule schedule;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            fail(path, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
        }
        const int home = static_cast<int>(parse_long(fields[0], path, line_no, "home_id"));
        const int away = static_cast<int>(parse_long(fields[1], path, line_no, "away_id"));
        const long count = parse_long(fields[2], path, line_no, "count");
        if (home == away) {
            fail(path, line_no, "home_id equals away_id");
        }
        if (count < 1) {
            fail(path, line_no, "count must be >= 1");
        }
        for (long c = 0; c < count; ++c) {
            schedule.games.push_back({home, away});
        }
    }
    if (schedule.games.empty()) {
        fail(path, line_no, "no matchup rows");
    }
    return schedule;
}

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "text") {
        return ReportFormat::text;
    }
    if (name == "json") {
        return ReportFormat::json;
    }
    if (name == "csv") {
        return ReportFormat::csv;
    }
    throw std::runtime_error("unknown report format '" + name + "'");
}

DecimalSci decimal_sci_from_ln(double natural_log) {
    if (std::isnan(natural_log)) {
        return {std::numeric_limits<double>::quiet_NaN(), 0};
    }
    if (std::isinf(natural_log)) {
        return {natural_log > 0 ? std::numeric_limits<double>::infinity() : 0.0, 0};
    }
    const double log10v = natural_log / 2.302585092994046;
    double e = std::floor(log10v);
    double mantissa = std::pow(10.0, log10v - e);
    if (mantissa >= 10.0) {
        mantissa /= 10.0;
        e += 1.0;
    }
    return {mantissa, static_cast<long>(e)};
}

std::string render_fit_json(const FitReport& report) {
    return fit_to_json(report).dump(2) + "\n";
}

std::string render_comparison(const ComparisonReport& report, ReportFormat format) {
    const auto& t = report.tullock;
    const auto& d = report.difference;
    const DecimalSci ratio = decimal_sci_from_ln(report.evidence_log);

    if (format == ReportFormat::json) {
        json j;
        j["tullock"] = fit_to_json(t);
        j["difference"] = fit_to_json(d);
        j["preferred"] = to_string(report.preferred);
        j["evidence_ratio"] = json{{"value", std::isfinite(report.evidence_ratio)
                                                 ? json(report.evidence_ratio)
                                                 : json(nullptr)},
                                   {"ln", std::isfinite(report.evidence_log)
                                              ? json(report.evidence_log)
                                              : json(nullptr)},
                                   {"mantissa", std::isfinite(ratio.mantissa)
                                                    ? json(ratio.mantissa)
                                                    : json(nullptr)},
                                   {"exponent", ratio.exponent}};
        return j.dump(2) + "\n";
    }

    if (format == ReportFormat::csv) {
        std::ostringstream out;
        auto row = [&](const char* metric, double a, double b) {
            out << metric << ',' << format_double(a) << ',' << format_double(b) << '\n';
        };
        out << "metric,tullock,difference\n";
        row("parameter", t.coefficients.at(0), d.coefficients.at(0));
        row("std_error", t.standard_errors.at(0), d.standard_errors.at(0));
        row("n", static_cast<double>(t.n), static_cast<double>(d.n));
        row("r2", t.r2, d.r2);
        row("aic", t.aic, d.aic);
        row("rmse", t.rmse, d.rmse);
        out << "preferred," << to_string(report.preferred) << ",\n";
        out << "evidence_ratio_mantissa," << format_double(ratio.mantissa) << ",\n";
        out << "evidence_ratio_exponent," << ratio.exponent << ",\n";
        return out.str();
    }

    std::ostringstream out;
    char buf[96];
    out << "Expected win percentage models\n";
    out << "==============================================================\n";
    std::snprintf(buf, sizeof(buf), "%-22s %18s %18s\n", "", "tullock", "difference");
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-22s %18.4f %18.6f\n", "parameter",
                  t.coefficients.at(0), d.coefficients.at(0));
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-22s %18.6f %18.6g\n", "  (std. error)",
                  t.standard_errors.at(0), d.standard_errors.at(0));
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-22s %18ld %18ld\n", "observations", t.n, d.n);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-22s %18.4f %18.4f\n", "r-squared", t.r2, d.r2);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-22s %18.2f %18.2f\n", "aic", t.aic, d.aic);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-22s %18.5f %18.5f\n", "rmse", t.rmse, d.rmse);
    out << buf;
    out << "--------------------------------------------------------------\n";
    out << "preferred model: " << to_string(report.preferred) << "\n";
    std::snprintf(buf, sizeof(buf), "evidence ratio P_T/P_D: %.2fe%+ld (exp(%.2f))\n",
                  ratio.mantissa, ratio.exponent, report.evidence_log);
    out << buf;
    return out.str();
}

}  // namespace csfsim
