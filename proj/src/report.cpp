#include "opf/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "opf/errors.hpp"

namespace opf {

using nlohmann::json;

double round6(double value) { return std::round(value * 1e6) / 1e6; }

std::string hyphen_join(const Pattern& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.ranks.size(); ++i) {
        if (i) os << '-';
        os << p.ranks[i];
    }
    return os.str();
}

Pattern pattern_from_hyphens(std::string_view text) {
    Pattern p;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t dash = text.find('-', start);
        const std::string token(text.substr(start, dash == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : dash - start));
        try {
            p.ranks.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw ParseError("bad pattern token: '" + std::string(text) + "'");
        }
        if (dash == std::string_view::npos) break;
        start = dash + 1;
    }
    if (!is_permutation_pattern(p)) {
        throw ParseError("not a pattern: '" + std::string(text) + "'");
    }
    return p;
}

namespace {

std::string format6(double value) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << value;
    return os.str();
}

std::vector<const PatternRecord*> sorted_records(const MiningResult& res) {
    std::vector<const PatternRecord*> recs;
    for (const auto& level : res.levels) {
        for (const PatternRecord& rec : level) recs.push_back(&rec);
    }
    std::sort(recs.begin(), recs.end(), [](const PatternRecord* a, const PatternRecord* b) {
        return pattern_less(a->pattern, b->pattern);
    });
    return recs;
}

json config_json(const MiningConfig& c) {
    json j;
    j["minsup"] = c.minsup;
    j["k"] = {{"mode", c.k.mode == KSpec::Mode::Coefficient ? "coeff" : "abs"},
              {"value", c.k.value}};
    j["candidate_gen"] = to_string(c.candidate_gen);
    j["priority"] = to_string(c.priority);
    j["support"] = to_string(c.support);
    j["prune"] = to_string(c.prune);
    j["max_length"] = c.max_length;
    if (!c.preset_name.empty()) j["preset"] = c.preset_name;
    return j;
}

json pattern_json(const PatternRecord& rec, bool emit_occurrences) {
    json j;
    j["ranks"] = rec.pattern.ranks;
    j["group"] = to_string(rec.group);
    j["support"] = round6(rec.support);
    j["occurrence_count"] = rec.occ.size();
    if (emit_occurrences) j["occurrences"] = rec.occ;
    return j;
}

void write_report_json(std::ostream& out, const std::vector<MiningResult>& results,
                       const ReportOptions& opt) {
    json root;
    root["artifact"] = kArtifactName;
    root["version"] = kArtifactVersion;
    if (!results.empty()) root["config"] = config_json(results.front().config);
    json series = json::array();
    for (const MiningResult& res : results) {
        json s;
        s["id"] = res.series_id;
        s["n"] = res.n;
        s["k"] = res.k;
        json patterns = json::array();
        for (const PatternRecord* rec : sorted_records(res)) {
            patterns.push_back(pattern_json(*rec, opt.emit_occurrences));
        }
        s["patterns"] = std::move(patterns);
        s["metrics"] = {{"candidates", res.metrics.candidates},
                        {"fusions", res.metrics.fusions},
                        {"support_calcs", res.metrics.support_calcs},
                        {"wall_ms", res.metrics.wall_ms}};
        series.push_back(std::move(s));
    }
    root["series"] = std::move(series);
    out << root.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const std::vector<MiningResult>& results,
                      const ReportOptions& opt) {
    out << "series_id,ranks,group,support,occurrence_count";
    if (opt.emit_occurrences) out << ",occurrences";
    out << '\n';
    for (const MiningResult& res : results) {
        for (const PatternRecord* rec : sorted_records(res)) {
            out << res.series_id << ',' << hyphen_join(rec->pattern) << ','
                << to_string(rec->group) << ',' << format6(round6(rec->support)) << ','
                << rec->occ.size();
            if (opt.emit_occurrences) {
                out << ',';
                for (std::size_t i = 0; i < rec->occ.size(); ++i) {
                    if (i) out << '|';
                    out << rec->occ[i];
                }
            }
            out << '\n';
        }
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos
                                                                  : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

void write_report(std::ostream& out, const std::vector<MiningResult>& results,
                  const ReportOptions& opt) {
    if (opt.format == ReportFormat::Json) {
        write_report_json(out, results, opt);
    } else {
        write_report_csv(out, results, opt);
    }
}

std::vector<ReportedPattern> read_report(std::istream& in, ReportFormat format) {
    std::vector<ReportedPattern> out;
    if (format == ReportFormat::Json) {
        json root;
        try {
            in >> root;
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad report json: ") + e.what());
        }
        for (const json& s : root.at("series")) {
            const std::string id = s.at("id").get<std::string>();
            for (const json& p : s.at("patterns")) {
                ReportedPattern rec;
                rec.series_id = id;
                rec.pattern.ranks = p.at("ranks").get<std::vector<int>>();
                rec.group = p.at("group").get<std::string>();
                rec.support = p.at("support").get<double>();
                rec.occurrence_count = p.at("occurrence_count").get<long long>();
                if (p.contains("occurrences")) {
                    rec.occurrences = p.at("occurrences").get<OccurrenceList>();
                }
                out.push_back(std::move(rec));
            }
        }
        return out;
    }

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty report");
    const bool with_occ = line.find(",occurrences") != std::string::npos;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() < 5) throw ParseError("bad report row: " + line);
        ReportedPattern rec;
        rec.series_id = fields[0];
        rec.pattern = pattern_from_hyphens(fields[1]);
        rec.group = fields[2];
        rec.support = std::stod(fields[3]);
        rec.occurrence_count = std::stoll(fields[4]);
        if (with_occ && fields.size() >= 6 && !fields[5].empty()) {
            for (const std::string& tok : split(fields[5], '|')) {
                rec.occurrences.push_back(std::stoi(tok));
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

void write_feature_matrix(std::ostream& out, const FeatureMatrix& X) {
    out << "id";
    for (const Pattern& p : X.vocabulary) out << ',' << hyphen_join(p);
    out << '\n';
    for (std::size_t r = 0; r < X.rows.size(); ++r) {
        out << X.ids[r];
        for (double v : X.rows[r]) out << ',' << format6(round6(v));
        out << '\n';
    }
}

FeatureMatrix read_feature_matrix(std::istream& in) {
    FeatureMatrix X;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty feature matrix");
    const auto header = split(line, ',');
    if (header.empty() || header[0] != "id") {
        throw ParseError("feature matrix header must start with 'id'");
    }
    for (std::size_t c = 1; c < header.size(); ++c) {
        X.vocabulary.push_back(pattern_from_hyphens(header[c]));
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw ParseError("feature row width does not match header: " + line);
        }
        X.ids.push_back(fields[0]);
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            try {
                row.push_back(std::stod(fields[c]));
            } catch (const std::exception&) {
                throw ParseError("bad feature value: '" + fields[c] + "'");
            }
        }
        X.rows.push_back(std::move(row));
    }
    if (X.rows.empty()) throw ParseError("feature matrix has no rows");
    return X;
}

void write_eval_report(std::ostream& out, const EvalReportConfig& config,
                       const std::vector<ClusteringResult>& entries) {
    json root;
    root["artifact"] = kArtifactName;
    root["version"] = kArtifactVersion;
    root["config"] = {{"features", config.features_path},
                      {"seed", config.seed},
                      {"zscore", config.zscore}};
    json results = json::array();
    for (const ClusteringResult& r : entries) {
        json e;
        e["K"] = r.K;
        e["iterations"] = r.iterations;
        e["empty_cluster_repairs"] = r.empty_cluster_repairs;
        if (std::isnan(r.sc)) {
            e["sc"] = nullptr;
        } else {
            e["sc"] = round6(r.sc);
        }
        if (std::isnan(r.chi)) {
            e["chi"] = nullptr;
        } else if (std::isinf(r.chi)) {
            e["chi"] = "inf";
        } else {
            e["chi"] = round6(r.chi);
        }
        e["assignments"] = r.assignments;
        results.push_back(std::move(e));
    }
    root["results"] = std::move(results);
    out << root.dump(2) << '\n';
}

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "preset,minsup,k_coeff,replicate,series,n_total,patterns,candidates,fusions,"
           "support_calcs,wall_ms\n";
    for (const BenchRow& r : rows) {
        out << r.preset << ',' << r.minsup << ',' << r.k_coeff << ',' << r.replicate << ','
            << r.series_count << ',' << r.n_total << ',' << r.patterns << ','
            << r.metrics.candidates << ',' << r.metrics.fusions << ','
            << r.metrics.support_calcs << ',' << format6(r.metrics.wall_ms) << '\n';
    }
}

} // namespace opf
