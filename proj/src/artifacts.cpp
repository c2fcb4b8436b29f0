#include "friendnet/artifacts.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "friendnet/errors.hpp"

namespace friendnet::io {

namespace {

using nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool looks_like_json(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
        return ch == '{';
    }
    return false;
}

double parse_double(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw IoError("malformed number: '" + text + "'");
    return v;
}

long long parse_int(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin) throw IoError("malformed integer: '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Parsed CSV artifact: "# key: value" metadata, a header row, data rows.
struct CsvDocument {
    std::map<std::string, std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvDocument parse_csv(const std::string& text, const std::filesystem::path& path) {
    CsvDocument doc;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw IoError("malformed metadata line in " + path.string() + ": " + line);
            std::string key = line.substr(1, colon - 1);
            std::string value = line.substr(colon + 1);
            while (!key.empty() && key.front() == ' ') key.erase(key.begin());
            while (!key.empty() && key.back() == ' ') key.pop_back();
            while (!value.empty() && value.front() == ' ') value.erase(value.begin());
            doc.meta[key] = value;
            continue;
        }
        if (!header_seen) {
            doc.header = split(line, ',');
            header_seen = true;
            continue;
        }
        doc.rows.push_back(split(line, ','));
    }
    if (!header_seen) throw IoError("missing header row in " + path.string());
    return doc;
}

/// Unified in-memory artifact shared by the CSV and JSON paths.
struct Document {
    std::map<std::string, std::string> meta;  // scalars as canonical strings
    std::vector<std::uint64_t> seeds;         // samples only
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Document load_document(const std::filesystem::path& path) {
    const std::string text = read_all(path);
    Document doc;
    if (looks_like_json(text)) {
        ordered_json j;
        try {
            j = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw IoError("malformed JSON artifact " + path.string() + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("meta") || !j.contains("header") || !j.contains("rows"))
            throw IoError("JSON artifact " + path.string() +
                          " must have meta, header, and rows fields");
        for (const auto& item : j["meta"].items()) {
            if (item.key() == "seeds") {
                for (const auto& s : item.value()) doc.seeds.push_back(s.get<std::uint64_t>());
                continue;
            }
            const auto& v = item.value();
            if (v.is_string())
                doc.meta[item.key()] = v.get<std::string>();
            else
                doc.meta[item.key()] = v.dump();
        }
        for (const auto& h : j["header"]) doc.header.push_back(h.get<std::string>());
        for (const auto& row : j["rows"]) {
            std::vector<double> r;
            r.reserve(row.size());
            for (const auto& v : row) r.push_back(v.get<double>());
            doc.rows.push_back(std::move(r));
        }
        return doc;
    }
    CsvDocument csv = parse_csv(text, path);
    doc.meta = std::move(csv.meta);
    if (auto it = doc.meta.find("seeds"); it != doc.meta.end()) {
        for (const std::string& tok : split(it->second, ' '))
            if (!tok.empty()) doc.seeds.push_back(static_cast<std::uint64_t>(parse_int(tok)));
        doc.meta.erase(it);
    }
    doc.header = std::move(csv.header);
    doc.rows.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        std::vector<double> r;
        r.reserve(row.size());
        for (const auto& cell : row) r.push_back(parse_double(cell));
        doc.rows.push_back(std::move(r));
    }
    return doc;
}

std::string meta_value(const Document& doc, const std::string& key,
                       const std::filesystem::path& path) {
    auto it = doc.meta.find(key);
    if (it == doc.meta.end())
        throw IoError("artifact " + path.string() + " is missing metadata key '" + key + "'");
    return it->second;
}

std::string meta_or(const Document& doc, const std::string& key, const std::string& fallback) {
    auto it = doc.meta.find(key);
    return it == doc.meta.end() ? fallback : it->second;
}

void expect_header(const Document& doc, const std::vector<std::string>& expected,
                   const std::filesystem::path& path) {
    if (doc.header != expected)
        throw IoError("artifact " + path.string() + " has an unexpected header row");
}

/// Writes either format from ordered metadata + rows.
void write_document(const std::filesystem::path& path, const std::string& format,
                    const std::vector<std::pair<std::string, std::string>>& meta,
                    const std::vector<std::uint64_t>* seeds,
                    const std::vector<std::string>& header,
                    const std::function<void(std::vector<double>&)>& next_row,
                    std::size_t row_count) {
    if (format == "json") {
        ordered_json j;
        ordered_json m;
        for (const auto& [key, value] : meta) {
            // Keep numbers as numbers where they round-trip.
            char* end = nullptr;
            const double num = std::strtod(value.c_str(), &end);
            if (end && *end == '\0' && !value.empty() && format_double(num) == value)
                m[key] = num;
            else
                m[key] = value;
        }
        if (seeds) m["seeds"] = *seeds;
        j["meta"] = std::move(m);
        j["header"] = header;
        ordered_json rows = ordered_json::array();
        std::vector<double> row;
        for (std::size_t i = 0; i < row_count; ++i) {
            row.clear();
            next_row(row);
            rows.push_back(row);
        }
        j["rows"] = std::move(rows);
        auto out = open_out(path);
        out << j.dump(2) << '\n';
        if (!out) throw IoError("write failed: " + path.string());
        return;
    }
    if (format != "csv") throw ValidationError("unknown artifact format: " + format);
    auto out = open_out(path);
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
    if (seeds) {
        out << "# seeds:";
        for (std::uint64_t s : *seeds) out << ' ' << s;
        out << '\n';
    }
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    std::vector<double> row;
    std::string line;
    for (std::size_t i = 0; i < row_count; ++i) {
        row.clear();
        next_row(row);
        line.clear();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += ',';
            line += format_double(row[c]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

void write_sample_set(const std::filesystem::path& path, const SampleSet& samples,
                      const std::string& format) {
    std::vector<std::pair<std::string, std::string>> meta{
        {"artifact", "samples"},
        {"config_digest", samples.config_digest},
        {"runs", std::to_string(samples.runs)},
        {"rounds", std::to_string(samples.rounds)},
        {"graph_variant", to_string(samples.variant)},
        {"base_seed", std::to_string(samples.base_seed)},
        {"p_low", format_double(samples.p_low)},
        {"p_high", format_double(samples.p_high)},
    };
    std::size_t i = 0;
    write_document(
        path, format, meta, &samples.seeds, {"run_id", "node_id", "personality", "degree"},
        [&](std::vector<double>& row) {
            const SampleRecord& rec = samples.records[i++];
            row = {static_cast<double>(rec.run_id), static_cast<double>(rec.node_id),
                   rec.personality, rec.degree};
        },
        samples.records.size());
}

SampleSet read_sample_set(const std::filesystem::path& path) {
    const Document doc = load_document(path);
    if (meta_or(doc, "artifact", "") != "samples")
        throw IoError("artifact " + path.string() + " is not a samples table");
    expect_header(doc, {"run_id", "node_id", "personality", "degree"}, path);
    SampleSet samples;
    samples.config_digest = meta_or(doc, "config_digest", "");
    samples.runs = static_cast<int>(parse_int(meta_value(doc, "runs", path)));
    samples.rounds = static_cast<long>(parse_int(meta_value(doc, "rounds", path)));
    samples.variant = graph_variant_from_string(meta_value(doc, "graph_variant", path));
    samples.base_seed = static_cast<std::uint64_t>(parse_int(meta_value(doc, "base_seed", path)));
    samples.p_low = parse_double(meta_value(doc, "p_low", path));
    samples.p_high = parse_double(meta_value(doc, "p_high", path));
    samples.seeds = doc.seeds;
    samples.records.reserve(doc.rows.size());
    for (const auto& row : doc.rows) {
        if (row.size() != 4) throw IoError("samples row width mismatch in " + path.string());
        samples.records.push_back({static_cast<int>(row[0]), static_cast<int>(row[1]), row[2],
                                   row[3]});
    }
    return samples;
}

std::vector<double> GridArtifact::p_weights() const {
    if (p_weight_kind == "unit") return std::vector<double>(p_grid.size(), 1.0);
    std::vector<double> weights(p_grid.size(), 0.0);
    for (std::size_t i = 0; i + 1 < p_grid.size(); ++i) {
        const double half = 0.5 * (p_grid[i + 1] - p_grid[i]);
        weights[i] += half;
        weights[i + 1] += half;
    }
    return weights;
}

void write_grid(const std::filesystem::path& path, const GridArtifact& grid,
                const std::string& format) {
    std::vector<std::pair<std::string, std::string>> meta{
        {"artifact", grid.kind},
        {"config_digest", grid.config_digest},
        {"p_points", std::to_string(grid.p_grid.size())},
        {"k_count", std::to_string(grid.k_count)},
        {"p_weight_kind", grid.p_weight_kind},
    };
    if (grid.kind == "empirical_density") {
        meta.emplace_back("sample_count", std::to_string(grid.sample_count));
        meta.emplace_back("bandwidth_p", format_double(grid.bandwidth_p));
        meta.emplace_back("bandwidth_k", format_double(grid.bandwidth_k));
        meta.emplace_back("bandwidth_fallback", grid.bandwidth_fallback ? "1" : "0");
    }
    std::size_t ip = 0;
    int k = 0;
    write_document(
        path, format, meta, nullptr, {"personality", "degree", "density"},
        [&](std::vector<double>& row) {
            row = {grid.p_grid[ip], static_cast<double>(k),
                   grid.values[ip * static_cast<std::size_t>(grid.k_count) +
                               static_cast<std::size_t>(k)]};
            if (++k == grid.k_count) {
                k = 0;
                ++ip;
            }
        },
        grid.p_grid.size() * static_cast<std::size_t>(grid.k_count));
}

GridArtifact read_grid(const std::filesystem::path& path) {
    const Document doc = load_document(path);
    GridArtifact grid;
    grid.kind = meta_or(doc, "artifact", "");
    if (grid.kind != "analytic_density" && grid.kind != "empirical_density")
        throw IoError("artifact " + path.string() + " is not a density grid");
    expect_header(doc, {"personality", "degree", "density"}, path);
    grid.config_digest = meta_or(doc, "config_digest", "");
    grid.p_weight_kind = meta_or(doc, "p_weight_kind", "trapezoid");
    const std::size_t p_points = static_cast<std::size_t>(parse_int(meta_value(doc, "p_points", path)));
    grid.k_count = static_cast<int>(parse_int(meta_value(doc, "k_count", path)));
    if (grid.kind == "empirical_density") {
        grid.sample_count = parse_int(meta_or(doc, "sample_count", "0"));
        grid.bandwidth_p = parse_double(meta_or(doc, "bandwidth_p", "0"));
        grid.bandwidth_k = parse_double(meta_or(doc, "bandwidth_k", "0"));
        grid.bandwidth_fallback = parse_double(meta_or(doc, "bandwidth_fallback", "0")) != 0.0;
    }
    if (doc.rows.size() != p_points * static_cast<std::size_t>(grid.k_count))
        throw IoError("grid row count mismatch in " + path.string());
    grid.values.resize(doc.rows.size());
    grid.p_grid.resize(p_points);
    for (std::size_t i = 0; i < doc.rows.size(); ++i) {
        const auto& row = doc.rows[i];
        if (row.size() != 3) throw IoError("grid row width mismatch in " + path.string());
        const std::size_t ip = i / static_cast<std::size_t>(grid.k_count);
        const int k = static_cast<int>(i % static_cast<std::size_t>(grid.k_count));
        if (k == 0)
            grid.p_grid[ip] = row[0];
        else if (grid.p_grid[ip] != row[0])
            throw IoError("grid rows out of order in " + path.string());
        if (static_cast<int>(row[1]) != k)
            throw IoError("grid rows out of order in " + path.string());
        grid.values[i] = row[2];
    }
    return grid;
}

GridArtifact to_artifact(const meanfield::JointGrid& grid, const std::string& config_digest,
                         bool discrete_traits) {
    GridArtifact art;
    art.kind = "analytic_density";
    art.config_digest = config_digest;
    art.p_grid = grid.p_grid;
    art.k_count = grid.k_count;
    art.values = grid.values;
    art.p_weight_kind = discrete_traits ? "unit" : "trapezoid";
    return art;
}

GridArtifact to_artifact(const stats::DensityGrid& grid, const std::string& config_digest) {
    GridArtifact art;
    art.kind = "empirical_density";
    art.config_digest = config_digest;
    art.p_grid = grid.p_grid;
    art.k_count = grid.k_count;
    art.values = grid.values;
    art.p_weight_kind = "trapezoid";
    art.bandwidth_p = grid.bandwidth_p;
    art.bandwidth_k = grid.bandwidth_k;
    art.bandwidth_fallback = grid.bandwidth_fallback;
    art.sample_count = grid.sample_count;
    return art;
}

meanfield::JointGrid to_joint_grid(const GridArtifact& artifact) {
    meanfield::JointGrid grid;
    grid.p_grid = artifact.p_grid;
    grid.p_weights = artifact.p_weights();
    grid.k_count = artifact.k_count;
    grid.values = artifact.values;
    return grid;
}

stats::DensityGrid to_density_grid(const GridArtifact& artifact) {
    stats::DensityGrid grid;
    grid.p_grid = artifact.p_grid;
    grid.p_weights = artifact.p_weights();
    grid.k_count = artifact.k_count;
    grid.values = artifact.values;
    grid.bandwidth_p = artifact.bandwidth_p;
    grid.bandwidth_k = artifact.bandwidth_k;
    grid.bandwidth_fallback = artifact.bandwidth_fallback;
    grid.sample_count = artifact.sample_count;
    return grid;
}

void write_curve(const std::filesystem::path& path, const CurveArtifact& curve,
                 const std::string& format) {
    const bool empirical = curve.kind == "empirical_curve";
    std::vector<std::pair<std::string, std::string>> meta{
        {"artifact", curve.kind},
        {"config_digest", curve.config_digest},
    };
    std::vector<std::string> header;
    if (empirical) {
        meta.emplace_back("window", std::to_string(curve.window));
        meta.emplace_back("stride", std::to_string(curve.stride));
        header = {"personality", "mean_degree", "window_count"};
    } else {
        header = {"personality", "expected_degree"};
    }
    std::size_t i = 0;
    write_document(
        path, format, meta, nullptr, header,
        [&](std::vector<double>& row) {
            const auto& pt = curve.points[i++];
            if (empirical)
                row = {pt.p_center, pt.mean_degree, static_cast<double>(pt.window_count)};
            else
                row = {pt.p_center, pt.mean_degree};
        },
        curve.points.size());
}

CurveArtifact read_curve(const std::filesystem::path& path) {
    const Document doc = load_document(path);
    CurveArtifact curve;
    curve.kind = meta_or(doc, "artifact", "");
    if (curve.kind != "analytic_curve" && curve.kind != "empirical_curve")
        throw IoError("artifact " + path.string() + " is not a conditional-mean curve");
    curve.config_digest = meta_or(doc, "config_digest", "");
    const bool empirical = curve.kind == "empirical_curve";
    if (empirical) {
        expect_header(doc, {"personality", "mean_degree", "window_count"}, path);
        curve.window = static_cast<long>(parse_int(meta_value(doc, "window", path)));
        curve.stride = static_cast<long>(parse_int(meta_value(doc, "stride", path)));
    } else {
        expect_header(doc, {"personality", "expected_degree"}, path);
    }
    for (const auto& row : doc.rows) {
        if (row.size() != (empirical ? 3u : 2u))
            throw IoError("curve row width mismatch in " + path.string());
        stats::CurvePoint pt{row[0], row[1], empirical ? static_cast<long>(row[2]) : 0};
        curve.points.push_back(pt);
    }
    return curve;
}

void write_metrics(const std::filesystem::path& path, const MetricsArtifact& metrics,
                   const std::string& format) {
    std::vector<std::pair<std::string, std::string>> meta{
        {"artifact", "metrics"},
        {"config_digest", metrics.config_digest},
    };
    for (const auto& [key, value] : metrics.info) meta.emplace_back(key, value);
    if (format == "json") {
        ordered_json j;
        ordered_json m;
        for (const auto& [key, value] : meta) m[key] = value;
        j["meta"] = std::move(m);
        ordered_json rows = ordered_json::object();
        for (const auto& [key, value] : metrics.metrics) rows[key] = value;
        j["metrics"] = std::move(rows);
        auto out = open_out(path);
        out << j.dump(2) << '\n';
        if (!out) throw IoError("write failed: " + path.string());
        return;
    }
    if (format != "csv") throw ValidationError("unknown artifact format: " + format);
    auto out = open_out(path);
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
    out << "metric,value\n";
    for (const auto& [key, value] : metrics.metrics)
        out << key << ',' << format_double(value) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

void write_run_summary(const std::filesystem::path& path, const SampleSet& samples,
                       const std::vector<RunResult>& results) {
    ordered_json j;
    j["artifact"] = "run_summary";
    j["config_digest"] = samples.config_digest;
    j["base_seed"] = samples.base_seed;
    j["runs"] = samples.runs;
    j["rounds"] = samples.rounds;
    j["graph_variant"] = to_string(samples.variant);
    ordered_json runs = ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RunResult& res = results[i];
        ordered_json r;
        r["run_id"] = i;
        r["seed"] = res.seed;
        r["nodes"] = res.state.node_count();
        r["links"] = res.state.link_count();
        r["total_weight"] = res.state.total_weight();
        r["rounds_alpha"] = res.summary.rounds_alpha;
        r["rounds_beta"] = res.summary.rounds_beta;
        r["rounds_gamma"] = res.summary.rounds_gamma;
        r["links_added"] = res.summary.links_added;
        r["links_removed"] = res.summary.links_removed;
        r["shortfall_alpha"] = res.summary.shortfall_alpha;
        r["shortfall_beta"] = res.summary.shortfall_beta;
        r["shortfall_gamma"] = res.summary.shortfall_gamma;
        r["fallback_rounds"] = res.summary.fallback_rounds;
        runs.push_back(std::move(r));
    }
    j["per_run"] = std::move(runs);
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace friendnet::io
