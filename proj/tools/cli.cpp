#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "monoseq/export.hpp"
#include "monoseq/report.hpp"
#include "monoseq/simulator.hpp"
#include "monoseq/stats.hpp"
#include "monoseq/value_table.hpp"
#include "monoseq/variance_table.hpp"

namespace monoseq::cli {

namespace {

const std::map<std::string, Command> kCommands = {
    {"table", Command::Table},   {"simulate", Command::Simulate},
    {"clt", Command::Clt},       {"bounds", Command::Bounds},
    {"properties", Command::Properties}, {"poisson", Command::Poisson},
};

const std::map<std::string, Format> kFormats = {{"csv", Format::Csv}, {"json", Format::Json}};

template <typename Map>
auto lookup(const Map& map, const std::string& key, const char* what) {
    const auto it = map.find(key);
    if (it == map.end()) throw UsageError(std::string("unknown ") + what + ": " + key);
    return it->second;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(value);
        } catch (const std::exception&) {
            throw UsageError("bad --n-list entry: '" + item + "'");
        }
    }
    return out;
}

// Output sink: standard output or a file opened before any work starts.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw UsageError("cannot write to " + path);
        stream_ = file_.get();
    }
    std::ostream& get() { return *stream_; }
    void finish(const std::string& path) {
        stream_->flush();
        if (!*stream_) throw UsageError("write failed for " + (path.empty() ? std::string("stdout") : path));
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

int horizon_needed(const RunConfig& config) {
    if (config.command == Command::Bounds)
        return config.n_list.empty() ? 0 : *std::max_element(config.n_list.begin(), config.n_list.end());
    return config.n;
}

GridSpec grid_of(const RunConfig& config) { return GridSpec{config.grid_points, 1e-12}; }

nlohmann::json row_or_null(const ValueTable& vt, const VarianceTable* wt, int n) {
    if (wt == nullptr) return nullptr;
    const int list[] = {n};
    return to_json(bound_report(vt, *wt, list).rows.front());
}

int run_table(const RunConfig& config, Sink& sink) {
    const ValueTable vt = build_value_table(config.n, grid_of(config));
    std::optional<VarianceTable> wt;
    if (config.with_variance) wt.emplace(build_variance_table(vt));
    const VarianceTable* wt_ptr = wt ? &*wt : nullptr;
    if (config.format == Format::Json)
        sink.get() << value_table_json(vt, wt_ptr).dump() << '\n';
    else
        write_value_csv(sink.get(), vt, wt_ptr);
    return kExitOk;
}

int run_simulate(const RunConfig& config, Sink& sink, std::ostream& out) {
    const ValueTable vt = build_value_table(config.n, grid_of(config));
    std::optional<VarianceTable> wt;
    if (config.with_variance) wt.emplace(build_variance_table(vt));
    const BatchResult batch = simulate_batch(vt, config.reps, *config.seed, wt ? &*wt : nullptr);
    if (!config.output_path.empty() && config.output_path != "-")
        write_batch(sink.get(), batch.lengths, batch.conditional_variances);

    nlohmann::json summary;
    summary["n"] = config.n;
    summary["reps"] = config.reps;
    summary["v_table"] = vt.values(config.n)[0];
    summary["w_table"] = wt ? nlohmann::json(wt->wvalues(config.n)[0]) : nlohmann::json(nullptr);
    if (batch.lengths.size() >= 2) {
        const MonteCarloSummary s = summarize(batch.lengths, config.n);
        summary["mean"] = s.mean;
        summary["variance"] = s.variance;
        summary["stderr"] = s.stderr_mean;
    } else {
        summary["mean"] = batch.lengths.front();
    }
    out << summary.dump() << '\n';
    return kExitOk;
}

int run_clt(const RunConfig& config, Sink& sink, std::ostream& out) {
    const ValueTable vt = build_value_table(config.n, grid_of(config));
    std::optional<VarianceTable> wt;
    if (config.with_variance) wt.emplace(build_variance_table(vt));
    const BatchResult batch = simulate_batch(vt, config.reps, *config.seed);
    const MonteCarloSummary summary = summarize(batch.lengths, config.n);
    const double mean_table = vt.values(config.n)[0];

    nlohmann::json report;
    report["n"] = config.n;
    report["reps"] = config.reps;
    report["mean"] = summary.mean;
    report["stderr"] = summary.stderr_mean;
    report["variance"] = summary.variance;
    report["v_table"] = mean_table;
    report["w_table"] = wt ? nlohmann::json(wt->wvalues(config.n)[0]) : nlohmann::json(nullptr);
    report["ks"] = summary.ks_distance;
    report["ks_alt_centering"] = ks_with_centre(batch.lengths, config.n, mean_table);
    report["bounds"] = row_or_null(vt, wt ? &*wt : nullptr, config.n);
    report["properties"] = nlohmann::json::array();
    report["histogram"] = to_json(summary)["histogram"];

    if (config.format == Format::Json) {
        sink.get() << report.dump() << '\n';
    } else {
        write_histogram_csv(sink.get(), summary.histogram);
        out << report.dump() << '\n';
    }
    if (!config.histogram_path.empty()) {
        Sink hist(config.histogram_path, out);
        write_histogram_csv(hist.get(), summary.histogram);
        hist.finish(config.histogram_path);
    }
    return kExitOk;
}

int run_bounds(const RunConfig& config, Sink& sink) {
    const int top = horizon_needed(config);
    const ValueTable vt = build_value_table(top, grid_of(config));
    const VarianceTable wt = build_variance_table(vt);
    const BoundReport report = bound_report(vt, wt, config.n_list);
    if (config.format == Format::Json) {
        sink.get() << to_json(report).dump() << '\n';
    } else {
        auto& os = sink.get();
        os << "n,mean,sqrt_2n,gap_ratio,variance,variance_lower,variance_upper,mean_ok,variance_ok\n";
        for (const auto& row : report.rows)
            os << row.n << ',' << format_double(row.mean) << ',' << format_double(row.sqrt_2n) << ','
               << (row.gap_ratio ? format_double(*row.gap_ratio) : std::string()) << ','
               << format_double(row.variance) << ',' << format_double(row.lower) << ','
               << format_double(row.upper) << ',' << row.mean_ok() << ',' << row.variance_ok() << '\n';
    }
    return config.strict && !report.all_passed() ? kExitAssertion : kExitOk;
}

int run_properties(const RunConfig& config, Sink& sink) {
    const ValueTable vt = build_value_table(config.n, grid_of(config));
    const VarianceTable wt = build_variance_table(vt);
    auto records = property_report(vt, wt);
    if (config.traces > 0) {
        auto traced = trace_property_report(vt, config.traces, *config.seed);
        records.insert(records.end(), traced.begin(), traced.end());
    }
    if (config.format == Format::Json) {
        sink.get() << to_json(std::span<const PropertyRecord>(records)).dump() << '\n';
    } else {
        auto& os = sink.get();
        os << "name,worst,tolerance,checked,passed\n";
        for (const auto& r : records)
            os << r.name << ',' << format_double(r.worst) << ',' << format_double(r.tolerance) << ','
               << r.checked << ',' << r.passed() << '\n';
    }
    return config.strict && !all_passed(records) ? kExitAssertion : kExitOk;
}

int run_poisson(const RunConfig& config, Sink& sink, std::ostream& out) {
    const ValueTable vt = build_value_table(config.n, grid_of(config));
    const double nu = config.nu.value_or(static_cast<double>(config.n));
    const std::vector<int> lengths = simulate_poisson_batch(vt, nu, config.reps, *config.seed);
    if (!config.output_path.empty() && config.output_path != "-") write_batch(sink.get(), lengths);

    std::vector<double> as_real(lengths.begin(), lengths.end());
    const Moments m = sample_moments(as_real);
    const double stderr_mean = std::sqrt(m.variance / static_cast<double>(lengths.size()));
    const double fixed = vt.values(config.n)[0];
    const bool passed = m.mean <= fixed + 3.0 * stderr_mean;
    nlohmann::json row = {{"n", config.n},         {"nu", nu},
                          {"reps", config.reps},   {"poisson_mean", m.mean},
                          {"stderr", stderr_mean}, {"fixed_n_mean", fixed},
                          {"limit", fixed + 3.0 * stderr_mean}, {"passed", passed}};
    out << row.dump() << '\n';
    return config.strict && !passed ? kExitAssertion : kExitOk;
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad JSON config: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("JSON config must be an object");
    static const char* known[] = {"command", "n",     "grid_points", "reps",   "seed",   "output_path",
                                  "histogram_path", "format", "with_variance", "strict", "n_list",
                                  "nu",      "traces", "max_entries"};
    for (const auto& [key, value] : doc.items())
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known))
            throw UsageError("unknown JSON config field: " + key);

    RunConfig config;
    try {
        if (doc.contains("command")) config.command = lookup(kCommands, doc["command"].get<std::string>(), "command");
        if (doc.contains("n")) config.n = doc["n"].get<int>();
        if (doc.contains("grid_points")) config.grid_points = doc["grid_points"].get<std::size_t>();
        if (doc.contains("reps")) config.reps = doc["reps"].get<std::int64_t>();
        if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("output_path")) config.output_path = doc["output_path"].get<std::string>();
        if (doc.contains("histogram_path")) config.histogram_path = doc["histogram_path"].get<std::string>();
        if (doc.contains("format")) config.format = lookup(kFormats, doc["format"].get<std::string>(), "format");
        if (doc.contains("with_variance")) config.with_variance = doc["with_variance"].get<bool>();
        if (doc.contains("strict")) config.strict = doc["strict"].get<bool>();
        if (doc.contains("n_list")) config.n_list = doc["n_list"].get<std::vector<int>>();
        if (doc.contains("nu")) config.nu = doc["nu"].get<double>();
        if (doc.contains("traces")) config.traces = doc["traces"].get<int>();
        if (doc.contains("max_entries")) config.max_entries = doc["max_entries"].get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad JSON config value: ") + e.what());
    }
    return config;
}

void validate(const RunConfig& config) {
    const bool needs_n = config.command != Command::Bounds;
    if (needs_n && config.n < 1) throw UsageError("--n must be a positive integer");
    if (config.command == Command::Bounds) {
        if (config.n_list.empty()) throw UsageError("bounds needs --n-list");
        for (int n : config.n_list)
            if (n < 1) throw UsageError("--n-list entries must be positive");
    }
    if (config.grid_points < GridSpec::kMinPoints) throw UsageError("--grid must be at least 65");
    if (config.max_entries < 1) throw UsageError("--max-entries must be positive");

    const bool random = config.command == Command::Simulate || config.command == Command::Clt ||
                        config.command == Command::Poisson ||
                        (config.command == Command::Properties && config.traces > 0);
    if (random && !config.seed) throw UsageError("--seed is required for this command");
    if (config.traces < 0) throw UsageError("--traces must be non-negative");

    if (config.command == Command::Simulate && config.reps < 1) throw UsageError("--reps must be at least 1");
    if ((config.command == Command::Clt || config.command == Command::Poisson) && config.reps < 2)
        throw UsageError("--reps must be at least 2");
    if (config.nu && !(*config.nu > 0.0 && std::isfinite(*config.nu))) throw UsageError("--nu must be positive");

    const auto entries = (static_cast<long double>(horizon_needed(config)) + 1.0L) *
                         static_cast<long double>(config.grid_points);
    if (entries > static_cast<long double>(config.max_entries))
        throw UsageError("table of (n+1) x grid entries exceeds the memory guard --max-entries");
}

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal online monotone subsequence selection: tables, simulation, reports"};
    std::string command;
    int n = 0;
    std::size_t grid = 4097;
    std::int64_t reps = 0;
    std::uint64_t seed = 0;
    std::string output, histogram, format = "csv", n_list, json_config;
    double nu = 0.0;
    int traces = 0;
    std::int64_t max_entries = std::int64_t{1} << 31;
    bool with_variance = false, strict = false;

    app.add_option("command", command, "table | simulate | clt | bounds | properties | poisson");
    auto* o_n = app.add_option("--n", n, "horizon");
    auto* o_grid = app.add_option("--grid", grid, "grid points on [0,1] (>= 65)");
    auto* o_reps = app.add_option("--reps", reps, "Monte Carlo replicates");
    auto* o_seed = app.add_option("--seed", seed, "master seed (required for random commands)");
    auto* o_output = app.add_option("--output,-o", output, "output file (default: standard output)");
    auto* o_hist = app.add_option("--histogram", histogram, "clt: histogram CSV path");
    auto* o_format = app.add_option("--format", format, "csv | json");
    auto* o_nlist = app.add_option("--n-list", n_list, "bounds: comma-separated horizons");
    auto* o_nu = app.add_option("--nu", nu, "poisson: mean number of arrivals (default n)");
    auto* o_traces = app.add_option("--traces", traces, "properties: simulated traces for martingale checks");
    auto* o_max = app.add_option("--max-entries", max_entries, "memory guard on (n+1) x grid");
    auto* o_var = app.add_flag("--with-variance", with_variance, "also build the conditional variance table");
    auto* o_strict = app.add_flag("--strict", strict, "exit 2 when a bound or property fails");
    app.add_option("--json-config", json_config, "read the full run configuration from a JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return {std::nullopt, kExitOk};
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, kExitUsage};
    }

    try {
        RunConfig config;
        if (!json_config.empty()) {
            std::ifstream in(json_config);
            if (!in) throw UsageError("cannot read " + json_config);
            std::stringstream text;
            text << in.rdbuf();
            config = config_from_json(text.str());
        }
        if (!command.empty()) config.command = lookup(kCommands, command, "command");
        else if (json_config.empty()) throw UsageError("missing command");
        if (o_n->count()) config.n = n;
        if (o_grid->count()) config.grid_points = grid;
        if (o_reps->count()) config.reps = reps;
        if (o_seed->count()) config.seed = seed;
        if (o_output->count()) config.output_path = output;
        if (o_hist->count()) config.histogram_path = histogram;
        if (o_format->count()) config.format = lookup(kFormats, format, "format");
        if (o_nlist->count()) config.n_list = parse_n_list(n_list);
        if (o_nu->count()) config.nu = nu;
        if (o_traces->count()) config.traces = traces;
        if (o_max->count()) config.max_entries = max_entries;
        if (o_var->count()) config.with_variance = true;
        if (o_strict->count()) config.strict = true;
        validate(config);
        return {config, kExitOk};
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, kExitUsage};
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        Sink sink(config.output_path, out);
        int status = kExitOk;
        switch (config.command) {
            case Command::Table: status = run_table(config, sink); break;
            case Command::Simulate: status = run_simulate(config, sink, out); break;
            case Command::Clt: status = run_clt(config, sink, out); break;
            case Command::Bounds: status = run_bounds(config, sink); break;
            case Command::Properties: status = run_properties(config, sink); break;
            case Command::Poisson: status = run_poisson(config, sink, out); break;
        }
        sink.finish(config.output_path);
        return status;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace monoseq::cli
