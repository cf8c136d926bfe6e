#include "monoseq/export.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace monoseq {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return {buffer, end};
}

namespace {

// JSON has no infinities; keep them as null.
nlohmann::json number_or_null(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

void write_value_csv(std::ostream& out, const ValueTable& vt, const VarianceTable* wt) {
    if (wt != nullptr && !wt->matches(vt))
        throw std::invalid_argument("variance table built from a different value table");
    out << (wt != nullptr ? "k,s,v,h,dv,w\n" : "k,s,v,h,dv\n");
    const GridSpec& grid = vt.grid();
    for (int k = 0; k <= vt.horizon(); ++k) {
        const auto v = vt.values(k);
        const auto h = vt.thresholds(k);
        const auto dv = vt.derivatives(k);
        for (std::size_t j = 0; j < grid.points; ++j) {
            out << k << ',' << format_double(grid.node(j)) << ',' << format_double(v[j]) << ','
                << (k == 0 ? std::string() : format_double(h[j])) << ',' << format_double(dv[j]);
            if (wt != nullptr) out << ',' << format_double(wt->wvalues(k)[j]);
            out << '\n';
        }
    }
}

nlohmann::json value_table_json(const ValueTable& vt, const VarianceTable* wt) {
    if (wt != nullptr && !wt->matches(vt))
        throw std::invalid_argument("variance table built from a different value table");
    const GridSpec& grid = vt.grid();
    nlohmann::json doc;
    doc["grid"] = {{"points", grid.points},
                   {"spacing", grid.spacing()},
                   {"root_tolerance", grid.root_tolerance}};
    doc["horizon"] = vt.horizon();
    std::vector<double> nodes(grid.points);
    for (std::size_t j = 0; j < grid.points; ++j) nodes[j] = grid.node(j);
    doc["s"] = nodes;

    nlohmann::json critical = nlohmann::json::array();
    for (int k = 1; k <= vt.horizon(); ++k) critical.push_back({{"k", k}, {"s", vt.critical_value(k)}});
    doc["critical_values"] = std::move(critical);

    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k <= vt.horizon(); ++k) {
        nlohmann::json row;
        row["k"] = k;
        const auto v = vt.values(k);
        const auto dv = vt.derivatives(k);
        row["v"] = std::vector<double>(v.begin(), v.end());
        if (k == 0) {
            row["h"] = nullptr;
        } else {
            const auto h = vt.thresholds(k);
            row["h"] = std::vector<double>(h.begin(), h.end());
        }
        row["dv"] = std::vector<double>(dv.begin(), dv.end());
        if (wt != nullptr) {
            const auto w = wt->wvalues(k);
            row["w"] = std::vector<double>(w.begin(), w.end());
        }
        rows.push_back(std::move(row));
    }
    doc["tables"] = std::move(rows);
    return doc;
}

void write_variance_csv(std::ostream& out, const VarianceTable& wt) {
    out << "k,s,w\n";
    const GridSpec& grid = wt.grid();
    for (int k = 0; k <= wt.horizon(); ++k) {
        const auto w = wt.wvalues(k);
        for (std::size_t j = 0; j < grid.points; ++j)
            out << k << ',' << format_double(grid.node(j)) << ',' << format_double(w[j]) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const EpisodeTrace& trace) {
    out << "i,x,accepted,M,L,Y,d,A,B\n";
    out << "0,,," << format_double(trace.running_max.at(0)) << ',' << trace.length.at(0) << ','
        << format_double(trace.martingale.at(0)) << ",,,\n";
    for (int i = 1; i <= trace.n; ++i) {
        const auto step = static_cast<std::size_t>(i - 1);
        const auto state = static_cast<std::size_t>(i);
        out << i << ',' << format_double(trace.x[step]) << ',' << (trace.accepted[step] ? 1 : 0) << ','
            << format_double(trace.running_max[state]) << ',' << trace.length[state] << ','
            << format_double(trace.martingale[state]) << ',' << format_double(trace.diffs[step]) << ','
            << format_double(trace.a_parts[step]) << ',' << format_double(trace.b_parts[step]) << '\n';
    }
}

void write_batch(std::ostream& out, std::span<const int> lengths,
                 std::span<const double> conditional_variances) {
    const bool with_v = !conditional_variances.empty();
    if (with_v && conditional_variances.size() != lengths.size())
        throw std::invalid_argument("one conditional variance per length expected");
    for (std::size_t r = 0; r < lengths.size(); ++r) {
        out << lengths[r];
        if (with_v) out << ',' << format_double(conditional_variances[r]);
        out << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const Histogram& hist) {
    out << "z_lo,z_hi,count\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
        out << format_double(hist.lower_edge(i)) << ',' << format_double(hist.upper_edge(i)) << ','
            << hist.counts[i] << '\n';
}

nlohmann::json to_json(const MonteCarloSummary& summary) {
    nlohmann::json hist;
    hist["lo"] = summary.histogram.lo;
    hist["hi"] = summary.histogram.hi;
    hist["bins"] = summary.histogram.bins;
    hist["counts"] = summary.histogram.counts;
    return {{"n", summary.n},
            {"reps", summary.reps},
            {"mean", summary.mean},
            {"variance", summary.variance},
            {"stderr", summary.stderr_mean},
            {"ks", summary.ks_distance},
            {"histogram", std::move(hist)}};
}

nlohmann::json to_json(const BoundRow& row) {
    return {{"n", row.n},
            {"mean", row.mean},
            {"sqrt_2n", row.sqrt_2n},
            {"gap_ratio", row.gap_ratio ? nlohmann::json(*row.gap_ratio) : nlohmann::json(nullptr)},
            {"variance", row.variance},
            {"variance_lower", row.lower},
            {"variance_upper", row.upper},
            {"mean_ok", row.mean_ok()},
            {"variance_ok", row.variance_ok()}};
}

nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) rows.push_back(to_json(row));
    return {{"rows", std::move(rows)}, {"passed", report.all_passed()}};
}

nlohmann::json to_json(const PropertyRecord& record) {
    return {{"name", record.name},
            {"worst", number_or_null(record.worst)},
            {"tolerance", record.tolerance},
            {"strict", record.strict},
            {"checked", record.checked},
            {"passed", record.passed()}};
}

nlohmann::json to_json(std::span<const PropertyRecord> records) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& record : records) out.push_back(to_json(record));
    return out;
}

}  // namespace monoseq
