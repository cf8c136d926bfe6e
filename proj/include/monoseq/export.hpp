#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "monoseq/report.hpp"
#include "monoseq/stats.hpp"
#include "monoseq/trace.hpp"
#include "monoseq/value_table.hpp"
#include "monoseq/variance_table.hpp"

namespace monoseq {

/// Shortest decimal that round-trips to the same double; "inf"/"-inf"/"nan"
/// for non-finite values.
std::string format_double(double x);

/// `k,s,v,h,dv` one row per (k, node); with wt the merged `k,s,v,h,dv,w`.
/// k = 0 rows leave h empty.
void write_value_csv(std::ostream& out, const ValueTable& vt, const VarianceTable* wt = nullptr);

/// Same fields column-wise per k, plus grid metadata and critical values.
nlohmann::json value_table_json(const ValueTable& vt, const VarianceTable* wt = nullptr);

/// `k,s,w`.
void write_variance_csv(std::ostream& out, const VarianceTable& wt);

/// `i,x,accepted,M,L,Y,d,A,B`; the i = 0 row carries only the initial state.
void write_trace_csv(std::ostream& out, const EpisodeTrace& trace);

/// One length per line, or `L,V` per line when conditional variances are given.
void write_batch(std::ostream& out, std::span<const int> lengths,
                 std::span<const double> conditional_variances = {});

/// `z_lo,z_hi,count`.
void write_histogram_csv(std::ostream& out, const Histogram& hist);

nlohmann::json to_json(const MonteCarloSummary& summary);
nlohmann::json to_json(const BoundRow& row);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const PropertyRecord& record);
nlohmann::json to_json(std::span<const PropertyRecord> records);

}  // namespace monoseq
