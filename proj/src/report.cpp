#include "replenish/report.hpp"

#include <fstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace replenish {

namespace {

std::string num(double x) { return fmt::format("{:.6f}", x); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void metric_header(std::ostream& out) {
    bool first = true;
    for (const auto& [name, unused] : metric_table(Metrics{})) {
        if (!first) out << ',';
        out << name;
        first = false;
    }
}

void metric_row(std::ostream& out, const Metrics& m) {
    bool first = true;
    for (const auto& [name, value] : metric_table(m)) {
        if (!first) out << ',';
        out << num(value);
        first = false;
    }
}

}  // namespace

void write_metrics_csv(std::ostream& out, const RunReport& r) {
    out << "scenario,policy,seed,";
    metric_header(out);
    out << '\n' << csv_escape(r.scenario_name) << ',' << to_string(r.policy) << ',' << r.seed << ',';
    metric_row(out, r.metrics);
    out << '\n';
}

void write_timeseries_csv(std::ostream& out, const RunReport& r) {
    out << "period,sku,on_hand_start,received,demand,sales,stockout_units,spoiled,on_hand_end,pipeline_end,"
           "purchase_cost,holding_cost,stockout_cost,spoilage_cost,inventory_value,cogs\n";
    for (const auto& x : r.records) {
        fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", x.period, csv_escape(x.sku_id),
                   x.on_hand_start, x.received, x.demand, x.sales, x.stockout_units, x.spoiled, x.on_hand_end,
                   x.pipeline_end, x.costs.purchase.to_string(), x.costs.holding.to_string(),
                   x.costs.stockout.to_string(), x.costs.spoilage.to_string(), x.inventory_value.to_string(),
                   x.cogs.to_string());
    }
}

void write_orders_csv(std::ostream& out, const RunReport& r) {
    out << "placed_at,sku,supplier,quantity,list_price,unit_price,promised_arrival,realized_arrival,delivered,"
           "delayed,short_shipped,funded,criticality\n";
    for (const auto& o : r.orders) {
        fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{}\n", o.placed_at, csv_escape(o.sku_id),
                   csv_escape(o.supplier_id), o.quantity, num(o.list_price), num(o.unit_price), o.promised_arrival,
                   o.funded ? std::to_string(o.realized_arrival) : std::string(), o.delivered, int(o.delayed),
                   int(o.short_shipped), int(o.funded), num(o.criticality));
    }
}

void write_summary(std::ostream& out, const RunReport& r) {
    fmt::print(out, "scenario={}\nscenario_hash={:016x}\npolicy={}\nseed={}\nhorizon={}\nwarmup={}\n", r.scenario_name,
               r.scenario_hash, to_string(r.policy), r.seed, r.horizon, r.warmup);
    for (const auto& [name, value] : metric_table(r.metrics)) fmt::print(out, "{}={}\n", name, num(value));
    fmt::print(out, "total_cost_exact={}\n", r.metrics.total_cost.to_string());
    std::string adopted;
    for (const auto& id : r.adopted) adopted += (adopted.empty() ? "" : ";") + id;
    fmt::print(out, "adopted={}\n", adopted);
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    body(out);
    if (!out) throw Error("write failed for " + path.string());
}

void write_run(const std::filesystem::path& dir, const RunReport& report) {
    write_file(dir / "metrics.csv", [&](std::ostream& o) { write_metrics_csv(o, report); });
    write_file(dir / "timeseries.csv", [&](std::ostream& o) { write_timeseries_csv(o, report); });
    write_file(dir / "orders.csv", [&](std::ostream& o) { write_orders_csv(o, report); });
    write_file(dir / "summary.txt", [&](std::ostream& o) { write_summary(o, report); });
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
    out << "variant,policy,seed,";
    metric_header(out);
    out << '\n';
    for (const auto& v : report.variants) {
        for (std::size_t i = 0; i < v.per_seed.size(); ++i) {
            out << csv_escape(v.label) << ',' << to_string(v.policy) << ',' << report.seeds[i] << ',';
            metric_row(out, v.per_seed[i]);
            out << '\n';
        }
    }
    for (const char* stat : {"mean", "std"}) {
        for (const auto& v : report.variants) {
            out << csv_escape(v.label) << ',' << to_string(v.policy) << ',' << stat;
            for (const auto& s : v.summary) out << ',' << num(stat[0] == 'm' ? s.mean : s.std);
            out << '\n';
        }
    }
}

void write_paired_csv(std::ostream& out, const ComparisonReport& report) {
    out << "variant,baseline,seed,";
    metric_header(out);
    out << '\n';
    const auto names = metric_table(Metrics{});
    for (std::size_t v = 1; v < report.variants.size(); ++v) {
        std::vector<std::vector<double>> deltas;
        for (const auto& [name, unused] : names) deltas.push_back(report.paired_delta(v, name));
        for (std::size_t i = 0; i < report.seeds.size(); ++i) {
            out << csv_escape(report.variants[v].label) << ',' << csv_escape(report.variants.front().label) << ','
                << report.seeds[i];
            for (const auto& d : deltas) out << ',' << num(d[i]);
            out << '\n';
        }
    }
}

void write_sensitivity_csv(std::ostream& out, const SensitivityReport& report) {
    out << "demand_factor,lead_factor,mean_total_cost,mean_demand,cost_per_unit_demand,relative_total_cost,"
           "relative_cost_per_unit\n";
    for (const auto& c : report.cells)
        fmt::print(out, "{},{},{},{},{},{},{}\n", num(c.demand_factor), num(c.lead_factor), num(c.mean_total_cost),
                   num(c.mean_demand), num(c.cost_per_unit_demand), num(c.relative_total_cost),
                   num(c.relative_cost_per_unit));
}

}  // namespace replenish
