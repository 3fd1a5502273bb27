#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "replenish/engine.hpp"
#include "replenish/forecast.hpp"
#include "replenish/policies.hpp"
#include "replenish/report.hpp"
#include "replenish/scenario_io.hpp"

namespace py = pybind11;
using namespace replenish;

namespace {

PolicyKind policy_of(const std::string& name) {
    if (auto k = parse_policy_kind(name)) return *k;
    throw py::value_error("unknown policy '" + name + "'; valid policies: " + policy_kind_names());
}

py::dict metrics_dict(const Metrics& m) {
    py::dict d;
    for (const auto& [name, value] : metric_table(m)) d[py::str(name)] = value;
    return d;
}

py::dict comparison_dict(const ComparisonReport& report) {
    py::dict out;
    for (const auto& v : report.variants) {
        py::list rows;
        for (const auto& m : v.per_seed) rows.append(metrics_dict(m));
        out[py::str(v.label)] = rows;
    }
    return out;
}

RunOptions options_of(bool negotiation, bool trend, bool supplier_selection) {
    RunOptions o;
    o.negotiation = negotiation;
    o.trend = trend;
    o.supplier_selection = supplier_selection;
    return o;
}

}  // namespace

PYBIND11_MODULE(_replenish, m) {
    m.doc() = "Multi-agent inventory replenishment simulator";
    m.attr("__version__") = "0.1.0";

    static py::exception<ScenarioError> scenario_error(m, "ScenarioError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ScenarioError& e) {
            std::string msg = e.what();
            for (const auto& line : e.errors()) msg += "\n  " + line;
            PyErr_SetString(scenario_error.ptr(), msg.c_str());
        }
    });

    m.def("compute_rop", &compute_rop, py::arg("mean"), py::arg("std"), py::arg("lead_time"), py::arg("z"),
          "Reorder point mean * L + z * std * sqrt(L), rounded half up.");
    m.def("compute_eoq", &compute_eoq, py::arg("demand_per_period"), py::arg("fixed_cost"), py::arg("holding_cost"));
    m.def("exp_smoothing_update", &exp_smoothing_update, py::arg("forecast"), py::arg("observation"),
          py::arg("alpha"));
    m.def("normal_quantile", &normal_quantile, py::arg("p"));
    m.def("policy_names", [] {
        std::vector<std::string> out;
        for (auto k : {PolicyKind::static_rop, PolicyKind::rule80, PolicyKind::sQ, PolicyKind::newsvendor,
                       PolicyKind::agentic, PolicyKind::oracle})
            out.emplace_back(to_string(k));
        return out;
    });

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("horizon", &Scenario::horizon)
        .def_readonly("warmup", &Scenario::warmup)
        .def_readonly("master_seed", &Scenario::master_seed)
        .def_property_readonly("sku_ids",
                               [](const Scenario& s) {
                                   std::vector<std::string> ids;
                                   for (const auto& k : s.skus) ids.push_back(k.sku.id);
                                   return ids;
                               })
        .def_property_readonly("hash", [](const Scenario& s) { return scenario_hash(s); })
        .def("scaled", &scale_scenario, py::arg("demand_factor"), py::arg("lead_factor"))
        .def("__repr__", [](const Scenario& s) {
            return "<Scenario " + s.name + ": " + std::to_string(s.skus.size()) + " skus, horizon " +
                   std::to_string(s.horizon) + ">";
        });

    m.def("load_scenario", [](const std::filesystem::path& p) { return parse_scenario(p); }, py::arg("path"));
    m.def("parse_scenario", [](const std::string& text) { return parse_scenario_text(text); }, py::arg("text"));

    py::class_<RunReport>(m, "Episode")
        .def_readonly("seed", &RunReport::seed)
        .def_property_readonly("policy", [](const RunReport& r) { return std::string(to_string(r.policy)); })
        .def_property_readonly("metrics", [](const RunReport& r) { return metrics_dict(r.metrics); })
        .def_readonly("adopted", &RunReport::adopted)
        .def_property_readonly("violations", &accounting_violations)
        .def_property_readonly("orders",
                               [](const RunReport& r) {
                                   py::list out;
                                   for (const auto& o : r.orders) {
                                       py::dict d;
                                       d["placed_at"] = o.placed_at;
                                       d["sku"] = o.sku_id;
                                       d["supplier"] = o.supplier_id;
                                       d["quantity"] = o.quantity;
                                       d["unit_price"] = o.unit_price;
                                       d["list_price"] = o.list_price;
                                       d["arrival"] = o.realized_arrival;
                                       d["delivered"] = o.delivered;
                                       d["funded"] = o.funded;
                                       out.append(d);
                                   }
                                   return out;
                               })
        .def("write", [](const RunReport& r, const std::filesystem::path& dir) { write_run(dir, r); },
             py::arg("out_dir"), "Writes metrics.csv, timeseries.csv, orders.csv and summary.txt.");

    m.def(
        "run_episode",
        [](const Scenario& s, const std::string& policy, std::uint64_t seed, bool negotiation, bool trend,
           bool supplier_selection) {
            const PolicyKind k = policy_of(policy);
            py::gil_scoped_release release;
            return run_episode(s, k, seed, options_of(negotiation, trend, supplier_selection));
        },
        py::arg("scenario"), py::arg("policy") = "agentic", py::arg("seed") = 1, py::arg("negotiation") = true,
        py::arg("trend") = true, py::arg("supplier_selection") = true);

    m.def(
        "run_comparison",
        [](const Scenario& s, const std::vector<std::string>& policies, const std::vector<std::uint64_t>& seeds,
           int threads) {
            std::vector<PolicyKind> kinds;
            for (const auto& p : policies) kinds.push_back(policy_of(p));
            ComparisonReport report;
            {
                py::gil_scoped_release release;
                report = run_comparison(s, kinds, seeds, {}, threads);
            }
            return comparison_dict(report);
        },
        py::arg("scenario"), py::arg("policies"), py::arg("seeds"), py::arg("threads") = 0,
        "Per-seed metric dicts keyed by policy name.");

    m.def(
        "run_ablation",
        [](const Scenario& s, const std::vector<std::uint64_t>& seeds, int threads) {
            ComparisonReport report;
            {
                py::gil_scoped_release release;
                report = run_ablation(s, seeds, threads);
            }
            return comparison_dict(report);
        },
        py::arg("scenario"), py::arg("seeds"), py::arg("threads") = 0);

    m.def(
        "run_sensitivity",
        [](const Scenario& s, const std::vector<double>& demand_factors, const std::vector<double>& lead_factors,
           const std::vector<std::uint64_t>& seeds, int threads) {
            SensitivityReport report;
            {
                py::gil_scoped_release release;
                report = run_sensitivity(s, demand_factors, lead_factors, seeds, threads);
            }
            py::list out;
            for (const auto& c : report.cells) {
                py::dict d;
                d["demand_factor"] = c.demand_factor;
                d["lead_factor"] = c.lead_factor;
                d["mean_total_cost"] = c.mean_total_cost;
                d["cost_per_unit_demand"] = c.cost_per_unit_demand;
                d["relative_cost_per_unit"] = c.relative_cost_per_unit;
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("demand_factors"), py::arg("lead_factors"), py::arg("seeds"),
        py::arg("threads") = 0);
}
