#include "replenish/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <thread>

#include <fmt/format.h>

namespace replenish {

namespace {

struct PendingObservation {
    Period arrival = 0;
    const SupplierOffer* offer = nullptr;
    bool on_time_in_full = true;
};

struct SkuRuntime {
    const SkuSpec* spec = nullptr;
    std::vector<const SupplierOffer*> offers;  // catalogue order
    DemandTrace demand;
    DemandForecaster forecaster;
    bool active = true;
    StaticRopThresholds static_thresholds;
    Units rule80_max = 0;
    std::optional<OraclePlan> plan;
    // Trend candidates only.
    const TrendCandidate* candidate = nullptr;
    std::vector<double> signal;
    std::vector<double> scores;
    bool queued = false;
    double trend_boost = 0.0;
};

class Episode {
public:
    Episode(const Scenario& scenario, PolicyKind policy, std::uint64_t seed, const RunOptions& options)
        : sc_(scenario), policy_(policy), seed_(seed), opt_(options) {}

    RunReport run() {
        sc_.validate();
        setup();
        for (Period t = 0; t < sc_.horizon; ++t) step(t);
        return finish();
    }

private:
    bool agentic() const { return policy_ == PolicyKind::agentic; }
    bool trend_on() const { return agentic() && opt_.trend; }

    void setup() {
        report_.scenario_name = sc_.name;
        report_.scenario_hash = scenario_hash(sc_);
        report_.policy = policy_;
        report_.seed = seed_;
        report_.horizon = sc_.horizon;
        report_.warmup = sc_.warmup;

        for (const auto& spec : sc_.skus) {
            SkuRuntime rt{&spec, sc_.offers_for(spec.sku.id), {}, DemandForecaster(spec.forecast.value_or(sc_.forecast))};
            rt.demand = generate_trace(spec.demand, sc_.horizon, Rng::stream(seed_, "demand/" + spec.sku.id));
            apply_demand_shocks(rt.demand, sc_.disruption, Rng::stream(seed_, "shock/" + spec.sku.id));
            rt.active = !spec.candidate;
            if (spec.candidate) {
                rt.candidate = sc_.find_candidate(spec.sku.id);
                rt.signal = generate_signal(rt.candidate->signal, sc_.horizon, Rng::stream(seed_, "signal/" + spec.sku.id));
            }
            // Baselines calibrate once on the warm-up history.
            const auto warm = std::span<const Units>(rt.demand).first(static_cast<std::size_t>(std::max(sc_.warmup, 1)));
            rt.static_thresholds =
                calibrate_static_rop(warm, rt.offers.front()->lead_time, sc_.policy, spec.sku.holding_cost);
            rt.rule80_max = calibrate_rule80(warm, sc_.policy);

            SkuLedger& ledger = ledger_.add(spec.sku);
            const double opening_cost = rt.offers.front()->unit_cost;
            if (rt.active) ledger.add_opening_stock(Batch{spec.initial_stock, 0, opening_cost});
            runtime_.emplace(spec.sku.id, std::move(rt));
        }
    }

    void step(Period t) {
        std::map<std::string, SkuPeriodRecord> rec;

        // Receive shipments and learn from deliveries.
        for (auto& [id, rt] : runtime_) {
            if (!rt.active) continue;
            SkuLedger& l = ledger_.at(id);
            auto& r = rec[id];
            r.period = t;
            r.sku_id = id;
            r.on_hand_start = l.on_hand();
            r.received = l.receive_shipments(t);
        }
        for (auto it = observations_.begin(); it != observations_.end();) {
            if (it->arrival == t) {
                tracker_.record(*it->offer, it->on_time_in_full);
                it = observations_.erase(it);
            } else {
                ++it;
            }
        }

        // Demand, spoilage, forecasts.
        for (auto& [id, rt] : runtime_) {
            if (!rt.active) continue;
            SkuLedger& l = ledger_.at(id);
            auto& r = rec[id];
            r.demand = rt.demand[static_cast<std::size_t>(t)];
            const auto f = l.fulfill_demand(r.demand);
            r.sales = f.sales;
            r.stockout_units = f.stockout_units;
            r.spoiled = l.age_and_spoil();
            rt.forecaster.observe(static_cast<double>(r.demand));
        }
        if (trend_on()) update_trends(t, rec);

        // Decide, allocate, negotiate.
        std::vector<OrderDecision> candidates;
        std::map<std::pair<std::string, std::string>, int> ordinals;
        std::vector<int> candidate_ordinals;
        auto add_candidate = [&](OrderDecision order) {
            const int ordinal = ordinals[{order.sku_id, order.supplier_id}]++;
            candidate_ordinals.push_back(ordinal);
            candidates.push_back(std::move(order));
        };

        if (policy_ == PolicyKind::oracle) {
            for (auto& [id, rt] : runtime_) {
                if (!rt.active) continue;
                if (!rt.plan) rt.plan = plan_for(id, rt, t);
                for (const auto& p : rt.plan->orders)
                    if (p.order.placed_at == t) add_candidate(p.order);
            }
        } else {
            for (const auto& proposal : proposals(t)) {
                const auto& rt = runtime_.at(proposal.sku_id);
                auto allocation = allocate(proposal, candidate_offers(rt), sc_.weights, t);
                for (auto& order : allocation.orders) {
                    if (agentic() && opt_.negotiation) {
                        const SupplierOffer& offer = offer_of(rt, order.supplier_id);
                        const int ordinal = ordinals[{order.sku_id, order.supplier_id}];
                        order.negotiated_unit_price =
                            negotiate(offer, order.quantity, sc_.negotiation, negotiation_stream(seed_, order, ordinal))
                                .unit_price;
                    }
                    add_candidate(std::move(order));
                }
            }
        }

        // Arbitrate and commit.
        Units projected = 0;
        for (const auto& [id, rt] : runtime_)
            if (rt.active) projected += ledger_.at(id).position();
        const auto arb = arbitrate(candidates, sc_.constraints, projected);
        std::size_t fi = 0;
        std::size_t di = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const bool funded = fi < arb.funded.size() && same_order(arb.funded[fi], candidates[i]);
            if (funded)
                ++fi;
            else
                ++di;
            commit(candidates[i], candidate_ordinals[i], funded, t);
        }
        (void)di;

        // Accrue.
        for (auto& [id, rt] : runtime_) {
            if (!rt.active) continue;
            SkuLedger& l = ledger_.at(id);
            auto& r = rec[id];
            r.period = t;
            r.sku_id = id;
            const CostAccounts before = l.accounts();
            const Money cogs_before = cogs_seen_[id];
            l.accrue_period_costs();
            const CostAccounts& after = l.accounts();
            r.costs.purchase = after.purchase - before.purchase;
            r.costs.holding = after.holding - before.holding;
            r.costs.stockout = after.stockout - before.stockout;
            r.costs.spoilage = after.spoilage - before.spoilage;
            r.on_hand_end = l.on_hand();
            r.pipeline_end = l.pipeline_quantity();
            r.inventory_value = l.inventory_value();
            r.cogs = l.cogs() - cogs_before;
            cogs_seen_[id] = l.cogs();
            report_.records.push_back(r);
        }
    }

    static bool same_order(const OrderDecision& a, const OrderDecision& b) {
        return a.sku_id == b.sku_id && a.supplier_id == b.supplier_id && a.quantity == b.quantity &&
               a.placed_at == b.placed_at && a.negotiated_unit_price == b.negotiated_unit_price &&
               a.criticality == b.criticality;
    }

    const SupplierOffer& offer_of(const SkuRuntime& rt, const std::string& supplier) const {
        for (const auto* o : rt.offers)
            if (o->supplier_id == supplier) return *o;
        throw Error("no offer from " + supplier + " for " + rt.spec->sku.id);
    }

    std::vector<CandidateOffer> candidate_offers(const SkuRuntime& rt) const {
        std::vector<CandidateOffer> out;
        if (agentic() && opt_.supplier_selection) {
            for (const auto* o : rt.offers) out.push_back({o, tracker_.effective(*o)});
        } else {
            out.push_back({rt.offers.front(), rt.offers.front()->reliability});
        }
        return out;
    }

    int lead_time_for(const SkuRuntime& rt) const {
        if (!(agentic() && opt_.supplier_selection) || rt.offers.size() == 1) return rt.offers.front()->lead_time;
        const auto cands = candidate_offers(rt);
        const double mean = rt.forecaster.mean();
        const Units q = std::max<Units>(1, std::llround(mean * (rt.offers.front()->lead_time + sc_.policy.review_period)));
        return rank_offers(cands, q, sc_.weights).front().candidate.offer->lead_time;
    }

    std::vector<ReorderProposal> proposals(Period t) {
        std::vector<ReorderProposal> out;
        std::vector<std::string> to_decide;
        if (agentic()) {
            std::vector<MonitorInput> inputs;
            for (const auto& [id, rt] : runtime_) {
                if (!rt.active) continue;
                const SkuLedger& l = ledger_.at(id);
                inputs.push_back({id, l.on_hand(), l.pipeline_quantity(), rt.forecaster.mean(),
                                  rt.forecaster.error_std(), lead_time_for(rt), rt.spec->sku.stockout_penalty});
            }
            for (const auto& f : monitor_flags(inputs, sc_.policy, sc_.policy.monitor_horizon)) to_decide.push_back(f.sku_id);
            std::sort(to_decide.begin(), to_decide.end());
        } else {
            for (const auto& [id, rt] : runtime_)
                if (rt.active) to_decide.push_back(id);
        }
        for (const auto& id : to_decide) {
            const auto& rt = runtime_.at(id);
            const SkuLedger& l = ledger_.at(id);
            SkuState state{&rt.spec->sku, t, l.on_hand(), l.pipeline_quantity(), lead_time_for(rt)};
            const ForecastView view{rt.forecaster.mean(), rt.forecaster.error_std()};
            ReorderProposal p;
            switch (policy_) {
                case PolicyKind::static_rop: p = decide_static_rop(state, rt.static_thresholds); break;
                case PolicyKind::rule80: p = decide_rule80(state, rt.rule80_max); break;
                case PolicyKind::sQ: p = decide_sQ(state, view, sc_.policy); break;
                case PolicyKind::newsvendor: p = decide_newsvendor(state, view, sc_.policy); break;
                case PolicyKind::agentic: p = decide_agentic(state, view, rt.trend_boost, sc_.policy); break;
                case PolicyKind::oracle: break;
            }
            if (p.quantity > 0) out.push_back(std::move(p));
        }
        return out;
    }

    OraclePlan plan_for(const std::string& id, const SkuRuntime& rt, Period t) const {
        OracleProblem problem{ledger_.at(id), t, sc_.horizon, rt.demand, {}, std::nullopt, sc_.disruption, seed_};
        for (const auto* o : rt.offers) problem.offers.push_back(*o);
        if (opt_.negotiation) problem.negotiation = sc_.negotiation;
        return plan_oracle(problem, opt_.oracle);
    }

    void commit(const OrderDecision& order, int ordinal, bool funded, Period t) {
        auto& rt = runtime_.at(order.sku_id);
        const SupplierOffer& offer = offer_of(rt, order.supplier_id);
        OrderLogEntry log;
        log.placed_at = t;
        log.sku_id = order.sku_id;
        log.supplier_id = order.supplier_id;
        log.quantity = order.quantity;
        log.list_price = order.list_unit_price;
        log.unit_price = order.negotiated_unit_price;
        log.promised_arrival = order.promised_arrival;
        log.criticality = order.criticality;
        log.funded = funded;
        if (funded) {
            const auto d = perturb_order(order, offer, sc_.disruption, order_stream(seed_, order, ordinal));
            ledger_.at(order.sku_id)
                .schedule_shipment(Shipment{d.arrival_period, d.delivered, order.negotiated_unit_price},
                                   purchase_charge(order.negotiated_unit_price, d.delivered, order.fixed_shipping));
            observations_.push_back({d.arrival_period, &offer, !d.delayed && !d.short_shipped});
            log.realized_arrival = d.arrival_period;
            log.delivered = d.delivered;
            log.delayed = d.delayed;
            log.short_shipped = d.short_shipped;
        } else if (policy_ == PolicyKind::oracle) {
            rt.plan.reset();  // replan next period around the deferral
        }
        report_.orders.push_back(std::move(log));
    }

    void update_trends(Period t, std::map<std::string, SkuPeriodRecord>& rec) {
        const int window = sc_.trend.window;
        for (auto& [id, rt] : runtime_) {
            if (!rt.candidate || t + 1 < window) continue;
            const auto visible = std::span<const double>(rt.signal).first(static_cast<std::size_t>(t + 1));
            const double score = trend_score(visible, rt.candidate->signal.sentiment, window, sc_.trend.score);
            rt.scores.push_back(score);
            if (rt.active) {
                rt.trend_boost = std::clamp(score, 0.0, 1.0);
                continue;
            }
            const auto decision = gate_adopt(rt.scores, sc_.trend.gate);
            if (decision == GateDecision::adopt) {
                rt.active = true;
                rt.trend_boost = std::clamp(score, 0.0, 1.0);
                rt.forecaster.seed(rt.candidate->conversion * visible.back());
                report_.adopted.push_back(id);
                report_.adoptions.push_back({t, id, decision, score});
                auto& r = rec[id];
                r.period = t;
                r.sku_id = id;
            } else if (decision == GateDecision::queue_for_human && !rt.queued) {
                rt.queued = true;
                report_.adoptions.push_back({t, id, decision, score});
            }
        }
    }

    RunReport finish() {
        report_.metrics = compute_metrics(report_.records, sc_.warmup);
        for (const auto& o : report_.orders) (o.funded ? report_.metrics.orders_placed : report_.metrics.orders_deferred)++;
        for (const auto& [id, l] : ledger_) report_.ledger_totals.emplace_back(id, l.accounts());

        if (trend_on()) {
            std::map<std::string, SkuOutcome> outcomes;
            for (const auto& r : report_.records) {
                if (r.period < sc_.warmup) continue;
                auto& o = outcomes[r.sku_id];
                o.sku_id = r.sku_id;
                o.sales += r.sales;
                o.total_cost += r.costs.total();
                o.unit_margin = runtime_.at(r.sku_id).spec->sku.unit_margin;
            }
            std::vector<SkuOutcome> all;
            for (auto& [id, o] : outcomes) all.push_back(o);
            report_.trend = trend_roi(all, report_.adopted);
            report_.metrics.adopted = static_cast<int>(report_.adopted.size());
            report_.metrics.trend_roi = report_.trend.aggregate_roi;
            report_.metrics.trend_roi_defined = report_.trend.aggregate_defined;
            report_.metrics.top_seller_fraction = report_.trend.top_seller_fraction;
        }
        return std::move(report_);
    }

    const Scenario& sc_;
    PolicyKind policy_;
    std::uint64_t seed_;
    RunOptions opt_;
    InventoryLedger ledger_;
    std::map<std::string, SkuRuntime> runtime_;
    std::map<std::string, Money> cogs_seen_;
    ReliabilityTracker tracker_;
    std::vector<PendingObservation> observations_;
    RunReport report_;
};

double mean_of(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double metric_value(const Metrics& m, const std::string& name) {
    for (const auto& [k, v] : metric_table(m))
        if (k == name) return v;
    throw Error("unknown metric: " + name);
}

}  // namespace

std::vector<std::pair<std::string, double>> metric_table(const Metrics& m) {
    return {
        {"stockout_rate", m.stockout_rate},
        {"fill_rate", m.fill_rate},
        {"avg_inventory_value", m.avg_inventory_value},
        {"total_cost", m.total_cost.currency()},
        {"purchase_cost", m.costs.purchase.currency()},
        {"holding_cost", m.costs.holding.currency()},
        {"stockout_cost", m.costs.stockout.currency()},
        {"spoilage_cost", m.costs.spoilage.currency()},
        {"inventory_turnover", m.inventory_turnover},
        {"demand_units", static_cast<double>(m.demand)},
        {"sales_units", static_cast<double>(m.sales)},
        {"stockout_units", static_cast<double>(m.stockout_units)},
        {"spoiled_units", static_cast<double>(m.spoiled_units)},
        {"orders_placed", static_cast<double>(m.orders_placed)},
        {"orders_deferred", static_cast<double>(m.orders_deferred)},
        {"adopted_skus", static_cast<double>(m.adopted)},
        {"trend_roi", m.trend_roi},
        {"top_seller_fraction", m.top_seller_fraction},
    };
}

Metrics compute_metrics(const std::vector<SkuPeriodRecord>& records, int warmup) {
    Metrics m;
    std::map<Period, Money> value_by_period;
    for (const auto& r : records) {
        if (r.period < warmup) continue;
        ++m.sku_periods;
        if (r.stockout_units > 0) ++m.stockout_periods;
        m.demand += r.demand;
        m.sales += r.sales;
        m.stockout_units += r.stockout_units;
        m.spoiled_units += r.spoiled;
        m.costs += r.costs;
        m.cogs += r.cogs;
        value_by_period[r.period] += r.inventory_value;
    }
    m.total_cost = m.costs.total();
    m.stockout_rate = m.sku_periods > 0 ? static_cast<double>(m.stockout_periods) / m.sku_periods : 0.0;
    m.fill_rate = m.demand > 0 ? static_cast<double>(m.sales) / static_cast<double>(m.demand) : 1.0;
    Money value_sum;
    for (const auto& [p, v] : value_by_period) value_sum += v;
    m.avg_inventory_value =
        value_by_period.empty() ? 0.0 : value_sum.currency() / static_cast<double>(value_by_period.size());
    m.inventory_turnover = m.avg_inventory_value > 0.0 ? m.cogs.currency() / m.avg_inventory_value : 0.0;
    return m;
}

RunReport run_episode(const Scenario& scenario, PolicyKind policy, std::uint64_t seed, const RunOptions& options) {
    return Episode(scenario, policy, seed, options).run();
}

std::vector<std::string> accounting_violations(const RunReport& report) {
    std::vector<std::string> out;
    std::map<std::string, const SkuPeriodRecord*> previous;
    std::map<std::string, CostAccounts> sums;
    for (const auto& r : report.records) {
        const std::string where = fmt::format("{}@{}", r.sku_id, r.period);
        if (r.on_hand_end != r.on_hand_start + r.received - r.sales - r.spoiled)
            out.push_back("conservation broken at " + where);
        if (r.sales + r.stockout_units != r.demand) out.push_back("demand split broken at " + where);
        if (r.on_hand_start < 0 || r.on_hand_end < 0 || r.pipeline_end < 0 || r.received < 0 || r.spoiled < 0)
            out.push_back("negative quantity at " + where);
        if (r.costs.purchase < Money{} || r.costs.holding < Money{} || r.costs.stockout < Money{} ||
            r.costs.spoilage < Money{})
            out.push_back("negative cost at " + where);
        if (auto it = previous.find(r.sku_id); it != previous.end() && it->second->on_hand_end != r.on_hand_start)
            out.push_back("discontinuous stock at " + where);
        previous[r.sku_id] = &r;
        sums[r.sku_id] += r.costs;
    }
    for (const auto& [id, acc] : report.ledger_totals) {
        const auto& s = sums[id];
        if (s.purchase != acc.purchase || s.holding != acc.holding || s.stockout != acc.stockout ||
            s.spoilage != acc.spoilage)
            out.push_back("period costs do not add up to the ledger accounts for " + id);
    }
    const auto& m = report.metrics;
    if (m.total_cost != m.costs.purchase + m.costs.holding + m.costs.stockout + m.costs.spoilage)
        out.push_back("cost breakdown does not sum to total");
    if (m.fill_rate < 0.0 || m.fill_rate > 1.0) out.push_back("fill rate outside [0,1]");
    if (m.inventory_turnover < 0.0) out.push_back("negative turnover");
    return out;
}

std::vector<double> ComparisonReport::paired_delta(std::size_t variant, const std::string& metric) const {
    std::vector<double> out;
    const auto& base = variants.front().per_seed;
    const auto& v = variants.at(variant).per_seed;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(metric_value(v[i], metric) - metric_value(base[i], metric));
    return out;
}

const VariantResult& ComparisonReport::at(const std::string& label) const {
    for (const auto& v : variants)
        if (v.label == label) return v;
    throw Error("no variant labelled " + label);
}

int default_thread_count() {
    if (const char* env = std::getenv("REPLENISH_SIM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ComparisonReport run_variants(const std::vector<Variant>& variants, const std::vector<std::uint64_t>& seeds,
                              int threads) {
    if (variants.empty()) throw Error("run_variants: at least one variant required");
    if (seeds.empty()) throw Error("run_variants: at least one seed required");
    const std::size_t n = variants.size() * seeds.size();
    std::vector<Metrics> results(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                const auto& v = variants[i / seeds.size()];
                results[i] = run_episode(*v.scenario, v.policy, seeds[i % seeds.size()], v.options).metrics;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int count = std::clamp(threads > 0 ? threads : default_thread_count(), 1, static_cast<int>(n));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ComparisonReport report;
    report.seeds = seeds;
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        VariantResult vr;
        vr.label = variants[vi].label;
        vr.policy = variants[vi].policy;
        vr.per_seed.assign(results.begin() + static_cast<std::ptrdiff_t>(vi * seeds.size()),
                           results.begin() + static_cast<std::ptrdiff_t>((vi + 1) * seeds.size()));
        for (const auto& [name, unused] : metric_table(Metrics{})) {
            std::vector<double> xs;
            for (const auto& m : vr.per_seed) xs.push_back(metric_value(m, name));
            vr.summary.push_back({name, mean_of(xs), sample_std(xs)});
        }
        report.variants.push_back(std::move(vr));
    }
    return report;
}

ComparisonReport run_comparison(const Scenario& scenario, const std::vector<PolicyKind>& policies,
                                const std::vector<std::uint64_t>& seeds, const RunOptions& options, int threads) {
    if (policies.empty()) throw Error("run_comparison: at least one policy required");
    auto shared = std::make_shared<const Scenario>(scenario);
    std::vector<Variant> variants;
    for (auto p : policies) variants.push_back({to_string(p), shared, p, options});
    return run_variants(variants, seeds, threads);
}

ComparisonReport run_ablation(const Scenario& scenario, const std::vector<std::uint64_t>& seeds, int threads) {
    auto shared = std::make_shared<const Scenario>(scenario);
    RunOptions full;
    RunOptions no_negotiation;
    no_negotiation.negotiation = false;
    RunOptions no_trend;
    no_trend.trend = false;
    RunOptions no_supplier;
    no_supplier.supplier_selection = false;
    return run_variants({{"full", shared, PolicyKind::agentic, full},
                         {"no_negotiation", shared, PolicyKind::agentic, no_negotiation},
                         {"no_trend", shared, PolicyKind::agentic, no_trend},
                         {"no_supplier_selection", shared, PolicyKind::agentic, no_supplier}},
                        seeds, threads);
}

SensitivityReport run_sensitivity(const Scenario& scenario, const std::vector<double>& demand_factors,
                                  const std::vector<double>& lead_factors, const std::vector<std::uint64_t>& seeds,
                                  int threads) {
    std::vector<std::pair<double, double>> grid;
    for (double df : demand_factors)
        for (double lf : lead_factors) grid.emplace_back(df, lf);
    const bool has_center = std::find(grid.begin(), grid.end(), std::pair{1.0, 1.0}) != grid.end();
    std::vector<Variant> variants;
    for (const auto& [df, lf] : grid)
        variants.push_back({fmt::format("{:.3f}x{:.3f}", df, lf),
                            std::make_shared<const Scenario>(scale_scenario(scenario, df, lf)), PolicyKind::agentic, {}});
    if (!has_center)
        variants.push_back({"center", std::make_shared<const Scenario>(scenario), PolicyKind::agentic, {}});
    const auto runs = run_variants(variants, seeds, threads);

    auto make_cell = [&](const VariantResult& v, double df, double lf) {
        SensitivityCell c;
        c.demand_factor = df;
        c.lead_factor = lf;
        c.per_seed = v.per_seed;
        std::vector<double> cost, demand, per_unit;
        for (const auto& m : v.per_seed) {
            cost.push_back(m.total_cost.currency());
            demand.push_back(static_cast<double>(m.demand));
            per_unit.push_back(m.demand > 0 ? m.total_cost.currency() / static_cast<double>(m.demand) : 0.0);
        }
        c.mean_total_cost = mean_of(cost);
        c.mean_demand = mean_of(demand);
        c.cost_per_unit_demand = mean_of(per_unit);
        return c;
    };
    SensitivityReport report;
    for (std::size_t i = 0; i < grid.size(); ++i) report.cells.push_back(make_cell(runs.variants[i], grid[i].first, grid[i].second));
    SensitivityCell center = has_center
                                 ? *std::find_if(report.cells.begin(), report.cells.end(),
                                                 [](const SensitivityCell& c) {
                                                     return c.demand_factor == 1.0 && c.lead_factor == 1.0;
                                                 })
                                 : make_cell(runs.variants.back(), 1.0, 1.0);
    for (auto& c : report.cells) {
        c.relative_total_cost = center.mean_total_cost > 0.0 ? c.mean_total_cost / center.mean_total_cost - 1.0 : 0.0;
        c.relative_cost_per_unit =
            center.cost_per_unit_demand > 0.0 ? c.cost_per_unit_demand / center.cost_per_unit_demand - 1.0 : 0.0;
    }
    return report;
}

}  // namespace replenish
