#include "replenish/scenario_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace replenish {

namespace {

const char* to_string(GateMode m) { return m == GateMode::auto_adopt ? "auto" : "human_queue"; }

template <typename E>
std::optional<E> parse_enum(const std::string& text, std::initializer_list<E> values) {
    for (E v : values)
        if (text == to_string(v)) return v;
    return std::nullopt;
}

template <typename E>
std::string enum_names(std::initializer_list<E> values) {
    std::string out;
    for (E v : values) {
        if (!out.empty()) out += ", ";
        out += to_string(v);
    }
    return out;
}

// Walks the document, collecting every error rather than stopping at the first.
class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    std::vector<std::string>& errors() { return errors_; }

    void error(const YAML::Node& node, const std::string& where, const std::string& message) {
        if (node.IsDefined() && node.Mark().line >= 0)
            errors_.push_back(fmt::format("{}:{}: {}: {}", source_, node.Mark().line + 1, where, message));
        else
            errors_.push_back(fmt::format("{}: {}: {}", source_, where, message));
    }

    bool mapping(const YAML::Node& node, const std::string& where, std::set<std::string> known) {
        if (!node.IsMap()) {
            error(node, where, "expected a mapping");
            return false;
        }
        for (const auto& kv : node) {
            const auto key = kv.first.as<std::string>();
            if (!known.contains(key)) error(kv.first, where, "unknown field '" + key + "'");
        }
        return true;
    }

    template <typename T>
    void field(const YAML::Node& map, const char* key, const std::string& where, T& out, bool required = false) {
        const YAML::Node n = map[key];
        if (!n.IsDefined() || n.IsNull()) {
            if (required) error(map, where, fmt::format("missing required field '{}'", key));
            return;
        }
        try {
            out = n.as<T>();
        } catch (const YAML::Exception&) {
            error(n, where, fmt::format("field '{}' has the wrong type", key));
        }
    }

    template <typename T>
    void optional_field(const YAML::Node& map, const char* key, const std::string& where, std::optional<T>& out) {
        T value{};
        const YAML::Node n = map[key];
        if (!n.IsDefined() || n.IsNull()) return;
        if (n.IsScalar() && (n.Scalar() == "inf" || n.Scalar() == "unbounded")) {
            out.reset();
            return;
        }
        field(map, key, where, value);
        out = value;
    }

    template <typename E>
    void enum_field(const YAML::Node& map, const char* key, const std::string& where, E& out,
                    std::initializer_list<E> values) {
        std::string text;
        field(map, key, where, text);
        if (text.empty()) return;
        if (auto v = parse_enum(text, values))
            out = *v;
        else
            error(map[key], where, fmt::format("field '{}' must be one of: {}", key, enum_names(values)));
    }

    // Runs a component's own invariant check, attributing failures to the node.
    template <typename F>
    void check(const YAML::Node& node, const std::string& where, F&& validate) {
        try {
            validate();
        } catch (const Error& e) {
            error(node, where, e.what());
        }
    }

private:
    std::string source_;
    std::vector<std::string> errors_;
};

struct SupplierDefaults {
    int lead_time = 1;
    double reliability = 1.0;
    double fixed_shipping = 0.0;
    double max_discount = 0.0;
};

void read_policy(Reader& r, const YAML::Node& n, PolicyParams& p) {
    const std::string where = "policy";
    if (!r.mapping(n, where, {"kind", "z", "review_period", "order_fixed_cost", "buffer_fraction", "monitor_horizon",
                              "rule80_cover", "spoilage_adjustment"}))
        return;
    std::string kind;
    r.field(n, "kind", where, kind);
    if (!kind.empty()) {
        if (auto k = parse_policy_kind(kind))
            p.kind = *k;
        else
            r.error(n["kind"], where, "unknown policy '" + kind + "' (valid: " + policy_kind_names() + ")");
    }
    r.field(n, "z", where, p.z);
    r.field(n, "review_period", where, p.review_period);
    r.field(n, "order_fixed_cost", where, p.order_fixed_cost);
    r.field(n, "buffer_fraction", where, p.buffer_fraction);
    r.field(n, "monitor_horizon", where, p.monitor_horizon);
    r.field(n, "rule80_cover", where, p.rule80_cover);
    r.field(n, "spoilage_adjustment", where, p.spoilage_adjustment);
    r.check(n, where, [&] { p.validate(); });
}

void read_forecast(Reader& r, const YAML::Node& n, const std::string& where, ForecastConfig& f) {
    if (!r.mapping(n, where, {"method", "alpha", "window", "season_period", "error_window"})) return;
    r.enum_field(n, "method", where, f.method,
                 {ForecastMethod::naive, ForecastMethod::moving_average, ForecastMethod::exp_smoothing,
                  ForecastMethod::seasonal_naive});
    r.field(n, "alpha", where, f.alpha);
    r.field(n, "window", where, f.window);
    r.field(n, "season_period", where, f.season_period);
    r.field(n, "error_window", where, f.error_window);
    r.check(n, where, [&] { f.validate(); });
}

void read_demand(Reader& r, const YAML::Node& n, const std::string& where, DemandModel& d) {
    if (!r.mapping(n, where, {"kind", "mean", "cv", "season_period", "amplitude", "slope", "noise"})) return;
    r.enum_field(n, "kind", where, d.kind, {DemandKind::stationary, DemandKind::seasonal, DemandKind::trending});
    r.field(n, "mean", where, d.base_mean, true);
    r.field(n, "cv", where, d.cv);
    r.field(n, "season_period", where, d.season_period);
    r.field(n, "amplitude", where, d.season_amplitude);
    r.field(n, "slope", where, d.trend_slope);
    r.enum_field(n, "noise", where, d.noise, {NoiseKind::gaussian, NoiseKind::poisson});
    r.check(n, where, [&] { d.validate(); });
}

void read_skus(Reader& r, const YAML::Node& list, Scenario& s) {
    if (!list.IsSequence()) {
        r.error(list, "skus", "expected a list");
        return;
    }
    std::map<std::string, int> first_line;
    for (const auto& n : list) {
        SkuSpec spec;
        std::string where = "skus";
        if (!r.mapping(n, where, {"id", "category", "holding_cost", "stockout_penalty", "decay_fraction", "shelf_life",
                                  "unit_margin", "initial_stock", "candidate", "demand", "forecast"}))
            continue;
        r.field(n, "id", where, spec.sku.id, true);
        where = "sku '" + spec.sku.id + "'";
        if (!spec.sku.id.empty()) {
            auto [it, fresh] = first_line.emplace(spec.sku.id, n.Mark().line + 1);
            if (!fresh) r.error(n, where, fmt::format("duplicate sku id '{}' (first declared on line {})", spec.sku.id, it->second));
        }
        std::string category;
        r.field(n, "category", where, category, true);
        if (!category.empty()) {
            if (auto c = parse_category(category))
                spec.sku.category = *c;
            else
                r.error(n["category"], where, "unknown category '" + category + "'");
        }
        r.field(n, "holding_cost", where, spec.sku.holding_cost, true);
        r.field(n, "stockout_penalty", where, spec.sku.stockout_penalty, true);
        r.field(n, "decay_fraction", where, spec.sku.decay_fraction);
        r.optional_field(n, "shelf_life", where, spec.sku.shelf_life);
        r.field(n, "unit_margin", where, spec.sku.unit_margin);
        r.field(n, "initial_stock", where, spec.initial_stock);
        r.field(n, "candidate", where, spec.candidate);
        if (n["demand"].IsDefined())
            read_demand(r, n["demand"], where + " demand", spec.demand);
        else
            r.error(n, where, "missing required field 'demand'");
        if (n["forecast"].IsDefined()) {
            ForecastConfig f;
            read_forecast(r, n["forecast"], where + " forecast", f);
            spec.forecast = f;
        }
        r.check(n, where, [&] { spec.sku.validate(); });
        if (spec.initial_stock < 0) r.error(n["initial_stock"], where, "initial_stock must be >= 0");
        s.skus.push_back(std::move(spec));
    }
}

std::map<std::string, SupplierDefaults> read_suppliers(Reader& r, const YAML::Node& list) {
    std::map<std::string, SupplierDefaults> out;
    if (!list.IsSequence()) {
        r.error(list, "suppliers", "expected a list");
        return out;
    }
    for (const auto& n : list) {
        std::string where = "suppliers";
        if (!r.mapping(n, where, {"id", "lead_time", "reliability", "fixed_shipping", "max_discount"})) continue;
        std::string id;
        SupplierDefaults d;
        r.field(n, "id", where, id, true);
        where = "supplier '" + id + "'";
        r.field(n, "lead_time", where, d.lead_time);
        r.field(n, "reliability", where, d.reliability);
        r.field(n, "fixed_shipping", where, d.fixed_shipping);
        r.field(n, "max_discount", where, d.max_discount);
        if (!id.empty() && !out.emplace(id, d).second) r.error(n, where, "duplicate supplier id '" + id + "'");
    }
    return out;
}

void read_offers(Reader& r, const YAML::Node& list, const std::map<std::string, SupplierDefaults>& suppliers,
                 Scenario& s) {
    if (!list.IsSequence()) {
        r.error(list, "offers", "expected a list");
        return;
    }
    std::set<std::string> sku_ids;
    for (const auto& spec : s.skus) sku_ids.insert(spec.sku.id);
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& n : list) {
        std::string where = "offers";
        if (!r.mapping(n, where, {"supplier", "sku", "unit_cost", "lead_time", "moq", "capacity", "reliability",
                                  "fixed_shipping", "max_discount"}))
            continue;
        SupplierOffer o;
        r.field(n, "supplier", where, o.supplier_id, true);
        r.field(n, "sku", where, o.sku_id, true);
        where = "offer " + o.supplier_id + "/" + o.sku_id;
        const auto sup = suppliers.find(o.supplier_id);
        if (!o.supplier_id.empty() && sup == suppliers.end())
            r.error(n, where, "offer for sku '" + o.sku_id + "' references unknown supplier '" + o.supplier_id + "'");
        if (!o.sku_id.empty() && !sku_ids.contains(o.sku_id))
            r.error(n, where, "offer from supplier '" + o.supplier_id + "' references unknown sku '" + o.sku_id + "'");
        if (!seen.insert({o.supplier_id, o.sku_id}).second)
            r.error(n, where, "duplicate offer for supplier '" + o.supplier_id + "' and sku '" + o.sku_id + "'");
        if (sup != suppliers.end()) {
            o.lead_time = sup->second.lead_time;
            o.reliability = sup->second.reliability;
            o.fixed_shipping = sup->second.fixed_shipping;
            o.max_discount = sup->second.max_discount;
        }
        r.field(n, "unit_cost", where, o.unit_cost, true);
        r.field(n, "lead_time", where, o.lead_time);
        r.field(n, "moq", where, o.moq);
        r.optional_field(n, "capacity", where, o.capacity_per_order);
        r.field(n, "reliability", where, o.reliability);
        r.field(n, "fixed_shipping", where, o.fixed_shipping);
        r.field(n, "max_discount", where, o.max_discount);
        r.check(n, where, [&] { o.validate(); });
        s.offers.push_back(std::move(o));
    }
}

void read_trend(Reader& r, const YAML::Node& n, Scenario& s) {
    std::string where = "trend";
    if (!r.mapping(n, where, {"window", "gate", "score", "candidates"})) return;
    r.field(n, "window", where, s.trend.window);
    if (const auto g = n["gate"]; g.IsDefined() && r.mapping(g, "trend gate", {"threshold", "persistence", "mode", "human_approval"})) {
        r.field(g, "threshold", "trend gate", s.trend.gate.threshold);
        r.field(g, "persistence", "trend gate", s.trend.gate.persistence);
        r.enum_field(g, "mode", "trend gate", s.trend.gate.mode, {GateMode::auto_adopt, GateMode::human_queue});
        r.field(g, "human_approval", "trend gate", s.trend.gate.human_approval);
        r.check(g, "trend gate", [&] { s.trend.gate.validate(); });
    }
    if (const auto sc = n["score"]; sc.IsDefined() && r.mapping(sc, "trend score", {"slope_weight", "sentiment_weight", "slope_ref"})) {
        r.field(sc, "slope_weight", "trend score", s.trend.score.slope_weight);
        r.field(sc, "sentiment_weight", "trend score", s.trend.score.sentiment_weight);
        r.field(sc, "slope_ref", "trend score", s.trend.score.slope_ref);
    }
    const auto list = n["candidates"];
    if (!list.IsDefined()) return;
    if (!list.IsSequence()) {
        r.error(list, where, "candidates must be a list");
        return;
    }
    std::set<std::string> seen;
    for (const auto& c : list) {
        where = "trend candidates";
        if (!r.mapping(c, where, {"sku", "conversion", "signal"})) continue;
        TrendCandidate tc;
        r.field(c, "sku", where, tc.sku_id, true);
        where = "trend candidate '" + tc.sku_id + "'";
        r.field(c, "conversion", where, tc.conversion);
        if (!tc.sku_id.empty() && !seen.insert(tc.sku_id).second) r.error(c, where, "duplicate trend candidate");
        const SkuSpec* spec = s.find_sku(tc.sku_id);
        if (!tc.sku_id.empty() && !spec) r.error(c, where, "references unknown sku '" + tc.sku_id + "'");
        if (spec && !spec->candidate) r.error(c, where, "sku '" + tc.sku_id + "' must be declared with candidate: true");
        const auto sig = c["signal"];
        if (!sig.IsDefined()) {
            r.error(c, where, "missing required field 'signal'");
        } else if (r.mapping(sig, where + " signal", {"shape", "base_volume", "growth", "onset", "spike_height", "decay",
                                                      "noise_cv", "sentiment"})) {
            auto& m = tc.signal;
            const std::string sw = where + " signal";
            r.enum_field(sig, "shape", sw, m.shape, {SignalShape::flat, SignalShape::ramp, SignalShape::spike_decay});
            r.field(sig, "base_volume", sw, m.base_volume);
            r.field(sig, "growth", sw, m.growth);
            r.field(sig, "onset", sw, m.onset);
            r.field(sig, "spike_height", sw, m.spike_height);
            r.field(sig, "decay", sw, m.decay);
            r.field(sig, "noise_cv", sw, m.noise_cv);
            r.field(sig, "sentiment", sw, m.sentiment);
            r.check(sig, sw, [&] { m.validate(); });
        }
        s.trend.candidates.push_back(std::move(tc));
    }
}

Scenario read_document(Reader& r, const YAML::Node& root) {
    Scenario s;
    if (!r.mapping(root, "scenario", {"schema_version", "name", "horizon", "warmup", "master_seed", "policy", "forecast",
                                      "weights", "negotiation", "disruption", "constraints", "skus", "suppliers",
                                      "offers", "trend"}))
        return s;
    r.field(root, "schema_version", "scenario", s.schema_version, true);
    if (root["schema_version"].IsDefined() && s.schema_version != kSchemaVersion)
        r.error(root["schema_version"], "scenario",
                fmt::format("unsupported schema_version {} (expected {})", s.schema_version, kSchemaVersion));
    r.field(root, "name", "scenario", s.name, true);
    r.field(root, "horizon", "scenario", s.horizon);
    r.field(root, "warmup", "scenario", s.warmup);
    r.field(root, "master_seed", "scenario", s.master_seed);

    if (root["policy"].IsDefined()) read_policy(r, root["policy"], s.policy);
    if (root["forecast"].IsDefined()) read_forecast(r, root["forecast"], "forecast", s.forecast);
    if (const auto n = root["weights"]; n.IsDefined() && r.mapping(n, "weights", {"cost", "lead", "reliability"})) {
        r.field(n, "cost", "weights", s.weights.cost);
        r.field(n, "lead", "weights", s.weights.lead);
        r.field(n, "reliability", "weights", s.weights.reliability);
        r.check(n, "weights", [&] { s.weights.validate(); });
    }
    if (const auto n = root["negotiation"];
        n.IsDefined() && r.mapping(n, "negotiation", {"max_rounds", "buyer_opening_discount", "buyer_concession_step",
                                                      "supplier_concession_rate", "quantity_ref", "jitter"})) {
        auto& p = s.negotiation;
        r.field(n, "max_rounds", "negotiation", p.max_rounds);
        r.field(n, "buyer_opening_discount", "negotiation", p.buyer_opening_discount);
        r.field(n, "buyer_concession_step", "negotiation", p.buyer_concession_step);
        r.field(n, "supplier_concession_rate", "negotiation", p.supplier_concession_rate);
        r.field(n, "quantity_ref", "negotiation", p.quantity_ref);
        r.field(n, "jitter", "negotiation", p.jitter);
        r.check(n, "negotiation", [&] { p.validate(); });
    }
    if (const auto n = root["disruption"];
        n.IsDefined() && r.mapping(n, "disruption", {"enabled", "delay_probability", "delay_extra_periods",
                                                     "shortage_probability", "fill_fraction", "shock_probability",
                                                     "shock_multiplier"})) {
        auto& d = s.disruption;
        r.field(n, "enabled", "disruption", d.enabled);
        r.field(n, "delay_probability", "disruption", d.delay_probability);
        r.field(n, "delay_extra_periods", "disruption", d.delay_extra_periods);
        r.field(n, "shortage_probability", "disruption", d.shortage_probability);
        r.field(n, "fill_fraction", "disruption", d.fill_fraction);
        r.field(n, "shock_probability", "disruption", d.shock_probability);
        r.field(n, "shock_multiplier", "disruption", d.shock_multiplier);
        r.check(n, "disruption", [&] { d.validate(); });
    }
    if (const auto n = root["constraints"];
        n.IsDefined() && r.mapping(n, "constraints", {"budget_per_period", "warehouse_capacity", "max_orders_per_period"})) {
        std::optional<double> budget;
        r.optional_field(n, "budget_per_period", "constraints", budget);
        if (budget) s.constraints.budget_per_period = Money::from_currency(*budget);
        r.optional_field(n, "warehouse_capacity", "constraints", s.constraints.warehouse_capacity);
        r.optional_field(n, "max_orders_per_period", "constraints", s.constraints.max_orders_per_period);
        r.check(n, "constraints", [&] { s.constraints.validate(); });
    }

    if (root["skus"].IsDefined())
        read_skus(r, root["skus"], s);
    else
        r.error(root, "scenario", "missing required field 'skus'");
    std::map<std::string, SupplierDefaults> suppliers;
    if (root["suppliers"].IsDefined())
        suppliers = read_suppliers(r, root["suppliers"]);
    else
        r.error(root, "scenario", "missing required field 'suppliers'");
    if (root["offers"].IsDefined())
        read_offers(r, root["offers"], suppliers, s);
    else
        r.error(root, "scenario", "missing required field 'offers'");
    if (root["trend"].IsDefined()) read_trend(r, root["trend"], s);
    return s;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ScenarioError({fmt::format("{}:{}: malformed YAML: {}", source, e.mark.line + 1, e.msg)});
    }
    Reader reader(source);
    Scenario s = read_document(reader, root);
    auto& errors = reader.errors();
    if (errors.empty()) {
        // Whole-scenario checks (cross references, horizon) once fields parse.
        for (auto& e : s.validation_errors()) errors.push_back(source + ": " + e);
    }
    if (!errors.empty()) throw ScenarioError(std::move(errors));
    return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read scenario file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path.string());
}

}  // namespace replenish
