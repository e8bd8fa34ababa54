#include "ssqw/config.hpp"

#include <cmath>
#include <fstream>

namespace ssqw::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* ctx) {
    if (!j.is_object()) fail(std::string(ctx) + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                ok = true;
                break;
            }
        if (!ok) fail("unknown key '" + item.key() + "' in " + ctx);
    }
}

const json& need(const json& j, const char* key, const char* ctx) {
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string(ctx) + " requires key '" + key + "'");
    return *it;
}

double num(const json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + " must be a number");
    return j.get<double>();
}

int integer(const json& j, const char* what) {
    if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
    return j.get<int>();
}

bool boolean(const json& j, const char* what) {
    if (!j.is_boolean()) fail(std::string(what) + " must be a boolean");
    return j.get<bool>();
}

// A real number, or [re, im].
cplx complex_of(const json& j, const char* what) {
    if (j.is_number()) return cplx(j.get<double>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    fail(std::string(what) + " must be a number or a [re, im] pair");
}

CoinSite coin_of(const json& j, const char* ctx) {
    check_keys(j, {"a", "b"}, ctx);
    return CoinSite(num(need(j, "a", ctx), "coin entry a"),
                    complex_of(need(j, "b", ctx), "coin entry b"));
}

ModelSpec parse_model(const json& j) {
    const std::string type = need(j, "type", "model").get<std::string>();
    if (type == "anisotropic") {
        check_keys(j, {"type", "epsilon", "smooth", "ramp"}, "model");
        AnisotropicModel m;
        m.spec.epsilon = num(need(j, "epsilon", "anisotropic model"), "epsilon");
        if (j.contains("smooth")) m.spec.smooth = boolean(j["smooth"], "smooth");
        if (j.contains("ramp")) m.spec.ramp = integer(j["ramp"], "ramp");
        return m;
    }
    if (type == "kitagawa") {
        check_keys(j, {"type", "theta2", "theta1"}, "model");
        const double theta2 = num(need(j, "theta2", "kitagawa model"), "theta2");
        const json& t1 = need(j, "theta1", "kitagawa model");
        KitagawaModel m;
        if (t1.is_object() && t1.contains("constant")) {
            check_keys(t1, {"constant"}, "theta1");
            m.spec = KitagawaSpec::constant(num(t1["constant"], "theta1.constant"), theta2);
            return m;
        }
        check_keys(t1, {"minus", "plus", "x_min", "values"}, "theta1");
        if (t1.contains("values")) {
            m.spec.theta2 = theta2;
            if (t1.contains("x_min")) m.spec.table_min = integer(t1["x_min"], "theta1.x_min");
            for (const json& v : need(t1, "values", "theta1"))
                m.spec.theta1.push_back(num(v, "theta1 value"));
            if (t1.contains("minus")) m.spec.theta1_minus = num(t1["minus"], "theta1.minus");
            if (t1.contains("plus")) m.spec.theta1_plus = num(t1["plus"], "theta1.plus");
            return m;
        }
        m.spec = KitagawaSpec::two_phase(num(need(t1, "minus", "theta1"), "theta1.minus"),
                                         num(need(t1, "plus", "theta1"), "theta1.plus"),
                                         theta2);
        return m;
    }
    if (type == "custom-table") {
        check_keys(j, {"type", "x_min", "sites", "limit_minus", "limit_plus"}, "model");
        CustomTableModel m;
        if (j.contains("x_min")) m.table_min = integer(j["x_min"], "model.x_min");
        for (const json& site : need(j, "sites", "custom-table model"))
            m.table.push_back(coin_of(site, "coin site"));
        if (m.table.empty()) fail("custom-table model needs at least one site");
        if (j.contains("limit_minus")) m.limit_minus = coin_of(j["limit_minus"], "limit_minus");
        if (j.contains("limit_plus")) m.limit_plus = coin_of(j["limit_plus"], "limit_plus");
        return m;
    }
    fail("unknown model type '" + type + "'");
}

InitialSpec parse_initial(const json& j) {
    check_keys(j, {"delta", "birth"}, "initial");
    if (j.contains("delta") == j.contains("birth"))
        fail("initial must contain exactly one of 'delta' and 'birth'");
    if (j.contains("delta")) {
        const json& d = j["delta"];
        check_keys(d, {"x", "spinor"}, "initial.delta");
        InitialDelta init;
        init.x = integer(need(d, "x", "initial.delta"), "initial.delta.x");
        if (d.contains("spinor")) {
            const json& s = d["spinor"];
            if (!s.is_array() || s.size() != 2) fail("spinor must have two components");
            init.spinor = {complex_of(s[0], "spinor component"),
                           complex_of(s[1], "spinor component")};
        }
        return init;
    }
    const std::string sign = j["birth"].get<std::string>();
    if (sign == "plus") return InitialBirth{BirthSign::plus};
    if (sign == "minus") return InitialBirth{BirthSign::minus};
    fail("initial.birth must be 'plus' or 'minus'");
}

Tolerances parse_tolerances(const json& j) {
    check_keys(j, {"classify_margin", "min_chi", "tail_mass", "compaction"}, "tolerances");
    Tolerances t;
    if (j.contains("classify_margin"))
        t.classify_margin = num(j["classify_margin"], "classify_margin");
    if (j.contains("min_chi")) t.min_chi = num(j["min_chi"], "min_chi");
    if (j.contains("tail_mass")) t.tail_mass = num(j["tail_mass"], "tail_mass");
    if (j.contains("compaction")) t.compaction = num(j["compaction"], "compaction");
    for (double v : {t.classify_margin, t.min_chi, t.tail_mass, t.compaction})
        if (!(v > 0.0)) fail("tolerances must be positive");
    return t;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    check_keys(j, {"model", "shift", "window", "time", "initial", "command-options",
                   "tolerances"},
               "config");
    ExperimentConfig cfg;
    cfg.model = parse_model(need(j, "model", "config"));
    if (j.contains("shift")) {
        if (std::holds_alternative<KitagawaModel>(cfg.model))
            fail("the kitagawa model derives its shift from theta2; drop the 'shift' key");
        const json& s = j["shift"];
        check_keys(s, {"p", "q"}, "shift");
        cfg.shift_p = num(need(s, "p", "shift"), "shift.p");
        if (s.contains("q")) cfg.shift_q = complex_of(s["q"], "shift.q");
    }
    if (j.contains("window")) {
        cfg.window = integer(j["window"], "window");
        if (*cfg.window < 1) fail("window must be a positive half-width");
    }
    if (j.contains("time")) {
        cfg.time = integer(j["time"], "time");
        if (*cfg.time < 0) fail("time must be nonnegative");
    }
    if (j.contains("initial")) cfg.initial = parse_initial(j["initial"]);
    if (j.contains("command-options")) {
        if (!j["command-options"].is_object()) fail("command-options must be an object");
        cfg.command_options = j["command-options"];
    }
    if (j.contains("tolerances")) cfg.tol = parse_tolerances(j["tolerances"]);
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file " + path.string());
    return from_json(nlohmann::json::parse(f));
}

std::pair<ShiftParams, CoinField> ExperimentConfig::build() const {
    if (const auto* k = std::get_if<KitagawaModel>(&model)) return kitagawa_coin(k->spec);
    if (!shift_p)
        throw std::invalid_argument("this model needs an explicit 'shift' with key 'p'");
    const double p = *shift_p;
    if (!(std::abs(p) < 1.0)) throw std::invalid_argument("shift.p must satisfy |p| < 1");
    const cplx q = shift_q ? *shift_q : cplx(std::sqrt(1.0 - p * p));
    ShiftParams shift(p, q);
    if (const auto* a = std::get_if<AnisotropicModel>(&model))
        return {shift, anisotropic_coin(a->spec)};
    const auto& c = std::get<CustomTableModel>(model);
    return {shift, CoinField(c.table_min, c.table, c.limit_minus, c.limit_plus)};
}

int ExperimentConfig::require_window() const {
    if (!window) throw std::invalid_argument("this command requires 'window'");
    return *window;
}

int ExperimentConfig::require_time() const {
    if (!time) throw std::invalid_argument("this command requires 'time'");
    return *time;
}

} // namespace ssqw::cli
