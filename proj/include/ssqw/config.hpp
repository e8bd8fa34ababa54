#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "ssqw/models.hpp"

namespace ssqw::cli {

/// Numerical knobs every command reads; all overridable from the config file.
struct Tolerances {
    double classify_margin = 1e-9;
    double min_chi = 1e-12;
    double tail_mass = 1e-10;
    double compaction = 1e-300;
};

struct AnisotropicModel {
    AnisotropicSpec spec;
};

struct KitagawaModel {
    KitagawaSpec spec;
};

struct CustomTableModel {
    int table_min = 0;
    std::vector<CoinSite> table;
    std::optional<CoinSite> limit_minus;
    std::optional<CoinSite> limit_plus;
};

using ModelSpec = std::variant<AnisotropicModel, KitagawaModel, CustomTableModel>;

struct InitialDelta {
    int x = 0;
    Spinor spinor{cplx(1.0), cplx(0.0)};
};

struct InitialBirth {
    BirthSign sign = BirthSign::plus;
};

using InitialSpec = std::variant<std::monostate, InitialDelta, InitialBirth>;

/// Parsed experiment description.  Unknown keys anywhere are an error, and
/// fields a command requires but the file omits are reported by name.
struct ExperimentConfig {
    ModelSpec model;
    std::optional<double> shift_p;
    std::optional<cplx> shift_q;
    std::optional<int> window; // half-width; states and vectors live on [-window, window]
    std::optional<int> time;
    InitialSpec initial;
    nlohmann::json command_options = nlohmann::json::object();
    Tolerances tol;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::filesystem::path& path);

    /// Shift and coin field for this model.  The two-angle model derives its
    /// shift from theta2 (declaring "shift" alongside it is a config error,
    /// enforced at parse time); the other models require an explicit one.
    std::pair<ShiftParams, CoinField> build() const;

    int require_window() const;
    int require_time() const;
};

} // namespace ssqw::cli
