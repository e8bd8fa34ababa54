#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ssqw/config.hpp"
#include "ssqw/discriminant.hpp"

namespace ssqw::cli {

/// Flat mirror of summary.json (simulate).  return_probability[t] is the mass
/// at the start site; survival_probability[t] = |<psi_0, psi_t>|^2 stays at 1
/// when the initial state is a flat eigenvector.
struct SummaryDoc {
    int start_site = 0;
    int time_horizon = 0;
    double norm_drift = 0.0;
    std::vector<double> return_probability;
    std::vector<double> survival_probability;

    bool operator==(const SummaryDoc&) const = default;
};

/// Flat mirror of mapping.json (spectrum).
struct MappingDoc {
    int sites = 0;
    bool seam = false;
    double max_defect = 0.0;
    double max_interior_defect = 0.0;
    double max_inverse_defect = 0.0;

    bool operator==(const MappingDoc&) const = default;
};

/// Flat mirror of birth_plus.json / birth_minus.json (birth).
struct BirthDoc {
    std::string sign;
    std::string verdict;
    double minus_limsup = 0.0;
    double minus_liminf = 0.0;
    double plus_limsup = 0.0;
    double plus_liminf = 0.0;
    bool exact_limits = false;
    double ratio_bound = 0.0;
    double lower_bound = 0.0;
    std::optional<double> residual;
    std::optional<double> d_residual;
    std::optional<double> shift_residual;
    std::optional<double> evolve_residual;
    std::optional<DecayFit> decay;
    std::optional<double> predicted_slope_plus;
    std::optional<double> predicted_slope_minus;

    bool operator==(const BirthDoc&) const = default;
};

void to_json(nlohmann::json& j, const SummaryDoc& d);
void from_json(const nlohmann::json& j, SummaryDoc& d);
void to_json(nlohmann::json& j, const MappingDoc& d);
void from_json(const nlohmann::json& j, MappingDoc& d);
void to_json(nlohmann::json& j, const BirthDoc& d);
void from_json(const nlohmann::json& j, BirthDoc& d);

BirthDoc make_birth_doc(const BirthReport& rep);

std::string verdict_name(Verdict v);

/// simulate: evolve the configured initial state, writing distribution.csv
/// and summary.json.
void cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// spectrum: periodic truncations of the discriminant and the evolution
/// operator plus the spectral-mapping cross-check; writes spectrum_T.csv,
/// spectrum_U.csv and mapping.json.
void cmd_spectrum(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// birth: classification, eigenvector and decay fit for both signs; writes
/// birth_plus.json / birth_minus.json and a profile CSV per nontrivial sign.
void cmd_birth(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// sweep: classification over a 1- or 2-parameter grid against the
/// closed-form prediction; writes sweep.csv and returns the number of
/// non-boundary disagreements.
int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Dispatch plus the exit-code contract: 0 success, 1 config/usage error,
/// 2 trivial birth space requested, 3 hypothesis violation, 4 sweep found
/// disagreements between classification and prediction.
int run_command(std::string_view cmd, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir);

} // namespace ssqw::cli
