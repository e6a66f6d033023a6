#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsnloc/field.hpp"
#include "wsnloc/localize.hpp"
#include "wsnloc/radio.hpp"

namespace wsnloc {

enum class ModelKind { Ideal, Ramp, Shadowing };

// Everything that determines the bytes of an experiment's output tree.
// Defaults mirror the reference scenario: 400 nodes on a 100 m x 100 m field
// with a 10 m radio range.
struct ExperimentConfig {
    FieldConfig field;  // field.seed is the master seed
    BeaconStrategy beacon_strategy = BeaconStrategy::Random;

    ModelKind model = ModelKind::Ramp;
    double ramp_inner = 0.1;
    double shadow_sigma = 4.0;
    double shadow_exponent = 3.0;

    SamplingParams sampling;
    ThresholdScheme scheme;
    int max_rounds = 100;

    bool baseline = false;
    double cm_threshold = 90.0;

    std::size_t reps = 1;
    std::vector<std::size_t> sweep;  // node counts; empty for a single experiment

    double cell_size = 10.0;
    double cdf_bin = 0.05;

    std::filesystem::path out = "out";

    ReceptionModel reception_model() const;

    // Throws ConfigError naming the offending key.
    void validate() const;

    // Sets one key from its textual form. Keys are the CLI flag names without
    // the leading dashes. Throws ConfigError for unknown keys or bad values.
    void set(std::string_view key, std::string_view value);

    // All keys that affect results, in a fixed order, with values rendered so
    // that set() restores them exactly. `out` is deliberately absent.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

// Every key accepted by ExperimentConfig::set, in manifest order, plus "out".
const std::vector<std::string>& config_keys();

// Applies a `key = value` text with `#` comments on top of cfg. `source`
// labels error messages.
void apply_config_text(ExperimentConfig& cfg, std::string_view text, std::string_view source = "config");
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

std::string manifest_text(const ExperimentConfig& cfg);

}  // namespace wsnloc
