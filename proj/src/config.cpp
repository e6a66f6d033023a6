#include "wsnloc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "wsnloc/errors.hpp"
#include "wsnloc/format.hpp"

namespace wsnloc {

namespace {

double parse_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

std::string join_doubles(const std::vector<double>& values)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            s += ',';
        s += format_exact(values[i]);
    }
    return s;
}

std::string_view model_name(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Ideal: return "ideal";
    case ModelKind::Ramp: return "ramp";
    case ModelKind::Shadowing: return "shadowing";
    }
    return "ramp";
}

}  // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{
        "nodes",        "field-width",   "field-height",  "radio-range",     "beacon-fraction", "beacon-strategy",
        "model",        "ramp-inner",    "shadow-sigma",  "shadow-exponent", "beacon-period",   "sample-time",
        "thresholds",   "min-bucket",    "max-rounds",    "baseline",        "cm-threshold",    "seed",
        "reps",         "sweep",         "cell-size",     "cdf-bin",         "out",
    };
    return keys;
}

ReceptionModel ExperimentConfig::reception_model() const
{
    switch (model) {
    case ModelKind::Ideal: return ReceptionModel(IdealDisc{}, field.radio_range);
    case ModelKind::Ramp: return ReceptionModel(LinearRamp{ramp_inner}, field.radio_range);
    case ModelKind::Shadowing:
        return ReceptionModel(LogNormalShadowing{shadow_sigma, shadow_exponent}, field.radio_range);
    }
    throw ConfigError("model", "unknown reception model");
}

void ExperimentConfig::validate() const
{
    if (sweep.empty()) {
        field.validate();
    } else {
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            if (sweep[i] == 0)
                throw ConfigError("sweep", "node counts must be positive");
            if (i > 0 && sweep[i] <= sweep[i - 1])
                throw ConfigError("sweep", "node counts must be distinct and ascending");
            FieldConfig f = field;
            f.node_count = sweep[i];
            f.validate();
        }
    }
    reception_model();
    sampling.validate();
    scheme.validate();
    if (max_rounds < 1)
        throw ConfigError("max-rounds", "must be at least 1");
    if (!(cm_threshold > 0.0 && cm_threshold < 100.0))
        throw ConfigError("cm-threshold", "must lie in (0, 100)");
    if (reps < 1)
        throw ConfigError("reps", "must be at least 1");
    if (!(cell_size > 0.0))
        throw ConfigError("cell-size", "must be positive");
    if (!(cdf_bin > 0.0))
        throw ConfigError("cdf-bin", "must be positive");
}

void ExperimentConfig::set(std::string_view key, std::string_view value)
{
    const std::string k(key);
    const std::string_view v = trim(value);
    if (k == "nodes") {
        field.node_count = parse_unsigned(k, v);
    } else if (k == "field-width") {
        field.width = parse_double(k, v);
    } else if (k == "field-height") {
        field.height = parse_double(k, v);
    } else if (k == "radio-range") {
        field.radio_range = parse_double(k, v);
    } else if (k == "beacon-fraction") {
        field.beacon_fraction = parse_double(k, v);
    } else if (k == "beacon-strategy") {
        if (v == "random")
            beacon_strategy = BeaconStrategy::Random;
        else if (v == "grid")
            beacon_strategy = BeaconStrategy::GridJitter;
        else
            throw ConfigError(k, "expected random or grid, got '" + std::string(v) + "'");
    } else if (k == "model") {
        if (v == "ideal")
            model = ModelKind::Ideal;
        else if (v == "ramp")
            model = ModelKind::Ramp;
        else if (v == "shadowing")
            model = ModelKind::Shadowing;
        else
            throw ConfigError(k, "expected ideal, ramp or shadowing, got '" + std::string(v) + "'");
    } else if (k == "ramp-inner") {
        ramp_inner = parse_double(k, v);
    } else if (k == "shadow-sigma") {
        shadow_sigma = parse_double(k, v);
    } else if (k == "shadow-exponent") {
        shadow_exponent = parse_double(k, v);
    } else if (k == "beacon-period") {
        sampling.beacon_period = parse_double(k, v);
    } else if (k == "sample-time") {
        sampling.sample_time = parse_double(k, v);
    } else if (k == "thresholds") {
        std::vector<double> bounds;
        for (const auto& part : split(v, ','))
            bounds.push_back(parse_double(k, part));
        scheme.lower_bounds = std::move(bounds);
    } else if (k == "min-bucket") {
        scheme.min_bucket_size = parse_unsigned(k, v);
    } else if (k == "max-rounds") {
        const auto rounds = parse_unsigned(k, v);
        if (rounds > 1'000'000'000)
            throw ConfigError(k, "too large");
        max_rounds = static_cast<int>(rounds);
    } else if (k == "baseline") {
        baseline = parse_bool(k, v);
    } else if (k == "cm-threshold") {
        cm_threshold = parse_double(k, v);
    } else if (k == "seed") {
        field.seed = parse_unsigned(k, v);
    } else if (k == "reps") {
        reps = parse_unsigned(k, v);
    } else if (k == "sweep") {
        sweep.clear();
        if (!v.empty())
            for (const auto& part : split(v, ','))
                sweep.push_back(parse_unsigned(k, part));
    } else if (k == "cell-size") {
        cell_size = parse_double(k, v);
    } else if (k == "cdf-bin") {
        cdf_bin = parse_double(k, v);
    } else if (k == "out") {
        if (v.empty())
            throw ConfigError(k, "must not be empty");
        out = std::string(v);
    } else {
        throw ConfigError(k, "unknown configuration key");
    }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const
{
    std::string sweep_text;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        if (i)
            sweep_text += ',';
        sweep_text += std::to_string(sweep[i]);
    }
    return {
        {"nodes", std::to_string(field.node_count)},
        {"field-width", format_exact(field.width)},
        {"field-height", format_exact(field.height)},
        {"radio-range", format_exact(field.radio_range)},
        {"beacon-fraction", format_exact(field.beacon_fraction)},
        {"beacon-strategy", std::string(to_string(beacon_strategy))},
        {"model", std::string(model_name(model))},
        {"ramp-inner", format_exact(ramp_inner)},
        {"shadow-sigma", format_exact(shadow_sigma)},
        {"shadow-exponent", format_exact(shadow_exponent)},
        {"beacon-period", format_exact(sampling.beacon_period)},
        {"sample-time", format_exact(sampling.sample_time)},
        {"thresholds", join_doubles(scheme.lower_bounds)},
        {"min-bucket", std::to_string(scheme.min_bucket_size)},
        {"max-rounds", std::to_string(max_rounds)},
        {"baseline", baseline ? "true" : "false"},
        {"cm-threshold", format_exact(cm_threshold)},
        {"seed", std::to_string(field.seed)},
        {"reps", std::to_string(reps)},
        {"sweep", sweep_text},
        {"cell-size", format_exact(cell_size)},
        {"cdf-bin", format_exact(cdf_bin)},
    };
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text, std::string_view source)
{
    std::size_t line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", std::string(source) + ":" + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("", std::string(source) + ":" + std::to_string(line_no) + ": missing key");
        cfg.set(key, line.substr(eq + 1));
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path)
{
    apply_config_text(cfg, read_file(path), path.string());
}

std::string manifest_text(const ExperimentConfig& cfg)
{
    std::string text = "# wsnloc resolved configuration\n";
    for (const auto& [key, value] : cfg.entries())
        text += key + " = " + value + "\n";
    return text;
}

}  // namespace wsnloc
