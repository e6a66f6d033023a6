#include "wsnloc/radio.hpp"

#include <cmath>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

ReceptionModel::ReceptionModel(Law law, double radio_range)
    : law_(law), range_(radio_range)
{
    if (!(range_ > 0.0) || !std::isfinite(range_))
        throw ConfigError("radio-range", "must be positive");
    std::visit(overloaded{
                   [](const IdealDisc&) {},
                   [](const LinearRamp& m) {
                       if (!(m.inner_fraction >= 0.0 && m.inner_fraction < 1.0))
                           throw ConfigError("ramp-inner", "must lie in [0, 1)");
                   },
                   [](const LogNormalShadowing& m) {
                       if (!(m.sigma_db > 0.0) || !std::isfinite(m.sigma_db))
                           throw ConfigError("shadow-sigma", "must be positive");
                       if (!(m.pathloss_exponent > 0.0) || !std::isfinite(m.pathloss_exponent))
                           throw ConfigError("shadow-exponent", "must be positive");
                   },
               },
               law_);
}

std::string_view ReceptionModel::name() const noexcept
{
    return std::visit(overloaded{
                          [](const IdealDisc&) -> std::string_view { return "ideal"; },
                          [](const LinearRamp&) -> std::string_view { return "ramp"; },
                          [](const LogNormalShadowing&) -> std::string_view { return "shadowing"; },
                      },
                      law_);
}

double ReceptionModel::probability(double d) const
{
    if (!(d >= 0.0))
        throw DomainError("reception probability needs a non-negative distance");
    if (d > range_)
        return 0.0;
    return std::visit(overloaded{
                          [](const IdealDisc&) { return 1.0; },
                          [&](const LinearRamp& m) {
                              const double inner = m.inner_fraction * range_;
                              if (d <= inner)
                                  return 1.0;
                              return (range_ - d) / (range_ - inner);
                          },
                          [&](const LogNormalShadowing& m) {
                              if (d == 0.0)
                                  return 1.0;
                              const double margin_db = 10.0 * m.pathloss_exponent * std::log10(range_ / d);
                              return 0.5 * std::erfc(-margin_db / (m.sigma_db * std::sqrt(2.0)));
                          },
                      },
                      law_);
}

double reception_probability(const ReceptionModel& model, double d)
{
    return model.probability(d);
}

double expected_proximity(const ReceptionModel& model, double d)
{
    return 100.0 * model.probability(d);
}

void SamplingParams::validate() const
{
    if (!(beacon_period > 0.0) || !std::isfinite(beacon_period))
        throw ConfigError("beacon-period", "must be positive");
    if (!(sample_time >= beacon_period) || !std::isfinite(sample_time))
        throw ConfigError("sample-time", "must be at least one beacon period");
}

int SamplingParams::transmitted() const
{
    validate();
    // Guard against T_s / T landing one ulp under an integer.
    return static_cast<int>(std::floor(sample_time / beacon_period * (1.0 + 1e-12)));
}

BeaconCounts sample_beacon_counts(const ReceptionModel& model, double d, const SamplingParams& sampling,
                                  Stream& stream)
{
    const double p = model.probability(d);
    BeaconCounts counts;
    counts.transmitted = sampling.transmitted();
    for (int slot = 0; slot < counts.transmitted; ++slot)
        if (stream.uniform() < p)
            ++counts.received;
    return counts;
}

}  // namespace wsnloc
