#include "sonarsim/acoustics.hpp"

#include "sonarsim/errors.hpp"

#include <cmath>

namespace sonarsim {

void WaterProperties::validate() const {
    if (salinity < 0.0) throw ValidationError("water: salinity must be >= 0");
    if (depth < 0.0) throw ValidationError("water: depth must be >= 0");
    if (acidity < 0.0 || acidity > 14.0) {
        throw ValidationError("water: pH must be in [0, 14]");
    }
}

AttenuationBreakdown attenuation_coefficient(double frequency,
                                             const WaterProperties& water) {
    if (!(frequency > 0.0)) {
        throw ValidationError("attenuation_coefficient: frequency must be > 0 kHz");
    }
    water.validate();
    const double f2q = frequency * frequency;
    const double T = water.temperature;
    const double S = water.salinity;
    const double pH = water.acidity;
    const double z = water.depth;

    AttenuationBreakdown a;
    a.f1 = 0.78 * std::sqrt(S / 35.0) * std::exp(T / 26.0);
    a.alpha_boric =
        0.106 * (a.f1 * f2q / (f2q + a.f1 * a.f1)) * std::exp((pH - 8.0) / 0.56);
    a.f2 = 42.0 * std::exp(T / 17.0);
    a.alpha_magnesium = 0.52 * (1.0 + T / 43.0) * (S / 35.0) *
                        (a.f2 * f2q / (f2q + a.f2 * a.f2)) * std::exp(-z / 6.0);
    a.alpha_fresh = 0.00049 * f2q * std::exp(-(T / 27.0 + z / 17.0));
    a.alpha_total = a.alpha_boric + a.alpha_magnesium + a.alpha_fresh;
    a.gamma = db_to_neper(a.alpha_total);
    return a;
}

ReflectionImage apply_attenuation(const ReflectionImage& image, double gamma_np_per_km) {
    ReflectionImage out = image;
    auto decay = [gamma_np_per_km](std::vector<double>& intensity,
                                   const std::vector<double>& distance) {
        for (std::size_t i = 0; i < intensity.size(); ++i) {
            if (distance[i] == kNoSample) continue;
            const double d_km = distance[i] / 1000.0;
            intensity[i] *= std::exp(-2.0 * gamma_np_per_km * d_km);
        }
    };
    decay(out.intensity, out.distance);
    if (out.has_secondary()) decay(out.echo2_intensity, out.echo2_distance);
    return out;
}

}  // namespace sonarsim
