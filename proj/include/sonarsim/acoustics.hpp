#pragma once

#include "sonarsim/rasterizer.hpp"

// Underwater sound attenuation: the Ainslie-McColm absorption coefficient
// (boric acid + magnesium sulphate + freshwater terms) and the exponential
// intensity decay it drives.

namespace sonarsim {

struct WaterProperties {
    double temperature = 15.0;  // deg C
    double salinity = 35.0;     // ppt
    double acidity = 8.0;       // pH
    double depth = 0.0;         // km

    void validate() const;
};

struct AttenuationBreakdown {
    double alpha_boric = 0.0;      // dB/km
    double alpha_magnesium = 0.0;  // dB/km
    double alpha_fresh = 0.0;      // dB/km
    double alpha_total = 0.0;      // dB/km
    double f1 = 0.0;               // boric relaxation frequency, kHz
    double f2 = 0.0;               // magnesium relaxation frequency, kHz
    double gamma = 0.0;            // Np/km
};

/// dB/km -> Np/km conversion factor used throughout (0.0115129...).
inline const double kDbToNeper = std::log(10.0) / 200.0;

/// Absorption coefficient at frequency f (kHz) for the given water column.
/// Throws on non-positive frequency.
AttenuationBreakdown attenuation_coefficient(double frequency, const WaterProperties& water);

inline double db_to_neper(double alpha_db_per_km) { return alpha_db_per_km * kDbToNeper; }

/// Multiplies every sample's intensity by exp(-2 gamma d), d in km taken
/// from that sample's pulse distance (primary or accumulated secondary).
ReflectionImage apply_attenuation(const ReflectionImage& image, double gamma_np_per_km);

}  // namespace sonarsim
