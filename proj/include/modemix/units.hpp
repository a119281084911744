#pragma once

#include <cmath>

// Unit conventions used throughout the library:
//   wavelengths   vacuum wavelengths in nm at every public interface
//   transverse    coordinates and grid steps in um
//   propagation   constants and phase mismatch in rad/um
//   lengths       waveguide length in mm at the public interface
namespace modemix {

inline constexpr double kPi = 3.14159265358979323846;

// Exact defined value, m/s. Angular frequency is derived on demand as
// omega = 2*pi*c / lambda; the phase matching formulas below use the
// equivalent vacuum-wavelength form in which c cancels.
inline constexpr double kSpeedOfLight = 299792458.0;

inline constexpr double nm_to_um(double nm) { return nm * 1e-3; }
inline constexpr double um_to_nm(double um) { return um * 1e3; }
inline constexpr double mm_to_um(double mm) { return mm * 1e3; }

inline double vacuum_wavenumber_per_um(double lambda_nm) {
    return 2.0 * kPi / nm_to_um(lambda_nm);
}

// omega in rad/s for a vacuum wavelength in nm.
inline double angular_frequency(double lambda_nm) {
    return 2.0 * kPi * kSpeedOfLight / (lambda_nm * 1e-9);
}

// sin(x)/x with the removable singularity filled in.
inline double sinc(double x) {
    if (std::abs(x) < 1e-6) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// Energy conservation: 1/lambda_S = 1/lambda_V + 1/lambda_H.
inline double sum_frequency_wavelength_nm(double lambda_v_nm, double lambda_h_nm) {
    return 1.0 / (1.0 / lambda_v_nm + 1.0 / lambda_h_nm);
}

} // namespace modemix
