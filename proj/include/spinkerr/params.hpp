#pragma once

#include <string>
#include <string_view>

namespace spinkerr {

namespace constants {
inline constexpr double speed_of_light = 299'792'458.0;  // m/s
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

// Which side of the taper the resonator is driven from. With the resonator spinning
// counter-clockwise, a left drive excites the CW mode (against the rotation, positive
// Fizeau shift) and a right drive the CCW mode (negative shift).
enum class DriveSide { Left, Right };

enum class SpinSense { CCW };

std::string_view to_string(DriveSide side);
DriveSide drive_side_from_string(std::string_view text);

// Lab-frame description of the resonator and the drive, SI units throughout.
// Defaults are the silica-like microsphere used for the reference results.
struct PhysicalConfig {
    double n0 = 1.4;              // linear refractive index
    double n2 = 3e-14;            // nonlinear index, m^2/W
    double v_eff = 150e-18;       // effective mode volume, m^3
    double q_factor = 5e9;
    double wavelength = 1550e-9;  // vacuum wavelength, m
    double radius = 30e-6;        // m
    double p_in = 2e-15;          // drive power, W
    double omega_spin = 0.0;      // angular velocity, rad/s
    double dispersion = 0.0;      // dn/dlambda, 1/m
    DriveSide drive_side = DriveSide::Left;
    SpinSense spin_sense = SpinSense::CCW;

    // Throws InvalidParameter when any field is outside its physical domain.
    void validate() const;

    // Cold-cavity resonance 2 pi c / lambda, rad/s.
    double omega0() const;
};

// Rotating-frame model parameters, all in rad/s with hbar = 1.
struct ModelParams {
    double delta_l = 0.0;  // omega_0 - omega_L
    double delta_f = 0.0;  // signed Fizeau shift
    double u = 0.0;        // Kerr strength
    double xi = 0.0;       // drive amplitude
    double gamma = 0.0;    // cavity decay rate

    // Requires finite fields, u >= 0, xi >= 0, gamma > 0. A vanishing Kerr term is
    // accepted so the linear cavity can serve as a reference.
    void validate() const;

    // Drive-cavity detuning including the Fizeau shift.
    double total_detuning() const { return delta_l + delta_f; }

    // k = 1 - delta_l / U. Requires u > 0.
    double tuning() const;
};

// Signed Fizeau shift (n r Omega omega_0 / c)(1 - 1/n^2 - (lambda/n) dn/dlambda),
// positive for a left drive. Exactly zero when the resonator is at rest.
double fizeau_shift(const PhysicalConfig& cfg);

// U = hbar omega_0^2 c n2 / (n0^2 V_eff).
double kerr_strength(const PhysicalConfig& cfg);

// gamma = omega_0 / Q.
double decay_rate(const PhysicalConfig& cfg);

// xi = sqrt(gamma P_in / (hbar omega_L)) with omega_L = omega_0 - delta_l.
// Throws InvalidDetuning when omega_L <= 0.
double drive_amplitude(const PhysicalConfig& cfg, double delta_l);

double detuning_from_k(double k, double u);
double k_from_detuning(double delta_l, double u);

// Full conversion at tuning parameter k. Rejects a linear medium (U = 0) since k is
// undefined there.
ModelParams model_params(const PhysicalConfig& cfg, double k);

}  // namespace spinkerr
