#include "spinkerr/params.hpp"

#include <cmath>
#include <string>

#include "spinkerr/errors.hpp"

namespace spinkerr {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameter(what);
}

}  // namespace

std::string_view to_string(DriveSide side) {
    return side == DriveSide::Left ? "left" : "right";
}

DriveSide drive_side_from_string(std::string_view text) {
    if (text == "left" || text == "Left" || text == "cw") return DriveSide::Left;
    if (text == "right" || text == "Right" || text == "ccw") return DriveSide::Right;
    throw InvalidParameter("unknown drive side '" + std::string(text) + "' (expected left|right)");
}

void PhysicalConfig::validate() const {
    require(std::isfinite(n0) && n0 > 1.0, "n0 must be > 1");
    require(std::isfinite(n2), "n2 must be finite");
    require(std::isfinite(v_eff) && v_eff > 0.0, "v_eff must be > 0");
    require(std::isfinite(q_factor) && q_factor > 0.0, "q_factor must be > 0");
    require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be > 0");
    require(std::isfinite(radius) && radius > 0.0, "radius must be > 0");
    require(std::isfinite(p_in) && p_in >= 0.0, "p_in must be >= 0");
    require(std::isfinite(omega_spin) && omega_spin >= 0.0, "omega_spin must be >= 0");
    require(std::isfinite(dispersion), "dispersion must be finite");
    const double w0 = omega0();
    require(std::isfinite(w0) && w0 > 0.0, "omega0 must be finite and positive");
}

double PhysicalConfig::omega0() const {
    return 2.0 * constants::pi * constants::speed_of_light / wavelength;
}

void ModelParams::validate() const {
    require(std::isfinite(delta_l) && std::isfinite(delta_f), "detunings must be finite");
    require(std::isfinite(u) && u >= 0.0, "u must be >= 0");
    require(std::isfinite(xi) && xi >= 0.0, "xi must be >= 0");
    require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
}

double ModelParams::tuning() const {
    return k_from_detuning(delta_l, u);
}

double fizeau_shift(const PhysicalConfig& cfg) {
    cfg.validate();
    if (cfg.omega_spin == 0.0) return 0.0;
    const double n = cfg.n0;
    const double magnitude = n * cfg.radius * cfg.omega_spin * cfg.omega0() / constants::speed_of_light *
                             (1.0 - 1.0 / (n * n) - cfg.wavelength / n * cfg.dispersion);
    return cfg.drive_side == DriveSide::Left ? magnitude : -magnitude;
}

double kerr_strength(const PhysicalConfig& cfg) {
    cfg.validate();
    const double w0 = cfg.omega0();
    return constants::hbar * w0 * w0 * constants::speed_of_light * cfg.n2 / (cfg.n0 * cfg.n0 * cfg.v_eff);
}

double decay_rate(const PhysicalConfig& cfg) {
    cfg.validate();
    return cfg.omega0() / cfg.q_factor;
}

double drive_amplitude(const PhysicalConfig& cfg, double delta_l) {
    cfg.validate();
    const double omega_l = cfg.omega0() - delta_l;
    if (!(omega_l > 0.0)) {
        throw InvalidDetuning("drive frequency omega0 - delta_l = " + std::to_string(omega_l) +
                              " rad/s is not positive");
    }
    return std::sqrt(decay_rate(cfg) * cfg.p_in / (constants::hbar * omega_l));
}

double detuning_from_k(double k, double u) {
    require(u > 0.0, "detuning_from_k requires u > 0");
    return -u * (k - 1.0);
}

double k_from_detuning(double delta_l, double u) {
    require(u > 0.0, "the tuning parameter is undefined for u <= 0");
    return 1.0 - delta_l / u;
}

ModelParams model_params(const PhysicalConfig& cfg, double k) {
    cfg.validate();
    require(std::isfinite(k), "k must be finite");
    ModelParams p;
    p.u = kerr_strength(cfg);
    require(p.u > 0.0, "Kerr strength must be > 0 (n2 > 0) to define the tuning parameter");
    p.gamma = decay_rate(cfg);
    p.delta_l = detuning_from_k(k, p.u);
    p.delta_f = fizeau_shift(cfg);
    p.xi = drive_amplitude(cfg, p.delta_l);
    p.validate();
    return p;
}

}  // namespace spinkerr
