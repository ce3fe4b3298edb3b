#pragma once

#include <string>
#include <vector>

#include "spdc/config.hpp"

namespace spdc {

/// Nonlinear phase mismatch at one (signal, idler, pump) frequency triple.
/// `delta_k_small` is the offset from the degenerate-point mismatch.
struct PhaseMismatch {
  double delta_k = 0.0;        // rad/m
  double delta_k0 = 0.0;       // rad/m
  double delta_k_small = 0.0;  // rad/m, == delta_k - delta_k0

  static PhaseMismatch make(double delta_k, double delta_k0) {
    return {delta_k, delta_k0, delta_k - delta_k0};
  }
};

/// One pole of the dispersion formula: strength / (lambda^2 - position),
/// lambda in micrometres.
struct SellmeierPole {
  double strength = 0.0;  // um^2
  double position = 0.0;  // um^2
};

/// Extraordinary refractive index of the crystal,
///
///     n^2 = constant + sum_k strength_k / (lambda^2 - position_k) - ir * lambda^2
///
/// with lambda in micrometres. Both the Jundt and the classic
/// B*lambda^2/(lambda^2 - C) Sellmeier forms reduce to this shape; a fit's
/// temperature dependence is folded in when the model is built, after which
/// the model is immutable.
class DispersionModel {
 public:
  DispersionModel(std::string source, double constant, std::vector<SellmeierPole> poles, double ir_coefficient,
                  double lambda_min_m, double lambda_max_m, double temperature_c);

  /// Congruent LiNbO3, extraordinary index, D.H. Jundt, Opt. Lett. 22, 1553
  /// (1997). Valid 0.4-5 um; temperature in Celsius.
  static DispersionModel jundt_congruent(double temperature_c = 25.0);
  /// Congruent LiNbO3, extraordinary index, D.E. Zelmon et al., JOSA B 14,
  /// 3319 (1997), room temperature. Valid 0.4-5 um.
  static DispersionModel zelmon_congruent();
  /// Reads the [crystal] section; see config/default.cfg for the keys.
  static DispersionModel from_config(const KeyValueConfig& config, const std::string& section = "crystal");

  double refractive_index(double omega) const;
  double refractive_index_at_wavelength(double lambda_m) const;
  /// k = n(omega) omega / c.
  double wave_number(double omega) const;

  /// Collinear mismatch k_p - k_s - k_i; delta_k0 refers to the degenerate
  /// point omega_s = omega_i = omega_p / 2.
  PhaseMismatch delta_k(double omega_s, double omega_i, double omega_p) const;
  double delta_k0(double omega_p) const;
  /// pi / delta_k0.
  double base_domain_length(double omega_p) const;

  bool in_range(double omega) const;
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  double temperature_c() const { return temperature_c_; }
  const std::string& source() const { return source_; }
  double constant() const { return constant_; }
  const std::vector<SellmeierPole>& poles() const { return poles_; }
  double ir_coefficient() const { return ir_coefficient_; }

  /// Writes the model back as [section] keys understood by from_config.
  void write_config(KeyValueConfig& config, const std::string& section = "crystal") const;

 private:
  double index_squared_um(double lambda_um) const;

  std::string source_;
  double constant_;
  std::vector<SellmeierPole> poles_;
  double ir_coefficient_;
  double lambda_min_;
  double lambda_max_;
  double temperature_c_;
};

}  // namespace spdc
