#include "spdc/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"

namespace spdc {
namespace {

std::string range_message(double lambda_m, double lo, double hi) {
  std::ostringstream msg;
  msg << "wavelength " << lambda_m * 1e6 << " um outside dispersion validity [" << lo * 1e6 << ", " << hi * 1e6
      << "] um";
  return msg.str();
}

}  // namespace

DispersionModel::DispersionModel(std::string source, double constant, std::vector<SellmeierPole> poles,
                                 double ir_coefficient, double lambda_min_m, double lambda_max_m,
                                 double temperature_c)
    : source_(std::move(source)),
      constant_(constant),
      poles_(std::move(poles)),
      ir_coefficient_(ir_coefficient),
      lambda_min_(lambda_min_m),
      lambda_max_(lambda_max_m),
      temperature_c_(temperature_c) {
  if (!(lambda_min_m > 0.0) || !(lambda_max_m > lambda_min_m)) {
    throw ArgumentError("dispersion model needs 0 < lambda_min < lambda_max");
  }
  for (const auto& pole : poles_) {
    const double root = std::sqrt(std::abs(pole.position)) * 1e-6;
    if (pole.position > 0.0 && root >= lambda_min_m && root <= lambda_max_m) {
      throw ArgumentError("Sellmeier pole at " + std::to_string(root) + " m lies inside the validity range");
    }
  }
}

DispersionModel DispersionModel::jundt_congruent(double temperature_c) {
  // n_e^2 = a1 + b1 f + (a2 + b2 f)/(l^2 - (a3 + b3 f)^2) + (a4 + b4 f)/(l^2 - a5^2) - a6 l^2,
  // f = (T - 24.5)(T + 570.82), T in Celsius.
  constexpr double a1 = 5.35583, a2 = 0.100473, a3 = 0.20692, a4 = 100.0, a5 = 11.34927, a6 = 1.5334e-2;
  constexpr double b1 = 4.629e-7, b2 = 3.862e-8, b3 = -0.89e-8, b4 = 2.657e-5;
  const double f = (temperature_c - 24.5) * (temperature_c + 570.82);
  const double uv = a3 + b3 * f;
  return DispersionModel("jundt1997", a1 + b1 * f,
                         {{a2 + b2 * f, uv * uv}, {a4 + b4 * f, a5 * a5}}, a6, 0.4e-6, 5.0e-6, temperature_c);
}

DispersionModel DispersionModel::zelmon_congruent() {
  // n^2 = 1 + sum B_i l^2/(l^2 - C_i) = 1 + sum B_i + sum B_i C_i/(l^2 - C_i).
  constexpr double B[] = {2.9804, 0.5981, 8.9543};
  constexpr double C[] = {0.02047, 0.0666, 416.08};
  std::vector<SellmeierPole> poles;
  double constant = 1.0;
  for (int i = 0; i < 3; ++i) {
    constant += B[i];
    poles.push_back({B[i] * C[i], C[i]});
  }
  return DispersionModel("zelmon1997", constant, std::move(poles), 0.0, 0.4e-6, 5.0e-6, 21.0);
}

DispersionModel DispersionModel::from_config(const KeyValueConfig& config, const std::string& section) {
  const auto key = [&](const char* name) { return section + "." + name; };
  const auto source = config.get_string(key("sellmeier"), "jundt1997");
  const double temperature = config.get_double(key("temperature_c"), 25.0);
  if (source == "jundt1997") return jundt_congruent(temperature);
  if (source == "zelmon1997") return zelmon_congruent();
  if (source != "custom") {
    throw ConfigError("unknown Sellmeier source '" + source + "' (jundt1997, zelmon1997, custom)");
  }
  const auto strengths = config.get_doubles(key("pole_strengths_um2"));
  const auto positions = config.get_doubles(key("pole_positions_um2"));
  if (strengths.size() != positions.size()) {
    throw ConfigError(key("pole_strengths_um2") + " and " + key("pole_positions_um2") + " differ in length");
  }
  std::vector<SellmeierPole> poles;
  for (std::size_t i = 0; i < strengths.size(); ++i) poles.push_back({strengths[i], positions[i]});
  try {
    return DispersionModel("custom", config.get_double(key("constant")), std::move(poles),
                           config.get_double(key("ir_coefficient_um2"), 0.0),
                           config.get_double(key("lambda_min_um"), 0.4) * 1e-6,
                           config.get_double(key("lambda_max_um"), 5.0) * 1e-6, temperature);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
}

void DispersionModel::write_config(KeyValueConfig& config, const std::string& section) const {
  const auto key = [&](const char* name) { return section + "." + name; };
  config.set(key("sellmeier"), source_);
  config.set(key("temperature_c"), format_double(temperature_c_));
  if (source_ != "custom") return;
  std::string strengths, positions;
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    strengths += (i ? ", " : "") + format_double(poles_[i].strength);
    positions += (i ? ", " : "") + format_double(poles_[i].position);
  }
  config.set(key("constant"), format_double(constant_));
  config.set(key("pole_strengths_um2"), strengths);
  config.set(key("pole_positions_um2"), positions);
  config.set(key("ir_coefficient_um2"), format_double(ir_coefficient_));
  config.set(key("lambda_min_um"), format_double(lambda_min_ * 1e6));
  config.set(key("lambda_max_um"), format_double(lambda_max_ * 1e6));
}

double DispersionModel::index_squared_um(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  double n2 = constant_ - ir_coefficient_ * l2;
  for (const auto& pole : poles_) n2 += pole.strength / (l2 - pole.position);
  return n2;
}

bool DispersionModel::in_range(double omega) const {
  if (!(omega > 0.0) || !std::isfinite(omega)) return false;
  const double lambda = constants::wavelength_from_omega(omega);
  return lambda >= lambda_min_ && lambda <= lambda_max_;
}

double DispersionModel::refractive_index_at_wavelength(double lambda_m) const {
  if (!(lambda_m >= lambda_min_ && lambda_m <= lambda_max_)) {
    throw RangeError(range_message(lambda_m, lambda_min_, lambda_max_));
  }
  const double n2 = index_squared_um(lambda_m * 1e6);
  if (!(n2 > 1.0)) throw RangeError("dispersion model gives n^2 <= 1 at " + std::to_string(lambda_m) + " m");
  return std::sqrt(n2);
}

double DispersionModel::refractive_index(double omega) const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw RangeError(range_message(omega > 0.0 ? constants::wavelength_from_omega(omega) : INFINITY, lambda_min_,
                                   lambda_max_));
  }
  return refractive_index_at_wavelength(constants::wavelength_from_omega(omega));
}

double DispersionModel::wave_number(double omega) const {
  return refractive_index(omega) * omega / constants::speed_of_light;
}

double DispersionModel::delta_k0(double omega_p) const {
  const double half = 0.5 * omega_p;
  return wave_number(omega_p) - 2.0 * wave_number(half);
}

PhaseMismatch DispersionModel::delta_k(double omega_s, double omega_i, double omega_p) const {
  const double dk = wave_number(omega_p) - (wave_number(omega_s) + wave_number(omega_i));
  return PhaseMismatch::make(dk, delta_k0(omega_p));
}

double DispersionModel::base_domain_length(double omega_p) const {
  const double dk0 = delta_k0(omega_p);
  if (!(dk0 > 0.0)) throw NumericalDomainError("degenerate mismatch is not positive; no first-order QPM period");
  return constants::pi / dk0;
}

}  // namespace spdc
