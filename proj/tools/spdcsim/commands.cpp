#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include <json.hpp>

#include "spdc/constants.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/ensemble.hpp"
#include "spdc/errors.hpp"
#include "spdc/export.hpp"
#include "spdc/interference.hpp"
#include "spdc/spectra.hpp"
#include "spdc/structure.hpp"

namespace spdcsim {
namespace {

using namespace spdc;

constexpr double um = 1e-6;
constexpr double fs = 1e-15;

SpectralContext make_context(const KeyValueConfig& c) {
  const auto model = DispersionModel::from_config(c);
  const double pump_nm = c.get_double("pump.wavelength_nm");
  const double power_mw = c.get_double("pump.power_mw");
  if (!(pump_nm > 0.0)) throw ConfigError("pump.wavelength_nm must be positive");
  if (!(power_mw > 0.0)) throw ConfigError("pump.power_mw must be positive");
  const auto pump = PumpSpec::from_wavelength(pump_nm * 1e-9, power_mw * 1e-3);
  const auto samples = c.get_int("grid.samples");
  if (samples < 3) throw ConfigError("grid.samples must be >= 3");
  const double lo = c.get_double("grid.lambda_min_um") * um;
  const double hi = c.get_double("grid.lambda_max_um") * um;
  try {
    return SpectralContext(model, pump,
                           SpectralGrid::covering(pump.omega_p0, lo, hi, static_cast<std::size_t>(samples)));
  } catch (const ArgumentError& e) {
    throw ConfigError("signal window " + format_double(lo / um) + "-" + format_double(hi / um) +
                      " um does not fit a pump at " + format_double(pump_nm) + " nm: " + e.what());
  } catch (const RangeError& e) {
    throw RangeError("signal window " + format_double(lo / um) + "-" + format_double(hi / um) + " um with pump " +
                     format_double(pump_nm) + " nm: " + e.what());
  }
}

double base_length(const KeyValueConfig& c, const SpectralContext& context) {
  const auto text = c.get_string("structure.l0_um");
  if (text == "auto") return context.base_length();
  const double l0 = c.get_double("structure.l0_um") * um;
  if (!(l0 > 0.0)) throw ConfigError("structure.l0_um must be positive or auto");
  return l0;
}

std::size_t count(const KeyValueConfig& c, const std::string& key) {
  const auto v = c.get_int(key);
  if (v < 1) throw ConfigError(key + " must be >= 1");
  return static_cast<std::size_t>(v);
}

std::size_t domains(const KeyValueConfig& c) { return count(c, "structure.domains"); }

double calibration(const KeyValueConfig& c, const SpectralContext& context) {
  return calibrate(context, c.get_double("rate.reference_pairs_per_s"), count(c, "rate.reference_domains"),
                   c.get_double("rate.reference_power_mw") * 1e-3);
}

EnsembleSpec ensemble_spec(const KeyValueConfig& c, double l0, double sigma) {
  EnsembleSpec spec;
  spec.realizations = count(c, "ensemble.realizations");
  spec.base_seed = c.get_uint64("ensemble.base_seed", 0);
  spec.n_domains = domains(c);
  spec.l0 = l0;
  spec.sigma = sigma;
  return spec;
}

Source configured_source(const KeyValueConfig& c, const SpectralContext& context) {
  const auto kind = c.get_string("structure.kind");
  const std::size_t n = domains(c);
  const double l0 = base_length(c, context);
  if (kind == "periodic") return StackSource{build_periodic(n, l0)};
  if (kind == "random") {
    return StackSource{build_random(n, l0, c.get_double("structure.sigma_um") * um, c.get_uint64("structure.seed", 0))};
  }
  if (kind == "chirped") {
    return StackSource{build_chirped(n, l0, c.get_double("structure.zeta_per_m2"), context.delta_k0())};
  }
  if (kind == "ensemble") return RandomEnsembleSource{n, l0, c.get_double("structure.sigma_um") * um};
  throw ConfigError("structure.kind must be periodic, random, chirped or ensemble, not '" + kind + "'");
}

std::vector<double> wavelengths(const SpectralGrid& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) out[m] = constants::wavelength_from_omega(grid.omega(m));
  return out;
}

std::vector<double> scaled(std::vector<double> v, double factor) {
  for (auto& x : v) x *= factor;
  return v;
}

/// Collects the files of one command and writes the resolved config and the
/// JSON sidecar next to them.
class Outputs {
 public:
  Outputs(const Run& run, const SpectralContext& context) : run_(run) {
    std::filesystem::create_directories(run.out_dir);
    common_.add("command", run.command);
    common_.add("crystal", context.model().source());
    common_.add("temperature_c", context.model().temperature_c());
    common_.add("pump_wavelength_m", constants::wavelength_from_omega(context.pump().omega_p0));
    common_.add("pump_power_w", context.pump().power);
    common_.add("delta_k0_rad_per_m", context.delta_k0());
    common_.add("l0_m", context.base_length());
    common_.add("grid_samples", static_cast<std::uint64_t>(context.grid().size()));
    common_.add("grid_step_rad_per_s", context.grid().step());
  }

  Metadata& common() { return common_; }

  void csv(const std::string& stem, const Metadata& extra, const std::vector<Column>& columns) {
    Metadata all = common_;
    for (const auto& [k, v] : extra.entries()) all.add(k, v);
    const std::string name = run_.command + "_" + stem + ".csv";
    write_csv(run_.out_dir / name, all, columns);
    files_.push_back(name);
    for (const auto& [k, v] : extra.entries()) summary_.add(stem + "." + k, v);
  }

  void finish() {
    const std::string cfg_name = run_.command + ".cfg";
    std::ofstream cfg(run_.out_dir / cfg_name);
    cfg << run_.config.to_string();
    files_.push_back(cfg_name);
    Metadata all = common_;
    for (const auto& [k, v] : summary_.entries()) all.add(k, v);
    write_sidecar(run_.out_dir / (run_.command + ".json"), run_.command, run_.config, all, files_);
    std::cout << "wrote";
    for (const auto& f : files_) std::cout << ' ' << (run_.out_dir / f).string();
    std::cout << ' ' << (run_.out_dir / (run_.command + ".json")).string() << '\n';
  }

 private:
  const Run& run_;
  Metadata common_;
  Metadata summary_;
  std::vector<std::string> files_;
};

double safe_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
  try {
    return outer_fwhm(x, y);
  } catch (const NumericalDomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

int cmd_l0(const Run& run) {
  const auto context = make_context(run.config);
  const double l0 = context.base_length();
  if (run.json) {
    nlohmann::ordered_json doc;
    doc["l0_m"] = l0;
    doc["delta_k0_rad_per_m"] = context.delta_k0();
    std::cout << doc.dump() << '\n';
  } else {
    std::cout << "l0 = " << format_double(l0 / um) << " um\n"
              << "delta_k0 = " << format_double(context.delta_k0()) << " rad/m\n";
  }
  return 0;
}

int cmd_spectrum(const Run& run) {
  const auto context = make_context(run.config);
  const double constant = calibration(run.config, context);
  const Source source = configured_source(run.config, context);
  const auto abs_f = mean_abs_f_sq(context, source);
  const auto density = spectral_density(context, abs_f);
  const auto signal = signal_spectrum(density, true);
  const auto width = fwhm(density);
  const auto rate = pair_rate(density, constant, describe(source));

  Outputs out(run, context);
  Metadata meta;
  meta.add("source", describe(source));
  meta.add("calibration_constant", constant);
  meta.add("pair_rate_per_s", rate.pair_rate);
  meta.add("fwhm_m", width.width_lambda);
  meta.add("fwhm_rad_per_s", width.width_omega);
  if (const auto* s = std::get_if<StackSource>(&source)) {
    meta.add("seed", s->stack.provenance().seed);
    meta.add("rejections", static_cast<std::uint64_t>(s->stack.provenance().rejections));
  }
  out.csv("spectrum", meta,
          {{"wavelength_m", wavelengths(context.grid())},
           {"omega_rad_s", context.grid().omegas()},
           {"pair_density_per_s_per_rad_s", scaled(density.values, constant)},
           {"signal_normalized", signal.values},
           {"abs_f_sq_m2", abs_f}});
  out.finish();
  std::cout << "pair rate " << format_double(rate.pair_rate) << " /s, FWHM " << format_double(width.width_lambda / um)
            << " um\n";
  return 0;
}

int cmd_fig1(const Run& run) {
  const auto& c = run.config;
  const auto context = make_context(c);
  const double constant = calibration(c, context);
  const double l0 = base_length(c, context);
  const auto ns = c.get_doubles("fig1.domains");
  const auto sigmas = c.get_doubles("fig1.sigmas_um");
  if (ns.empty() || sigmas.empty()) throw ArgumentError("fig1.domains and fig1.sigmas_um must not be empty");
  const auto mc_m = c.get_int("fig1.mc_realizations");
  const auto mc_context = context.with_grid(context.grid().resampled(count(c, "fig1.mc_samples")));
  const double mc_constant = mc_m > 0 ? calibration(c, mc_context) : 0.0;

  std::vector<double> col_n, col_sigma, col_rate, col_mc, col_mc_se;
  Metadata meta;
  meta.add("calibration_constant", constant);
  meta.add("base_seed", c.get_uint64("ensemble.base_seed", 0));
  meta.add("mc_realizations", static_cast<std::uint64_t>(std::max<std::int64_t>(0, mc_m)));
  for (double sigma_um : sigmas) {
    std::vector<double> xs, ys;
    for (double nd : ns) {
      if (!(nd >= 1.0) || nd != std::floor(nd)) throw ConfigError("fig1.domains must hold positive integers");
      const auto n = static_cast<std::size_t>(nd);
      const double sigma = sigma_um * um;
      const double rate =
          pair_rate(spectral_density(context, RandomEnsembleSource{n, l0, sigma}), constant).pair_rate;
      col_n.push_back(nd);
      col_sigma.push_back(sigma);
      col_rate.push_back(rate);
      xs.push_back(nd);
      ys.push_back(rate);
      if (mc_m > 0) {
        EnsembleSpec spec = ensemble_spec(c, l0, sigma);
        spec.realizations = static_cast<std::size_t>(mc_m);
        spec.n_domains = n;
        const auto e = run_ensemble(spec, pair_rate_estimator(mc_context, mc_constant));
        col_mc.push_back(e.mean[0]);
        col_mc_se.push_back(e.std_error[0]);
      }
    }
    // Least-squares line and R^2.
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
      syy += ys[i] * ys[i];
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const double r = (k * sxy - sx * sy) / std::sqrt((k * sxx - sx * sx) * (k * syy - sy * sy));
    const std::string tag = "sigma_" + format_double(sigma_um) + "um";
    meta.add(tag + "_slope_per_s_per_domain", slope);
    meta.add(tag + "_r_squared", xs.size() > 2 ? r * r : 1.0);
    std::cout << "sigma " << format_double(sigma_um) << " um: slope " << format_double(slope)
              << " pairs/s per domain, R^2 " << format_double(xs.size() > 2 ? r * r : 1.0) << '\n';
  }
  Outputs out(run, context);
  std::vector<Column> cols{{"domains", col_n}, {"sigma_m", col_sigma}, {"pair_rate_per_s", col_rate}};
  if (mc_m > 0) {
    cols.push_back({"mc_mean_per_s", col_mc});
    cols.push_back({"mc_std_error_per_s", col_mc_se});
  }
  out.csv("rates", meta, cols);
  out.finish();
  return 0;
}

int cmd_fig2(const Run& run) {
  const auto& c = run.config;
  const auto context = make_context(c);
  const double constant = calibration(c, context);
  const auto zetas = c.get_doubles("fig2.zetas_per_m2");
  if (zetas.empty()) throw ArgumentError("fig2.zetas_per_m2 must not be empty");
  const std::size_t n = domains(c);
  std::vector<double> col_zeta, col_fw_m, col_fw_w, col_sigma, col_rfw, col_nc, col_nr, col_ratio;
  for (double zeta : zetas) {
    const auto stack = build_chirped(n, context.base_length(), zeta, context.delta_k0());
    const auto chirped = spectral_density(context, StackSource{stack});
    const auto width = fwhm(chirped);
    const auto ratio = rate_ratio(context, zeta, n);
    col_zeta.push_back(zeta);
    col_fw_m.push_back(width.width_lambda);
    col_fw_w.push_back(width.width_omega);
    col_sigma.push_back(ratio.match.sigma);
    col_rfw.push_back(ratio.match.matched_width);
    col_nc.push_back(constant * ratio.chirped_rate);
    col_nr.push_back(constant * ratio.random_rate);
    col_ratio.push_back(ratio.ratio);
    std::cout << "zeta " << format_double(zeta) << ": FWHM " << format_double(width.width_lambda / um) << " um, sigma "
              << format_double(ratio.match.sigma / um) << " um, r_N " << format_double(ratio.ratio) << '\n';
  }
  Outputs out(run, context);
  Metadata meta;
  meta.add("calibration_constant", constant);
  meta.add("domains", static_cast<std::uint64_t>(n));
  out.csv("scan", meta,
          {{"zeta_per_m2", col_zeta},
           {"chirped_fwhm_m", col_fw_m},
           {"chirped_fwhm_rad_s", col_fw_w},
           {"matched_sigma_m", col_sigma},
           {"random_fwhm_rad_s", col_rfw},
           {"chirped_rate_per_s", col_nc},
           {"random_rate_per_s", col_nr},
           {"rate_ratio", col_ratio}});
  out.finish();
  return 0;
}

int cmd_fig3(const Run& run) {
  const auto& c = run.config;
  const auto context = make_context(c);
  const std::size_t n = domains(c);
  const double l0 = base_length(c, context);
  const double sigma = c.get_double("fig3.sigma_um") * um;
  const double zeta = c.get_double("fig3.zeta_per_m2");
  const std::uint64_t seed = c.get_uint64("structure.seed", 0);

  const auto single = spectral_density(context, StackSource{build_random(n, l0, sigma, seed)});
  const auto chirped = spectral_density(context, StackSource{build_chirped(n, l0, zeta, context.delta_k0())});
  const auto analytic = spectral_density(context, RandomEnsembleSource{n, l0, sigma});
  const auto spec = ensemble_spec(c, l0, sigma);
  const auto mc = run_ensemble(spec, spectrum_estimator(context));
  const Spectrum mc_spectrum{context.grid(), mc.mean};
  const double mc_norm = 1.0 / integrate(mc_spectrum);
  std::vector<double> mc_se(mc.std_error.size());
  for (std::size_t m = 0; m < mc_se.size(); ++m) mc_se[m] = mc.std_error[m] * mc_norm * constants::hbar * context.grid().omega(m);

  Metadata meta;
  meta.add("sigma_m", sigma);
  meta.add("zeta_per_m2", zeta);
  meta.add("realization_seed", seed);
  meta.add("base_seed", spec.base_seed);
  meta.add("realizations", static_cast<std::uint64_t>(spec.realizations));
  meta.add("rejections", static_cast<std::uint64_t>(mc.rejections));
  const auto add_width = [&](const std::string& name, const Spectrum& s) {
    try {
      const auto w = fwhm(s);
      meta.add(name + "_fwhm_m", w.width_lambda);
      std::cout << name << " FWHM " << format_double(w.width_lambda / um) << " um\n";
    } catch (const NumericalDomainError&) {
      meta.add(name + "_fwhm_m", "undefined");
    }
  };
  add_width("realization", single);
  add_width("cppc", chirped);
  add_width("ensemble_mc", mc_spectrum);
  add_width("ensemble_analytic", analytic);

  Outputs out(run, context);
  out.csv("spectra", meta,
          {{"wavelength_m", wavelengths(context.grid())},
           {"omega_rad_s", context.grid().omegas()},
           {"realization", signal_spectrum(single, true).values},
           {"cppc", signal_spectrum(chirped, true).values},
           {"ensemble_mc", signal_spectrum(mc_spectrum, true).values},
           {"ensemble_mc_std_error", mc_se},
           {"ensemble_analytic", signal_spectrum(analytic, true).values}});
  out.finish();
  return 0;
}

int cmd_fig4(const Run& run) {
  const auto& c = run.config;
  const auto context = make_context(c);
  const std::size_t n = domains(c);
  const double l0 = base_length(c, context);
  const double sigma = c.get_double("fig3.sigma_um") * um;
  const double zeta = c.get_double("fig3.zeta_per_m2");
  const std::uint64_t seed = c.get_uint64("structure.seed", 0);
  const auto delays = delay_axis(c.get_double("hom.max_delay_fs") * fs, c.get_double("hom.step_fs") * fs);
  const auto padding = count(c, "sumfreq.padding");
  const double window = c.get_double("sumfreq.window_fs") * fs;
  const auto method = quadratic_method_from_string(c.get_string("sumfreq.quadratic_method"));

  const Source single = StackSource{build_random(n, l0, sigma, seed)};
  const Source chirped = StackSource{build_chirped(n, l0, zeta, context.delta_k0())};
  const Source ensemble = RandomEnsembleSource{n, l0, sigma};

  Metadata hom_meta;
  std::vector<Column> hom_cols{{"tau_s", delays}};
  for (const auto& [name, source] : {std::pair{"realization", single}, {"cppc", chirped}, {"ensemble", ensemble}}) {
    const auto trace = hom_trace(context.grid(), mean_abs_f_sq(context, source), delays);
    hom_cols.push_back({name, trace.rates});
    const double w = dip_fwhm(trace);
    hom_meta.add(std::string(name) + "_dip_fwhm_s", w);
    std::cout << name << " HOM dip FWHM " << format_double(w / fs) << " fs\n";
  }

  Metadata sf_meta;
  std::vector<Column> sf_cols;
  const auto add_trace = [&](const std::string& name, const SumFrequencyTrace& t) {
    if (sf_cols.empty()) sf_cols.push_back({"tau_s", t.delays});
    sf_cols.push_back({name, t.intensity});
    const double w = safe_fwhm(t.delays, t.intensity);
    sf_meta.add(name + "_fwhm_s", w);
    std::cout << name << " sum-frequency FWHM " << format_double(w / fs) << " fs\n";
  };
  for (const auto& [name, source] : {std::pair{"realization", single}, {"cppc", chirped}}) {
    const auto amplitude = two_photon_amplitude(context, source);
    add_trace(std::string(name) + "_ideal",
              crop(sum_frequency_trace(compensate_phase(amplitude, Compensation::ideal), padding), window));
    const auto quadratic = compensate_phase(amplitude, Compensation::quadratic, method);
    sf_meta.add(std::string(name) + "_quadratic_fit", format_double(quadratic.fit.c0) + " " +
                                                          format_double(quadratic.fit.c1) + " " +
                                                          format_double(quadratic.fit.c2));
    add_trace(std::string(name) + "_quadratic", crop(sum_frequency_trace(quadratic, padding), window));
  }
  EnsembleSpec spec = ensemble_spec(c, l0, sigma);
  spec.realizations = count(c, "fig4.sumfreq_realizations");
  sf_meta.add("quadratic_method", std::string(to_string(method)));
  sf_meta.add("ensemble_realizations", static_cast<std::uint64_t>(spec.realizations));
  sf_meta.add("base_seed", spec.base_seed);
  if (spec.realizations >= 2) {
    for (const auto mode : {Compensation::ideal, Compensation::quadratic}) {
      const auto e = run_ensemble(spec, sum_frequency_estimator(context, mode, method, padding, window));
      SumFrequencyTrace t;
      t.delays = sf_cols.front().values;
      t.intensity = e.mean;
      add_trace("ensemble_" + std::string(to_string(mode)), t);
    }
  }

  Outputs out(run, context);
  hom_meta.add("sigma_m", sigma);
  hom_meta.add("zeta_per_m2", zeta);
  hom_meta.add("realization_seed", seed);
  out.csv("hom", hom_meta, hom_cols);
  out.csv("sumfreq", sf_meta, sf_cols);
  out.finish();
  return 0;
}

int cmd_hom(const Run& run) {
  const auto& c = run.config;
  const auto context = make_context(c);
  const Source source = configured_source(c, context);
  const auto delays = delay_axis(c.get_double("hom.max_delay_fs") * fs, c.get_double("hom.step_fs") * fs);
  const auto trace = hom_trace(context.grid(), mean_abs_f_sq(context, source), delays);
  Metadata meta;
  meta.add("source", describe(source));
  meta.add("baseline_r0", trace.baseline);
  meta.add("dip_fwhm_s", dip_fwhm(trace));
  Outputs out(run, context);
  out.csv("trace", meta, {{"tau_s", trace.delays}, {"rate", trace.rates}});
  out.finish();
  std::cout << "dip FWHM " << format_double(dip_fwhm(trace) / fs) << " fs\n";
  return 0;
}

int cmd_sumfreq(const Run& run) {
  const auto& c = run.config;
  const auto context = make_context(c);
  const Source source = configured_source(c, context);
  const auto mode = compensation_from_string(c.get_string("sumfreq.compensation"));
  const auto method = quadratic_method_from_string(c.get_string("sumfreq.quadratic_method"));
  const auto amplitude = compensate_phase(two_photon_amplitude(context, source), mode, method);
  const auto full = sum_frequency_trace(amplitude, count(c, "sumfreq.padding"));
  const auto trace = crop(full, c.get_double("sumfreq.window_fs") * fs);
  Metadata meta;
  meta.add("source", describe(source));
  meta.add("compensation", std::string(to_string(mode)));
  if (mode == Compensation::quadratic) {
    meta.add("quadratic_method", std::string(to_string(method)));
    meta.add("fit_c0", amplitude.fit.c0);
    meta.add("fit_c1", amplitude.fit.c1);
    meta.add("fit_c2", amplitude.fit.c2);
  }
  const double w = safe_fwhm(full.delays, full.intensity);
  meta.add("fwhm_s", w);
  meta.add("delay_step_s", full.delay_step);
  Outputs out(run, context);
  out.csv("trace", meta, {{"tau_s", trace.delays}, {"intensity_per_s", trace.intensity}});
  out.finish();
  std::cout << "FWHM " << format_double(w / fs) << " fs\n";
  return 0;
}

int cmd_mc(const Run& run) {
  const auto& c = run.config;
  const auto context = make_context(c);
  const double constant = calibration(c, context);
  const double l0 = base_length(c, context);
  const double sigma = c.get_double("structure.sigma_um") * um;
  const auto spec = ensemble_spec(c, l0, sigma);
  if (spec.realizations < 8) throw ConfigError("mc needs ensemble.realizations >= 8");
  const auto estimator = spectrum_estimator(context);
  std::vector<EnsembleEstimate> nested;
  for (std::size_t m : {spec.realizations / 4, spec.realizations / 2, spec.realizations}) {
    EnsembleSpec s = spec;
    s.realizations = m;
    nested.push_back(run_ensemble(s, estimator));
  }
  const auto& full = nested.back();
  const auto report = convergence_report(nested);
  const auto analytic = spectral_density(context, RandomEnsembleSource{spec.n_domains, l0, sigma});
  std::size_t within = 0;
  for (std::size_t m = 0; m < analytic.values.size(); ++m) {
    if (std::abs(full.mean[m] - analytic.values[m]) <= 3.0 * full.std_error[m]) ++within;
  }
  Metadata meta;
  meta.add("sigma_m", sigma);
  meta.add("domains", static_cast<std::uint64_t>(spec.n_domains));
  meta.add("realizations", static_cast<std::uint64_t>(spec.realizations));
  meta.add("base_seed", spec.base_seed);
  meta.add("rejections", static_cast<std::uint64_t>(full.rejections));
  meta.add("calibration_constant", constant);
  meta.add("fraction_within_3_std_error", static_cast<double>(within) / static_cast<double>(analytic.values.size()));
  meta.add("convergence_max_drift_in_std_error", report.max_drift_in_std_error);
  meta.add("convergence_std_error_exponent", report.std_error_exponent);
  meta.add("converged", std::string(report.converged ? "true" : "false"));
  Outputs out(run, context);
  out.csv("spectrum", meta,
          {{"wavelength_m", wavelengths(context.grid())},
           {"omega_rad_s", context.grid().omegas()},
           {"mean_per_s_per_rad_s", scaled(full.mean, constant)},
           {"std_error_per_s_per_rad_s", scaled(full.std_error, constant)},
           {"analytic_per_s_per_rad_s", scaled(analytic.values, constant)}});
  out.finish();
  std::cout << "within 3 std error: " << within << " / " << analytic.values.size() << ", std error exponent "
            << format_double(report.std_error_exponent) << (report.converged ? ", converged\n" : ", NOT converged\n");
  return 0;
}

}  // namespace spdcsim
