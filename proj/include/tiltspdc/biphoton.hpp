#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "tiltspdc/crystal.hpp"
#include "tiltspdc/kernels.hpp"
#include "tiltspdc/tilt.hpp"

namespace tiltspdc {

// Detuning samples Omega_j = span * (2j - (n-1)) / (n-1), symmetric about zero
// so that Omega_{n-1-j} = -Omega_j exactly.
struct GridAxis {
  std::size_t n_points = 512;
  double span = 0.15;  // half-width, rad/fs

  double spacing() const { return 2.0 * span / static_cast<double>(n_points - 1); }
  double detuning(std::size_t j) const;
  std::vector<double> detunings() const;
};

struct FrequencyGrid {
  GridAxis signal;
  GridAxis idler;
  double omega_s0 = 0.0;
  double omega_i0 = 0.0;

  static FrequencyGrid square(std::size_t n_points, double span);
  // Same sampling on both axes: the Omega_s <-> Omega_i exchange maps samples
  // onto samples.
  bool exchange_symmetric() const;
  void validate() const;
};

inline constexpr std::size_t kMinGridPoints = 64;
inline constexpr double kMinSamplesPerFeature = 8.0;

struct FilterSpec {
  enum class Shape { kNone, kGaussian, kRectangular };
  Shape shape = Shape::kGaussian;
  double fwhm = 0.010;   // um, FWHM of the intensity transmission
  double center = 0.0;   // um; 0 means the arm's central wavelength

  // Amplitude transmission at detuning Omega from omega0.
  double amplitude(double detuning, double omega0) const;
  void validate() const;
};

const char* to_string(FilterSpec::Shape shape);

struct ScenarioConfig {
  CrystalModel crystal;
  std::optional<double> theta;  // cut angle; empty means solve phase matching
  double length = 2000.0;       // um
  TiltedPumpConfig pump;
  FilterSpec filter_signal;
  FilterSpec filter_idler;
  FrequencyGrid grid = FrequencyGrid::square(512, 0.15);
  bool include_phase = true;

  void validate() const;
};

// Dispersion state the spectrum was built from.
struct JsaContext {
  Type2Waves waves;
  EffectiveWave pump;
  EffectiveWave signal;
  EffectiveWave idler;
  double phi = 0.0;
  double length = 0.0;
  bool cw = false;

  // First-order HOM dip position (u_s - u_i) L / 2.
  double predicted_dip_center() const;
};

struct JointSpectrum {
  FrequencyGrid grid;
  std::vector<std::complex<double>> amplitude;  // row-major, signal index major
  bool normalized = false;
  JsaContext context;

  std::size_t rows() const { return grid.signal.n_points; }
  std::size_t cols() const { return grid.idler.n_points; }
  const std::complex<double>& at(std::size_t a, std::size_t b) const {
    return amplitude[a * cols() + b];
  }
  double norm_squared() const;  // sum |Psi|^2 dOmega_s dOmega_i
  void normalize();
};

// Solves (or uses) the cut angle and resolves effective waves for the config's
// tilt.
JsaContext resolve_context(const ScenarioConfig& config);

// Joint spectral amplitude at zero transverse momentum, L2-normalized.
// Throws NumericalGuardError when the grid does not resolve the pump envelope
// or the phase-matching main lobe.
JointSpectrum build_jsa(const ScenarioConfig& config,
                        ExecutionPolicy policy = ExecutionPolicy::kParallel);

// Build a spectrum from explicit samples (tests and synthetic scenarios).
JointSpectrum make_spectrum(const FrequencyGrid& grid, std::vector<std::complex<double>> amplitude,
                            bool normalize = true);

}  // namespace tiltspdc
