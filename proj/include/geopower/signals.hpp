#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "geopower/frenet.hpp"
#include "geopower/vecalg.hpp"

namespace geopower {

// Three-phase waveform families. Phases b and c are shifted by -2pi/3 and
// +2pi/3 from phase a in every generated variant.

struct BalancedSin {
  Real V{20e3};
  Real omega_o{100 * M_PI};
};

struct UnbalancedSin {
  Real V_a{20e3};
  Real V_b{19e3};
  Real V_c{23e3};
  Real theta_a{0};
  Real theta_b{-2 * M_PI / 3};
  Real theta_c{1.6 * M_PI / 3};
  Real omega_o{100 * M_PI};
};

struct HarmonicSin {
  Real V{20e3};
  Real omega_o{100 * M_PI};
  int h{5};      ///< harmonic order
  Real k{0.05};  ///< harmonic amplitude fraction
};

/// Phase ramp with an exponentially damped modulation:
///   theta(t) = omega_o t - depth omega_o e^(-decay t)
///              (1.66 cos(mod_freq t) + 1.59 sin(mod_freq t))
/// Everything downstream is differentiated analytically from theta(t).
struct NonStationary {
  Real V{20e3};
  Real omega_o{100 * M_PI};
  Real decay{0.3};
  Real mod_freq{M_PI / 10};
  Real depth{0.04};
};

struct FromCsv {
  std::string path;
  Real dt{0};  ///< expected timestep; 0 skips the cross-check
};

using Scenario = std::variant<BalancedSin, UnbalancedSin, HarmonicSin, NonStationary, FromCsv>;

/// Throws ConfigError when a field violates its range.
void validate(const Scenario& s);

struct SampledSeries {
  Real dt{0};
  std::vector<CurveJet> jets;
};

/// theta(t) and its first three derivatives for the non-stationary ramp.
struct PhaseJet {
  Real theta{0};
  Real d1{0};
  Real d2{0};
  Real d3{0};
};

PhaseJet nonstationary_phase(const NonStationary& s, Real t);

/// Voltage jet (x = v, d1 = v', d2 = v'', d3 = v''') with exact derivatives.
/// Throws CsvVariantRequiresSeriesError for FromCsv.
CurveJet sample_voltage(const Scenario& s, Real t);

SampledSeries voltage_series(const Scenario& s, Real t_start, Real t_end, Real dt);

/// Flux jets (x = phi, d1 = v, d2 = v', d3 = v''). Stationary variants use
/// the zero-mean analytic primitive; the non-stationary variant integrates
/// the voltage per step (Gauss-Legendre) from
/// phi(t_start) = (V / theta'(t_start)) sin(theta_i(t_start)).
SampledSeries flux_series(const Scenario& s, Real t_start, Real t_end, Real dt);

/// Finite-difference weights for derivative order m at x0 over the given
/// nodes (Fornberg's recurrence).
std::vector<Real> fd_weights(int m, Real x0, std::span<const Real> xs);

/// Jet estimation over a uniform series with 7-point stencils (shifted at the
/// edges): d1/d2 are at least 4th order, d3 is 4th order.
SampledSeries fd_jets(std::span<const Real> ts, std::span<const Vec3> xs);

struct CsvData {
  SampledSeries voltage;
  std::optional<SampledSeries> current;
};

/// Reads `t,a,b,c[,ia,ib,ic]` rows, validates a uniform timestep to 1 ppm and
/// estimates jets by finite differences. Throws CsvParseError,
/// NonUniformTimestepError or TooShortError.
CsvData ingest_csv(const std::string& path, Real dt_hint = 0);

/// Writes the interchange format (`t,a,b,c`, LF endings, 9 significant
/// digits). The optional current series adds `ia,ib,ic` columns.
void write_waveform_csv(std::ostream& out, const SampledSeries& voltage,
                        const SampledSeries* current = nullptr);

/// Flat name=value scenario description; unknown keys are errors.
Scenario scenario_from_config(std::istream& in);

}  // namespace geopower
