// Command-line front end: scenario generation, per-sample power analysis and
// the identity suite. Exit codes: 0 ok, 1 identity-suite failure, 2 config
// error, 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "geopower/analysis.hpp"
#include "geopower/errors.hpp"

namespace {

using namespace geopower;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::string g9(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct ScenarioFlags {
  std::string name;
  std::string config_path;
  std::string csv_path;
  Real V{0};
  bool has_V{false};
  Real f_hz{50.0};
  Real Va{20e3}, Vb{19e3}, Vc{23e3};
  Real theta_a{0}, theta_b{-2 * M_PI / 3}, theta_c{1.6 * M_PI / 3};
  int harmonic_order{5};
  Real harmonic_frac{0.05};
  Real decay{0.3};
  Real mod_freq{M_PI / 10};
  Real depth{0.04};
  bool has_dt{false};
  Real dt{5e-5};

  void register_flags(CLI::App* cmd, bool allow_csv) {
    cmd->add_option("--scenario", name,
                    "Scenario family: balanced | unbalanced | harmonic | nonstationary");
    cmd->add_option("--scenario-file", config_path,
                    "Scenario from a name=value config file");
    if (allow_csv) {
      cmd->add_option("--from-csv", csv_path, "Analyze a waveform CSV instead of a scenario");
    }
    cmd->add_option("--V", V, "Phase voltage magnitude [V]")->each([this](const std::string&) {
      has_V = true;
    });
    cmd->add_option("--f", f_hz, "Fundamental frequency [Hz]")->capture_default_str();
    cmd->add_option("--Va", Va, "Phase-a magnitude for 'unbalanced' [V]")->capture_default_str();
    cmd->add_option("--Vb", Vb, "Phase-b magnitude for 'unbalanced' [V]")->capture_default_str();
    cmd->add_option("--Vc", Vc, "Phase-c magnitude for 'unbalanced' [V]")->capture_default_str();
    cmd->add_option("--theta-a", theta_a, "Phase-a angle for 'unbalanced' [rad]")->capture_default_str();
    cmd->add_option("--theta-b", theta_b, "Phase-b angle for 'unbalanced' [rad]")->capture_default_str();
    cmd->add_option("--theta-c", theta_c, "Phase-c angle for 'unbalanced' [rad]")->capture_default_str();
    cmd->add_option("--harmonic-order", harmonic_order, "Harmonic order for 'harmonic'")->capture_default_str();
    cmd->add_option("--harmonic-frac", harmonic_frac, "Harmonic fraction for 'harmonic'")->capture_default_str();
    cmd->add_option("--decay", decay, "Modulation decay for 'nonstationary' [1/s]")->capture_default_str();
    cmd->add_option("--mod-freq", mod_freq, "Modulation frequency for 'nonstationary' [rad/s]")->capture_default_str();
    cmd->add_option("--depth", depth, "Modulation depth for 'nonstationary'")->capture_default_str();
  }

  Scenario build() const {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        throw std::ios_base::failure("cannot open scenario file '" + config_path + "'");
      }
      return scenario_from_config(in);
    }
    if (!csv_path.empty()) {
      FromCsv c;
      c.path = csv_path;
      c.dt = has_dt ? dt : 0.0;
      return c;
    }
    const Real w0 = 2 * M_PI * f_hz;
    auto need_v = [this](const char* scen) {
      if (!has_V) {
        throw ConfigError(std::string("--V is required for scenario '") + scen + "'");
      }
    };
    if (name == "balanced") {
      need_v("balanced");
      return BalancedSin{V, w0};
    }
    if (name == "unbalanced") {
      return UnbalancedSin{Va, Vb, Vc, theta_a, theta_b, theta_c, w0};
    }
    if (name == "harmonic") {
      need_v("harmonic");
      return HarmonicSin{V, w0, harmonic_order, harmonic_frac};
    }
    if (name == "nonstationary") {
      need_v("nonstationary");
      return NonStationary{V, w0, decay, mod_freq, depth};
    }
    if (name.empty()) {
      throw ConfigError("one of --scenario, --scenario-file or --from-csv is required");
    }
    throw ConfigError("unknown scenario '" + name + "'");
  }
};

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream{&std::cout};

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) {
      throw std::ios_base::failure("cannot open output file '" + path + "'");
    }
    stream = &file;
  }
};

AnalysisOptions analysis_options(const ElementParams& element) {
  AnalysisOptions opt;
  opt.element = element;
  if (const char* env = std::getenv("GEOPOWER_EPS")) {
    char* end = nullptr;
    const Real eps = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(eps > 0)) {
      throw ConfigError("GEOPOWER_EPS must be a positive number");
    }
    opt.eps_speed = eps;
    opt.eps_curv = eps;
  }
  return opt;
}

int run_generate(const ScenarioFlags& flags, Real dur, Real dt, const std::string& out_path) {
  const Scenario scenario = flags.build();
  if (std::holds_alternative<FromCsv>(scenario)) {
    throw ConfigError("generate requires a generated scenario, not --from-csv");
  }
  const SampledSeries series = voltage_series(scenario, 0.0, dur, dt);
  OutputTarget out;
  out.open(out_path);
  write_waveform_csv(*out.stream, series);
  out.stream->flush();
  if (!*out.stream) {
    throw std::ios_base::failure("write failed");
  }
  return kExitOk;
}

struct ColumnSet {
  bool power{false};
  bool frenet{false};
  bool coriolis{false};
  bool relative{false};
  bool identities{false};
};

ColumnSet parse_outputs(const std::string& groups) {
  ColumnSet cols;
  std::stringstream ss(groups);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    any = true;
    if (item == "power") {
      cols.power = true;
    } else if (item == "frenet") {
      cols.frenet = true;
    } else if (item == "coriolis") {
      cols.coriolis = true;
    } else if (item == "relative") {
      cols.relative = true;
    } else if (item == "identities") {
      cols.identities = true;
    } else {
      throw ConfigError("unknown output group '" + item + "'");
    }
  }
  if (!any) {
    throw ConfigError("--outputs must name at least one group");
  }
  if (cols.identities && (cols.power || cols.frenet || cols.coriolis || cols.relative)) {
    throw ConfigError("'identities' cannot be combined with row outputs");
  }
  return cols;
}

int run_identities(const SampledSeries& flux, const AnalysisOptions& opt,
                   const std::string& out_path, const std::string& format) {
  const std::vector<IdentityReport> reports = run_identity_suite(flux, opt);
  OutputTarget out;
  out.open(out_path);
  bool all_pass = true;
  if (format == "json") {
    json j;
    j["identities"] = json::array();
    for (const IdentityReport& r : reports) {
      j["identities"].push_back({{"name", r.name},
                                 {"max_residual", r.max_residual},
                                 {"threshold", r.threshold},
                                 {"skipped_samples", r.skipped},
                                 {"pass", r.pass}});
      all_pass = all_pass && r.pass;
    }
    j["all_pass"] = all_pass;
    *out.stream << j.dump(2) << '\n';
  } else {
    *out.stream << "name,max_residual,threshold,skipped,status\n";
    for (const IdentityReport& r : reports) {
      *out.stream << r.name << ',' << g9(r.max_residual) << ',' << g9(r.threshold) << ','
                  << r.skipped << ',' << (r.pass ? "pass" : "FAIL") << '\n';
      all_pass = all_pass && r.pass;
    }
  }
  out.stream->flush();
  return all_pass ? kExitOk : kExitSuiteFailure;
}

int run_analyze(const ScenarioFlags& flags, Real dur, Real dt, const ElementParams& element,
                const std::string& outputs, const std::string& format, const std::string& scale,
                const std::string& out_path) {
  const ColumnSet cols = parse_outputs(outputs);
  const Scenario scenario = flags.build();
  const AnalysisOptions opt = analysis_options(element);
  const ScenarioSeries series = scenario_series(scenario, 0.0, dur, dt);
  const SampledSeries& flux = series.flux;

  if (cols.identities) {
    return run_identities(flux, opt, out_path, format);
  }

  const Real power_scale = scale == "mega" ? 1e-6 : 1.0;
  const bool with_rlgc = element.G > 0 || element.L_ind > 0 || element.R > 0;
  const AnalysisResult res = analyze_series(flux, opt);

  std::vector<RlgcReport> rlgc;
  if (with_rlgc) {
    rlgc.reserve(flux.jets.size());
    for (std::size_t n = 0; n < flux.jets.size(); ++n) {
      rlgc.push_back(rlgc_circuit_report(flux.jets[n].x, series.voltage.jets[n], element));
    }
  }

  OutputTarget out;
  out.open(out_path);

  if (format == "json") {
    json rows = json::array();
    for (std::size_t n = 0; n < res.rows.size(); ++n) {
      const SampleRow& r = res.rows[n];
      json row;
      row["t"] = r.t;
      row["degenerate"] = r.degenerate;
      if (cols.power) {
        row["p"] = r.p * power_scale;
        row["Q"] = {r.Q[0] * power_scale, r.Q[1] * power_scale, r.Q[2] * power_scale};
        row["lagrangian_rate"] = r.lagrangian_rate * power_scale;
        row["R"] = {r.R[0] * power_scale, r.R[1] * power_scale, r.R[2] * power_scale};
      }
      if (cols.frenet) {
        row["omega_kappa"] = r.omega_kappa;
        row["omega_tau"] = r.omega_tau;
        row["rho"] = r.rho;
      }
      row["T_kinetic"] = r.T_kinetic;
      if (cols.coriolis) {
        row["relative"] = {r.relative[0], r.relative[1], r.relative[2]};
        row["coriolis"] = {r.coriolis[0], r.coriolis[1], r.coriolis[2]};
        row["euler"] = {r.euler[0], r.euler[1], r.euler[2]};
        row["centrifugal"] = {r.centrifugal[0], r.centrifugal[1], r.centrifugal[2]};
      }
      if (cols.relative) {
        row["omega_xi"] = {r.omega_xi[0], r.omega_xi[1], r.omega_xi[2]};
        row["nu_d"] = {r.nu_d[0], r.nu_d[1], r.nu_d[2]};
        row["orbital_residual"] = r.orbital_residual;
      }
      if (with_rlgc && cols.power) {
        row["p_total"] = rlgc[n].p_total * power_scale;
        row["Q_total"] = {rlgc[n].Q_total[0] * power_scale, rlgc[n].Q_total[1] * power_scale,
                          rlgc[n].Q_total[2] * power_scale};
      }
      rows.push_back(row);
    }
    json j;
    j["rows"] = rows;
    j["degenerate_samples"] = res.degenerate_count;
    *out.stream << j.dump(2) << '\n';
  } else {
    std::string header = "t";
    if (cols.power) header += ",p,Qx,Qy,Qz,lagrangian_rate,Rx,Ry,Rz";
    if (cols.frenet) header += ",omega_kappa,omega_tau,rho";
    header += ",T_kinetic";
    if (cols.coriolis) {
      header += ",rel_x,rel_y,rel_z,cor_x,cor_y,cor_z,eul_x,eul_y,eul_z,cen_x,cen_y,cen_z";
    }
    if (cols.relative) {
      header += ",omega_xi_x,omega_xi_y,omega_xi_z,nu_d_x,nu_d_y,nu_d_z,orbital_residual";
    }
    if (with_rlgc && cols.power) header += ",p_total,Qtot_x,Qtot_y,Qtot_z";
    *out.stream << header << '\n';

    for (std::size_t n = 0; n < res.rows.size(); ++n) {
      const SampleRow& r = res.rows[n];
      std::string line = g9(r.t);
      auto push = [&line](Real v) { line += ',' + g9(v); };
      auto push3 = [&push](const Vec3& v) {
        push(v[0]);
        push(v[1]);
        push(v[2]);
      };
      if (cols.power) {
        push(r.p * power_scale);
        push3(power_scale * r.Q);
        push(r.lagrangian_rate * power_scale);
        push3(power_scale * r.R);
      }
      if (cols.frenet) {
        push(r.omega_kappa);
        push(r.omega_tau);
        push(r.rho);
      }
      push(r.T_kinetic);
      if (cols.coriolis) {
        push3(r.relative);
        push3(r.coriolis);
        push3(r.euler);
        push3(r.centrifugal);
      }
      if (cols.relative) {
        push3(r.omega_xi);
        push3(r.nu_d);
        push(r.orbital_residual);
      }
      if (with_rlgc && cols.power) {
        push(rlgc[n].p_total * power_scale);
        push3(power_scale * rlgc[n].Q_total);
      }
      *out.stream << line << '\n';
    }
    *out.stream << "# degenerate_samples," << res.degenerate_count << '\n';
  }
  out.stream->flush();
  if (!*out.stream) {
    throw std::ios_base::failure("write failed");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geopower: instantaneous power analysis of three-phase waveforms"};
  app.require_subcommand(1);

  ScenarioFlags gen_flags;
  Real gen_dur = 0.04;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("generate", "Write a scenario waveform CSV");
  gen_flags.register_flags(gen, false);
  gen->add_option("--dur", gen_dur, "Duration [s]")->capture_default_str();
  gen->add_option("--dt", gen_flags.dt, "Timestep [s]")->capture_default_str()->each([&](const std::string&) {
    gen_flags.has_dt = true;
  });
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  ScenarioFlags an_flags;
  Real an_dur = 0.04;
  ElementParams element{.C = 10e-6};
  std::string outputs = "power,frenet,coriolis";
  std::string format = "csv";
  std::string scale = "si";
  std::string an_out;
  CLI::App* an = app.add_subcommand("analyze", "Per-sample power decomposition");
  an_flags.register_flags(an, true);
  an->add_option("--dur", an_dur, "Duration [s]")->capture_default_str();
  an->add_option("--dt", an_flags.dt, "Timestep [s]")->capture_default_str()->each([&](const std::string&) {
    an_flags.has_dt = true;
  });
  an->add_option("--C", element.C, "Capacitance per phase [F]")->capture_default_str();
  an->add_option("--G", element.G, "Shunt conductance per phase [S]")->capture_default_str();
  an->add_option("--L", element.L_ind, "Series inductance per phase [H]")->capture_default_str();
  an->add_option("--R", element.R, "Series resistance per phase [ohm]")->capture_default_str();
  an->add_option("--outputs", outputs,
                 "Comma list of power,frenet,coriolis,relative or identities")->capture_default_str();
  an->add_option("--format", format, "csv | json")->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  an->add_option("--scale", scale, "si | mega (divide power columns by 1e6)")->capture_default_str()
      ->check(CLI::IsMember({"si", "mega"}));
  an->add_option("--out", an_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (gen->parsed()) {
      return run_generate(gen_flags, gen_dur, gen_flags.dt, gen_out);
    }
    return run_analyze(an_flags, an_dur, an_flags.dt, element, outputs, format, scale, an_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CsvParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NonUniformTimestepError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const TooShortError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
