#include "geopower/signals.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "geopower/errors.hpp"

namespace geopower {

namespace {

constexpr Real kPhaseShift[3] = {0.0, -2 * M_PI / 3, 2 * M_PI / 3};

// Damped-modulation coefficients as printed for the underfrequency ramp.
constexpr Real kModCos = 1.66;
constexpr Real kModSin = 1.59;

struct CosTerm {
  Real amp;
  Real w;
};

// Adds amp*cos(w t + delta) and its derivatives to a jet.
void add_cos_term(CurveJet& jet, int phase, const CosTerm& term, Real t, Real delta) {
  const Real th = term.w * t + delta;
  const Real c = std::cos(th);
  const Real s = std::sin(th);
  jet.x[phase] += term.amp * c;
  jet.d1[phase] += -term.amp * term.w * s;
  jet.d2[phase] += -term.amp * term.w * term.w * c;
  jet.d3[phase] += term.amp * term.w * term.w * term.w * s;
}

// Adds the zero-mean primitive (amp/w) sin(w t + delta) and its derivatives.
void add_cos_primitive(CurveJet& jet, int phase, const CosTerm& term, Real t, Real delta) {
  const Real th = term.w * t + delta;
  const Real c = std::cos(th);
  const Real s = std::sin(th);
  jet.x[phase] += term.amp / term.w * s;
  jet.d1[phase] += term.amp * c;
  jet.d2[phase] += -term.amp * term.w * s;
  jet.d3[phase] += -term.amp * term.w * term.w * c;
}

template <class F>
CurveJet stationary_jet(Real t, F&& add, const Scenario& s) {
  CurveJet jet;
  jet.t = t;
  if (const auto* b = std::get_if<BalancedSin>(&s)) {
    for (int i = 0; i < 3; ++i) add(jet, i, CosTerm{b->V, b->omega_o}, t, kPhaseShift[i]);
  } else if (const auto* u = std::get_if<UnbalancedSin>(&s)) {
    const Real vs[3] = {u->V_a, u->V_b, u->V_c};
    const Real ths[3] = {u->theta_a, u->theta_b, u->theta_c};
    for (int i = 0; i < 3; ++i) add(jet, i, CosTerm{vs[i], u->omega_o}, t, ths[i]);
  } else if (const auto* h = std::get_if<HarmonicSin>(&s)) {
    for (int i = 0; i < 3; ++i) {
      add(jet, i, CosTerm{h->V, h->omega_o}, t, kPhaseShift[i]);
      add(jet, i, CosTerm{h->V * h->k, h->h * h->omega_o}, t, kPhaseShift[i]);
    }
  }
  return jet;
}

CurveJet nonstationary_voltage_jet(const NonStationary& s, Real t) {
  const PhaseJet ph = nonstationary_phase(s, t);
  CurveJet jet;
  jet.t = t;
  for (int i = 0; i < 3; ++i) {
    const Real th = ph.theta + kPhaseShift[i];
    const Real c = std::cos(th);
    const Real sn = std::sin(th);
    jet.x[i] = s.V * c;
    jet.d1[i] = -s.V * ph.d1 * sn;
    jet.d2[i] = -s.V * (ph.d2 * sn + ph.d1 * ph.d1 * c);
    jet.d3[i] = -s.V * (ph.d3 * sn + 3 * ph.d1 * ph.d2 * c - ph.d1 * ph.d1 * ph.d1 * sn);
  }
  return jet;
}

// Gauss-Legendre 7-point rule on [-1, 1].
constexpr std::array<Real, 7> kGlNodes = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr std::array<Real, 7> kGlWeights = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

std::size_t sample_count(Real t_start, Real t_end, Real dt) {
  if (dt <= 0 || t_end <= t_start) {
    throw ConfigError("series span requires t_end > t_start and dt > 0");
  }
  return static_cast<std::size_t>(std::llround((t_end - t_start) / dt)) + 1;
}

std::string format_g9(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void validate(const Scenario& s) {
  if (const auto* b = std::get_if<BalancedSin>(&s)) {
    if (b->V <= 0) throw ConfigError("V must be > 0");
    if (b->omega_o <= 0) throw ConfigError("omega_o must be > 0");
  } else if (const auto* u = std::get_if<UnbalancedSin>(&s)) {
    if (u->V_a <= 0 || u->V_b <= 0 || u->V_c <= 0) throw ConfigError("V_a/V_b/V_c must be > 0");
    if (u->omega_o <= 0) throw ConfigError("omega_o must be > 0");
  } else if (const auto* h = std::get_if<HarmonicSin>(&s)) {
    if (h->V <= 0) throw ConfigError("V must be > 0");
    if (h->omega_o <= 0) throw ConfigError("omega_o must be > 0");
    if (h->h < 2) throw ConfigError("harmonic order h must be an integer >= 2");
    if (h->k < 0 || h->k >= 1) throw ConfigError("harmonic fraction k must satisfy 0 <= k < 1");
  } else if (const auto* n = std::get_if<NonStationary>(&s)) {
    if (n->V <= 0) throw ConfigError("V must be > 0");
    if (n->omega_o <= 0) throw ConfigError("omega_o must be > 0");
  } else if (const auto* c = std::get_if<FromCsv>(&s)) {
    if (c->path.empty()) throw ConfigError("csv path must be set");
    if (c->dt < 0) throw ConfigError("dt must be >= 0");
  }
}

PhaseJet nonstationary_phase(const NonStationary& s, Real t) {
  const Real d = s.depth * s.omega_o;
  // g_k(t) = e^(-a t)(A_k cos(b t) + B_k sin(b t)) with
  // (A,B) -> (-a A + b B, -a B - b A) per derivative.
  Real A = kModCos;
  Real B = kModSin;
  const Real e = std::exp(-s.decay * t);
  const Real c = std::cos(s.mod_freq * t);
  const Real sn = std::sin(s.mod_freq * t);
  PhaseJet out;
  out.theta = s.omega_o * t - d * e * (A * c + B * sn);
  auto step = [&] {
    const Real a2 = -s.decay * A + s.mod_freq * B;
    B = -s.decay * B - s.mod_freq * A;
    A = a2;
  };
  step();
  out.d1 = s.omega_o - d * e * (A * c + B * sn);
  step();
  out.d2 = -d * e * (A * c + B * sn);
  step();
  out.d3 = -d * e * (A * c + B * sn);
  return out;
}

CurveJet sample_voltage(const Scenario& s, Real t) {
  validate(s);
  if (std::holds_alternative<FromCsv>(s)) {
    throw CsvVariantRequiresSeriesError("sample_voltage: CSV scenarios are series-backed");
  }
  if (const auto* n = std::get_if<NonStationary>(&s)) {
    return nonstationary_voltage_jet(*n, t);
  }
  return stationary_jet(t, add_cos_term, s);
}

SampledSeries voltage_series(const Scenario& s, Real t_start, Real t_end, Real dt) {
  const std::size_t n = sample_count(t_start, t_end, dt);
  SampledSeries series;
  series.dt = dt;
  series.jets.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    series.jets.push_back(sample_voltage(s, t_start + static_cast<Real>(i) * dt));
  }
  return series;
}

SampledSeries flux_series(const Scenario& s, Real t_start, Real t_end, Real dt) {
  validate(s);
  if (std::holds_alternative<FromCsv>(s)) {
    throw CsvVariantRequiresSeriesError("flux_series: CSV scenarios are series-backed");
  }
  const std::size_t n = sample_count(t_start, t_end, dt);
  SampledSeries series;
  series.dt = dt;
  series.jets.reserve(n);

  if (const auto* ns = std::get_if<NonStationary>(&s)) {
    // No closed-form primitive; integrate the voltage stepwise. The constant
    // fixes phi(t_start) from the initial instantaneous frequency.
    const PhaseJet ph0 = nonstationary_phase(*ns, t_start);
    Vec3 phi;
    for (int i = 0; i < 3; ++i) {
      phi[i] = ns->V / ph0.d1 * std::sin(ph0.theta + kPhaseShift[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Real t = t_start + static_cast<Real>(i) * dt;
      CurveJet v = nonstationary_voltage_jet(*ns, t);
      CurveJet jet;
      jet.t = t;
      jet.x = phi;
      jet.d1 = v.x;
      jet.d2 = v.d1;
      jet.d3 = v.d2;
      series.jets.push_back(jet);
      if (i + 1 < n) {
        const Real mid = t + 0.5 * dt;
        const Real half = 0.5 * dt;
        Vec3 acc = Vec3::Zero();
        for (std::size_t g = 0; g < kGlNodes.size(); ++g) {
          acc += kGlWeights[g] * nonstationary_voltage_jet(*ns, mid + half * kGlNodes[g]).x;
        }
        phi += half * acc;
      }
    }
    return series;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Real t = t_start + static_cast<Real>(i) * dt;
    series.jets.push_back(stationary_jet(t, add_cos_primitive, s));
  }
  return series;
}

std::vector<Real> fd_weights(int m, Real x0, std::span<const Real> xs) {
  const int n = static_cast<int>(xs.size());
  std::vector<std::vector<Real>> c(n, std::vector<Real>(m + 1, 0.0));
  c[0][0] = 1.0;
  Real c1 = 1.0;
  Real c4 = xs[0] - x0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    Real c2 = 1.0;
    Real c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const Real c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<Real> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

SampledSeries fd_jets(std::span<const Real> ts, std::span<const Vec3> xs) {
  constexpr std::size_t kWindow = 7;
  const std::size_t n = ts.size();
  if (n < kWindow || n != xs.size()) {
    throw InsufficientSamplesError("fd_jets: need at least 7 matching samples");
  }
  SampledSeries series;
  series.dt = ts[1] - ts[0];
  series.jets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(i) - kWindow / 2, 0,
                                   static_cast<std::ptrdiff_t>(n - kWindow)));
    std::span<const Real> window(ts.data() + lo, kWindow);
    CurveJet& jet = series.jets[i];
    jet.t = ts[i];
    jet.x = xs[i];
    for (int m = 1; m <= 3; ++m) {
      const std::vector<Real> w = fd_weights(m, ts[i], window);
      Vec3 acc = Vec3::Zero();
      for (std::size_t k = 0; k < kWindow; ++k) acc += w[k] * xs[lo + k];
      if (m == 1) {
        jet.d1 = acc;
      } else if (m == 2) {
        jet.d2 = acc;
      } else {
        jet.d3 = acc;
      }
    }
  }
  return series;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

Real parse_field(const std::string& field, std::size_t line_no, const char* col) {
  Real value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw CsvParseError(line_no, std::string("bad value for column '") + col + "': '" + field + "'");
  }
  return value;
}

}  // namespace

CsvData ingest_csv(const std::string& path, Real dt_hint) {
  std::ifstream in(path);
  if (!in) {
    throw CsvParseError(0, "cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw CsvParseError(1, "missing header row");
  }
  const std::vector<std::string> header = split_fields(line);
  bool with_current = false;
  if (header == std::vector<std::string>{"t", "a", "b", "c"}) {
    with_current = false;
  } else if (header == std::vector<std::string>{"t", "a", "b", "c", "ia", "ib", "ic"}) {
    with_current = true;
  } else {
    throw CsvParseError(1, "header must be 't,a,b,c' or 't,a,b,c,ia,ib,ic'");
  }
  static const char* kCols[] = {"t", "a", "b", "c", "ia", "ib", "ic"};

  std::vector<Real> ts;
  std::vector<Vec3> vs;
  std::vector<Vec3> is;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_fields(line);
    const std::size_t expected = with_current ? 7 : 4;
    if (fields.size() != expected) {
      throw CsvParseError(line_no, "expected " + std::to_string(expected) + " columns, got " +
                                       std::to_string(fields.size()));
    }
    std::array<Real, 7> row{};
    for (std::size_t k = 0; k < expected; ++k) {
      row[k] = parse_field(fields[k], line_no, kCols[k]);
    }
    ts.push_back(row[0]);
    vs.push_back(Vec3(row[1], row[2], row[3]));
    if (with_current) is.push_back(Vec3(row[4], row[5], row[6]));
  }
  if (ts.size() < 9) {
    throw TooShortError("need at least 9 data rows, got " + std::to_string(ts.size()));
  }
  const Real dt = ts[1] - ts[0];
  if (dt <= 0) {
    throw NonUniformTimestepError("time column must be strictly increasing");
  }
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (std::abs(ts[i + 1] - ts[i] - dt) > 1e-6 * dt) {
      throw NonUniformTimestepError("timestep varies by more than 1 ppm at row " +
                                    std::to_string(i + 2));
    }
  }
  if (dt_hint > 0 && std::abs(dt - dt_hint) > 1e-6 * dt_hint) {
    throw NonUniformTimestepError("file timestep differs from the declared dt");
  }

  CsvData data;
  data.voltage = fd_jets(ts, vs);
  if (with_current) data.current = fd_jets(ts, is);
  return data;
}

void write_waveform_csv(std::ostream& out, const SampledSeries& voltage,
                        const SampledSeries* current) {
  out << (current ? "t,a,b,c,ia,ib,ic\n" : "t,a,b,c\n");
  for (std::size_t i = 0; i < voltage.jets.size(); ++i) {
    const CurveJet& jet = voltage.jets[i];
    out << format_g9(jet.t) << ',' << format_g9(jet.x[0]) << ',' << format_g9(jet.x[1]) << ','
        << format_g9(jet.x[2]);
    if (current) {
      const Vec3& iv = current->jets[i].x;
      out << ',' << format_g9(iv[0]) << ',' << format_g9(iv[1]) << ',' << format_g9(iv[2]);
    }
    out << '\n';
  }
}

Scenario scenario_from_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed;
    for (char ch : line) {
      if (ch != ' ' && ch != '\t') trimmed.push_back(ch);
    }
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected name=value");
    }
    kv[trimmed.substr(0, eq)] = trimmed.substr(eq + 1);
  }

  auto take = [&kv](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_real = [&take](const std::string& key, Real fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    try {
      return std::stod(*v);
    } catch (const std::exception&) {
      throw ConfigError("config: bad numeric value for '" + key + "'");
    }
  };

  const auto variant = take("scenario");
  if (!variant) throw ConfigError("config: missing 'scenario' key");

  Scenario out;
  if (*variant == "balanced") {
    BalancedSin b;
    b.V = take_real("V", b.V);
    b.omega_o = take_real("omega_o", b.omega_o);
    out = b;
  } else if (*variant == "unbalanced") {
    UnbalancedSin u;
    u.V_a = take_real("V_a", u.V_a);
    u.V_b = take_real("V_b", u.V_b);
    u.V_c = take_real("V_c", u.V_c);
    u.theta_a = take_real("theta_a", u.theta_a);
    u.theta_b = take_real("theta_b", u.theta_b);
    u.theta_c = take_real("theta_c", u.theta_c);
    u.omega_o = take_real("omega_o", u.omega_o);
    out = u;
  } else if (*variant == "harmonic") {
    HarmonicSin h;
    h.V = take_real("V", h.V);
    h.omega_o = take_real("omega_o", h.omega_o);
    h.h = static_cast<int>(take_real("h", h.h));
    h.k = take_real("k", h.k);
    out = h;
  } else if (*variant == "nonstationary") {
    NonStationary n;
    n.V = take_real("V", n.V);
    n.omega_o = take_real("omega_o", n.omega_o);
    n.decay = take_real("decay", n.decay);
    n.mod_freq = take_real("mod_freq", n.mod_freq);
    n.depth = take_real("depth", n.depth);
    out = n;
  } else if (*variant == "csv") {
    FromCsv c;
    const auto path = take("path");
    if (!path) throw ConfigError("config: csv scenario requires 'path'");
    c.path = *path;
    c.dt = take_real("dt", 0.0);
    out = c;
  } else {
    throw ConfigError("config: unknown scenario '" + *variant + "'");
  }
  if (!kv.empty()) {
    throw ConfigError("config: unknown key '" + kv.begin()->first + "'");
  }
  validate(out);
  return out;
}

}  // namespace geopower
