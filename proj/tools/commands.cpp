#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <utility>

#include <Eigen/Core>

#include "cochlea/asymptotics.hpp"
#include "cochlea/cochlea_params.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/fullwave.hpp"
#include "cochlea/io.hpp"
#include "cochlea/modal.hpp"
#include "cochlea/parallel.hpp"

#ifndef COCHLEA_VERSION
#define COCHLEA_VERSION "unknown"
#endif

namespace cochlea::app {

namespace fs = std::filesystem;
using io::CsvTable;
using io::format_number;
using nlohmann::json;

namespace {

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return format_number(static_cast<long long>(v)); }

class Writer {
 public:
  explicit Writer(const RunContext& ctx) : ctx_(ctx) { fs::create_directories(ctx.out); }

  void csv(const std::string& name, const CsvTable& t) {
    io::write_csv(ctx_.out / name, t);
    files_.push_back(name);
  }
  void json_file(const std::string& name, const json& j) {
    io::write_json(ctx_.out / name, j);
    files_.push_back(name);
  }
  void log(const std::string& msg) const {
    if (ctx_.verbose) std::fprintf(stderr, "[%s] %s\n", ctx_.command.c_str(), msg.c_str());
  }
  std::vector<std::string>& files() { return files_; }

 private:
  const RunContext& ctx_;
  std::vector<std::string> files_;
};

// Shared pipeline state, built lazily so each command computes only what it needs.
class Session {
 public:
  Session(const RunConfig& c, Writer& w)
      : c_(c), w_(w), array_(array_from_json(c.geometry)) {}

  const ResonatorArray& array() const { return array_; }
  int order() const { return c_.truncation; }

  const AsymptoticSystem& system() {
    if (!system_) {
      basis_ = kernel_basis(array_, 1.0, c_.truncation);
      system_.emplace(array_, *basis_);
    }
    return *system_;
  }

  const std::vector<Resonance>& resonances() {
    if (resonances_.empty()) {
      w_.log("searching for " + std::to_string(array_.size()) + " resonances");
      resonances_ = find_resonances_asymptotic(system(), array_.delta(), c_.search, &diag_);
    }
    return resonances_;
  }
  const ResonanceDiagnostics& diagnostics() const { return diag_; }

  const std::vector<Eigenmode>& modes() {
    if (modes_.empty()) {
      const auto& res = resonances();
      w_.log("building eigenmodes");
      modes_.resize(res.size());
      parallel_for(res.size(), [&](std::size_t n) {
        modes_[n] = eigenmode_asymptotic(system(), res[n], array_.delta(), c_.quadrature);
      });
    }
    return modes_;
  }

  const ModalProjector& projector() {
    if (!projector_) projector_.emplace(array_, modes(), c_.quadrature);
    return *projector_;
  }

 private:
  const RunConfig& c_;
  Writer& w_;
  ResonatorArray array_;
  std::optional<KernelBasis> basis_;
  std::optional<AsymptoticSystem> system_;
  std::vector<Resonance> resonances_;
  ResonanceDiagnostics diag_;
  std::vector<Eigenmode> modes_;
  std::optional<ModalProjector> projector_;
};

std::vector<std::string> mode_columns(const std::string& prefix, std::size_t n) {
  std::vector<std::string> h;
  for (std::size_t m = 1; m <= n; ++m) {
    h.push_back("re_" + prefix + "_" + std::to_string(m));
    h.push_back("im_" + prefix + "_" + std::to_string(m));
  }
  return h;
}

CsvTable gram_table(const GramMatrix& g) {
  CsvTable t;
  t.header = {"i", "j", "re_gamma", "im_gamma"};
  for (Eigen::Index i = 0; i < g.gamma.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.gamma.cols(); ++j) {
      t.add_row({num(static_cast<std::size_t>(i + 1)), num(static_cast<std::size_t>(j + 1)),
                 num(g.gamma(i, j).real()), num(g.gamma(i, j).imag())});
    }
  }
  return t;
}

// Every entry of S^k, K^{k,*} (principal value) and A(ω, δ) at one frequency.
CsvTable operator_table(const ResonatorArray& array, double omega, int order) {
  CsvTable t;
  t.header = {"operator", "row", "col", "re", "im"};
  const cplx k = array.exterior_wavenumber(omega);
  const std::pair<const char*, Eigen::MatrixXcd> ops[] = {
      {"single_layer", slp_matrix(array, k, order).matrix},
      {"neumann_poincare", np_matrix(array, k, order, Side::kPrincipal).matrix},
      {"full_system", assemble_A(array, omega, array.delta(), order).matrix}};
  for (const auto& [name, m] : ops) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        t.add_row({name, num(static_cast<std::size_t>(r)), num(static_cast<std::size_t>(c)),
                   num(m(r, c).real()), num(m(r, c).imag())});
      }
    }
  }
  return t;
}

void cmd_resonances(const RunContext& ctx, Session& s, Writer& w) {
  const auto& res = s.resonances();
  const ResonatorArray& array = s.array();
  const double delta = array.delta();

  std::vector<std::optional<RefinedResonance>> refined(res.size());
  if (ctx.config.refine) {
    w.log("refining against the full system");
    parallel_for(res.size(), [&](std::size_t n) {
      refined[n] = refine_resonance(array, delta, res[n], s.order());
    });
  }

  CsvTable t;
  t.header = {"mode", "re", "im", "residual", "method"};
  json list = json::array();
  for (std::size_t n = 0; n < res.size(); ++n) {
    const Resonance& r = res[n];
    t.add_row({num(n + 1), num(r.omega.real()), num(r.omega.imag()), num(r.residual),
               to_string(r.method)});
    json e = {{"mode", n + 1},
              {"re", r.omega.real()},
              {"im", r.omega.imag()},
              {"residual", r.residual},
              {"relative_residual", r.relative_residual},
              {"method", to_string(r.method)}};
    if (refined[n]) {
      const cplx wf = refined[n]->resonance.omega;
      const double bound = 10.0 * (std::norm(wf) + delta);
      const double diff = std::abs(wf - r.omega) / std::abs(wf);
      e["refined"] = {{"re", wf.real()},
                      {"im", wf.imag()},
                      {"sigma_ratio", refined[n]->resonance.residual},
                      {"relative_difference", diff},
                      {"bound", bound},
                      {"within_bound", diff < bound}};
    }
    list.push_back(e);
  }
  w.csv("resonances.csv", t);
  if (ctx.config.dump.operators) w.csv("operators.csv", operator_table(array, ctx.config.dump.omega, s.order()));
  const auto& d = s.diagnostics();
  w.json_file("resonances.json",
              {{"count", res.size()},
               {"delta", delta},
               {"truncation", s.order()},
               {"resonances", list},
               {"search", {{"scan_points", d.scan_points},
                           {"scan_minima", d.scan_minima},
                           {"from_scan", d.from_scan},
                           {"from_linearised", d.from_linearised},
                           {"scan_median", d.scan_median},
                           {"trace_variation", s.system().trace_variation()}}}});
}

void cmd_modes(const RunContext& ctx, Session& s, Writer& w) {
  const RunConfig& c = ctx.config;
  const ResonatorArray& array = s.array();
  const auto& modes = s.modes();
  const std::size_t n = modes.size();

  const std::vector<double> line = line_grid(array, c.modes.line.points, c.modes.line.margin);
  std::vector<Vec2> pts;
  for (double x : line) pts.push_back({x, 0.0});
  const Eigen::MatrixXcd u = mode_samples(array, modes, pts);
  CsvTable lt;
  lt.header = {"x_1"};
  for (auto& h : mode_columns("u", n)) lt.header.push_back(h);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    std::vector<std::string> row{num(line[p])};
    for (std::size_t m = 0; m < n; ++m) {
      const cplx v = u(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(m));
      row.push_back(num(v.real()));
      row.push_back(num(v.imag()));
    }
    lt.add_row(std::move(row));
  }
  w.csv("mode_line.csv", lt);

  double rmax = 0.0;
  for (const Disk& d : array.disks()) rmax = std::max(rmax, d.radius);
  const std::vector<double> gx = line_grid(array, c.modes.grid_x, c.modes.grid_margin);
  const double half = rmax * (1.0 + 2.0 * c.modes.grid_margin);
  std::vector<Vec2> gpts;
  for (std::size_t j = 0; j < c.modes.grid_y; ++j) {
    const double y = -half + 2.0 * half * double(j) / double(c.modes.grid_y - 1);
    for (double x : gx) gpts.push_back({x, y});
  }
  const Eigen::MatrixXcd ug = mode_samples(array, modes, gpts);
  CsvTable gt;
  gt.header = {"x_1", "x_2"};
  for (auto& h : mode_columns("u", n)) gt.header.push_back(h);
  for (std::size_t p = 0; p < gpts.size(); ++p) {
    std::vector<std::string> row{num(gpts[p].x), num(gpts[p].y)};
    for (std::size_t m = 0; m < n; ++m) {
      const cplx v = ug(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(m));
      row.push_back(num(v.real()));
      row.push_back(num(v.imag()));
    }
    gt.add_row(std::move(row));
  }
  w.csv("mode_grid.csv", gt);

  const GramMatrix& g = s.projector().gram();
  w.csv("gram.csv", gram_table(g));

  json list = json::array();
  for (std::size_t m = 0; m < n; ++m) {
    const auto col = u.col(static_cast<Eigen::Index>(m)).cwiseAbs();
    const double peak = col.maxCoeff();
    const double ends = std::max(col(0), col(col.size() - 1));
    list.push_back({{"mode", m + 1},
                    {"re", modes[m].resonance.omega.real()},
                    {"im", modes[m].resonance.omega.imag()},
                    {"l2_norm", std::sqrt(g.gamma(static_cast<Eigen::Index>(m),
                                                  static_cast<Eigen::Index>(m)).real())},
                    {"max_disk_variation", modes[m].normalization.max_disk_variation},
                    {"line_end_ratio", peak > 0.0 ? ends / peak : 0.0}});
  }
  w.json_file("modes.json", {{"modes", list}, {"gram_min_eigenvalue", g.min_eigenvalue}});
}

void cmd_sweep(const RunContext& ctx, Session& s, Writer& w) {
  const RunConfig& c = ctx.config;
  w.log("sweeping " + std::to_string(c.sweep.points) + " frequencies");
  const auto pts = frequency_sweep(s.array(), s.array().delta(), c.sweep.values(), c.incident,
                                   s.order(), c.quadrature);
  CsvTable t;
  t.header = {"omega", "response_norm", "sigma_min_ratio", "error"};
  std::size_t failures = 0;
  for (const auto& p : pts) {
    if (!p.error.empty()) ++failures;
    t.add_row({num(p.omega), num(p.response_norm), num(p.sigma_min_ratio), p.error});
  }
  w.csv("sweep.csv", t);
  if (failures == pts.size()) throw SolveError("every sweep point failed");
}

void cmd_decompose(const RunContext& ctx, Session& s, Writer& w) {
  const RunConfig& c = ctx.config;
  const ResonatorArray& array = s.array();
  const ModalProjector& pr = s.projector();
  const std::size_t n = pr.size();

  w.log("decomposing on " + std::to_string(c.decompose.omegas.points) + " frequencies");
  const ModalDecomposition dec =
      decompose(array, pr, c.incident, c.decompose.omegas.values(), s.order());
  CsvTable at;
  at.header = {"omega"};
  for (auto& h : mode_columns("alpha", n)) at.header.push_back(h);
  for (std::size_t g = 0; g < dec.omegas.size(); ++g) {
    std::vector<std::string> row{num(dec.omegas[g])};
    for (std::size_t m = 0; m < n; ++m) {
      const cplx a = dec.alphas(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(m));
      row.push_back(num(a.real()));
      row.push_back(num(a.imag()));
    }
    at.add_row(std::move(row));
  }
  w.csv("alphas.csv", at);

  CsvTable ct;
  ct.header = {"mode", "re_omega", "im_omega", "re_alpha", "im_alpha", "abs_alpha"};
  for (std::size_t m = 0; m < n; ++m) {
    const cplx a = dec.coefficients(static_cast<Eigen::Index>(m));
    ct.add_row({num(m + 1), num(pr.omegas()[m].real()), num(pr.omegas()[m].imag()),
                num(a.real()), num(a.imag()), num(std::abs(a))});
  }
  w.csv("coefficients.csv", ct);

  const std::vector<double> carriers = c.decompose.carriers.values();
  const Eigen::MatrixXcd cw = carrier_weights(array, pr, c.incident, carriers, s.order());
  CsvTable wt;
  wt.header = {"omega_in"};
  for (auto& h : mode_columns("alpha", n)) wt.header.push_back(h);
  for (std::size_t g = 0; g < carriers.size(); ++g) {
    std::vector<std::string> row{num(carriers[g])};
    for (std::size_t m = 0; m < n; ++m) {
      const cplx a = cw(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(m));
      row.push_back(num(a.real()));
      row.push_back(num(a.imag()));
    }
    wt.add_row(std::move(row));
  }
  w.csv("weights.csv", wt);
  w.csv("gram.csv", gram_table(pr.gram()));
}

void cmd_wave(const RunContext& ctx, Session& s, Writer& w) {
  const RunConfig& c = ctx.config;
  const ResonatorArray& array = s.array();
  const auto& modes = s.modes();

  Eigen::VectorXcd coef;
  if (c.wave.excitation == "uniform") {
    coef = uniform_excitation(modes.size());
  } else {
    const IncidentWave pulse = IncidentWave::pulse(c.wave.pulse_omega_in, c.wave.pulse_duration);
    coef = carrier_weights(array, s.projector(), pulse, {c.wave.pulse_omega_in}, s.order())
               .row(0)
               .transpose();
  }
  std::vector<double> times(c.wave.time_points);
  for (std::size_t i = 0; i < times.size(); ++i) {
    times[i] = c.wave.t_max * double(i + 1) / double(times.size());
  }
  const std::vector<double> line = line_grid(array, c.wave.line.points, c.wave.line.margin);
  w.log("synthesising " + std::to_string(times.size()) + " time steps");
  const SpaceTimeField f = travelling_wave(array, modes, coef, line, times);

  CsvTable t;
  t.header = {"t", "x_1", "p"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      t.add_row({num(times[i]), num(line[j]),
                 num(f.pressure(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))});
    }
  }
  w.csv("wave.csv", t);

  CsvTable tr;
  tr.header = {"t", "peak_x", "peak_resonator", "amplitude"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    tr.add_row({num(times[i]), num(f.peak_x[i]), num(f.peak_resonator[i] + 1),
                num(f.amplitude[i])});
  }
  w.csv("wave_trace.csv", tr);

  CsvTable ct;
  ct.header = {"mode", "re_coefficient", "im_coefficient"};
  for (Eigen::Index m = 0; m < coef.size(); ++m) {
    ct.add_row({num(static_cast<std::size_t>(m + 1)), num(coef(m).real()), num(coef(m).imag())});
  }
  w.csv("wave_coefficients.csv", ct);
}

void cmd_tonotopy(const RunContext& ctx, Session& s, Writer& w) {
  const RunConfig& c = ctx.config;
  const auto& modes = s.modes();
  Exclusion ex;
  ex.automatic = c.tonotopy.automatic;
  for (std::size_t m : c.tonotopy.exclude) ex.indices.push_back(m - 1);
  const std::vector<double> line = line_grid(s.array(), c.tonotopy.line.points, c.tonotopy.line.margin);
  const TonotopicFit fit = tonotopic_fit(s.array(), modes, line, ex);

  CsvTable t;
  t.header = {"mode", "x_peak", "re_omega", "excluded"};
  json excluded = json::array();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    t.add_row({num(m + 1), num(fit.x_peak[m]), num(fit.re_omega[m]), fit.excluded[m] ? "1" : "0"});
    if (fit.excluded[m]) excluded.push_back(m + 1);
  }
  w.csv("tonotopy.csv", t);
  w.json_file("fit.json", {{"a", fit.fit.a},
                           {"b", fit.fit.b},
                           {"c", fit.fit.c},
                           {"residual", fit.fit.residual},
                           {"excluded", excluded},
                           {"rank_correlation", fit.rank_correlation},
                           {"model", "a*exp(b*x)+c"}});
}

void cmd_params(const RunContext& ctx, Session&, Writer& w) {
  w.json_file("params.json", to_json(estimate_material(ctx.config.params)));
}

using Handler = std::function<void(const RunContext&, Session&, Writer&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"resonances", cmd_resonances}, {"modes", cmd_modes},       {"sweep", cmd_sweep},
      {"decompose", cmd_decompose},   {"wave", cmd_wave},         {"tonotopy", cmd_tonotopy},
      {"params", cmd_params}};
  return h;
}

json versions() {
  json v = {{"cochlea", COCHLEA_VERSION},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                          "." + std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
#if defined(__clang__)
  v["compiler"] = "clang " __clang_version__;
#elif defined(__GNUC__)
  v["compiler"] = "gcc " __VERSION__;
#endif
  return v;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"resonances", "modes",    "sweep", "decompose",
                                                 "wave",       "tonotopy", "params"};
  return names;
}

std::vector<std::string> run_command(const RunContext& ctx) {
  const auto it = handlers().find(ctx.command);
  if (it == handlers().end()) throw ConfigError("command", "unknown command '" + ctx.command + "'");
  if (ctx.threads > 0) set_thread_count(static_cast<unsigned>(ctx.threads));

  Writer w(ctx);
  Session s(ctx.config, w);
  it->second(ctx, s, w);

  const json echo = ctx.config.echo();
  w.json_file("config.json", echo);

  json outputs = json::array();
  for (const std::string& f : w.files()) {
    const std::string bytes = io::read_text(ctx.out / f);
    outputs.push_back({{"file", f}, {"bytes", bytes.size()}, {"sha256", io::sha256_hex(bytes)}});
  }
  json inputs = {{"command", ctx.command},
                 {"truncation", ctx.config.truncation},
                 {"config_echo_sha256", io::sha256_hex(echo.dump())}};
  if (!ctx.config_path.empty()) {
    inputs["config"] = {{"path", fs::path(ctx.config_path).filename().string()},
                        {"sha256", io::sha256_hex(ctx.config_bytes)}};
  }
  io::write_json(ctx.out / "manifest.json",
                 {{"inputs", inputs}, {"versions", versions()}, {"outputs", outputs}});
  std::vector<std::string> files = w.files();
  files.push_back("manifest.json");
  return files;
}

}  // namespace cochlea::app
