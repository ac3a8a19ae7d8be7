#include "skin/cli.hpp"

#include "skin/analysis.hpp"
#include "skin/asymptotics.hpp"
#include "skin/constants.hpp"
#include "skin/error.hpp"
#include "skin/field.hpp"
#include "skin/materials.hpp"
#include "skin/params.hpp"
#include "skin/permittivity.hpp"
#include "skin/profile.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace skin::cli {

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  if (v == 0.0)
    return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Document {
  std::string command;
  Json parameters = Json::object();
  Json summary = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

std::string csv_cell(const Json& v) {
  switch (v.type()) {
  case Json::value_t::number_float: return format_number(v.get<double>());
  case Json::value_t::number_integer: return std::to_string(v.get<long long>());
  case Json::value_t::number_unsigned: return std::to_string(v.get<unsigned long long>());
  case Json::value_t::boolean: return v.get<bool>() ? "true" : "false";
  case Json::value_t::null: return "nan";
  case Json::value_t::string: {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos)
      return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"')
        q += '"';
      q += c;
    }
    return q + "\"";
  }
  default: return v.dump();
  }
}

std::string render_csv(const Document& doc, const std::string& stamp) {
  std::ostringstream os;
  os << "# generated: " << stamp << '\n';
  os << "# command: " << doc.command << '\n';
  for (const auto& [k, v] : doc.parameters.items())
    os << "# " << k << ": " << csv_cell(v) << '\n';
  for (const auto& [k, v] : doc.summary.items())
    os << "# " << k << ": " << csv_cell(v) << '\n';
  for (std::size_t i = 0; i < doc.columns.size(); ++i)
    os << (i ? "," : "") << doc.columns[i];
  os << '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

Json json_value(const Json& v) {
  // Non-finite numbers have no JSON literal; keep them readable as strings.
  if (v.is_number_float() && !std::isfinite(v.get<double>()))
    return format_number(v.get<double>());
  if (v.is_number_float() && v.get<double>() == 0.0)
    return 0.0;
  return v;
}

std::string render_json(const Document& doc, const std::string& stamp) {
  Json j = Json::object();
  j["generated"] = stamp;
  j["command"] = doc.command;
  j["parameters"] = Json::object();
  for (const auto& [k, v] : doc.parameters.items())
    j["parameters"][k] = json_value(v);
  j["summary"] = Json::object();
  for (const auto& [k, v] : doc.summary.items())
    j["summary"][k] = json_value(v);
  j["columns"] = doc.columns;
  Json rows = Json::array();
  for (const auto& row : doc.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      r[doc.columns[i]] = json_value(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int n = 0;
};

Grid parse_grid(const std::string& text) {
  auto c1 = text.find(':');
  auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw UsageError("grid must look like min:max:n, got '" + text + "'");
  Grid g;
  try {
    std::size_t used = 0;
    std::string a = text.substr(0, c1), b = text.substr(c1 + 1, c2 - c1 - 1),
                n = text.substr(c2 + 1);
    g.min = std::stod(a, &used);
    if (used != a.size())
      throw std::invalid_argument(a);
    g.max = std::stod(b, &used);
    if (used != b.size())
      throw std::invalid_argument(b);
    g.n = std::stoi(n, &used);
    if (used != n.size())
      throw std::invalid_argument(n);
  } catch (const std::logic_error&) {
    throw UsageError("grid must look like min:max:n, got '" + text + "'");
  }
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.min < g.max))
    throw UsageError("grid needs finite min < max");
  if (g.n < 2)
    throw UsageError("grid needs n >= 2");
  return g;
}

std::vector<double> grid_points(const Grid& g, bool log_spacing) {
  if (log_spacing && !(g.min > 0.0))
    throw UsageError("logarithmic grid needs min > 0");
  std::vector<double> v(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    double t = static_cast<double>(i) / (g.n - 1);
    v[i] = log_spacing ? std::exp(std::log(g.min) + t * (std::log(g.max) - std::log(g.min)))
                       : g.min + t * (g.max - g.min);
  }
  v.front() = g.min;
  v.back() = g.max;
  return v;
}

// Either a single point or a grid, whichever the user gave.
std::vector<double> sample_points(const std::optional<double>& single, const std::string& grid,
                                  bool log_spacing, const char* what) {
  if (single && !grid.empty())
    throw UsageError(std::string("give either a single ") + what + " or --grid, not both");
  if (single)
    return {*single};
  if (grid.empty())
    throw UsageError(std::string("need a single ") + what + " or --grid");
  return grid_points(parse_grid(grid), log_spacing);
}

struct Settings {
  std::string format = "csv";
  std::string output;
  std::string materials_file;
};

MaterialTable load_table(const Settings& s) {
  MaterialTable t = MaterialTable::builtin();
  std::string path = s.materials_file;
  if (path.empty()) {
    if (const char* env = std::getenv(materials_env))
      path = env;
  }
  if (!path.empty())
    t.merge(MaterialTable::from_file(path));
  return t;
}

// A material argument is a table name, or a path to a material file whose
// first entry is used.
Material resolve_material(MaterialTable& table, const std::string& arg) {
  std::error_code ec;
  if (!table.contains(arg) && std::filesystem::is_regular_file(arg, ec)) {
    MaterialTable extra = MaterialTable::from_file(arg);
    if (extra.entries().empty())
      throw ConfigError("material file '" + arg + "' has no entries");
    table.merge(extra);
    return extra.entries().front();
  }
  return table.find(arg);
}

struct UnitScale {
  double per_cm = 1.0; // output length = cm value * per_cm
  std::string suffix = "cm";
};

UnitScale unit_scale(const std::string& units) {
  if (units == "si")
    return {si::cm, "m"};
  return {};
}

void write_output(const Settings& s, const std::string& text, std::ostream& out) {
  if (s.output.empty() || s.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(s.output, std::ios::binary | std::ios::trunc);
  if (!f)
    throw Error("cannot open output file '" + s.output + "'");
  f << text;
  if (!f)
    throw Error("failed writing output file '" + s.output + "'");
}

std::string render(const Settings& s, const Document& doc, const std::string& stamp) {
  return s.format == "json" ? render_json(doc, stamp) : render_csv(doc, stamp);
}

// ---- subcommands -----------------------------------------------------------

Document cmd_materials(const MaterialTable& table) {
  Document d;
  d.command = "materials";
  d.columns = {"name",        "n_e_cm3",  "n_e_m3",        "omega_p_rad_s", "v_F_cm_s",
               "v_F_m_s",     "v_F_over_c", "skin_depth_cm", "skin_depth_m",  "overridden"};
  for (const auto& m : table.entries()) {
    d.rows.push_back({m.name, m.n_e_cm3, m.n_e_cm3 / si::cm3, m.omega_p, m.v_F, m.v_F * si::cm,
                      m.v_F / cgs::c, m.skin_depth(), m.skin_depth() * si::cm, m.overridden});
  }
  return d;
}

struct EpsilonArgs {
  double Omega = 0.0;
  double eps = 0.0;
  std::optional<double> q;
  std::string grid;
  bool log = false;
};

Document cmd_epsilon(const EpsilonArgs& a) {
  Document d;
  d.command = "epsilon";
  d.parameters["Omega"] = a.Omega;
  d.parameters["eps"] = a.eps;
  auto qs = sample_points(a.q, a.grid, a.log, "--q");
  d.columns = {"q", "re_eps_tr", "im_eps_tr", "re_deps_dq", "im_deps_dq", "status"};
  const bool single = qs.size() == 1;
  for (double q : qs) {
    try {
      Complex e = eps_tr(q, a.Omega, a.eps);
      Complex de = d_eps_dq(q, a.Omega, a.eps);
      d.rows.push_back({q, e.real(), e.imag(), de.real(), de.imag(), "ok"});
    } catch (const SingularPointError& ex) {
      if (single)
        throw;
      const double nan = std::nan("");
      d.rows.push_back({q, nan, nan, nan, nan, ex.what()});
    }
  }
  return d;
}

struct KohnArgs {
  double Omega = 0.0;
  double eps = 1e-4;
  std::string grid = "0.02:0.2:500";
};

Document cmd_kohn(const KohnArgs& a) {
  Grid g = parse_grid(a.grid);
  KohnScanResult r = kohn_scan(a.Omega, a.eps, g.min, g.max, g.n);
  Document d;
  d.command = "kohn-scan";
  d.parameters["Omega"] = a.Omega;
  d.parameters["eps"] = a.eps;
  d.parameters["grid"] = a.grid;
  d.summary["q_star"] = r.q_star;
  d.summary["max_abs_deps_dq"] = r.max_abs_derivative;
  d.summary["coarse_step"] = r.grid.coarse_step;
  d.summary["refined_step"] = r.grid.refined_step;
  d.summary["rounds"] = r.grid.rounds;
  d.summary["skipped"] = r.grid.skipped;
  auto qs = grid_points(g, false);
  auto mags = derivative_magnitudes(qs, a.Omega, a.eps);
  d.columns = {"q", "abs_deps_dq"};
  for (std::size_t i = 0; i < qs.size(); ++i)
    d.rows.push_back({qs[i], mags[i]});
  return d;
}

struct FieldArgs {
  std::string material = "na";
  double Omega = 0.0;
  double eps = 0.0;
  std::optional<double> x;
  std::string grid;
  bool log = false;
  std::string method = "rescaled";
  std::string normalization = "Eprime0";
  std::string ibp_kernel = "exact";
  double rel_tol = 1e-8;
  std::string units = "cgs";
};

Method parse_method(const std::string& s) {
  static const std::map<std::string, Method> m{{"direct", Method::direct},
                                               {"rescaled", Method::rescaled},
                                               {"ibp", Method::ibp},
                                               {"asymptotic", Method::asymptotic}};
  return m.at(s);
}

Normalization parse_normalization(const std::string& s) {
  return s == "E0" ? Normalization::per_E0 : Normalization::per_Eprime0;
}

Document cmd_field(MaterialTable& table, const FieldArgs& a) {
  Material mat = resolve_material(table, a.material);
  UnitScale u = unit_scale(a.units);
  auto xs_in = sample_points(a.x, a.grid, a.log, "--x");
  std::vector<double> xs;
  for (double x : xs_in)
    xs.push_back(x / u.per_cm);
  PlasmaParams p = from_dimensionless(a.Omega, a.eps, mat);
  FieldOptions opts;
  opts.rel_tol = a.rel_tol;
  if (a.ibp_kernel == "single-term")
    opts.ibp_kernel = IbpKernel::single_term;
  else if (a.ibp_kernel == "pole-only")
    opts.ibp_kernel = IbpKernel::pole_only;
  Normalization norm = parse_normalization(a.normalization);
  FieldProfile prof = profile(xs, p, parse_method(a.method), norm, opts);

  Document d;
  d.command = "field";
  d.parameters["material"] = mat.name;
  d.parameters["Omega"] = a.Omega;
  d.parameters["eps"] = a.eps;
  d.parameters["method"] = a.method;
  d.parameters["normalization"] = to_string(norm);
  if (prof.method == Method::ibp)
    d.parameters["ibp_kernel"] = a.ibp_kernel;
  d.parameters["rel_tol"] = a.rel_tol;
  d.parameters["units"] = a.units;
  d.summary["skin_depth_" + u.suffix] = p.delta * u.per_cm;
  d.summary["mean_free_path_" + u.suffix] = p.l * u.per_cm;
  d.summary["a"] = p.a;
  d.summary["b"] = p.b;
  if (norm == Normalization::per_E0) {
    d.summary["re_E0_over_Eprime0_" + u.suffix] = prof.reference.real() * u.per_cm;
    d.summary["im_E0_over_Eprime0_" + u.suffix] = prof.reference.imag() * u.per_cm;
  }
  d.summary["failures"] = prof.failures();

  // per E'(0) values carry a length; per E(0) values are pure numbers.
  const bool per_len = norm == Normalization::per_Eprime0;
  const double vscale = per_len ? u.per_cm : 1.0;
  if (per_len)
    d.columns = {"x_" + u.suffix, "re_E_ratio_" + u.suffix, "im_E_ratio_" + u.suffix,
                 "abs_err_est", "status"};
  else
    d.columns = {"x_" + u.suffix, "re_E_over_E0", "im_E_over_E0", "abs_err_est", "status"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& diag = prof.diagnostics[i];
    d.rows.push_back({xs_in[i], prof.values[i].real() * vscale, prof.values[i].imag() * vscale,
                      diag.error_estimate * vscale, diag.ok ? std::string("ok") : diag.error});
  }
  return d;
}

struct AsymptoticArgs {
  std::string material = "na";
  double Omega = 0.0;
  std::optional<double> x;
  std::string grid;
  bool log = false;
  std::string normalization = "E0";
  std::string units = "cgs";
};

Document cmd_asymptotic(MaterialTable& table, const AsymptoticArgs& a) {
  Material mat = resolve_material(table, a.material);
  UnitScale u = unit_scale(a.units);
  auto xs_in = sample_points(a.x, a.grid, a.log, "--x");
  Normalization norm = parse_normalization(a.normalization);
  AsymptoticCoefficients co = asymptotic_coefficients(a.Omega, mat);

  Document d;
  d.command = "asymptotic";
  d.parameters["material"] = mat.name;
  d.parameters["Omega"] = a.Omega;
  d.parameters["normalization"] = to_string(norm);
  d.parameters["units"] = a.units;
  const double L = u.per_cm;
  d.summary["A_" + u.suffix + "3"] = co.A * L * L * L;
  d.summary["A_low_" + u.suffix + "3"] = amplitude_A(a.Omega, mat, AmplitudeForm::low) * L * L * L;
  d.summary["A_high_" + u.suffix + "3"] =
      amplitude_A(a.Omega, mat, AmplitudeForm::high) * L * L * L;
  d.summary["B_" + u.suffix + "2"] = co.B * L * L;
  d.summary["f_Omega"] = co.f_Omega;
  d.summary["wavelength_" + u.suffix] = 2.0 * cgs::pi / co.wavenumber * L;

  const bool per_len = norm == Normalization::per_Eprime0;
  d.columns = {"x_" + u.suffix, per_len ? "E_ratio_" + u.suffix : std::string("E_over_E0"),
               per_len ? "abs_E_ratio_" + u.suffix : std::string("abs_E_over_E0")};
  for (double xi : xs_in) {
    double v = asymptotic_field(xi / L, a.Omega, mat, norm) * (per_len ? L : 1.0);
    d.rows.push_back({xi, v, std::abs(v)});
  }
  return d;
}

struct CrossoverArgs {
  std::string material = "na";
  double Omega = 0.0;
  double E0 = 1.0;
};

Document cmd_crossover(MaterialTable& table, const CrossoverArgs& a) {
  std::vector<Material> mats;
  if (a.material == "all")
    mats = table.entries();
  else
    mats.push_back(resolve_material(table, a.material));
  Document d;
  d.command = "crossover";
  d.parameters["material"] = a.material;
  d.parameters["Omega"] = a.Omega;
  d.parameters["E0"] = a.E0;
  d.columns = {"material", "x_star_cm", "x_star_um", "x_star_m",   "x_star_over_skin_depth",
               "g_residual", "B_cm2",   "x_min_cm",  "iterations"};
  for (const auto& m : mats) {
    CrossoverResult r = crossover(a.Omega, m, a.E0);
    d.rows.push_back({m.name, r.x_star, r.x_star * 1e4, r.x_star * si::cm,
                      r.x_star / m.skin_depth(), r.g_residual, r.B, r.x_min, r.iterations});
  }
  return d;
}

struct FigureArgs {
  int fig = 0;
  std::string material = "na";
  int n = 0;
};

std::string omega_label(double Omega) {
  return "Omega_" + format_number(Omega);
}

struct FigureOutput {
  Document doc;
  std::optional<Json> sidecar;
};

FigureOutput cmd_figure(MaterialTable& table, const FigureArgs& a) {
  FigureOutput out;
  Document& d = out.doc;
  d.command = "figures";
  d.parameters["fig"] = a.fig;
  auto npts = [&](int def) { return a.n > 0 ? a.n : def; };
  if (a.n == 1)
    throw UsageError("--n needs at least 2 points");

  if (a.fig == 1) {
    const double eps = 1e-4;
    Grid g{0.02, 0.2, npts(500)};
    auto qs = grid_points(g, false);
    d.parameters["eps"] = eps;
    d.columns = {"q"};
    std::vector<std::vector<double>> curves;
    for (double Om : {0.1, 0.08}) {
      d.columns.push_back("abs_deps_dq_" + omega_label(Om));
      curves.push_back(derivative_magnitudes(qs, Om, eps));
      KohnScanResult r = kohn_scan(Om, eps, g.min, g.max, g.n);
      d.summary["q_star_" + omega_label(Om)] = r.q_star;
    }
    for (std::size_t i = 0; i < qs.size(); ++i)
      d.rows.push_back({qs[i], curves[0][i], curves[1][i]});
    return out;
  }

  if (a.fig >= 2 && a.fig <= 4) {
    std::vector<std::pair<std::string, std::pair<Material, double>>> curves;
    Grid g;
    if (a.fig == 4) {
      g = {1.5e-3, 1.8e-3, npts(2000)};
      const Material& al = table.find("al");
      d.parameters["material"] = al.name;
      for (double Om : {1e-4, 1e-3, 1e-2})
        curves.push_back({omega_label(Om), {al, Om}});
    } else {
      double Om = a.fig == 2 ? 1e-4 : 1e-3;
      g = a.fig == 2 ? Grid{2e-5, 2e-3, npts(2000)} : Grid{9e-5, 3e-3, npts(2000)};
      d.parameters["Omega"] = Om;
      for (const char* name : {"na", "au", "al"}) {
        const Material& m = table.find(name);
        curves.push_back({m.name, {m, Om}});
      }
    }
    d.parameters["normalization"] = to_string(Normalization::per_E0);
    auto xs = grid_points(g, false);
    d.columns = {"x_cm"};
    for (const auto& c : curves)
      d.columns.push_back("abs_E_over_E0_" + c.first);
    for (double x : xs) {
      std::vector<Json> row{x};
      for (const auto& c : curves)
        row.push_back(std::abs(
            asymptotic_field(x, c.second.second, c.second.first, Normalization::per_E0)));
      d.rows.push_back(std::move(row));
    }
    return out;
  }

  if (a.fig == 5 || a.fig == 6) {
    const double Om = a.fig == 5 ? 1e-2 : 1e-1;
    Material m = resolve_material(table, a.material);
    CrossoverResult r = crossover(Om, m);
    d.parameters["material"] = m.name;
    d.parameters["Omega"] = Om;
    d.summary["x_star_cm"] = r.x_star;
    d.summary["x_star_um"] = r.x_star * 1e4;
    d.summary["B_cm2"] = r.B;
    d.summary["g_residual"] = r.g_residual;
    Grid g = a.fig == 5 ? Grid{0.05e-4, 1.5e-4, npts(400)} : Grid{0.05e-4, 2.5e-4, npts(400)};
    auto xs = grid_points(g, false);
    d.columns = {"x_cm", "x_um", "y1", "y2"};
    for (double x : xs)
      d.rows.push_back({x, x * 1e4, r.B / (x * x), std::exp(-m.omega_p * x / cgs::c)});
    Json side = Json::object();
    side["figure"] = a.fig;
    side["material"] = m.name;
    side["Omega"] = Om;
    side["x_star_cm"] = r.x_star;
    side["x_star_um"] = r.x_star * 1e4;
    side["B_cm2"] = r.B;
    side["g_residual"] = r.g_residual;
    out.sidecar = std::move(side);
    return out;
  }
  throw UsageError("--fig must be 1..6");
}

std::filesystem::path sidecar_path(const std::string& output) {
  std::filesystem::path p(output);
  if (p.extension() == ".json")
    return p.string() + ".meta.json";
  return p.replace_extension(".json");
}

} // namespace

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Field penetration into a degenerate metal plasma: permittivity, field "
               "profiles, asymptotics, crossover."};
  app.name("skinfield");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Settings s;
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("-o,--output", s.output, "Output file (stdout when absent or '-')");
  app.add_option("--materials-file", s.materials_file,
                 std::string("Material JSON merged over the built-in table (default: $") +
                     materials_env + ")");

  auto* materials = app.add_subcommand("materials", "Material table, CGS and SI");

  EpsilonArgs ea;
  auto* epsilon = app.add_subcommand("epsilon", "Transversal permittivity and its q-derivative");
  epsilon->add_option("--Omega", ea.Omega, "omega / omega_p")->required();
  epsilon->add_option("--eps", ea.eps, "nu / omega_p")->capture_default_str();
  epsilon->add_option("--q", ea.q, "Single wavenumber");
  epsilon->add_option("--grid", ea.grid, "q grid min:max:n");
  epsilon->add_flag("--log", ea.log, "Logarithmic grid spacing");

  KohnArgs ka;
  auto* kohn = app.add_subcommand("kohn-scan", "Locate the maximum of |d eps_tr/dq|");
  kohn->add_option("--Omega", ka.Omega, "omega / omega_p")->required();
  kohn->add_option("--eps", ka.eps, "nu / omega_p")->capture_default_str();
  kohn->add_option("--grid", ka.grid, "q grid min:max:n")->capture_default_str();

  FieldArgs fa;
  auto* field = app.add_subcommand("field", "Numerical field profile E(x)");
  field->add_option("--material", fa.material, "Material name or file")->capture_default_str();
  field->add_option("--Omega", fa.Omega, "omega / omega_p")->required();
  field->add_option("--eps", fa.eps, "nu / omega_p")->required();
  field->add_option("--x", fa.x, "Single position");
  field->add_option("--grid", fa.grid, "Position grid min:max:n");
  field->add_flag("--log", fa.log, "Logarithmic grid spacing");
  field->add_option("--method", fa.method)
      ->check(CLI::IsMember({"direct", "rescaled", "ibp", "asymptotic"}))
      ->capture_default_str();
  field->add_option("--normalization", fa.normalization, "E(x)/E'(0) or E(x)/E(0)")
      ->check(CLI::IsMember({"Eprime0", "E0"}))
      ->capture_default_str();
  field->add_option("--ibp-kernel", fa.ibp_kernel)
      ->check(CLI::IsMember({"exact", "single-term", "pole-only"}))
      ->capture_default_str();
  field->add_option("--rel-tol", fa.rel_tol)->check(CLI::PositiveNumber)->capture_default_str();
  field->add_option("--units", fa.units, "Length unit of positions and results")
      ->check(CLI::IsMember({"cgs", "si"}))
      ->capture_default_str();

  AsymptoticArgs aa;
  auto* asym = app.add_subcommand("asymptotic", "Far-field Friedel asymptotics");
  asym->add_option("--material", aa.material, "Material name or file")->capture_default_str();
  asym->add_option("--Omega", aa.Omega, "omega / omega_p")->required();
  asym->add_option("--x", aa.x, "Single position");
  asym->add_option("--grid", aa.grid, "Position grid min:max:n");
  asym->add_flag("--log", aa.log, "Logarithmic grid spacing");
  asym->add_option("--normalization", aa.normalization)
      ->check(CLI::IsMember({"Eprime0", "E0"}))
      ->capture_default_str();
  asym->add_option("--units", aa.units)
      ->check(CLI::IsMember({"cgs", "si"}))
      ->capture_default_str();

  CrossoverArgs ca;
  auto* cross = app.add_subcommand("crossover", "Distance where the Friedel tail overtakes "
                                                "the exponential skin law");
  cross->add_option("--material", ca.material, "Material name, file, or 'all'")
      ->capture_default_str();
  cross->add_option("--Omega", ca.Omega, "omega / omega_p")->required();
  cross->add_option("--E0", ca.E0, "Surface field E(0)")->capture_default_str();

  FigureArgs fg;
  auto* figures = app.add_subcommand("figures", "Data behind the six reference figures");
  figures->add_option("--fig", fg.fig, "Figure number")->required()->check(CLI::Range(1, 6));
  figures->add_option("--material", fg.material, "Material for figures 5 and 6")
      ->capture_default_str();
  figures->add_option("--n", fg.n, "Number of samples (figure default when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  const std::string stamp = timestamp_utc();
  try {
    MaterialTable table = load_table(s);
    if (*materials) {
      write_output(s, render(s, cmd_materials(table), stamp), out);
    } else if (*epsilon) {
      write_output(s, render(s, cmd_epsilon(ea), stamp), out);
    } else if (*kohn) {
      write_output(s, render(s, cmd_kohn(ka), stamp), out);
    } else if (*field) {
      write_output(s, render(s, cmd_field(table, fa), stamp), out);
    } else if (*asym) {
      write_output(s, render(s, cmd_asymptotic(table, aa), stamp), out);
    } else if (*cross) {
      write_output(s, render(s, cmd_crossover(table, ca), stamp), out);
    } else if (*figures) {
      FigureOutput fo = cmd_figure(table, fg);
      write_output(s, render(s, fo.doc, stamp), out);
      const bool to_file = !s.output.empty() && s.output != "-";
      if (fo.sidecar && to_file && s.format == "csv") {
        Json side = Json::object();
        side["generated"] = stamp;
        side.update(*fo.sidecar);
        Settings ss = s;
        ss.output = sidecar_path(s.output).string();
        write_output(ss, side.dump(2) + "\n", out);
      }
    }
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return exit_computation;
  }
  return exit_ok;
}

} // namespace skin::cli
