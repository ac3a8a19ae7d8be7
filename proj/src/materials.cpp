#include "skin/materials.hpp"

#include "skin/constants.hpp"
#include "skin/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace skin {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

void check_density(double n_e_cm3) {
  if (!(n_e_cm3 >= 0.0) || !std::isfinite(n_e_cm3))
    throw DomainError("electron density must be finite and non-negative");
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

double Material::skin_depth() const { return cgs::c / omega_p; }

double plasma_frequency(double n_e_cm3) {
  check_density(n_e_cm3);
  return std::sqrt(4.0 * cgs::pi * n_e_cm3 * cgs::e * cgs::e / cgs::m_e);
}

double fermi_velocity(double n_e_cm3) {
  check_density(n_e_cm3);
  return (cgs::hbar / cgs::m_e) * std::cbrt(3.0 * cgs::pi * cgs::pi * n_e_cm3);
}

Material make_material(std::string name, double n_e_cm3) {
  return make_material(std::move(name), n_e_cm3, std::nullopt, std::nullopt);
}

Material make_material(std::string name, double n_e_cm3, std::optional<double> omega_p,
                       std::optional<double> v_F) {
  if (!(n_e_cm3 > 0.0) || !std::isfinite(n_e_cm3))
    throw DomainError("material '" + name + "': n_e must be positive");
  Material m;
  m.name = std::move(name);
  m.n_e_cm3 = n_e_cm3;
  m.omega_p = omega_p.value_or(plasma_frequency(n_e_cm3));
  m.v_F = v_F.value_or(fermi_velocity(n_e_cm3));
  m.overridden = omega_p.has_value() || v_F.has_value();

  if (!(m.omega_p > 0.0) || !std::isfinite(m.omega_p))
    throw DomainError("material '" + m.name + "': omega_p must be positive");
  if (!(m.v_F > 0.0) || !std::isfinite(m.v_F))
    throw DomainError("material '" + m.name + "': v_F must be positive");
  if (m.v_F >= cgs::c)
    throw DomainError("material '" + m.name + "': v_F must be below the speed of light");
  if (!omega_p && !close_rel(m.omega_p, plasma_frequency(n_e_cm3), 1e-10))
    throw NumericalError("material '" + m.name + "': omega_p inconsistent with n_e");
  if (!v_F && !close_rel(m.v_F, fermi_velocity(n_e_cm3), 1e-10))
    throw NumericalError("material '" + m.name + "': v_F inconsistent with n_e");
  return m;
}

MaterialTable MaterialTable::builtin() {
  MaterialTable t;
  t.entries_.push_back(make_material("na", 2.65e22));
  t.entries_.push_back(make_material("au", 5.90e22));
  t.entries_.push_back(make_material("al", 18.1e22));
  return t;
}

MaterialTable MaterialTable::from_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ConfigError(std::string("material config: ") + ex.what());
  }
  if (!doc.is_object())
    throw ConfigError("material config: top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "materials")
      throw ConfigError("material config: unknown key '" + key + "'");
  if (!doc.contains("materials") || !doc["materials"].is_array())
    throw ConfigError("material config: 'materials' must be an array");

  auto number = [](const json& entry, const char* key) -> std::optional<double> {
    if (!entry.contains(key))
      return std::nullopt;
    if (!entry[key].is_number())
      throw ConfigError(std::string("material config: '") + key + "' must be a number");
    return entry[key].get<double>();
  };

  MaterialTable t;
  for (const auto& entry : doc["materials"]) {
    if (!entry.is_object())
      throw ConfigError("material config: entries must be objects");
    for (const auto& [key, _] : entry.items())
      if (key != "name" && key != "n_e_cm3" && key != "omega_p" && key != "v_F")
        throw ConfigError("material config: unknown key '" + key + "'");
    if (!entry.contains("name") || !entry["name"].is_string())
      throw ConfigError("material config: entry without a string 'name'");
    auto n_e = number(entry, "n_e_cm3");
    if (!n_e)
      throw ConfigError("material config: entry without 'n_e_cm3'");
    try {
      t.merge_one(make_material(entry["name"].get<std::string>(), *n_e, number(entry, "omega_p"),
                                number(entry, "v_F")));
    } catch (const DomainError& ex) {
      throw ConfigError(std::string("material config: ") + ex.what());
    }
  }
  return t;
}

MaterialTable MaterialTable::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open material config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void MaterialTable::merge_one(Material m) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Material& e) { return iequals(e.name, m.name); });
  if (it != entries_.end())
    *it = std::move(m);
  else
    entries_.push_back(std::move(m));
}

void MaterialTable::merge(const MaterialTable& other) {
  for (const auto& m : other.entries_)
    merge_one(m);
}

bool MaterialTable::contains(std::string_view name) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Material& e) { return iequals(e.name, name); });
}

const Material& MaterialTable::find(std::string_view name) const {
  for (const auto& e : entries_)
    if (iequals(e.name, name))
      return e;
  throw ConfigError("unknown material '" + std::string(name) + "'");
}

} // namespace skin
