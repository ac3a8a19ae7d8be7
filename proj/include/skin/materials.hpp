#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skin {

// Free-electron metal. omega_p and v_F follow from n_e unless the entry was
// built with explicit overrides.
struct Material {
  std::string name;
  double n_e_cm3 = 0.0;
  double omega_p = 0.0; // rad/s
  double v_F = 0.0;     // cm/s
  bool overridden = false;

  double skin_depth() const; // c/omega_p, cm
};

// sqrt(4 pi n e^2 / m_e), rad/s.
double plasma_frequency(double n_e_cm3);

// (hbar/m_e) (3 pi^2 n)^(1/3), cm/s.
double fermi_velocity(double n_e_cm3);

// Throws DomainError unless n_e > 0 and the result is nonrelativistic.
Material make_material(std::string name, double n_e_cm3);

// Explicit omega_p / v_F replace the free-electron values; the consistency
// check against n_e is skipped for overridden fields.
Material make_material(std::string name, double n_e_cm3, std::optional<double> omega_p,
                       std::optional<double> v_F);

class MaterialTable {
public:
  // Na 2.65, Au 5.90, Al 18.1 (x 1e22 cm^-3).
  static MaterialTable builtin();

  // JSON document {"materials": [{"name", "n_e_cm3", "omega_p"?, "v_F"?}, ...]}.
  // Unknown keys are rejected with ConfigError.
  static MaterialTable from_json(std::string_view text);
  static MaterialTable from_file(const std::filesystem::path& path);

  // Entries of `other` replace same-named entries and append new ones.
  void merge(const MaterialTable& other);

  // Case-insensitive. Throws ConfigError for unknown names.
  const Material& find(std::string_view name) const;
  bool contains(std::string_view name) const;

  const std::vector<Material>& entries() const { return entries_; }

private:
  void merge_one(Material m);

  std::vector<Material> entries_;
};

} // namespace skin
