#ifndef LEPAGE_SPECTRAL_JSON_HPP
#define LEPAGE_SPECTRAL_JSON_HPP

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "lepage/error.hpp"
#include "lepage/spectral.hpp"

namespace lepage {

/// Measure schema:
///   {"sphere": "linf" | "euclid", "dim": 2,
///    "variant": {"atoms": [{"point": [1, 0.2], "weight": 0.5}, ...]}
///             | {"uniform_linf": {}}
///             | {"angular_density": "f1" | "f2" | "f3" | "uniform"},
///    "total_mass": 1.0}
/// For atoms total_mass may be omitted; when present it must equal the sum
/// of the weights.
inline SpectralMeasure measure_from_json(const nlohmann::json &j) {
  using nlohmann::json;
  try {
    if (!j.is_object())
      throw invalid_measure("measure must be a JSON object");
    const std::string sphere_name = j.at("sphere").get<std::string>();
    Sphere sphere;
    if (sphere_name == "linf")
      sphere = Sphere::linf;
    else if (sphere_name == "euclid")
      sphere = Sphere::euclidean;
    else
      throw invalid_measure("unknown sphere '" + sphere_name + "'");

    const auto &variant = j.at("variant");
    if (!variant.is_object() || variant.size() != 1)
      throw invalid_measure("variant must hold exactly one key");
    const bool has_mass = j.contains("total_mass");
    const double mass = has_mass ? j.at("total_mass").get<double>() : 1.0;
    const auto dim = j.contains("dim") ? j.at("dim").get<std::size_t>() : 0;

    if (variant.contains("atoms")) {
      std::vector<std::vector<double>> points;
      std::vector<double> weights;
      for (const auto &atom : variant.at("atoms")) {
        points.push_back(atom.at("point").get<std::vector<double>>());
        weights.push_back(atom.at("weight").get<double>());
      }
      auto m = SpectralMeasure::atoms(sphere, std::move(points),
                                      std::move(weights));
      if (dim != 0 && dim != m.dim())
        throw invalid_measure("dim does not match the atom points");
      if (has_mass && std::abs(m.total_mass() - mass) > 1e-12)
        throw invalid_measure("total_mass does not match the atom weights");
      return m;
    }
    if (variant.contains("uniform_linf")) {
      if (sphere != Sphere::linf)
        throw invalid_measure("uniform_linf lives on the linf sphere");
      if (dim == 0)
        throw invalid_measure("uniform_linf needs dim");
      return SpectralMeasure::uniform_linf(dim, mass);
    }
    if (variant.contains("angular_density")) {
      if (sphere != Sphere::euclidean)
        throw invalid_measure("angular densities live on the euclid sphere");
      if (dim != 0 && dim != 2)
        throw invalid_measure("angular densities need dim 2");
      const auto name = variant.at("angular_density").get<std::string>();
      BuiltinDensity kind;
      if (name == "f1")
        kind = BuiltinDensity::f1;
      else if (name == "f2")
        kind = BuiltinDensity::f2;
      else if (name == "f3")
        kind = BuiltinDensity::f3;
      else if (name == "uniform")
        kind = BuiltinDensity::uniform;
      else
        throw invalid_measure("unknown angular density '" + name + "'");
      return SpectralMeasure::angular_density(kind, mass);
    }
    throw invalid_measure("unknown measure variant");
  } catch (const nlohmann::json::exception &e) {
    throw invalid_measure(std::string("bad measure JSON: ") + e.what());
  }
}

inline nlohmann::json measure_to_json(const SpectralMeasure &m) {
  nlohmann::json j;
  j["sphere"] = m.sphere() == Sphere::linf ? "linf" : "euclid";
  j["dim"] = m.dim();
  std::visit(
      [&](const auto &v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomList>) {
          auto atoms = nlohmann::json::array();
          for (std::size_t i = 0; i < v.size(); ++i) {
            const auto p = v.point(i);
            atoms.push_back({{"point", std::vector<double>(p.begin(), p.end())},
                             {"weight", v.weights[i]}});
          }
          j["variant"] = {{"atoms", atoms}};
        } else if constexpr (std::is_same_v<T, UniformLInf>) {
          j["variant"] = {{"uniform_linf", nlohmann::json::object()}};
        } else {
          j["variant"] = {{"angular_density", to_string(v.kind)}};
        }
      },
      m.variant());
  j["total_mass"] = m.total_mass();
  return j;
}

} // namespace lepage

#endif // LEPAGE_SPECTRAL_JSON_HPP
