#include "cliffell/lattice_io.hpp"

#include <fstream>
#include <sstream>

namespace cliffell {

nlohmann::json to_json(const PeriodLattice& l) {
  nlohmann::json doc;
  doc["m"] = l.m();
  doc["scalar_field"] = l.signature().scalar_field == ScalarField::complex ? "complex" : "real";
  nlohmann::json omegas = nlohmann::json::array();
  for (const auto& w : l.half_periods()) {
    nlohmann::json row = nlohmann::json::array();
    for (double c : w.coefficients()) row.push_back(c);
    omegas.push_back(std::move(row));
  }
  doc["omegas"] = std::move(omegas);
  return doc;
}

PeriodLattice lattice_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw LatticeError("lattice document must be a JSON object");
  if (!doc.contains("m") || !doc["m"].is_number_integer()) throw LatticeError("lattice field 'm' must be an integer");
  const int m = doc["m"].get<int>();
  check_m(m);
  AlgebraSignature sig{m, ScalarField::real};
  if (doc.contains("scalar_field")) {
    const auto& f = doc["scalar_field"];
    if (!f.is_string()) throw LatticeError("'scalar_field' must be a string");
    const auto s = f.get<std::string>();
    if (s == "complex")
      sig.scalar_field = ScalarField::complex;
    else if (s != "real")
      throw LatticeError("'scalar_field' must be \"real\" or \"complex\"");
  }
  if (!doc.contains("omegas") || !doc["omegas"].is_array()) throw LatticeError("lattice field 'omegas' must be an array");
  std::vector<Paravector<double>> omegas;
  for (const auto& row : doc["omegas"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != sig.paravector_dim())
      throw LatticeError("each half-period needs exactly 2m+2 numbers");
    Paravector<double> w(m);
    for (int i = 0; i < w.dim(); ++i) {
      if (!row[i].is_number()) throw LatticeError("half-period coefficients must be numbers");
      w[i] = row[i].get<double>();
    }
    omegas.push_back(w);
  }
  return PeriodLattice(sig, std::move(omegas));
}

std::string serialize_lattice(const PeriodLattice& l) { return to_json(l).dump(); }

PeriodLattice parse_lattice(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LatticeError(std::string("malformed lattice JSON: ") + e.what());
  }
  return lattice_from_json(doc);
}

PeriodLattice load_lattice(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LatticeError("cannot open lattice file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lattice(ss.str());
}

PeriodLattice resolve_lattice(std::string_view name_or_path) {
  for (const auto& n : bundled_lattice_names())
    if (n == name_or_path) return bundled_lattice(n);
  return load_lattice(std::filesystem::path(std::string(name_or_path)));
}

}  // namespace cliffell
