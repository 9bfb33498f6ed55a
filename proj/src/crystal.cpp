#include "tiltspdc/crystal.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tiltspdc/errors.hpp"
#include "tiltspdc/units.hpp"

namespace tiltspdc {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_numbers(std::istringstream& fields, const std::string& what,
                                  int line_no) {
  std::vector<double> values;
  std::string token;
  while (fields >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw ValidationError("crystal file line " + std::to_string(line_no) + ": bad number '" +
                            token + "' in " + what);
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

void SellmeierSet::validate(std::string_view crystal_name) const {
  const std::string where = "crystal " + std::string(crystal_name) + ": ";
  if (formula == SellmeierFormula::kEimerl && coefficients.size() != 4) {
    throw ValidationError(where + "eimerl formula needs 4 coefficients");
  }
  if (formula == SellmeierFormula::kSellmeier &&
      (coefficients.empty() || coefficients.size() % 2 != 0)) {
    throw ValidationError(where + "sellmeier formula needs (B, C) coefficient pairs");
  }
}

void CrystalModel::check_range(double lambda_um) const {
  if (!(lambda_um >= lambda_min && lambda_um <= lambda_max)) {
    std::ostringstream msg;
    msg << "wavelength " << lambda_um << " um outside the Sellmeier range of " << name << " ["
        << lambda_min << ", " << lambda_max << "] um";
    throw RangeError(msg.str());
  }
}

void CrystalModel::validate() const {
  if (name.empty()) throw ValidationError("crystal record without a name");
  if (!(lambda_min > 0.0 && lambda_max > lambda_min)) {
    throw ValidationError("crystal " + name + ": invalid validity range");
  }
  ordinary.validate(name);
  extraordinary.validate(name);
  constexpr int kSamples = 400;
  for (int j = 0; j <= kSamples; ++j) {
    const double lambda = lambda_min + (lambda_max - lambda_min) * j / kSamples;
    const double x = lambda * lambda;
    const double no2 = ordinary.index_squared(x);
    const double ne2 = extraordinary.index_squared(x);
    if (!(no2 > 1.0) || !(ne2 > 1.0) || !std::isfinite(no2) || !std::isfinite(ne2)) {
      std::ostringstream msg;
      msg << "crystal " << name << ": refractive index <= 1 at " << lambda << " um";
      throw ValidationError(msg.str());
    }
  }
}

bool CrystalModel::negative_uniaxial(double lambda_um) const {
  return refractive_index(*this, Axis::kExtraordinary, lambda_um) <
         refractive_index(*this, Axis::kOrdinary, lambda_um);
}

void PropagationGeometry::validate() const {
  if (!(theta >= 0.0 && theta <= 0.5 * kPi)) {
    throw ValidationError("propagation angle must lie in [0, pi/2]");
  }
}

double refractive_index(const CrystalModel& crystal, Axis axis, double lambda_um) {
  crystal.check_range(lambda_um);
  const auto& set = axis == Axis::kOrdinary ? crystal.ordinary : crystal.extraordinary;
  return std::sqrt(set.index_squared(lambda_um * lambda_um));
}

double index_at_angle(const CrystalModel& crystal, const PropagationGeometry& geom,
                      double lambda_um) {
  geom.validate();
  const double no = refractive_index(crystal, Axis::kOrdinary, lambda_um);
  if (geom.polarization == Polarization::kOrdinary) return no;
  const double ne = refractive_index(crystal, Axis::kExtraordinary, lambda_um);
  const double c = std::cos(geom.theta);
  const double s = std::sin(geom.theta);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

std::vector<CrystalModel> parse_crystal_records(std::istream& in) {
  std::vector<CrystalModel> out;
  CrystalModel current;
  bool open = false;
  bool have_o = false;
  bool have_e = false;
  bool have_range = false;
  SellmeierFormula formula = SellmeierFormula::kEimerl;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    const auto fail = [&](const std::string& what) {
      throw ValidationError("crystal file line " + std::to_string(line_no) + ": " + what);
    };
    if (key == "crystal") {
      if (open) fail("nested crystal record");
      current = CrystalModel{};
      fields >> current.name;
      if (current.name.empty()) fail("crystal record without a name");
      open = true;
      have_o = have_e = have_range = false;
      formula = SellmeierFormula::kEimerl;
      continue;
    }
    if (!open) fail("'" + key + "' outside a crystal record");
    if (key == "formula") {
      std::string id;
      fields >> id;
      if (id == "eimerl") {
        formula = SellmeierFormula::kEimerl;
      } else if (id == "sellmeier") {
        formula = SellmeierFormula::kSellmeier;
      } else {
        fail("unknown formula id '" + id + "'");
      }
    } else if (key == "ordinary") {
      current.ordinary = {formula, parse_numbers(fields, key, line_no)};
      have_o = true;
    } else if (key == "extraordinary") {
      current.extraordinary = {formula, parse_numbers(fields, key, line_no)};
      have_e = true;
    } else if (key == "range") {
      const auto r = parse_numbers(fields, key, line_no);
      if (r.size() != 2) fail("range needs two values (um)");
      current.lambda_min = r[0];
      current.lambda_max = r[1];
      have_range = true;
    } else if (key == "note") {
      std::string rest;
      std::getline(fields, rest);
      current.note = trim(rest);
    } else if (key == "end") {
      if (!have_o || !have_e || !have_range) {
        fail("crystal " + current.name + " is missing ordinary/extraordinary/range");
      }
      current.validate();
      out.push_back(current);
      open = false;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (open) throw ValidationError("crystal file ends inside record " + current.name);
  return out;
}

std::vector<CrystalModel> load_crystal_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open crystal file " + path.string());
  return parse_crystal_records(in);
}

CrystalModel find_crystal(const std::vector<CrystalModel>& crystals, std::string_view name) {
  for (const auto& c : crystals) {
    if (c.name == name) return c;
  }
  throw ValidationError("unknown crystal '" + std::string(name) + "'");
}

std::filesystem::path default_crystal_file() {
  return std::filesystem::path(TILTSPDC_DATA_DIR) / "crystals.txt";
}

CrystalModel bundled_crystal(std::string_view name) {
  return find_crystal(load_crystal_file(default_crystal_file()), name);
}

}  // namespace tiltspdc
