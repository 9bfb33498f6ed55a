#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tiltspdc {

// Dispersion formula families, wavelength x = lambda^2 in um^2:
//   kEimerl:    n^2 = A + B/(x - C) - D*x              coefficients {A, B, C, D}
//   kSellmeier: n^2 = 1 + sum_j B_j*x/(x - C_j)          coefficients {B1, C1, B2, C2, ...}
enum class SellmeierFormula { kEimerl, kSellmeier };

struct SellmeierSet {
  SellmeierFormula formula = SellmeierFormula::kEimerl;
  std::vector<double> coefficients;

  // n^2 as a function of x = lambda^2. Templated so the same code path
  // evaluates plain doubles and derivative jets.
  template <typename T>
  T index_squared(T x) const {
    const auto& c = coefficients;
    if (formula == SellmeierFormula::kEimerl) {
      return c[0] + c[1] / (x - c[2]) - c[3] * x;
    }
    T sum = x * 0.0 + 1.0;
    for (std::size_t j = 0; j + 1 < c.size(); j += 2) {
      sum = sum + c[j] * x / (x - c[j + 1]);
    }
    return sum;
  }

  void validate(std::string_view crystal_name) const;
};

enum class Axis { kOrdinary, kExtraordinary };
enum class Polarization { kOrdinary, kExtraordinary };

struct CrystalModel {
  std::string name;
  SellmeierSet ordinary;
  SellmeierSet extraordinary;  // principal extraordinary axis
  double lambda_min = 0.0;     // um
  double lambda_max = 0.0;     // um
  std::string note;

  // Throws RangeError naming the crystal and its bounds.
  void check_range(double lambda_um) const;
  // Throws ValidationError unless both axes give n > 1 across the range.
  void validate() const;
  bool negative_uniaxial(double lambda_um) const;
};

// Angle between the wavevector and the optic axis, plus polarization.
struct PropagationGeometry {
  double theta = 0.0;
  Polarization polarization = Polarization::kOrdinary;

  void validate() const;
};

double refractive_index(const CrystalModel& crystal, Axis axis, double lambda_um);

// Uniaxial index ellipse: 1/n^2 = cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2 for
// extraordinary waves; ordinary waves return n_o regardless of theta.
double index_at_angle(const CrystalModel& crystal, const PropagationGeometry& geom,
                      double lambda_um);

// Crystal data file. Records look like
//
//   crystal BBO
//     formula eimerl
//     ordinary 2.7359 0.01878 0.01822 0.01354
//     extraordinary 2.3753 0.01224 0.01667 0.01516
//     range 0.22 1.06
//     note <free text>
//   end
//
// '#' starts a comment. See docs/crystal-format.md.
std::vector<CrystalModel> parse_crystal_records(std::istream& in);
std::vector<CrystalModel> load_crystal_file(const std::filesystem::path& path);
CrystalModel find_crystal(const std::vector<CrystalModel>& crystals, std::string_view name);

std::filesystem::path default_crystal_file();
// Looks the crystal up in the bundled data file.
CrystalModel bundled_crystal(std::string_view name);

}  // namespace tiltspdc
