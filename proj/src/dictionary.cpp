#include "sdomp/dictionary.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace sdomp {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
} // namespace

int AngleGrid::size() const {
  validate();
  return static_cast<int>(std::llround((stop_deg - start_deg) / step_deg)) + 1;
}

int AngleGrid::nearest_index(double angle_deg_value) const {
  int i = static_cast<int>(std::llround((angle_deg_value - start_deg) / step_deg));
  if (i < 0) i = 0;
  const int last = size() - 1;
  if (i > last) i = last;
  return i;
}

void AngleGrid::validate() const {
  if (!(step_deg > 0.0))
    throw config_error("AngleGrid: step must be positive");
  if (!(start_deg < stop_deg))
    throw config_error("AngleGrid: start must be below stop");
  const double steps = (stop_deg - start_deg) / step_deg;
  if (std::abs(steps - std::llround(steps)) > 1e-9)
    throw config_error("AngleGrid: (stop - start)/step is not an integer");
}

Dictionary::Dictionary(CxMatrix atoms, std::vector<double> grid_deg,
                       double spacing_wavelengths)
    : atoms_(std::move(atoms)), grid_deg_(std::move(grid_deg)),
      spacing_wavelengths_(spacing_wavelengths) {
  ensure_finite(atoms_, "Dictionary atoms");
  for (int n = 0; n < atoms_.cols(); ++n) {
    if (std::abs(atoms_.col(n).norm() - 1.0) > 1e-12)
      throw std::invalid_argument("Dictionary: atom " + std::to_string(n) +
                                  " is not unit norm");
  }
  if (!grid_deg_.empty()) {
    if (static_cast<int>(grid_deg_.size()) != atoms_.cols())
      throw std::invalid_argument("Dictionary: grid length != atom count");
    for (std::size_t i = 1; i < grid_deg_.size(); ++i)
      if (!(grid_deg_[i - 1] < grid_deg_[i]))
        throw std::invalid_argument("Dictionary: grid not strictly increasing");
  }
}

double Dictionary::angle_of(int n) const {
  if (!has_grid())
    throw std::logic_error("Dictionary::angle_of: dictionary has no grid");
  return grid_deg_.at(static_cast<std::size_t>(n));
}

CxVector ula_steering_vector(int element_count, double spacing_wavelengths,
                             double angle_deg) {
  const double sin_theta = std::sin(angle_deg * kDegToRad);
  const double scale = 1.0 / std::sqrt(static_cast<double>(element_count));
  CxVector a(element_count);
  for (int m = 0; m < element_count; ++m) {
    const double phase = 2.0 * kPi * spacing_wavelengths * m * sin_theta;
    a[m] = std::polar(scale, phase);
  }
  return a;
}

Dictionary build_ula_dictionary(int element_count, double spacing_wavelengths,
                                const AngleGrid& grid) {
  if (element_count < 2)
    throw config_error("build_ula_dictionary: need at least 2 elements");
  if (!(spacing_wavelengths > 0.0))
    throw config_error("build_ula_dictionary: spacing must be positive");
  grid.validate();

  const int n_atoms = grid.size();
  CxMatrix atoms(element_count, n_atoms);
  std::vector<double> angles(n_atoms);
  for (int n = 0; n < n_atoms; ++n) {
    angles[n] = grid.angle_deg(n);
    atoms.col(n) = ula_steering_vector(element_count, spacing_wavelengths,
                                       angles[n]);
  }
  return Dictionary(std::move(atoms), std::move(angles), spacing_wavelengths);
}

CoherencePeak coherence_peak(const Dictionary& dict) {
  const int n_atoms = dict.atom_count();
  if (n_atoms < 2)
    throw std::invalid_argument("coherence_peak: need at least 2 atoms");
  const CxMatrix& a = dict.atoms();
  CoherencePeak peak;
  for (int n = 0; n < n_atoms; ++n) {
    for (int m = n + 1; m < n_atoms; ++m) {
      const double c = std::abs(a.col(n).dot(a.col(m)));
      if (c > peak.value) {
        peak.value = c;
        peak.first_atom = n;
        peak.second_atom = m;
      }
    }
  }
  return peak;
}

double mutual_coherence(const Dictionary& dict) {
  return coherence_peak(dict).value;
}

RealVector cross_correlation_row(const Dictionary& dict, const CxVector& x) {
  if (x.size() != dict.element_count())
    throw std::invalid_argument("cross_correlation_row: length mismatch");
  ensure_finite(x, "x");
  return (dict.atoms().adjoint() * x).cwiseAbs();
}

void export_csv(const Dictionary& dict, std::ostream& out) {
  const int m_rows = dict.element_count();
  const int n_cols = dict.atom_count();
  for (int n = 0; n < n_cols; ++n)
    out << (n ? "," : "") << "atom_" << n;
  out << '\n';
  char buf[32];
  for (int m = 0; m < m_rows; ++m) {
    for (int part = 0; part < 2; ++part) {
      for (int n = 0; n < n_cols; ++n) {
        const Complex e = dict.atoms()(m, n);
        std::snprintf(buf, sizeof buf, "%.17g", part ? e.imag() : e.real());
        out << (n ? "," : "") << buf;
      }
      out << '\n';
    }
  }
}

} // namespace sdomp
