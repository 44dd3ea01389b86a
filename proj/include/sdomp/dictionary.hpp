#ifndef SDOMP_DICTIONARY_HPP
#define SDOMP_DICTIONARY_HPP

#include <iosfwd>
#include <vector>

#include "sdomp/linalg.hpp"

namespace sdomp {

/// Uniform angular grid in degrees, endpoint inclusive. (stop - start)/step
/// must be an integer to 1e-9 so the endpoint lands on the grid.
struct AngleGrid {
  double start_deg = 0.0;
  double stop_deg = 30.0;
  double step_deg = 0.2;

  /// Number of grid points, including both endpoints.
  int size() const;
  double angle_deg(int index) const { return start_deg + index * step_deg; }
  /// Index of the grid point closest to the given angle.
  int nearest_index(double angle_deg_value) const;
  /// Throws config_error on a malformed grid.
  void validate() const;
};

/// Redundant M x N dictionary of unit-norm atoms, optionally tagged with
/// the angular grid the atoms were sampled from.
class Dictionary {
public:
  /// Takes ownership of the atom matrix; columns must be unit norm to 1e-12.
  /// grid_deg, when nonempty, must have one strictly increasing entry per
  /// column.
  Dictionary(CxMatrix atoms, std::vector<double> grid_deg,
             double spacing_wavelengths);

  const CxMatrix& atoms() const { return atoms_; }
  int element_count() const { return static_cast<int>(atoms_.rows()); }
  int atom_count() const { return static_cast<int>(atoms_.cols()); }
  double spacing_wavelengths() const { return spacing_wavelengths_; }

  bool has_grid() const { return !grid_deg_.empty(); }
  const std::vector<double>& grid_deg() const { return grid_deg_; }
  /// Angle (degrees) of atom n; requires has_grid().
  double angle_of(int n) const;

private:
  CxMatrix atoms_;
  std::vector<double> grid_deg_;
  double spacing_wavelengths_;
};

/// Builds the dictionary of normalized ULA steering vectors over the grid.
/// Entry m of column n is exp(i*2*pi*spacing*m*sin(theta_n)) / sqrt(M),
/// phase-referenced to element 0 and with theta measured from broadside.
Dictionary build_ula_dictionary(int element_count, double spacing_wavelengths,
                                const AngleGrid& grid);

/// A single unit-norm ULA steering vector for an arbitrary (possibly
/// off-grid) angle, same convention as build_ula_dictionary.
CxVector ula_steering_vector(int element_count, double spacing_wavelengths,
                             double angle_deg);

/// Worst coherence pair: value = |A_n^H A_m| maximized over n != m.
struct CoherencePeak {
  double value = 0.0;
  int first_atom = -1;
  int second_atom = -1;
};

CoherencePeak coherence_peak(const Dictionary& dict);

/// Mutual coherence max_{n != m} |A_n^H A_m|; requires at least two atoms.
double mutual_coherence(const Dictionary& dict);

/// Entry n of the result is |A_n^H x|.
RealVector cross_correlation_row(const Dictionary& dict, const CxVector& x);

/// CSV export, one column per atom: header "atom_0,atom_1,...", then 2M
/// rows interleaving the real and imaginary part of each array element
/// (row 2m = Re of element m, row 2m+1 = Im of element m).
void export_csv(const Dictionary& dict, std::ostream& out);

} // namespace sdomp

#endif
