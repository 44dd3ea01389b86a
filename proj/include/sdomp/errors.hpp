#ifndef SDOMP_ERRORS_HPP
#define SDOMP_ERRORS_HPP

#include <stdexcept>

namespace sdomp {

/// A caller-side numerical contract failed (e.g. a matrix that must be
/// Hermitian is not, within tolerance).
class contract_violation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Selected atoms (or an explicit basis) are numerically rank deficient:
/// Gram condition number above 1e12.
class degenerate_basis_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search would exceed its enumeration budget.
class capacity_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration (file or values).
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace sdomp

#endif
