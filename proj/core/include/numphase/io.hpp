#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "numphase/cahill_glauber.hpp"
#include "numphase/fock.hpp"
#include "numphase/phase_ops.hpp"
#include "numphase/reconstruct.hpp"
#include "numphase/wigner.hpp"

// Text formats. Floats are written with 17 significant digits and a '.'
// decimal point regardless of locale; readers validate on load.
namespace numphase::io {

std::string format_double(double x);
// JSON array of numbers, each via format_double.
std::string number_array(const std::vector<double>& xs);

// {"dim": D, "re": [[...]], "im": [[...]]}, row-major.
std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(std::string_view text, const Tolerances& tol = {});
// Parses without checking density invariants (shape and finiteness only).
CMatrix matrix_from_json(std::string_view text);

// {"m_max": M, "coef_re": [...], "coef_im": [...]}, m = -M..M ascending.
std::string fourier_symbol_to_json(const FourierSymbol& f);
FourierSymbol fourier_symbol_from_json(std::string_view text);

// {"r_max": ..., "n_r": ..., "m_gamma": ...}
std::string polar_grid_to_json(const PolarGrid& grid);
PolarGrid polar_grid_from_json(std::string_view text);

// {"dim": D, "d": [...], "m": [...], "n": [...], "re": [...], "im": [...]}
std::string ladder_to_json(const FourierLadder& ladder);

// Header "phi,n,rho_w"; rows j-major, n-minor. A non-empty `rows` keeps only
// those Fock indices.
void write_npw_csv(std::ostream& out, const NPWignerTable& table, std::span<const int> rows = {});
// Requires a complete table on a uniform grid starting at -pi.
NPWignerTable read_npw_csv(std::istream& in);

// Header "abs_alpha,gamma,s,re,im"; rows radius-major, angle-minor.
void write_cg_csv(std::ostream& out, const CGTable& table);
// Rebuilds the Gauss-Legendre grid from the radial nodes and checks it.
CGTable read_cg_csv(std::istream& in);

}  // namespace numphase::io
