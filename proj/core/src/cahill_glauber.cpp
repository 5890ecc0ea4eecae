#include "numphase/cahill_glauber.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "numphase/laguerre.hpp"
#include "numphase/quadrature.hpp"

namespace numphase {

namespace {

constexpr double kPi = std::numbers::pi;

void require_kernel_parameter(double s_eff) {
  if (!(s_eff > -1.0) || s_eff > 1.0) {
    std::ostringstream os;
    os << "T-kernel parameter " << s_eff << " outside (-1, 1]";
    throw DomainError(os.str());
  }
}

// Radial part of <j|T^(-s_eff)(r e^{i gamma})|k> for j <= k, stored at (j, k);
// the full element is this times e^{-i (k - j) gamma}. Factors are combined
// in log space and exponentiated once.
RMatrix radial_table(int d, double r, double s_eff) {
  RMatrix out = RMatrix::Zero(d, d);
  const double r2 = r * r;
  const double log_r = r > 0.0 ? std::log(r) : 0.0;
  if (s_eff == 1.0) {
    // Husimi kernel |alpha><alpha|.
    for (int j = 0; j < d; ++j) {
      for (int k = j; k < d; ++k) {
        if (r == 0.0 && j + k > 0) continue;
        const double lm = -r2 + (j + k) * log_r - 0.5 * (std::lgamma(j + 1.0) + std::lgamma(k + 1.0));
        out(j, k) = std::exp(lm);
      }
    }
    return out;
  }
  const double sp1 = 1.0 + s_eff;
  const double x = 4.0 * r2 / (1.0 - s_eff * s_eff);
  const double log_ratio = std::log(2.0 / sp1);
  const double log_q = std::log((1.0 - s_eff) / sp1);  // |(s-1)/(s+1)|
  const double gauss = -2.0 * r2 / sp1;
  std::vector<double> lag(d);
  for (int a = 0; a < d; ++a) {
    if (r == 0.0 && a > 0) break;
    const int len = d - a;
    laguerre_assoc_sequence(a, x, std::span<double>(lag.data(), len));
    for (int j = 0; j < len; ++j) {
      const int k = j + a;
      const double lm = 0.5 * (std::lgamma(j + 1.0) - std::lgamma(k + 1.0)) +
                        (a + 1) * log_ratio + j * log_q + a * log_r + gauss;
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      out(j, k) = sign * std::exp(lm) * lag[j];
    }
  }
  return out;
}

// Ahat_a(r_i) = w_gamma sum_q f(r_i, gamma_q) e^{-i a gamma_q}, |a| <= max_mode,
// stored at (i, a + max_mode).
CMatrix angular_modes(const CMatrix& values, const PolarGrid& grid, int max_mode) {
  const int n_r = grid.radial_size();
  const int m_gamma = grid.angular_size();
  CMatrix modes(n_r, 2 * max_mode + 1);
  std::vector<cplx> phase(m_gamma);
  for (int a = -max_mode; a <= max_mode; ++a) {
    for (int q = 0; q < m_gamma; ++q) phase[q] = std::polar(grid.angular_weight(), -a * grid.angle(q));
    for (int i = 0; i < n_r; ++i) {
      cplx acc = 0.0;
      for (int q = 0; q < m_gamma; ++q) acc += values(i, q) * phase[q];
      modes(i, a + max_mode) = acc;
    }
  }
  return modes;
}

// rho_W(phi_j, n) = Re sum_k e^{i (k - n) phi_j} sum_i w_i K_{n,k}(r_i) Ahat_{k-n}(r_i),
// where w_i are the d|alpha| weights and Ahat the angular modes of Re f.
template <class Kernel>
NPWignerTable assemble_bridge(const CGTable& table, const PhaseGrid& phase_grid, Truncation t,
                              Kernel&& kernel) {
  phase_grid.require_compatible(t);
  const int d = t.dim();
  const PolarGrid& grid = table.grid();
  const CMatrix real_values = table.values().real().cast<cplx>();
  const CMatrix modes = angular_modes(real_values, grid, d - 1);

  CMatrix c = CMatrix::Zero(d, d);  // (n, k)
  for (int i = 0; i < grid.radial_size(); ++i) {
    const RMatrix k_table = kernel(grid.radius(i));
    const double w = grid.radial_weight(i);
    for (int n = 0; n < d; ++n) {
      for (int k = 0; k < d; ++k) c(n, k) += w * k_table(n, k) * modes(i, k - n + d - 1);
    }
  }

  RMatrix values(phase_grid.size(), d);
  for (int j = 0; j < phase_grid.size(); ++j) {
    const double phi = phase_grid.node(j);
    for (int n = 0; n < d; ++n) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k) acc += (std::polar(1.0, (k - n) * phi) * c(n, k)).real();
      values(j, n) = acc;
    }
  }
  return NPWignerTable(phase_grid, t, std::move(values));
}

// Number-phase kernel of W^(s):
//   sqrt(n!) (s-1)^n / (2^n (s+1) pi) |alpha|^{1-n} e^{-2|alpha|^2/(s+1)}
//     (2|alpha|/(s+1))^k / sqrt(k!) L_n^{k-n}(4|alpha|^2 / (1 - s^2)),
// integrated against d|alpha| dgamma. For k < n the Laguerre polynomial of
// negative order is rewritten as (-x)^{n-k} k!/n! L_k^{(n-k)}(x).
RMatrix number_phase_kernel(int d, double r, double s) {
  RMatrix out = RMatrix::Zero(d, d);
  if (r == 0.0) return out;
  const double sp1 = 1.0 + s;
  const double x = 4.0 * r * r / (1.0 - s * s);
  const double log_r = std::log(r);
  const double log_x = std::log(x);
  const double log_one_minus_s = std::log(1.0 - s);
  const double base = -std::log(sp1) - std::log(kPi) - 2.0 * r * r / sp1;
  std::vector<double> lag(d);
  for (int a = 0; a < d; ++a) {
    const int len = d - a;
    laguerre_assoc_sequence(a, x, std::span<double>(lag.data(), len));
    for (int low = 0; low < len; ++low) {
      const int high = low + a;
      // k >= n branch: n = low, k = high, Laguerre L_low^{(a)}.
      {
        const int n = low;
        const int k = high;
        const double lm = 0.5 * std::lgamma(n + 1.0) + n * log_one_minus_s - n * std::log(2.0) +
                          base + (1 - n) * log_r + k * (std::log(2.0) + log_r - std::log(sp1)) -
                          0.5 * std::lgamma(k + 1.0);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (s-1)^n
        out(n, k) = sign * std::exp(lm) * lag[low];
      }
      if (a == 0) continue;
      // k < n branch: n = high, k = low.
      {
        const int n = high;
        const int k = low;
        const int m = n - k;
        const double lm = 0.5 * std::lgamma(n + 1.0) + n * log_one_minus_s - n * std::log(2.0) +
                          base + (1 - n) * log_r + k * (std::log(2.0) + log_r - std::log(sp1)) -
                          0.5 * std::lgamma(k + 1.0) + m * log_x + std::lgamma(k + 1.0) -
                          std::lgamma(n + 1.0);
        const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;  // (s-1)^n (-1)^m
        out(n, k) = sign * std::exp(lm) * lag[low];
      }
    }
  }
  return out;
}

}  // namespace

SParameter::SParameter(double s) : s_(s) {
  if (!(s >= -1.0 && s <= 1.0)) {
    std::ostringstream os;
    os << "ordering parameter s = " << s << " outside [-1, 1]";
    throw DomainError(os.str());
  }
}

PolarGrid::PolarGrid(double r_max, int n_r, int m_gamma) : r_max_(r_max), m_gamma_(m_gamma) {
  if (!(r_max > 0.0) || n_r < 1 || m_gamma < 1) {
    throw DomainError("polar grid needs r_max > 0 and at least one radial and angular node");
  }
  QuadratureRule rule = gauss_legendre(n_r, 0.0, r_max);
  radii_ = std::move(rule.nodes);
  radial_weights_ = std::move(rule.weights);
  double gaussian = 0.0;
  for (int i = 0; i < n_r; ++i) {
    gaussian += radial_weights_[i] * radii_[i] * 2.0 * std::exp(-radii_[i] * radii_[i]);
  }
  if (std::abs(gaussian - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "polar grid (r_max=" << r_max << ", n_r=" << n_r
       << ") integrates the unit Gaussian to " << gaussian;
    throw QuadratureError(os.str());
  }
}

PolarGrid PolarGrid::default_for(Truncation t) {
  int m = 1;
  while (m < 4 * t.dim()) m *= 2;
  return PolarGrid(std::max(1.5 * std::sqrt(static_cast<double>(t.dim())), 6.0), 200, m);
}

double PolarGrid::angle(int q) const { return -kPi + 2.0 * kPi * q / m_gamma_; }

double PolarGrid::angular_weight() const { return 2.0 * kPi / m_gamma_; }

CGTable::CGTable(PolarGrid grid, SParameter s, CMatrix values)
    : grid_(std::move(grid)), s_(s), values_(std::move(values)) {
  if (values_.rows() != grid_.radial_size() || values_.cols() != grid_.angular_size()) {
    throw ValidationError("CGTable: values must be n_r x m_gamma");
  }
  if (!values_.allFinite()) throw ValidationError("CGTable: non-finite value");
}

double CGTable::normalization() const {
  double acc = 0.0;
  for (int i = 0; i < grid_.radial_size(); ++i) {
    acc += grid_.area_weight(i) * values_.row(i).real().sum();
  }
  return acc;
}

double CGTable::max_imag() const { return values_.imag().cwiseAbs().maxCoeff(); }

cplx t_matrix_element(int j, int k, cplx alpha, double s_eff) {
  require_kernel_parameter(s_eff);
  if (j < 0 || k < 0) throw DomainError("t_matrix_element: negative Fock index");
  if (j > k) return std::conj(t_matrix_element(k, j, alpha, s_eff));
  const double r = std::abs(alpha);
  const int a = k - j;
  if (r == 0.0 && a > 0) return 0.0;
  const double log_r = r > 0.0 ? std::log(r) : 0.0;
  double radial = 0.0;
  if (s_eff == 1.0) {
    if (r == 0.0 && j > 0) return 0.0;
    radial = std::exp(-r * r + (j + k) * log_r -
                      0.5 * (std::lgamma(j + 1.0) + std::lgamma(k + 1.0)));
  } else {
    const double sp1 = 1.0 + s_eff;
    const double x = 4.0 * r * r / (1.0 - s_eff * s_eff);
    const double lm = 0.5 * (std::lgamma(j + 1.0) - std::lgamma(k + 1.0)) +
                      (a + 1) * std::log(2.0 / sp1) + j * std::log((1.0 - s_eff) / sp1) +
                      a * log_r - 2.0 * r * r / sp1;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    radial = sign * std::exp(lm) * laguerre_assoc(j, a, x);
  }
  return std::polar(radial, -a * std::arg(alpha));
}

CMatrix t_matrix(Truncation t, cplx alpha, double s_eff) {
  require_kernel_parameter(s_eff);
  const int d = t.dim();
  const RMatrix radial = radial_table(d, std::abs(alpha), s_eff);
  const double gamma = std::arg(alpha);
  CMatrix out(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k) {
      const cplx v = std::polar(radial(j, k), -(k - j) * gamma);
      out(j, k) = v;
      out(k, j) = std::conj(v);
    }
  }
  return out;
}

CGTable w_s_from_density(const DensityMatrix& rho, const PolarGrid& grid, SParameter s) {
  if (s.value() >= 1.0) {
    throw DomainError(
        "s = 1 (Glauber-Sudarshan P) is a distribution in general; sample a smooth P "
        "function and use npw_from_p instead");
  }
  const int d = rho.dim();
  const double s_eff = -s.value();
  const CMatrix& r = rho.matrix();
  CMatrix values(grid.radial_size(), grid.angular_size());
  CVector lower(d);  // sum_j R(j, j+a) rho(j+a, j)
  CVector upper(d);  // sum_j R(j, j+a) rho(j, j+a)
  for (int i = 0; i < grid.radial_size(); ++i) {
    const RMatrix radial = radial_table(d, grid.radius(i), s_eff);
    for (int a = 0; a < d; ++a) {
      cplx lo = 0.0;
      cplx up = 0.0;
      for (int j = 0; j + a < d; ++j) {
        lo += radial(j, j + a) * r(j + a, j);
        up += radial(j, j + a) * r(j, j + a);
      }
      lower(a) = lo;
      upper(a) = up;
    }
    for (int q = 0; q < grid.angular_size(); ++q) {
      const double gamma = grid.angle(q);
      cplx acc = lower(0);
      for (int a = 1; a < d; ++a) {
        const cplx e = std::polar(1.0, a * gamma);
        acc += lower(a) * std::conj(e) + upper(a) * e;
      }
      values(i, q) = acc / kPi;
    }
  }
  return CGTable(grid, s, std::move(values));
}

CMatrix density_from_w_s_matrix(const CGTable& table, Truncation t) {
  const double s = table.s();
  if (!(s > -1.0)) {
    throw DomainError("inverse Cahill-Glauber map needs s > -1 (the T^(1) kernel diverges)");
  }
  const int d = t.dim();
  const PolarGrid& grid = table.grid();
  const CMatrix modes = angular_modes(table.values(), grid, d - 1);
  CMatrix rho = CMatrix::Zero(d, d);
  for (int i = 0; i < grid.radial_size(); ++i) {
    const RMatrix radial = radial_table(d, grid.radius(i), s);
    const double w = grid.radial_weight(i) * grid.radius(i);
    for (int j = 0; j < d; ++j) {
      for (int k = j; k < d; ++k) {
        const int a = k - j;
        // T_jk = R e^{-i a gamma}, T_kj = R e^{+i a gamma}
        rho(j, k) += w * radial(j, k) * modes(i, a + d - 1);
        if (a > 0) rho(k, j) += w * radial(j, k) * modes(i, -a + d - 1);
      }
    }
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double trace_error = std::abs(rho.trace().real() - 1.0);
  if (!(trace_error <= 1e-4)) {
    std::ostringstream os;
    os << "inverse Cahill-Glauber quadrature recovers trace " << rho.trace().real()
       << " (grid r_max=" << grid.r_max() << ", n_r=" << grid.radial_size()
       << ", m_gamma=" << grid.angular_size() << ")";
    if (s < 0.0) {
      // Level n of W^(s) is damped by ((1+s)/(1-s))^n, so inversion amplifies sample noise by its inverse.
      os << "; inverting s=" << s << " amplifies level " << t.dim() - 1 << " by "
         << std::pow((1.0 - s) / (1.0 + s), t.dim() - 1) << ", beyond double precision: lower the dimension";
    } else {
      os << "; widen or refine the grid";
    }
    throw QuadratureError(os.str());
  }
  return rho;
}

DensityMatrix density_from_w_s(const CGTable& table, Truncation t, const Tolerances& tol) {
  return DensityMatrix::from_matrix(density_from_w_s_matrix(table, t), tol);
}

NPWignerTable npw_from_w_s(const CGTable& table, const PhaseGrid& phase_grid, Truncation t,
                           BridgePath path) {
  const double s = table.s();
  if (!(s > -1.0 && s < 1.0)) {
    throw DomainError("number-phase bridge from W^(s) needs -1 < s < 1");
  }
  if (path == BridgePath::kComposed) {
    return npw_from_density(DensityMatrix::unchecked(density_from_w_s_matrix(table, t)),
                            phase_grid);
  }
  const int d = t.dim();
  return assemble_bridge(table, phase_grid, t,
                         [d, s](double r) { return number_phase_kernel(d, r, s); });
}

NPWignerTable npw_from_p(const CGTable& p_values, const PhaseGrid& phase_grid, Truncation t) {
  const double norm = p_values.normalization();
  if (std::abs(norm - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "P function integrates to " << norm << " on the grid (expected 1 within 1e-6)";
    throw DomainError(os.str());
  }
  const int d = t.dim();
  // (1 / (2 pi sqrt(n! k!))) |alpha|^{n+k+1} e^{-|alpha|^2} against d|alpha| dgamma.
  auto kernel = [d](double r) {
    RMatrix out = RMatrix::Zero(d, d);
    if (r == 0.0) return out;
    const double log_r = std::log(r);
    for (int n = 0; n < d; ++n) {
      for (int k = 0; k < d; ++k) {
        const double lm = (n + k + 1) * log_r - r * r - std::log(2.0 * kPi) -
                          0.5 * (std::lgamma(n + 1.0) + std::lgamma(k + 1.0));
        out(n, k) = std::exp(lm);
      }
    }
    return out;
  };
  return assemble_bridge(p_values, phase_grid, t, kernel);
}

CGTable thermal_p_function(const PolarGrid& grid, double nbar) {
  if (!(nbar > 0.0)) throw DomainError("thermal P function needs nbar > 0");
  CMatrix values(grid.radial_size(), grid.angular_size());
  for (int i = 0; i < grid.radial_size(); ++i) {
    const double r = grid.radius(i);
    values.row(i).setConstant(std::exp(-r * r / nbar) / (kPi * nbar));
  }
  return CGTable(grid, SParameter(1.0), std::move(values));
}

RVector photon_distribution_from_wigner(const CGTable& wigner, Truncation t) {
  if (wigner.s() != 0.0) throw DomainError("photon distribution needs a Wigner (s = 0) table");
  const int d = t.dim();
  const PolarGrid& grid = wigner.grid();
  RVector p = RVector::Zero(d);
  std::vector<double> lag(d);
  for (int i = 0; i < grid.radial_size(); ++i) {
    const double r = grid.radius(i);
    // angular integral of W at this radius
    const double ring = grid.angular_weight() * wigner.values().row(i).real().sum();
    laguerre_assoc_sequence(0, 4.0 * r * r, lag);
    const double w = grid.radial_weight(i) * r * ring * 2.0 * std::exp(-2.0 * r * r);
    for (int n = 0; n < d; ++n) p(n) += w * ((n % 2 == 0) ? 1.0 : -1.0) * lag[n];
  }
  return p;
}

}  // namespace numphase
