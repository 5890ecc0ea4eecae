#include "numphase/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "numphase/cahill_glauber.hpp"
#include "numphase/io.hpp"
#include "numphase/reconstruct.hpp"
#include "numphase/states.hpp"
#include "numphase/wigner.hpp"

namespace numphase {

namespace {

constexpr double kPi = std::numbers::pi;
// Every oracle below is evaluated on the same truncated matrix, so small dims are fine.
const TailPolicy kTruncated{1e-10, true};

CheckResult make(std::string name, double err, double tol) {
  return CheckResult{std::move(name), std::isfinite(err) && err <= tol, err, tol};
}

// <alpha|rho|alpha> / pi with the untruncated coherent amplitudes.
double husimi_oracle(const CMatrix& rho, cplx alpha) {
  const int d = static_cast<int>(rho.rows());
  CVector c(d);
  for (int n = 0; n < d; ++n) {
    c(n) = std::exp(-0.5 * std::norm(alpha) - 0.5 * std::lgamma(n + 1.0)) * std::pow(alpha, n);
  }
  return (c.adjoint() * rho * c)(0, 0).real() / kPi;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const Truncation t(options.dim);
  const int d = t.dim();
  const PhaseGrid grid = PhaseGrid::default_for(t);

  std::vector<DensityMatrix> corpus;
  if (options.extra_state) {
    require_same_truncation(options.extra_state->truncation(), t, "verify");
    corpus.push_back(*options.extra_state);
  }
  for (int i = 0; i < options.random_states; ++i) {
    corpus.push_back(random_density(t, options.seed + static_cast<std::uint64_t>(i)));
  }
  corpus.push_back(DensityMatrix::from_state(number_state(t, 0)));
  corpus.push_back(DensityMatrix::from_state(coherent_state(t, cplx(1.0, 0.0), kTruncated)));
  corpus.push_back(thermal_density(t, 0.5, kTruncated));

  // The sources that get transformed; equal to the corpus unless corrupted.
  std::vector<DensityMatrix> sources = corpus;
  if (options.inject_corruption && !sources.empty()) {
    CMatrix m = sources.front().matrix();
    int bj = 0;
    int bk = 0;
    double best = -1.0;
    for (int j = 0; j < d; ++j) {
      for (int k = j; k < d; ++k) {
        if (std::abs(m(j, k)) > best) {
          best = std::abs(m(j, k));
          bj = j;
          bk = k;
        }
      }
    }
    m(bj, bk) = -m(bj, bk);
    if (bj != bk) m(bk, bj) = -m(bk, bj);
    sources.front() = DensityMatrix::unchecked(std::move(m));
  }

  std::vector<CheckResult> out;

  double marg_err = 0.0;
  double norm_err = 0.0;
  double round_trip = 0.0;
  double element_err = 0.0;
  double route_err = 0.0;
  double duality_err = 0.0;
  const ClassicalSymbol symbol = ClassicalSymbol::from_function(
      grid, t, [](double phi, int n) { return cplx(n * std::cos(phi), std::sin(2.0 * phi) + 0.5 * n); });
  const CMatrix f_hat = weyl_quantize(symbol).matrix();
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const CMatrix& ref = corpus[idx].matrix();
    const NPWignerTable table = npw_from_density(sources[idx], grid);
    const CMatrix& src = sources[idx].matrix();

    const RVector pn = marginal_number(table);
    const RVector pphi = marginal_phase(table);
    for (int n = 0; n < d; ++n) marg_err = std::max(marg_err, std::abs(pn(n) - src(n, n).real()));
    for (int j = 0; j < grid.size(); ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < d; ++k) {
        for (int n = 0; n < d; ++n) acc += src(k, n) * std::polar(1.0, (n - k) * grid.node(j));
      }
      marg_err = std::max(marg_err, std::abs(pphi(j) - acc.real() / (2.0 * kPi)));
    }
    norm_err = std::max(norm_err, std::abs(table.total_probability() - 1.0));

    const FourierLadder closed = ladder_closed_form(table);
    const FourierLadder recursive = ladder_recursive(table);
    for (int m = 1; m < d; ++m) {
      for (int n = 0; n + m < d; ++n) {
        element_err = std::max(element_err, std::abs(closed.coeff(m, n) - src(n, n + m)));
        route_err = std::max(route_err, std::abs(closed.coeff(m, n) - recursive.coeff(m, n)));
      }
    }
    round_trip = std::max(round_trip, frobenius_distance(assemble_matrix(closed), ref));

    const cplx lhs = (src * f_hat).trace();
    duality_err = std::max(duality_err, std::abs(lhs - expectation_symbol(table, symbol)));
  }
  out.push_back(make("marginals", marg_err, 1e-12));
  out.push_back(make("normalization", norm_err, 1e-10));
  out.push_back(make("uniqueness_round_trip", round_trip, 1e-10));
  out.push_back(make("ladder_matrix_elements", element_err, 1e-12));
  out.push_back(make("ladder_route_equivalence", route_err, 1e-12));
  out.push_back(make("weyl_duality", duality_err, 1e-10));

  // Cahill-Glauber checks on the physical test states.
  const PolarGrid polar = PolarGrid::default_for(t);
  const DensityMatrix vacuum = DensityMatrix::from_state(number_state(t, 0));
  const DensityMatrix coherent = DensityMatrix::from_state(coherent_state(t, cplx(1.0, 0.0), kTruncated));
  const DensityMatrix thermal = thermal_density(t, 0.5, kTruncated);

  double husimi_err = 0.0;
  const std::array<const DensityMatrix*, 3> husimi_states{&coherent, &thermal, &sources.back()};
  for (const DensityMatrix* rho : husimi_states) {
    const CGTable q = w_s_from_density(*rho, polar, SParameter(-1.0));
    for (int i = 0; i < polar.radial_size(); i += 7) {
      for (int g = 0; g < polar.angular_size(); ++g) {
        husimi_err = std::max(husimi_err,
                              std::abs(q(i, g) - husimi_oracle(rho->matrix(), polar.point(i, g))));
      }
    }
  }
  out.push_back(make("husimi_identity", husimi_err, 1e-10));

  const cplx w0 = (vacuum.matrix() * t_matrix(t, 0.0, 0.0)).trace() / kPi;
  out.push_back(make("wigner_vacuum_origin", std::abs(w0 - 2.0 / kPi), 1e-10));

  double inverse_err = 0.0;
  for (const DensityMatrix* rho : {&coherent, &thermal}) {
    const CGTable w = w_s_from_density(*rho, polar, SParameter(0.0));
    inverse_err = std::max(inverse_err, frobenius_distance(density_from_w_s_matrix(w, t), rho->matrix()));
  }
  out.push_back(make("cahill_glauber_inverse", inverse_err, 1e-6));

  double bridge_err = 0.0;
  for (const DensityMatrix* rho : {&coherent, &thermal}) {
    const CGTable w = w_s_from_density(*rho, polar, SParameter(0.0));
    const RMatrix direct = npw_from_w_s(w, grid, t, BridgePath::kDirect).values();
    const RMatrix composed = npw_from_w_s(w, grid, t, BridgePath::kComposed).values();
    bridge_err = std::max(bridge_err, (direct - composed).cwiseAbs().maxCoeff());
  }
  out.push_back(make("bridge_path_agreement", bridge_err, 1e-6));

  const NPWignerTable from_p = npw_from_p(thermal_p_function(polar, 0.5), grid, t);
  const double expected_row0 = (1.0 / 1.5) / (2.0 * kPi);
  out.push_back(make("p_bridge_thermal", (from_p.values().col(0).array() - expected_row0).abs().maxCoeff(), 1e-5));

  // Coherent phase state at |zeta| = 0.5: the n = 0 row stays positive.
  const NPWignerTable cps =
      npw_from_density(DensityMatrix::from_state(coherent_phase_state(t, CoherentPhaseParam(0.5), kTruncated)), grid);
  const double min_row0 = cps.values().col(0).minCoeff();
  out.push_back(CheckResult{"cps_row0_positive", min_row0 > 0.0, std::max(0.0, -min_row0), 0.0});

  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

std::string verification_report_json(const std::vector<CheckResult>& results) {
  std::string out = "{";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const CheckResult& r = results[i];
    if (i) out += ',';
    out += "\"" + r.name + "\":{\"pass\":" + (r.pass ? "true" : "false") +
           ",\"max_error\":" + io::format_double(r.max_error) +
           ",\"tolerance\":" + io::format_double(r.tolerance) + "}";
  }
  return out + "}\n";
}

}  // namespace numphase
