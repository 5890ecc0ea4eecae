#include "commands.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "numphase/cahill_glauber.hpp"
#include "numphase/io.hpp"
#include "numphase/reconstruct.hpp"
#include "numphase/states.hpp"
#include "numphase/verify.hpp"
#include "numphase/wigner.hpp"

namespace numphase::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<double> parse_numbers(std::string_view args, std::string_view descriptor) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= args.size()) {
    const std::size_t pos = args.find(',', start);
    const std::string_view field =
        args.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    double v = 0.0;
    const char* b = field.data();
    const char* e = field.data() + field.size();
    if (b != e && *b == '+') ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (field.empty() || ec != std::errc() || ptr != e) {
      throw ParseError("bad number '" + std::string(field) + "' in state descriptor '" +
                       std::string(descriptor) + "'");
    }
    out.push_back(v);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for reading");
    buf << f.rdbuf();
  }
  return buf.str();
}

void write_text(const std::string& path, std::ostream& out, const std::string& text) {
  if (path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

Tolerances tolerances(const RunConfig& cfg) {
  Tolerances tol;
  if (cfg.tol) {
    tol.trace = *cfg.tol;
    tol.psd = *cfg.tol;
  }
  return tol;
}

TailPolicy tail_policy(const RunConfig& cfg) { return TailPolicy{1e-10, cfg.allow_tail}; }

void check_config(const RunConfig& cfg) {
  if (cfg.dim != 0 && cfg.dim < 2) throw UsageError("--dim must be at least 2");
  if (cfg.grid_points && cfg.dim != 0 && *cfg.grid_points < 2 * cfg.dim - 1) {
    throw UsageError("--grid must be at least 2*dim-1 = " + std::to_string(2 * cfg.dim - 1));
  }
}

int require_dim(const RunConfig& cfg) {
  if (cfg.dim == 0) throw UsageError("--dim is required here");
  return cfg.dim;
}

PhaseGrid phase_grid(const RunConfig& cfg, Truncation t) {
  return cfg.grid_points ? PhaseGrid(*cfg.grid_points) : PhaseGrid::default_for(t);
}

PolarGrid polar_grid(const RunConfig& cfg, Truncation t) {
  const PolarGrid def = PolarGrid::default_for(t);
  return PolarGrid(cfg.r_max.value_or(def.r_max()), cfg.n_r.value_or(def.radial_size()),
                   cfg.m_gamma.value_or(def.angular_size()));
}

// Density from --state (needs --dim) or from a JSON file given by --in.
DensityMatrix load_density(const RunConfig& cfg, Streams io) {
  if (!cfg.state.empty()) return parse_state_descriptor(cfg.state, Truncation(require_dim(cfg)), tail_policy(cfg));
  if (cfg.in.empty()) throw UsageError("give either --state or --in");
  DensityMatrix rho = io::density_from_json(read_text(cfg.in, io.in), tolerances(cfg));
  if (cfg.dim != 0 && cfg.dim != rho.dim()) {
    throw UsageError("--dim " + std::to_string(cfg.dim) + " does not match input dimension " +
                     std::to_string(rho.dim()));
  }
  return rho;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace

DensityMatrix parse_state_descriptor(std::string_view descriptor, Truncation t,
                                     const TailPolicy& policy) {
  const std::size_t colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("state descriptor '" + std::string(descriptor) + "' lacks ':'");
  }
  const std::string_view kind = descriptor.substr(0, colon);
  const std::vector<double> args = parse_numbers(descriptor.substr(colon + 1), descriptor);
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw ParseError("state descriptor '" + std::string(descriptor) + "' needs " +
                       std::to_string(count) + " argument(s)");
    }
  };
  if (kind == "number") {
    expect(1);
    if (args[0] != std::floor(args[0])) throw ParseError("number state index must be an integer");
    return DensityMatrix::from_state(number_state(t, static_cast<int>(args[0])));
  }
  if (kind == "coherent") {
    expect(2);
    return DensityMatrix::from_state(coherent_state(t, cplx(args[0], args[1]), policy));
  }
  if (kind == "cps") {
    expect(2);
    return DensityMatrix::from_state(
        coherent_phase_state(t, CoherentPhaseParam::from_polar(args[0], args[1]), policy));
  }
  if (kind == "thermal") {
    expect(1);
    return thermal_density(t, args[0], policy);
  }
  throw ParseError("unknown state kind '" + std::string(kind) +
                   "' (expected number, coherent, cps or thermal)");
}

int cmd_state(const RunConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    check_config(cfg);
    if (cfg.state.empty()) throw UsageError("--state is required");
    const DensityMatrix rho = parse_state_descriptor(cfg.state, Truncation(require_dim(cfg)), tail_policy(cfg));
    write_text(cfg.out, io.out, io::density_to_json(rho));
    return kSuccess;
  });
}

int cmd_npw(const RunConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    check_config(cfg);
    const DensityMatrix rho = load_density(cfg, io);
    const NPWignerTable table = npw_from_density(rho, phase_grid(cfg, rho.truncation()));
    std::ostringstream csv;
    io::write_npw_csv(csv, table, cfg.rows);
    write_text(cfg.out, io.out, csv.str());
    return kSuccess;
  });
}

int cmd_reconstruct(const RunConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    check_config(cfg);
    if (cfg.in.empty()) throw UsageError("--in (number-phase Wigner CSV) is required");
    std::istringstream text(read_text(cfg.in, io.in));
    const NPWignerTable table = io::read_npw_csv(text);
    const FourierLadder ladder = ladder_closed_form(table);
    const FourierLadder recursive = ladder_recursive(table);
    const CMatrix assembled = assemble_matrix(ladder);
    const DensityInvariants inv = inspect_density(assembled);

    std::ostringstream report;
    report << "dimension " << table.dim() << "\n";
    report << "phase_grid_points " << table.grid().size() << "\n";
    report << "total_probability " << io::format_double(table.total_probability()) << "\n";
    report << "hermiticity_error " << io::format_double(inv.hermiticity_error) << "\n";
    report << "trace_error " << io::format_double(inv.trace_error) << "\n";
    report << "min_eigenvalue " << io::format_double(inv.min_eigenvalue) << "\n";
    report << "ladder_route_difference "
           << io::format_double((ladder.coeffs() - recursive.coeffs()).cwiseAbs().maxCoeff())
           << "\n";
    if (!cfg.ref.empty()) {
      const DensityMatrix ref = io::density_from_json(read_text(cfg.ref, io.in), tolerances(cfg));
      require_same_truncation(ref.truncation(), table.truncation(), "reference");
      report << "distance_to_reference " << io::format_double(frobenius_distance(assembled, ref.matrix()))
             << "\n";
    }
    if (!cfg.ladder.empty()) write_text(cfg.ladder, io.out, io::ladder_to_json(ladder));

    auto emit_report = [&] {
      if (cfg.report.empty()) {
        io.err << report.str();
      } else {
        write_text(cfg.report, io.out, report.str());
      }
    };
    const DensityMatrix rho = [&] {
      try {
        return assemble_density(ladder, tolerances(cfg));
      } catch (const ValidationError&) {
        emit_report();
        throw;
      }
    }();
    write_text(cfg.out, io.out, io::density_to_json(rho));
    emit_report();
    return kSuccess;
  });
}

int cmd_cg(const RunConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    check_config(cfg);
    const double s = cfg.s.value_or(0.0);
    if (s >= 1.0) {
      throw DomainError(
          "s = 1 is the Glauber-Sudarshan P function, which is not a regular function for general "
          "states; use 'pbridge' with a smooth P function instead");
    }
    const DensityMatrix rho = load_density(cfg, io);
    const CGTable table = w_s_from_density(rho, polar_grid(cfg, rho.truncation()), SParameter(s));
    std::ostringstream csv;
    io::write_cg_csv(csv, table);
    write_text(cfg.out, io.out, csv.str());
    return kSuccess;
  });
}

int cmd_bridge(const RunConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    check_config(cfg);
    BridgePath path;
    if (cfg.path == "direct") {
      path = BridgePath::kDirect;
    } else if (cfg.path == "composed") {
      path = BridgePath::kComposed;
    } else {
      throw UsageError("--path must be 'direct' or 'composed'");
    }
    std::optional<CGTable> table;
    Truncation t(2);
    if (!cfg.state.empty()) {
      t = Truncation(require_dim(cfg));
      const DensityMatrix rho = parse_state_descriptor(cfg.state, t, tail_policy(cfg));
      table = w_s_from_density(rho, polar_grid(cfg, t), SParameter(cfg.s.value_or(0.0)));
    } else {
      if (cfg.in.empty()) throw UsageError("give either --state or --in (CG table CSV)");
      t = Truncation(require_dim(cfg));
      std::istringstream text(read_text(cfg.in, io.in));
      table = io::read_cg_csv(text);
    }
    const NPWignerTable out = npw_from_w_s(*table, phase_grid(cfg, t), t, path);
    std::ostringstream csv;
    io::write_npw_csv(csv, out, cfg.rows);
    write_text(cfg.out, io.out, csv.str());
    return kSuccess;
  });
}

int cmd_pbridge(const RunConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    check_config(cfg);
    const Truncation t(require_dim(cfg));
    std::optional<CGTable> p;
    if (!cfg.state.empty()) {
      const std::string_view desc = cfg.state;
      if (desc.substr(0, 8) != "thermal:") {
        throw UsageError("pbridge --state supports only 'thermal:nbar' (a smooth P function)");
      }
      const std::vector<double> args = parse_numbers(desc.substr(8), desc);
      if (args.size() != 1) throw ParseError("thermal descriptor needs one argument");
      p = thermal_p_function(polar_grid(cfg, t), args[0]);
    } else {
      if (cfg.in.empty()) throw UsageError("give either --state thermal:nbar or --in (P table CSV)");
      std::istringstream text(read_text(cfg.in, io.in));
      p = io::read_cg_csv(text);
    }
    const NPWignerTable out = npw_from_p(*p, phase_grid(cfg, t), t);
    std::ostringstream csv;
    io::write_npw_csv(csv, out, cfg.rows);
    write_text(cfg.out, io.out, csv.str());
    return kSuccess;
  });
}

int cmd_verify(const RunConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    check_config(cfg);
    VerifyOptions opts;
    opts.dim = cfg.dim == 0 ? 16 : cfg.dim;
    opts.seed = cfg.seed;
    opts.inject_corruption = cfg.inject_corruption;
    if (!cfg.in.empty()) {
      opts.extra_state = io::density_from_json(read_text(cfg.in, io.in), tolerances(cfg));
      if (cfg.dim == 0) opts.dim = opts.extra_state->dim();
    }
    const std::vector<CheckResult> results = run_verification(opts);
    write_text(cfg.out, io.out, verification_report_json(results));
    for (const CheckResult& r : results) {
      if (!r.pass) io.err << "FAILED " << r.name << " max_error=" << r.max_error << '\n';
    }
    return all_passed(results) ? kSuccess : kVerificationFailed;
  });
}

int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Number-phase Wigner function toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", cfg.dim, "Fock-space dimension D");
    sub->add_option("--grid", cfg.grid_points, "Phase grid points M (>= 2D-1)");
    sub->add_option("--state", cfg.state, "number:n | coherent:re,im | cps:abs,phi | thermal:nbar");
    sub->add_option("--in", cfg.in, "Input file ('-' for stdin)");
    sub->add_option("--out", cfg.out, "Output file ('-' for stdout)");
    sub->add_option("--tol", cfg.tol, "Trace/positivity tolerance override");
    sub->add_flag("--allow-tail", cfg.allow_tail, "Accept states whose discarded Fock tail exceeds 1e-10");
  };
  auto add_polar = [&](CLI::App* sub) {
    sub->add_option("--s", cfg.s, "Ordering parameter s");
    sub->add_option("--rmax", cfg.r_max, "Polar grid radius");
    sub->add_option("--nr", cfg.n_r, "Radial Gauss-Legendre nodes");
    sub->add_option("--mgamma", cfg.m_gamma, "Angular nodes");
  };

  auto* state = app.add_subcommand("state", "Write a density matrix as JSON");
  add_common(state);
  auto* npw = app.add_subcommand("npw", "Number-phase Wigner table as CSV");
  add_common(npw);
  npw->add_option("--rows", cfg.rows, "Only these Fock rows")->delimiter(',');
  auto* rec = app.add_subcommand("reconstruct", "Density matrix from a number-phase Wigner CSV");
  add_common(rec);
  rec->add_option("--ref", cfg.ref, "Reference density JSON for the distance report");
  rec->add_option("--report", cfg.report, "Report path (default stderr)");
  rec->add_option("--ladder", cfg.ladder, "Write the Fourier ladder dump JSON here");
  auto* cg = app.add_subcommand("cg", "Cahill-Glauber W^(s) table as CSV");
  add_common(cg);
  add_polar(cg);
  auto* bridge = app.add_subcommand("bridge", "Number-phase Wigner table from W^(s)");
  add_common(bridge);
  add_polar(bridge);
  bridge->add_option("--rows", cfg.rows, "Only these Fock rows")->delimiter(',');
  bridge->add_option("--path", cfg.path, "direct | composed");
  auto* pbridge = app.add_subcommand("pbridge", "Number-phase Wigner table from a smooth P function");
  add_common(pbridge);
  add_polar(pbridge);
  pbridge->add_option("--rows", cfg.rows, "Only these Fock rows")->delimiter(',');
  auto* verify = app.add_subcommand("verify", "Run the invariant suite, JSON report");
  add_common(verify);
  verify->add_option("--seed", cfg.seed, "Seed of the random-density corpus");
  verify->add_flag("--inject-corruption", cfg.inject_corruption,
                   "Debug: corrupt one density entry after loading");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  const Streams io{in, out, err};
  if (*state) return cmd_state(cfg, io);
  if (*npw) return cmd_npw(cfg, io);
  if (*rec) return cmd_reconstruct(cfg, io);
  if (*cg) return cmd_cg(cfg, io);
  if (*bridge) return cmd_bridge(cfg, io);
  if (*pbridge) return cmd_pbridge(cfg, io);
  return cmd_verify(cfg, io);
}

}  // namespace numphase::cli
