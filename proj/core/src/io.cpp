#include "numphase/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "numphase/quadrature.hpp"

namespace numphase::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("JSON field '") + key + "' missing");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("JSON field '") + key + "': " + e.what());
  }
}

double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

int parse_int(std::string_view field, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad integer '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(',', start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Reads data lines after checking the header; strips '\r'.
std::vector<std::string> read_lines(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw ParseError("unexpected CSV header '" + line + "' (expected '" + std::string(header) + "')");
  }
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string number_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out + "]";
}

std::string density_to_json(const DensityMatrix& rho) {
  const int d = rho.dim();
  auto matrix_field = [&](auto part) {
    std::string out = "[";
    for (int j = 0; j < d; ++j) {
      out += j ? ",[" : "[";
      for (int k = 0; k < d; ++k) {
        if (k) out += ',';
        out += format_double(part(rho(j, k)));
      }
      out += ']';
    }
    return out + "]";
  };
  return "{\"dim\":" + std::to_string(d) +
         ",\"re\":" + matrix_field([](cplx z) { return z.real(); }) +
         ",\"im\":" + matrix_field([](cplx z) { return z.imag(); }) + "}\n";
}

CMatrix matrix_from_json(std::string_view text) {
  const json j = parse_json(text);
  const int d = get_field<int>(j, "dim");
  if (d < 1) throw ParseError("density JSON: dim must be positive");
  const auto re = get_field<std::vector<std::vector<double>>>(j, "re");
  const auto im = get_field<std::vector<std::vector<double>>>(j, "im");
  if (re.size() != static_cast<std::size_t>(d) || im.size() != static_cast<std::size_t>(d)) {
    throw ParseError("density JSON: expected " + std::to_string(d) + " rows");
  }
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    if (re[r].size() != static_cast<std::size_t>(d) || im[r].size() != static_cast<std::size_t>(d)) {
      throw ParseError("density JSON: row " + std::to_string(r) + " has wrong length");
    }
    for (int c = 0; c < d; ++c) m(r, c) = cplx(re[r][c], im[r][c]);
  }
  if (!m.allFinite()) throw ParseError("density JSON: non-finite entry");
  return m;
}

DensityMatrix density_from_json(std::string_view text, const Tolerances& tol) {
  return DensityMatrix::from_matrix(matrix_from_json(text), tol);
}

std::string fourier_symbol_to_json(const FourierSymbol& f) {
  std::vector<double> re;
  std::vector<double> im;
  for (const cplx& c : f.coefficients()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return "{\"m_max\":" + std::to_string(f.m_max()) + ",\"coef_re\":" + number_array(re) +
         ",\"coef_im\":" + number_array(im) + "}\n";
}

FourierSymbol fourier_symbol_from_json(std::string_view text) {
  const json j = parse_json(text);
  const int m_max = get_field<int>(j, "m_max");
  const auto re = get_field<std::vector<double>>(j, "coef_re");
  const auto im = get_field<std::vector<double>>(j, "coef_im");
  if (re.size() != im.size()) throw ParseError("FourierSymbol JSON: coef_re/coef_im length differ");
  std::vector<cplx> coef(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) coef[i] = cplx(re[i], im[i]);
  try {
    return FourierSymbol(m_max, std::move(coef));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string polar_grid_to_json(const PolarGrid& grid) {
  return "{\"r_max\":" + format_double(grid.r_max()) +
         ",\"n_r\":" + std::to_string(grid.radial_size()) +
         ",\"m_gamma\":" + std::to_string(grid.angular_size()) + "}\n";
}

PolarGrid polar_grid_from_json(std::string_view text) {
  const json j = parse_json(text);
  return PolarGrid(get_field<double>(j, "r_max"), get_field<int>(j, "n_r"),
                   get_field<int>(j, "m_gamma"));
}

std::string ladder_to_json(const FourierLadder& ladder) {
  const int d = ladder.dim();
  std::vector<double> diag(d);
  for (int n = 0; n < d; ++n) diag[n] = ladder.diag(n);
  std::vector<double> re;
  std::vector<double> im;
  std::string ms = "[";
  std::string ns = "[";
  for (int m = 1; m < d; ++m) {
    for (int n = 0; n + m < d; ++n) {
      const cplx v = ladder.coeff(m, n);
      if (!re.empty()) {
        ms += ',';
        ns += ',';
      }
      ms += std::to_string(m);
      ns += std::to_string(n);
      re.push_back(v.real());
      im.push_back(v.imag());
    }
  }
  return "{\"dim\":" + std::to_string(d) + ",\"d\":" + number_array(diag) + ",\"m\":" + ms +
         "],\"n\":" + ns + "],\"re\":" + number_array(re) + ",\"im\":" + number_array(im) +
         "}\n";
}

void write_npw_csv(std::ostream& out, const NPWignerTable& table, std::span<const int> rows) {
  const int d = table.dim();
  std::vector<bool> keep(d, rows.empty());
  for (int n : rows) {
    if (n < 0 || n >= d) throw DomainError("requested row " + std::to_string(n) + " outside table");
    keep[n] = true;
  }
  out << "phi,n,rho_w\n";
  for (int j = 0; j < table.grid().size(); ++j) {
    const std::string phi = format_double(table.grid().node(j));
    for (int n = 0; n < d; ++n) {
      if (!keep[n]) continue;
      out << phi << ',' << n << ',' << format_double(table(j, n)) << '\n';
    }
  }
}

NPWignerTable read_npw_csv(std::istream& in) {
  const std::vector<std::string> lines = read_lines(in, "phi,n,rho_w");
  if (lines.empty()) throw ParseError("NPW CSV has no data rows");
  std::vector<double> phis;
  std::vector<int> ns;
  std::vector<double> vals;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_commas(lines[i]);
    if (fields.size() != 3) {
      throw ParseError("line " + std::to_string(i + 2) + ": expected 3 fields");
    }
    phis.push_back(parse_double(fields[0], i + 2));
    ns.push_back(parse_int(fields[1], i + 2));
    vals.push_back(parse_double(fields[2], i + 2));
  }
  int d = 0;
  while (static_cast<std::size_t>(d) < ns.size() && ns[d] == d) ++d;
  if (d == 0 || lines.size() % d != 0) {
    throw ParseError("NPW CSV is truncated or not in (phi-major, n-minor) order");
  }
  const int m_points = static_cast<int>(lines.size()) / d;
  const PhaseGrid grid(m_points);
  RMatrix values(m_points, d);
  for (int j = 0; j < m_points; ++j) {
    for (int n = 0; n < d; ++n) {
      const std::size_t idx = static_cast<std::size_t>(j) * d + n;
      if (ns[idx] != n) {
        throw ParseError("line " + std::to_string(idx + 2) + ": expected n = " + std::to_string(n));
      }
      if (std::abs(phis[idx] - grid.node(j)) > 1e-12) {
        throw ParseError("line " + std::to_string(idx + 2) + ": phi does not lie on a uniform " +
                         std::to_string(m_points) + "-point grid");
      }
      values(j, n) = vals[idx];
    }
  }
  return NPWignerTable(grid, Truncation(d), std::move(values));
}

void write_cg_csv(std::ostream& out, const CGTable& table) {
  const PolarGrid& g = table.grid();
  const std::string s = format_double(table.s());
  out << "abs_alpha,gamma,s,re,im\n";
  for (int i = 0; i < g.radial_size(); ++i) {
    const std::string r = format_double(g.radius(i));
    for (int q = 0; q < g.angular_size(); ++q) {
      const cplx v = table(i, q);
      out << r << ',' << format_double(g.angle(q)) << ',' << s << ',' << format_double(v.real())
          << ',' << format_double(v.imag()) << '\n';
    }
  }
}

CGTable read_cg_csv(std::istream& in) {
  const std::vector<std::string> lines = read_lines(in, "abs_alpha,gamma,s,re,im");
  if (lines.empty()) throw ParseError("CG CSV has no data rows");
  std::vector<double> radii;
  std::vector<double> gammas;
  std::vector<cplx> vals;
  double s = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_commas(lines[i]);
    if (fields.size() != 5) throw ParseError("line " + std::to_string(i + 2) + ": expected 5 fields");
    radii.push_back(parse_double(fields[0], i + 2));
    gammas.push_back(parse_double(fields[1], i + 2));
    const double row_s = parse_double(fields[2], i + 2);
    if (i == 0) {
      s = row_s;
    } else if (row_s != s) {
      throw ParseError("line " + std::to_string(i + 2) + ": s changes within the table");
    }
    vals.emplace_back(parse_double(fields[3], i + 2), parse_double(fields[4], i + 2));
  }
  int m_gamma = 0;
  while (static_cast<std::size_t>(m_gamma) < radii.size() && radii[m_gamma] == radii[0]) ++m_gamma;
  if (lines.size() % m_gamma != 0) throw ParseError("CG CSV is truncated");
  const int n_r = static_cast<int>(lines.size()) / m_gamma;
  // Least-squares fit of the radii against the Gauss-Legendre nodes on [0, 1].
  const QuadratureRule unit = gauss_legendre(n_r, 0.0, 1.0);
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n_r; ++i) {
    num += radii[static_cast<std::size_t>(i) * m_gamma] * unit.nodes[i];
    den += unit.nodes[i] * unit.nodes[i];
  }
  const double r_max = num / den;
  PolarGrid grid(r_max, n_r, m_gamma);
  CMatrix values(n_r, m_gamma);
  for (int i = 0; i < n_r; ++i) {
    for (int q = 0; q < m_gamma; ++q) {
      const std::size_t idx = static_cast<std::size_t>(i) * m_gamma + q;
      if (std::abs(radii[idx] - grid.radius(i)) > 1e-10 * (1.0 + r_max) ||
          std::abs(gammas[idx] - grid.angle(q)) > 1e-12) {
        throw ParseError("line " + std::to_string(idx + 2) +
                         ": node is not on a Gauss-Legendre x uniform polar grid");
      }
      values(i, q) = vals[idx];
    }
  }
  return CGTable(std::move(grid), SParameter(s), std::move(values));
}

}  // namespace numphase::io
