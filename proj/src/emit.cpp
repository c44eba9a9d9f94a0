#include "quadspin/emit.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quadspin/error.hpp"

namespace quadspin {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string trajectory_csv(const std::vector<ObservableRecord>& records) {
  std::string out;
  out.reserve(records.size() * 19 * 24 + 256);
  out += kSchemaLine;
  out += '\n';
  out += kTrajectoryHeader;
  out += '\n';
  for (const auto& r : records) {
    const double row[] = {r.t,      r.t_over_nuq, r.xi,      r.xi_sq,   r.alpha_deg, r.var_iy, r.var_iz,
                          r.var_ip, r.var_im,     r.prod_yz, r.prod_pm, r.bound,     r.mean_ix, r.mean_iy,
                          r.mean_iz, r.neff_p,    r.neff_y,  r.purity,  r.trace_residual};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string wigner_csv(const WignerGrid& grid) {
  std::string out = "theta,phi,w\n";
  for (int j = 0; j < grid.n_theta; ++j) {
    for (int k = 0; k < grid.n_phi; ++k) {
      out += format_number(grid.theta[static_cast<std::size_t>(j)]);
      out += ',';
      out += format_number(grid.phi[static_cast<std::size_t>(k)]);
      out += ',';
      out += format_number(grid.at(j, k));
      out += '\n';
    }
  }
  return out;
}

std::string wigner_svg(const WignerGrid& grid) {
  // Equirectangular: x = phi (columns), y = theta (rows), one unit cell per node.
  const auto [lo_it, hi_it] = std::minmax_element(grid.values.begin(), grid.values.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  const int cell = 2;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << grid.n_phi * cell << "\" height=\""
      << grid.n_theta * cell << "\" viewBox=\"0 0 " << grid.n_phi * cell << ' ' << grid.n_theta * cell
      << "\" shape-rendering=\"crispEdges\">\n";
  for (int j = 0; j < grid.n_theta; ++j) {
    for (int k = 0; k < grid.n_phi; ++k) {
      const double level = span > 0.0 ? (grid.at(j, k) - lo) / span : 0.5;
      const int g = std::clamp(static_cast<int>(level * 255.0 + 0.5), 0, 255);
      svg << "<rect x=\"" << k * cell << "\" y=\"" << j * cell << "\" width=\"" << cell << "\" height=\""
          << cell << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string bounds_table_csv(const std::vector<SpinNumber>& spins) {
  std::string out = "spin,two_i,xi_sq_eq,prod_eq,n_eff_eq,n_eff_cat,n_eff_loss\n";
  for (const auto& s : spins) {
    const auto b = equilibrium_bounds(s);
    out += s.to_string() + ',' + std::to_string(s.two_i()) + ',' + format_number(b.xi_sq) + ',' +
           format_number(b.prod) + ',' + format_number(b.n_eff_eq) + ',' + format_number(b.n_eff_cat) + ',' +
           format_number(b.n_eff_loss) + '\n';
  }
  return out;
}

std::string series_csv(const std::string& header, const std::vector<std::pair<double, double>>& rows) {
  std::string out = header + '\n';
  for (const auto& [a, b] : rows) out += format_number(a) + ',' + format_number(b) + '\n';
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

void emit_trajectory_csv(const std::vector<ObservableRecord>& records, const std::filesystem::path& path) {
  write_text_file(path, trajectory_csv(records));
}

void emit_wigner_csv(const WignerGrid& grid, const std::filesystem::path& path) {
  write_text_file(path, wigner_csv(grid));
}

void emit_wigner_svg(const WignerGrid& grid, const std::filesystem::path& path) {
  write_text_file(path, wigner_svg(grid));
}

void emit_bounds_table(const std::vector<SpinNumber>& spins, const std::filesystem::path& path) {
  write_text_file(path, bounds_table_csv(spins));
}

}  // namespace quadspin
