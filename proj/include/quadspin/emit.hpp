#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "quadspin/observables.hpp"
#include "quadspin/runner.hpp"
#include "quadspin/wigner.hpp"

namespace quadspin {

inline constexpr const char* kSchemaLine = "# quadspin-schema=1";
inline constexpr const char* kTrajectoryHeader =
    "t,t_over_nuq,xi,xi_sq,alpha_deg,var_iy,var_iz,var_ip,var_im,prod_yz,prod_pm,bound,"
    "mean_ix,mean_iy,mean_iz,neff_p,neff_y,purity,trace_residual";

// 17 significant digits, scientific notation.
std::string format_number(double v);

std::string trajectory_csv(const std::vector<ObservableRecord>& records);
std::string wigner_csv(const WignerGrid& grid);
std::string wigner_svg(const WignerGrid& grid);
std::string bounds_table_csv(const std::vector<SpinNumber>& spins);
std::string series_csv(const std::string& header, const std::vector<std::pair<double, double>>& rows);

void write_text_file(const std::filesystem::path& path, const std::string& content);

void emit_trajectory_csv(const std::vector<ObservableRecord>& records, const std::filesystem::path& path);
void emit_wigner_csv(const WignerGrid& grid, const std::filesystem::path& path);
void emit_wigner_svg(const WignerGrid& grid, const std::filesystem::path& path);
void emit_bounds_table(const std::vector<SpinNumber>& spins, const std::filesystem::path& path);

}  // namespace quadspin
