#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "quadop/counterexample.hpp"
#include "quadop/grid.hpp"

namespace quadop {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_g17(double x);

/// Grid export: header row `x,y,u,v,lap_u,lap_v,residual`, nodes in
/// row-major order, 17 significant digits. The residual column is the
/// annihilation residual u*lap_v + v*lap_u.
void write_grid_csv(std::ostream& os, const GridFunction2D& u, const GridFunction2D& v,
                    const GridFunction2D& lap_u, const GridFunction2D& lap_v);

nlohmann::json report_to_json(const ResidualReport& rep);

}  // namespace quadop
