#include "quadop/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace quadop {

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_grid_csv(std::ostream& os, const GridFunction2D& u, const GridFunction2D& v,
                    const GridFunction2D& lap_u, const GridFunction2D& lap_v) {
    if (!(u.grid() == v.grid()) || !(u.grid() == lap_u.grid()) || !(u.grid() == lap_v.grid())) {
        throw std::invalid_argument("write_grid_csv: grid mismatch");
    }
    const Grid2D& g = u.grid();
    os << "x,y,u,v,lap_u,lap_v,residual\n";
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            const double residual = u.at(i, j) * lap_v.at(i, j) + v.at(i, j) * lap_u.at(i, j);
            os << format_g17(g.nodes[i]) << ',' << format_g17(g.nodes[j]) << ','
               << format_g17(u.at(i, j)) << ',' << format_g17(v.at(i, j)) << ','
               << format_g17(lap_u.at(i, j)) << ',' << format_g17(lap_v.at(i, j)) << ','
               << format_g17(residual) << '\n';
        }
    }
}

nlohmann::json report_to_json(const ResidualReport& rep) {
    return nlohmann::json{
        {"max_abs", rep.max_abs},       {"rms", rep.rms},
        {"norm_L_u", rep.norm_L_u},     {"norm_L_v", rep.norm_L_v},
        {"dist_minus", rep.dist_minus}, {"dist_plus", rep.dist_plus},
        {"grid_n", rep.grid_n},
    };
}

}  // namespace quadop
