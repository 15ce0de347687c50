#include "msymp/grid.hpp"

#include <stdexcept>

namespace msymp {

void validate(const Grid1D& grid) {
    if (grid.n < 8) throw std::invalid_argument("grid: need at least 8 nodes");
    if (!(grid.length > 0.0)) throw std::invalid_argument("grid: length must be positive");
}

std::vector<double> ddx(std::span<const double> f, const Grid1D& grid) {
    const int n = grid.n;
    if (static_cast<int>(f.size()) != n)
        throw std::invalid_argument("ddx: array size does not match grid");
    std::vector<double> out(f.size());
    const double inv2 = 1.0 / (2.0 * grid.dx());
    if (grid.periodic) {
        for (int i = 0; i < n; ++i) {
            const int ip = i + 1 == n ? 0 : i + 1;
            const int im = i == 0 ? n - 1 : i - 1;
            out[i] = (f[ip] - f[im]) * inv2;
        }
    } else {
        out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
        for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
        out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
    }
    return out;
}

std::vector<double> ddx(const Field& f, const Grid1D& grid) {
    std::vector<double> out = ddx(std::span<const double>(f.v), grid);
    if (f.x_slope != 0.0)
        for (auto& y : out) y += f.x_slope;
    return out;
}

std::vector<double> materialize(const Field& f, const Grid1D& grid) {
    std::vector<double> out = f.v;
    if (f.x_slope != 0.0)
        for (int i = 0; i < grid.n; ++i) out[i] += f.x_slope * grid.x(i);
    return out;
}

}  // namespace msymp
