#include "shocklab/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

void Grid2D::validate() const {
    if (nx < 1 || ny < 1) {
        throw InvalidArgument("grid needs at least one cell in each direction");
    }
    if (!(dx > 0.0) || !(dy > 0.0)) {
        throw InvalidArgument("cell sizes must be positive");
    }
}

StateField::StateField(const Grid2D& g)
    : grid(g),
      eps(g.padded_size(), 0.0),
      mom_x(g.padded_size(), 0.0),
      mom_y(g.padded_size(), 0.0),
      K(g.padded_size(), 1.0),
      rho(g.padded_size(), 1.0) {
    g.validate();
}

void sample_material(StateField& state, const MediumSpec& spec) {
    spec.validate();
    const Grid2D& g = state.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Material m = material_at(spec, g.xc(i), g.yc(j));
            state.K[g.index(i, j)] = m.K;
            state.rho[g.index(i, j)] = m.rho;
        }
    }
}

void fill_material(StateField& state, Material m) {
    std::fill(state.K.begin(), state.K.end(), m.K);
    std::fill(state.rho.begin(), state.rho.end(), m.rho);
}

void initialize_from_stress(StateField& state, const ConstitutiveLaw& law,
                            const std::function<PointState(double x, double y)>& init) {
    const Grid2D& g = state.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            const PointState p = init(g.xc(i), g.yc(j));
            state.eps[k] = inverse_stress(law, state.K[k], p.sigma);
            state.mom_x[k] = state.rho[k] * p.u;
            state.mom_y[k] = state.rho[k] * p.v;
        }
    }
}

void fill_ghosts(StateField& state, BoundaryX bc_x) {
    const Grid2D& g = state.grid;
    const int G = Grid2D::ghost;
    std::vector<double>* fields[] = {&state.eps, &state.mom_x, &state.mom_y, &state.K, &state.rho};

    for (int j = 0; j < g.ny; ++j) {
        for (int gcell = 1; gcell <= G; ++gcell) {
            const int left = -gcell;
            const int right = g.nx - 1 + gcell;
            const int src_left = bc_x == BoundaryX::periodic ? g.nx - gcell : 0;
            const int src_right = bc_x == BoundaryX::periodic ? gcell - 1 : g.nx - 1;
            for (auto* f : fields) {
                (*f)[g.index(left, j)] = (*f)[g.index(src_left, j)];
                (*f)[g.index(right, j)] = (*f)[g.index(src_right, j)];
            }
        }
    }
    for (int gcell = 1; gcell <= G; ++gcell) {
        const int below = -gcell;
        const int above = g.ny - 1 + gcell;
        const int src_below = ((g.ny - gcell) % g.ny + g.ny) % g.ny;
        const int src_above = (gcell - 1) % g.ny;
        for (int i = -G; i < g.nx + G; ++i) {
            for (auto* f : fields) {
                (*f)[g.index(i, below)] = (*f)[g.index(i, src_below)];
                (*f)[g.index(i, above)] = (*f)[g.index(i, src_above)];
            }
        }
    }
}

bool all_finite(const StateField& state) {
    const Grid2D& g = state.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            if (!std::isfinite(state.eps[k]) || !std::isfinite(state.mom_x[k]) ||
                !std::isfinite(state.mom_y[k])) {
                return false;
            }
        }
    }
    return true;
}

ConservedTotals conserved_totals(const StateField& state) {
    const Grid2D& g = state.grid;
    NeumaierSum e;
    NeumaierSum mx;
    NeumaierSum my;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            e.add(state.eps[k]);
            mx.add(state.mom_x[k]);
            my.add(state.mom_y[k]);
        }
    }
    const double a = g.cell_area();
    return {e.value() * a, mx.value() * a, my.value() * a};
}

double max_wave_speed(const StateField& state, const ConstitutiveLaw& law) {
    const Grid2D& g = state.grid;
    double c_max = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            c_max = std::max(c_max, sound_speed(law, state.K[k], state.rho[k], state.eps[k]));
        }
    }
    return c_max;
}

Grid2D oblique_grid(const MediumSpec& spec, double cells_per_unit, double length_x, int strip_cells) {
    if (!(cells_per_unit > 0.0) || !(length_x > 0.0)) {
        throw InvalidArgument("resolution and domain length must be positive");
    }
    Grid2D g;
    g.nx = std::max(1, static_cast<int>(std::lround(length_x * cells_per_unit)));
    g.dx = length_x / g.nx;
    if (spec.theta_deg == 90.0) {
        g.ny = strip_cells;
        g.dy = g.dx;
    } else {
        const double theta = spec.theta_deg * std::numbers::pi / 180.0;
        const double length_y = spec.theta_deg == 0.0 ? spec.period : spec.period / std::cos(theta);
        g.ny = std::max(1, static_cast<int>(std::lround(length_y * cells_per_unit)));
        g.dy = length_y / g.ny;
    }
    g.validate();
    return g;
}

}  // namespace shocklab
