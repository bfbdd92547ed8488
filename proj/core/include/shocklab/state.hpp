#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "shocklab/media.hpp"

namespace shocklab {

/// Uniform cell-centred grid with a two-cell ghost layer on every side.
/// Interior cells are indexed i in [0, nx), j in [0, ny); ghosts use -2, -1 and
/// nx, nx + 1 (likewise in j).
struct Grid2D {
    static constexpr int ghost = 2;

    int nx = 1;
    int ny = 1;
    double dx = 1.0;
    double dy = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;

    void validate() const;

    int stride() const { return nx + 2 * ghost; }
    int padded_rows() const { return ny + 2 * ghost; }
    std::size_t padded_size() const {
        return static_cast<std::size_t>(stride()) * static_cast<std::size_t>(padded_rows());
    }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j + ghost) * static_cast<std::size_t>(stride()) +
               static_cast<std::size_t>(i + ghost);
    }
    double xc(int i) const { return x0 + (i + 0.5) * dx; }
    double yc(int j) const { return y0 + (j + 0.5) * dy; }
    double length_x() const { return nx * dx; }
    double length_y() const { return ny * dy; }
    double cell_area() const { return dx * dy; }
};

/// Conserved variables q = (eps, rho u, rho v) plus the material sampled at
/// cell centres. All arrays are padded with ghost cells (Grid2D::index).
struct StateField {
    Grid2D grid;
    std::vector<double> eps;
    std::vector<double> mom_x;
    std::vector<double> mom_y;
    std::vector<double> K;
    std::vector<double> rho;

    StateField() = default;
    explicit StateField(const Grid2D& g);

    std::size_t idx(int i, int j) const { return grid.index(i, j); }
    double u(int i, int j) const { return mom_x[idx(i, j)] / rho[idx(i, j)]; }
    double v(int i, int j) const { return mom_y[idx(i, j)] / rho[idx(i, j)]; }
    double sigma(const ConstitutiveLaw& law, int i, int j) const {
        return stress(law, K[idx(i, j)], eps[idx(i, j)]);
    }
    Material material(int i, int j) const { return {K[idx(i, j)], rho[idx(i, j)]}; }
};

/// Samples K and rho at every interior cell centre.
void sample_material(StateField& state, const MediumSpec& spec);
void fill_material(StateField& state, Material m);

struct PointState {
    double sigma = 0.0;
    double u = 0.0;
    double v = 0.0;
};

/// Sets eps = shat^{-1}(sigma) / K and momenta rho (u, v) from a pointwise
/// description in stress and velocity. Material must already be sampled.
void initialize_from_stress(StateField& state, const ConstitutiveLaw& law,
                            const std::function<PointState(double x, double y)>& init);

enum class BoundaryX { outflow, periodic };

/// Fills x ghosts (zero-order extrapolation or periodic wrap) and periodic y
/// ghosts, for q and the cached material alike.
void fill_ghosts(StateField& state, BoundaryX bc_x);

bool all_finite(const StateField& state);

struct ConservedTotals {
    double eps = 0.0;
    double mom_x = 0.0;
    double mom_y = 0.0;
};

/// Compensated sums of the interior cell integrals.
ConservedTotals conserved_totals(const StateField& state);

/// Largest sound speed over interior cells; throws HyperbolicityLoss.
double max_wave_speed(const StateField& state, const ConstitutiveLaw& law);

/// Domain for an oblique medium: y-extent of one projected period so that
/// periodic y boundaries are exact (period / cos(theta), period at theta = 0,
/// a `strip_cells`-cell strip at theta = 90). dy is adjusted so an integer
/// number of cells spans the extent.
Grid2D oblique_grid(const MediumSpec& spec, double cells_per_unit, double length_x,
                    int strip_cells = 4);

}  // namespace shocklab
