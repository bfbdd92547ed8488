#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "shocklab/state.hpp"

namespace shocklab {

/// Interior cells of one snapshot in row-major order (i fastest).
struct SnapshotData {
    double t = 0.0;
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    std::vector<double> eps;
    std::vector<double> mom_x;
    std::vector<double> mom_y;

    bool operator==(const SnapshotData&) const = default;
};

SnapshotData extract_snapshot(double t, const StateField& state);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// CSV layout:
///   t,nx,ny,dx,dy
///   <values>
///   i,j,eps,rho_u,rho_v
///   one line per cell, j outer, i inner
void write_snapshot_csv(std::ostream& out, const SnapshotData& snap);
SnapshotData read_snapshot_csv(std::istream& in);

/// Binary layout: five little-endian float64 (t, nx, ny, dx, dy), then the
/// eps, rho u and rho v arrays as little-endian float64 in the CSV order.
void write_snapshot_binary(std::ostream& out, const SnapshotData& snap);
SnapshotData read_snapshot_binary(std::istream& in);

void write_snapshot_file(const std::filesystem::path& path, const SnapshotData& snap);
/// Picks the format from the extension (.csv or .bin).
SnapshotData read_snapshot_file(const std::filesystem::path& path);

}  // namespace shocklab
