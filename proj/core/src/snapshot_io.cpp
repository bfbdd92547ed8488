#include "shocklab/snapshot_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include "shocklab/errors.hpp"

namespace shocklab {

SnapshotData extract_snapshot(double t, const StateField& state) {
    const Grid2D& g = state.grid;
    SnapshotData s;
    s.t = t;
    s.nx = g.nx;
    s.ny = g.ny;
    s.dx = g.dx;
    s.dy = g.dy;
    const std::size_t n = static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny);
    s.eps.reserve(n);
    s.mom_x.reserve(n);
    s.mom_y.reserve(n);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = g.index(i, j);
            s.eps.push_back(state.eps[k]);
            s.mom_x.push_back(state.mom_x[k]);
            s.mom_y.push_back(state.mom_y[k]);
        }
    }
    return s;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) {
        throw IoError("cannot format number");
    }
    return std::string(buf.data(), end);
}

namespace {

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw IoError("malformed number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string next_line(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("unexpected end of snapshot");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void check_dims(const SnapshotData& s) {
    if (s.nx < 1 || s.ny < 1) {
        throw IoError("snapshot has empty dimensions");
    }
}


void put_f64(std::ostream& out, double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> b{};
    for (int k = 0; k < 8; ++k) {
        b[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
    }
    out.write(b.data(), 8);
}

double get_f64(std::istream& in) {
    std::array<unsigned char, 8> b{};
    if (!in.read(reinterpret_cast<char*>(b.data()), 8)) {
        throw IoError("truncated binary snapshot");
    }
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) {
        bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    }
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_snapshot_csv(std::ostream& out, const SnapshotData& s) {
    check_dims(s);
    out << "t,nx,ny,dx,dy\n"
        << format_double(s.t) << ',' << s.nx << ',' << s.ny << ',' << format_double(s.dx) << ','
        << format_double(s.dy) << '\n'
        << "i,j,eps,rho_u,rho_v\n";
    std::size_t k = 0;
    for (int j = 0; j < s.ny; ++j) {
        for (int i = 0; i < s.nx; ++i, ++k) {
            out << i << ',' << j << ',' << format_double(s.eps[k]) << ','
                << format_double(s.mom_x[k]) << ',' << format_double(s.mom_y[k]) << '\n';
        }
    }
    if (!out) {
        throw IoError("failed writing snapshot");
    }
}

SnapshotData read_snapshot_csv(std::istream& in) {
    if (next_line(in) != "t,nx,ny,dx,dy") {
        throw IoError("bad snapshot header");
    }
    const std::string head = next_line(in);
    const auto h = split_commas(head);
    if (h.size() != 5) {
        throw IoError("bad snapshot header values");
    }
    SnapshotData s;
    s.t = parse_double(h[0]);
    s.nx = static_cast<int>(parse_double(h[1]));
    s.ny = static_cast<int>(parse_double(h[2]));
    s.dx = parse_double(h[3]);
    s.dy = parse_double(h[4]);
    check_dims(s);
    if (next_line(in) != "i,j,eps,rho_u,rho_v") {
        throw IoError("bad snapshot column header");
    }
    const std::size_t n = static_cast<std::size_t>(s.nx) * static_cast<std::size_t>(s.ny);
    s.eps.resize(n);
    s.mom_x.resize(n);
    s.mom_y.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::string line = next_line(in);
        const auto f = split_commas(line);
        if (f.size() != 5) {
            throw IoError("bad snapshot row");
        }
        const auto i = static_cast<std::size_t>(parse_double(f[0]));
        const auto j = static_cast<std::size_t>(parse_double(f[1]));
        if (j * static_cast<std::size_t>(s.nx) + i != k) {
            throw IoError("snapshot rows out of order");
        }
        s.eps[k] = parse_double(f[2]);
        s.mom_x[k] = parse_double(f[3]);
        s.mom_y[k] = parse_double(f[4]);
    }
    return s;
}

void write_snapshot_binary(std::ostream& out, const SnapshotData& s) {
    check_dims(s);
    put_f64(out, s.t);
    put_f64(out, s.nx);
    put_f64(out, s.ny);
    put_f64(out, s.dx);
    put_f64(out, s.dy);
    for (const auto* arr : {&s.eps, &s.mom_x, &s.mom_y}) {
        for (double v : *arr) put_f64(out, v);
    }
    if (!out) {
        throw IoError("failed writing snapshot");
    }
}

SnapshotData read_snapshot_binary(std::istream& in) {
    SnapshotData s;
    s.t = get_f64(in);
    s.nx = static_cast<int>(get_f64(in));
    s.ny = static_cast<int>(get_f64(in));
    s.dx = get_f64(in);
    s.dy = get_f64(in);
    check_dims(s);
    const std::size_t n = static_cast<std::size_t>(s.nx) * static_cast<std::size_t>(s.ny);
    for (auto* arr : {&s.eps, &s.mom_x, &s.mom_y}) {
        arr->resize(n);
        for (double& v : *arr) v = get_f64(in);
    }
    return s;
}

void write_snapshot_file(const std::filesystem::path& path, const SnapshotData& snap) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    if (path.extension() == ".bin") {
        write_snapshot_binary(out, snap);
    } else {
        write_snapshot_csv(out, snap);
    }
}

SnapshotData read_snapshot_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return path.extension() == ".bin" ? read_snapshot_binary(in) : read_snapshot_csv(in);
}

}  // namespace shocklab
