#include "elastica/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elastica/errors.hpp"

namespace elastica::fem {
namespace {

constexpr double kPi = std::numbers::pi;

double signed_area(const std::array<double, 2>& a, const std::array<double, 2>& b,
                   const std::array<double, 2>& c) {
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

}  // namespace

double Mesh::min_angle_degrees() const {
    double min_angle = 180.0;
    for (const auto& t : triangles) {
        for (int i = 0; i < 3; ++i) {
            const auto& a = vertices[t[i]];
            const auto& b = vertices[t[(i + 1) % 3]];
            const auto& c = vertices[t[(i + 2) % 3]];
            const double ux = b[0] - a[0], uy = b[1] - a[1];
            const double vx = c[0] - a[0], vy = c[1] - a[1];
            const double cosang = (ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy));
            min_angle = std::min(min_angle, std::acos(std::clamp(cosang, -1.0, 1.0)) * 180.0 / kPi);
        }
    }
    return min_angle;
}

double Mesh::area() const {
    double total = 0.0;
    for (const auto& t : triangles) total += signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    return total;
}

std::size_t Mesh::boundary_vertex_count() const {
    return static_cast<std::size_t>(std::count(boundary.begin(), boundary.end(), 1));
}

Mesh make_square_mesh(int n) {
    if (n < 1) throw MeshError("square mesh needs at least one cell per side");
    Mesh m{DomainGeometry::of(Domain::UnitSquare), 1.0 / n, {}, {}, {}};
    const int side = n + 1;
    m.vertices.reserve(static_cast<std::size_t>(side) * side);
    m.boundary.reserve(m.vertices.capacity());
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            // exact endpoints so boundary vertices sit on the square
            const double x = i == n ? 1.0 : static_cast<double>(i) / n;
            const double y = j == n ? 1.0 : static_cast<double>(j) / n;
            m.vertices.push_back({x, y});
            m.boundary.push_back(i == 0 || j == 0 || i == n || j == n ? 1 : 0);
        }
    }
    auto id = [side](int i, int j) { return j * side + i; };
    m.triangles.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return m;
}

Mesh make_disk_mesh(int rings) {
    if (rings < 1) throw MeshError("disk mesh needs at least one ring");
    Mesh m{DomainGeometry::of(Domain::UnitDisk), 1.0 / rings, {}, {}, {}};
    std::vector<int> ring_start(rings + 1);
    m.vertices.push_back({0.0, 0.0});
    m.boundary.push_back(rings == 0 ? 1 : 0);
    ring_start[0] = 0;
    for (int i = 1; i <= rings; ++i) {
        ring_start[i] = static_cast<int>(m.vertices.size());
        const double r = i == rings ? 1.0 : static_cast<double>(i) / rings;
        const int count = 6 * i;
        for (int j = 0; j < count; ++j) {
            const double th = 2.0 * kPi * j / count;
            m.vertices.push_back({r * std::cos(th), r * std::sin(th)});
            m.boundary.push_back(i == rings ? 1 : 0);
        }
    }
    // innermost fan
    for (int j = 0; j < 6; ++j) {
        m.triangles.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});
    }
    // strips between ring i-1 and ring i, merged by angle: inner vertex a has angle
    // a / (6(i-1)), outer vertex b has angle b / (6 i) (in turns)
    for (int i = 2; i <= rings; ++i) {
        const int n_in = 6 * (i - 1);
        const int n_out = 6 * i;
        int a = 0, b = 0;
        auto in_id = [&](int idx) { return ring_start[i - 1] + idx % n_in; };
        auto out_id = [&](int idx) { return ring_start[i] + idx % n_out; };
        while (a < n_in || b < n_out) {
            // compare angles of the next inner (a+1) and next outer (b+1) vertices
            const bool advance_outer =
                a >= n_in || (b < n_out && static_cast<long long>(b + 1) * n_in <=
                                               static_cast<long long>(a + 1) * n_out);
            if (advance_outer) {
                m.triangles.push_back({in_id(a), out_id(b), out_id(b + 1)});
                ++b;
            } else {
                m.triangles.push_back({in_id(a), out_id(b), in_id(a + 1)});
                ++a;
            }
        }
    }
    return m;
}

Mesh make_mesh(Domain domain, double h) {
    if (!(h > 0.0) || h > 1.0) throw MeshError("mesh size h must lie in (0, 1]");
    const int n = std::max(1, static_cast<int>(std::lround(1.0 / h)));
    return domain == Domain::UnitSquare ? make_square_mesh(n) : make_disk_mesh(n);
}

void check_mesh(const Mesh& mesh) {
    const int nv = static_cast<int>(mesh.vertices.size());
    if (mesh.boundary.size() != mesh.vertices.size()) {
        throw MeshError("boundary flags do not match vertex count");
    }
    for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
        const auto& t = mesh.triangles[e];
        for (int v : t) {
            if (v < 0 || v >= nv) throw MeshError("triangle references a missing vertex");
        }
        const double a = signed_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
        if (!(a > 1e-14 * mesh.h * mesh.h)) {
            throw MeshError("degenerate or inverted triangle " + std::to_string(e));
        }
    }
}

}  // namespace elastica::fem
