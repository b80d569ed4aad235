#pragma once

#include <array>
#include <vector>

#include "elastica/elastic_core.hpp"

namespace elastica::fem {

/// Conforming triangulation with counter-clockwise triangles.
struct Mesh {
    DomainGeometry domain;
    double h;  // grid spacing (square) or ring spacing (disk)
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<char> boundary;  // per-vertex flag

    double min_angle_degrees() const;
    double area() const;
    std::size_t boundary_vertex_count() const;
};

/// Unit square [0,1]^2 split into n x n cells, each cut along its rising diagonal.
Mesh make_square_mesh(int cells_per_side);

/// Unit disk built from `rings` concentric rings; ring i carries 6 i vertices and the
/// outer ring lies on the unit circle.
Mesh make_disk_mesh(int rings);

/// Mesh with spacing h (rounded to the nearest 1/n).
Mesh make_mesh(Domain domain, double h);

/// Throws MeshError on degenerate or inverted triangles or out-of-range indices.
void check_mesh(const Mesh& mesh);

}  // namespace elastica::fem
