#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace kest {

enum class GridScheme { uniform, chebyshev, boundary_refined };

std::string to_string(GridScheme s);
GridScheme grid_scheme_from_string(const std::string& s);

// Ordered probabilities in [0,1], starting at 0 and ending at 1.
class Grid {
public:
    Grid(std::vector<double> points, GridScheme scheme, int K = 0);

    std::span<const double> points() const { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const { return points_.size(); }
    GridScheme scheme() const { return scheme_; }
    int K() const { return K_; }

private:
    std::vector<double> points_;
    GridScheme scheme_;
    int K_;
};

inline constexpr int kDefaultSolveGrid = 4096;
inline constexpr int kCertifyUniform = 100000;

// Uniform: M points i/(M-1). Chebyshev: (1-cos(pi i/(M-1)))/2.
// Boundary-refined: Chebyshev(M) plus {2^-j/K} and {j/(8K), j<=32}.
Grid build_grid(int K, int M, GridScheme scheme = GridScheme::boundary_refined);

// Dense certification grid: 10^5 uniform points merged with a boundary-refined
// grid ten times the size of the solve grid.
Grid certification_grid(int K, int solve_M = kDefaultSolveGrid);

Grid merge_grids(const Grid& a, const Grid& b, GridScheme scheme, int K);

}  // namespace kest
