#include "kest/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kest/errors.hpp"

namespace kest {

std::string to_string(GridScheme s) {
    switch (s) {
        case GridScheme::uniform: return "uniform";
        case GridScheme::chebyshev: return "chebyshev";
        case GridScheme::boundary_refined: return "boundary-refined";
    }
    return "?";
}

GridScheme grid_scheme_from_string(const std::string& s) {
    if (s == "uniform") return GridScheme::uniform;
    if (s == "chebyshev") return GridScheme::chebyshev;
    if (s == "boundary-refined" || s == "boundary_refined") return GridScheme::boundary_refined;
    throw ValidationError("unknown grid scheme '" + s + "'");
}

Grid::Grid(std::vector<double> points, GridScheme scheme, int K)
    : points_(std::move(points)), scheme_(scheme), K_(K) {
    if (points_.size() < 2) throw ValidationError("grid needs at least the points 0 and 1");
    if (points_.front() != 0.0 || points_.back() != 1.0)
        throw ValidationError("grid must start at 0 and end at 1");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1]))
            throw ValidationError("grid points must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    if (scheme_ == GridScheme::boundary_refined) {
        if (K_ < 1) throw ValidationError("boundary-refined grid must record its K");
        const double edge = 4.0 / K_;
        auto n = std::count_if(points_.begin(), points_.end(),
                               [edge](double p) { return p <= edge; });
        if (n < 32) throw ValidationError("boundary-refined grid has fewer than 32 points in [0,4/K]");
    }
}

namespace {

std::vector<double> uniform_points(int M) {
    std::vector<double> v(M);
    for (int i = 0; i < M; ++i) v[i] = static_cast<double>(i) / (M - 1);
    v.front() = 0.0;
    v.back() = 1.0;
    return v;
}

std::vector<double> chebyshev_points(int M) {
    std::vector<double> v(M);
    for (int i = 0; i < M; ++i) {
        // sin^2 form avoids the cancellation in 1-cos near 0
        const double s = std::sin(0.5 * std::numbers::pi * i / (M - 1));
        v[i] = s * s;
    }
    v.front() = 0.0;
    v.back() = 1.0;
    return v;
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    out.reserve(v.size());
    for (double p : v) {
        if (p < 0.0 || p > 1.0) continue;
        if (!out.empty() && p - out.back() <= 1e-15 * std::max(p, 1e-300)) continue;
        out.push_back(p);
    }
    return out;
}

}  // namespace

Grid build_grid(int K, int M, GridScheme scheme) {
    if (K < 1) throw DomainError("build_grid: K must be positive");
    if (M < 2) throw DomainError("build_grid: M must be at least 2");
    switch (scheme) {
        case GridScheme::uniform: return Grid(uniform_points(M), scheme, K);
        case GridScheme::chebyshev: return Grid(chebyshev_points(M), scheme, K);
        case GridScheme::boundary_refined: {
            auto v = chebyshev_points(M);
            for (int j = 0; j <= 30; ++j) v.push_back(std::ldexp(1.0, -j) / K);
            for (int j = 1; j <= 32; ++j) v.push_back(j / (8.0 * K));
            return Grid(sorted_unique(std::move(v)), scheme, K);
        }
    }
    throw ValidationError("unreachable grid scheme");
}

Grid merge_grids(const Grid& a, const Grid& b, GridScheme scheme, int K) {
    std::vector<double> v(a.points().begin(), a.points().end());
    v.insert(v.end(), b.points().begin(), b.points().end());
    return Grid(sorted_unique(std::move(v)), scheme, K);
}

Grid certification_grid(int K, int solve_M) {
    return merge_grids(build_grid(K, kCertifyUniform + 1, GridScheme::uniform),
                       build_grid(K, 10 * solve_M, GridScheme::boundary_refined),
                       GridScheme::boundary_refined, K);
}

}  // namespace kest
