#pragma once

#include <utility>
#include <vector>

#include "zeno/state.hpp"

namespace zeno {

// Measurement domain A: a closed interval, a union of disjoint closed
// intervals, or an axis-aligned closed rectangle. Points exactly on the
// boundary count as inside (fixed measure-zero tie-break).
class Region {
public:
    enum class Kind { Interval, UnionOfIntervals, Rectangle };

    static Region interval(double a, double b);
    static Region union_of_intervals(std::vector<std::pair<double, double>> pieces);
    static Region rectangle(double ax, double bx, double ay, double by);

    Kind kind() const { return kind_; }
    int dim() const { return kind_ == Kind::Rectangle ? 2 : 1; }
    double measure() const;

    // 1D pieces sorted ascending; a rectangle reports per-axis bounds.
    const std::vector<std::pair<double, double>>& intervals() const { return pieces_; }
    double lower(int axis_index) const;
    double upper(int axis_index) const;
    double extent(int axis_index) const { return upper(axis_index) - lower(axis_index); }

    bool contains(double x) const;
    bool contains(double x, double y) const;

private:
    Region(Kind kind, std::vector<std::pair<double, double>> pieces);
    Kind kind_;
    // Interval/Union: the 1D pieces. Rectangle: pieces_[0] = x bounds,
    // pieces_[1] = y bounds.
    std::vector<std::pair<double, double>> pieces_;
};

// chi_A at a point; 1 on the closed region. Dimension mismatch is structural.
int indicator(const Region& region, double x);
int indicator(const Region& region, double x, double y);

// 0/1 samples of chi_A on a grid. Throws StructuralError if the region is not
// contained in the grid extent.
Eigen::ArrayXd region_mask(const Grid& grid, const Region& region);

// E_A psi: pointwise multiplication by the indicator.
WaveFunction project(const WaveFunction& psi, const Region& region);

// ||E_A psi||^2.
double survival_probability(const WaveFunction& psi, const Region& region);

// Dirichlet sine mode sqrt(2/L) sin(n pi (x-a)/L) on a single interval,
// zero outside; n >= 1.
WaveFunction sine_mode(const Grid& grid, const Region& region, int n);

// Separable sine mode on a rectangle; nx, ny >= 1.
WaveFunction sine_mode_2d(const Grid& grid, const Region& region, int nx, int ny);

// Cosine basis sqrt(2/L) cos(n pi (x-a)/L) (n >= 1) or sqrt(1/L) (n = 0):
// orthonormal and complete on the interval but with nonvanishing endpoint
// values. This is the deliberately "wrong" basis for the boundary-term
// diagnostic.
WaveFunction cosine_mode(const Grid& grid, const Region& region, int n);

} // namespace zeno
