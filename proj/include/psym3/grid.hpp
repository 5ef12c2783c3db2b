#ifndef PSYM3_GRID_HPP
#define PSYM3_GRID_HPP

#include <array>
#include <vector>

#include "psym3/linalg.hpp"
#include "psym3/metric.hpp"

namespace psym3 {

// Uniform interior lattice of an open box: axis a carries counts[a] points
// at lo + (i+1) h with h = (hi - lo) / (counts + 1), so endpoints are
// always excluded.
struct GridSpec {
  Vec3 lo{-1.0, -1.0, -1.0};
  Vec3 hi{1.0, 1.0, 1.0};
  std::array<int, 3> counts{5, 5, 5};

  double spacing(int axis) const {
    return (hi[axis] - lo[axis]) / (counts[axis] + 1);
  }
  double coordinate(int axis, int index) const {
    return lo[axis] + (index + 1) * spacing(axis);
  }
  long total() const {
    return static_cast<long>(counts[0]) * counts[1] * counts[2];
  }
  // Row-major: x2 varies fastest.
  long flat_index(int i0, int i1, int i2) const {
    return (static_cast<long>(i0) * counts[1] + i1) * counts[2] + i2;
  }
  Vec3 point(int i0, int i1, int i2) const {
    return {coordinate(0, i0), coordinate(1, i1), coordinate(2, i2)};
  }
};

// Validates the spec and materializes the lattice in row-major order.
// `for_fitting` additionally requires >= 3 points per axis (interior
// stencils). Throws DomainError when the grid leaves `domain`.
std::vector<Vec3> sample_grid(const GridSpec& spec, const DomainBox& domain,
                              bool for_fitting = false);

} // namespace psym3

#endif
