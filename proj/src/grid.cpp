#include "psym3/grid.hpp"

#include "psym3/errors.hpp"

namespace psym3 {

std::vector<Vec3> sample_grid(const GridSpec& spec, const DomainBox& domain,
                              bool for_fitting) {
  for (int a = 0; a < 3; ++a) {
    if (spec.counts[a] < 1)
      throw UsageError("grid counts must be >= 1 per axis");
    if (for_fitting && spec.counts[a] < 3)
      throw UsageError("fitting grids need >= 3 points per axis");
    if (!(spec.hi[a] > spec.lo[a]))
      throw UsageError("grid box is empty along an axis");
    if (!(spec.lo[a] >= domain.lo[a] && spec.hi[a] <= domain.hi[a]))
      throw DomainError("grid box extends outside the chart domain");
  }
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(spec.total()));
  for (int i0 = 0; i0 < spec.counts[0]; ++i0)
    for (int i1 = 0; i1 < spec.counts[1]; ++i1)
      for (int i2 = 0; i2 < spec.counts[2]; ++i2)
        pts.push_back(spec.point(i0, i1, i2));
  return pts;
}

} // namespace psym3
