#ifndef PSYM3_TENSOR_HPP
#define PSYM3_TENSOR_HPP

#include <array>
#include <cmath>

#include "psym3/linalg.hpp"

namespace psym3 {

// Dense index storage; dimension 3 makes compressed storage not worth it.
using Ten3 = std::array<Mat3, 3>;
using Ten4 = std::array<Ten3, 3>;
using Ten5 = std::array<Ten4, 3>;
using Ten6 = std::array<Ten5, 3>;

inline double max_abs(const Ten4& t) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) m = std::max(m, std::abs(t[i][j][k][l]));
  return m;
}

inline double max_abs(const Ten6& t) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
              m = std::max(m, std::abs(t[i][j][k][l][x][y]));
  return m;
}

// Raises every slot of a (0,2)/(0,4)/(0,6) tensor with ginv. Used by the
// g-invariant inner products below.
Mat3 raise_all(const Mat3& t, const Mat3& ginv);
Ten4 raise_all(const Ten4& t, const Mat3& ginv);
Ten6 raise_all(const Ten6& t, const Mat3& ginv);

// <a, b>_g: full contraction of a against b with all slots raised on one
// side. Basis independent.
double inner_g(const Mat3& a, const Mat3& b, const Mat3& ginv);
double inner_g(const Ten4& a, const Ten4& b, const Mat3& ginv);
double inner_g(const Ten6& a, const Ten6& b, const Mat3& ginv);

inline double norm_g(const Mat3& a, const Mat3& ginv) {
  return std::sqrt(std::max(0.0, inner_g(a, a, ginv)));
}
inline double norm_g(const Ten4& a, const Mat3& ginv) {
  return std::sqrt(std::max(0.0, inner_g(a, a, ginv)));
}
inline double norm_g(const Ten6& a, const Mat3& ginv) {
  return std::sqrt(std::max(0.0, inner_g(a, a, ginv)));
}

} // namespace psym3

#endif
