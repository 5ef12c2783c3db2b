#include "psym3/tensor.hpp"

namespace psym3 {

Mat3 raise_all(const Mat3& t, const Mat3& ginv) {
  Mat3 half{};
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) half[a][j] += ginv[a][i] * t[i][j];
  Mat3 up{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int j = 0; j < 3; ++j) up[a][b] += ginv[b][j] * half[a][j];
  return up;
}

Ten4 raise_all(const Ten4& t, const Mat3& ginv) {
  Ten4 cur = t;
  for (int slot = 0; slot < 4; ++slot) {
    Ten4 next{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            int idx[4] = {i, j, k, l};
            double s = 0.0;
            for (int m = 0; m < 3; ++m) {
              int src[4] = {i, j, k, l};
              src[slot] = m;
              s += ginv[idx[slot]][m] * cur[src[0]][src[1]][src[2]][src[3]];
            }
            next[i][j][k][l] = s;
          }
    cur = next;
  }
  return cur;
}

Ten6 raise_all(const Ten6& t, const Mat3& ginv) {
  Ten6 cur = t;
  for (int slot = 0; slot < 6; ++slot) {
    Ten6 next{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            for (int x = 0; x < 3; ++x)
              for (int y = 0; y < 3; ++y) {
                int idx[6] = {i, j, k, l, x, y};
                double s = 0.0;
                for (int m = 0; m < 3; ++m) {
                  int src[6] = {i, j, k, l, x, y};
                  src[slot] = m;
                  s += ginv[idx[slot]][m] *
                       cur[src[0]][src[1]][src[2]][src[3]][src[4]][src[5]];
                }
                next[i][j][k][l][x][y] = s;
              }
    cur = next;
  }
  return cur;
}

double inner_g(const Mat3& a, const Mat3& b, const Mat3& ginv) {
  const Mat3 bu = raise_all(b, ginv);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i][j] * bu[i][j];
  return s;
}

double inner_g(const Ten4& a, const Ten4& b, const Mat3& ginv) {
  const Ten4 bu = raise_all(b, ginv);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += a[i][j][k][l] * bu[i][j][k][l];
  return s;
}

double inner_g(const Ten6& a, const Ten6& b, const Mat3& ginv) {
  const Ten6 bu = raise_all(b, ginv);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
              s += a[i][j][k][l][x][y] * bu[i][j][k][l][x][y];
  return s;
}

} // namespace psym3
