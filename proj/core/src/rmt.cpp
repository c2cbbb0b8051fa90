#include "gfht/rmt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gfht/errors.hpp"

namespace gfht {

namespace {

using cd = std::complex<double>;

double sign_like(double magnitude, double sign_source) {
  return sign_source >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

// Householder similarity reduction to upper Hessenberg form, eigenvalues
// only (no transform accumulation).
void hessenberg(RealMatrix& h) {
  const std::size_t n = h.rows;
  if (n < 3) return;
  std::vector<double> ort(n, 0.0);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i < n; ++i) scale += std::fabs(h.at(i, m - 1));
    if (scale == 0.0) continue;

    double hh = 0.0;
    for (std::size_t i = n; i-- > m;) {
      ort[i] = h.at(i, m - 1) / scale;
      hh += ort[i] * ort[i];
    }
    double g = -sign_like(std::sqrt(hh), ort[m]);
    hh -= ort[m] * g;
    ort[m] -= g;

    // apply (I - ort ort^T / hh) from both sides
    for (std::size_t j = m; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = n; i-- > m;) f += ort[i] * h.at(i, j);
      f /= hh;
      for (std::size_t i = m; i < n; ++i) h.at(i, j) -= f * ort[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0.0;
      for (std::size_t j = n; j-- > m;) f += ort[j] * h.at(i, j);
      f /= hh;
      for (std::size_t j = m; j < n; ++j) h.at(i, j) -= f * ort[j];
    }
    h.at(m, m - 1) = scale * g;
  }
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) h.at(i, j) = 0.0;
}

// Francis double-shift QR on a Hessenberg matrix; returns all eigenvalues.
// Deflation uses a relative tolerance plus an absolute floor at the
// round-off level of the whole matrix. The floor matters on rank-deficient
// inputs: their zero clusters shrink self-similarly, so the relative test
// never fires, and once the block scale drops below sqrt(DBL_MIN) the
// shift products underflow and the chase stops making progress at all.
// Subdiagonals below eps * |H| are inside the backward error any dense
// solver commits, so zeroing them loses nothing. The iteration budget is
// 40 n across all eigenvalues.
std::vector<cd> hqr(RealMatrix& a, double tol = 1e-10) {
  const int n = static_cast<int>(a.rows);
  std::vector<cd> out(static_cast<std::size_t>(n));
  auto h = [&a](int i, int j) -> double& {
    return a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(h(i, j));
  if (anorm == 0.0) return out;  // zero matrix

  const double deflate_floor = std::numeric_limits<double>::epsilon() * anorm;

  const long budget = 40L * n;
  long total_its = 0;
  int nn = n - 1;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, x, y, z, s, u, v, ww;

  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 1; --l) {
        s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(h(l, l - 1)) <= std::max(tol * s, deflate_floor)) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      if (l < 0) l = 0;
      x = h(nn, nn);
      if (l == nn) {
        out[static_cast<std::size_t>(nn)] = cd(x + t, 0.0);
        --nn;
      } else {
        y = h(nn - 1, nn - 1);
        ww = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + ww;
          z = std::sqrt(std::fabs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_like(z, p);
            double r1 = x + z;
            double r2 = (z != 0.0) ? x - ww / z : x + z;
            out[static_cast<std::size_t>(nn - 1)] = cd(r1, 0.0);
            out[static_cast<std::size_t>(nn)] = cd(r2, 0.0);
          } else {
            out[static_cast<std::size_t>(nn - 1)] = cd(x + p, z);
            out[static_cast<std::size_t>(nn)] = cd(x + p, -z);
          }
          nn -= 2;
        } else {
          if (++total_its > budget)
            throw NumericError("eigenvalue iteration budget exhausted");
          if (its != 0 && its % 10 == 0) {
            // exceptional shift to break a stalled chase
            t += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            s = std::fabs(h(nn, nn - 1)) + std::fabs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            ww = -0.4375 * s * s;
          }
          ++its;
          int m;
          for (m = nn - 2; m >= l; --m) {
            z = h(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - ww) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - r - s;
            r = h(m + 2, m + 1);
            s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            u = std::fabs(h(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            v = std::fabs(p) *
                (std::fabs(h(m - 1, m - 1)) + std::fabs(z) + std::fabs(h(m + 1, m + 1)));
            if (u <= tol * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i != m + 2) h(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
              x = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            s = sign_like(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = h(k, j) + q * h(k + 1, j);
              if (k != nn - 1) {
                p += r * h(k + 2, j);
                h(k + 2, j) -= p * z;
              }
              h(k + 1, j) -= p * y;
              h(k, j) -= p * x;
            }
            const int mmin = (nn < k + 3) ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * h(i, k) + y * h(i, k + 1);
              if (k != nn - 1) {
                p += z * h(i, k + 2);
                h(i, k + 2) -= p * r;
              }
              h(i, k + 1) -= p * q;
              h(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return out;
}

double lu_determinant(RealMatrix m) {
  const std::size_t n = m.rows;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m.at(i, k)) > std::fabs(m.at(piv, k))) piv = i;
    if (m.at(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      det = -det;
    }
    det *= m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m.at(i, k) / m.at(k, k);
      for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return det;
}

void check_eigen_identities(const RealMatrix& a, const std::vector<cd>& vals) {
  const std::size_t n = a.rows;
  double amax = 0.0;
  for (double v : a.data) amax = std::max(amax, std::fabs(v));

  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += a.at(i, i);
  cd sum(0.0, 0.0);
  for (const cd& v : vals) sum += v;
  const double trace_tol = 1e-6 * static_cast<double>(n) * std::max(1.0, amax);
  if (std::abs(sum - trace) > trace_tol)
    throw NumericError("eigenvalue sum drifted from the trace");

  if (n <= 6) {
    cd prod(1.0, 0.0);
    for (const cd& v : vals) prod *= v;
    const double det = lu_determinant(a);
    if (std::abs(prod - det) > 1e-6 * std::max(1.0, std::fabs(det)))
      throw NumericError("eigenvalue product drifted from the determinant");
  }
}

}  // namespace

Layer central_crop(const Layer& layer, std::size_t side) {
  if (side == 0) throw ValidationError("crop side must be positive");
  if (side > layer.height || side > layer.width)
    throw ValidationError("crop side exceeds layer dimensions");
  const std::size_t i0 = (layer.height - side) / 2;
  const std::size_t j0 = (layer.width - side) / 2;
  Layer out(side, side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j)
      out.at(i, j) = layer.at(i0 + i, j0 + j);
  return out;
}

RealMatrix standardize_matrix(const Layer& layer) {
  if (layer.size() == 0) throw ValidationError("empty layer");
  if (layer.height != layer.width) throw ValidationError("layer must be square");
  const std::size_t n = layer.height;
  const double count = static_cast<double>(layer.size());

  double mean = 0.0;
  for (Byte b : layer.data) mean += b;
  mean /= count;
  double var = 0.0;
  for (Byte b : layer.data) {
    const double d = static_cast<double>(b) - mean;
    var += d * d;
  }
  var /= count;
  if (var == 0.0) throw NumericError("constant layer has zero variance");

  const double scale = 1.0 / (std::sqrt(var) * std::sqrt(static_cast<double>(n)));
  RealMatrix out(n, n);
  for (std::size_t k = 0; k < layer.data.size(); ++k)
    out.data[k] = (static_cast<double>(layer.data[k]) - mean) * scale;
  return out;
}

EigenSet eigenvalues(const RealMatrix& a) {
  if (a.rows == 0 || a.rows != a.cols)
    throw ValidationError("matrix must be square and non-empty");
  for (double v : a.data)
    if (!std::isfinite(v)) throw ValidationError("matrix entries must be finite");

  EigenSet set;
  set.source_dim = a.rows;
  if (a.rows == 1) {
    set.values = {cd(a.data[0], 0.0)};
    return set;
  }

  // Exact power-of-two scaling to unit magnitude keeps the iteration out
  // of the denormal and overflow ranges regardless of the input scale.
  RealMatrix h = a;
  double amax = 0.0;
  for (double v : h.data) amax = std::max(amax, std::fabs(v));
  int ex = 0;
  if (amax > 0.0) std::frexp(amax, &ex);
  if (ex != 0)
    for (double& v : h.data) v = std::ldexp(v, -ex);

  hessenberg(h);
  set.values = hqr(h);
  if (ex != 0)
    for (cd& v : set.values)
      v = cd(std::ldexp(v.real(), ex), std::ldexp(v.imag(), ex));
  check_eigen_identities(a, set.values);
  return set;
}

double esd(const EigenSet& eigs, double x, double y) {
  if (eigs.values.empty()) throw ValidationError("empty eigenvalue set");
  std::size_t count = 0;
  for (const cd& v : eigs.values)
    count += (v.real() <= x && v.imag() <= y);
  return static_cast<double>(count) / static_cast<double>(eigs.values.size());
}

double radial_fraction(const EigenSet& eigs, double r) {
  if (eigs.values.empty()) throw ValidationError("empty eigenvalue set");
  std::size_t count = 0;
  for (const cd& v : eigs.values) count += (std::abs(v) <= r);
  return static_cast<double>(count) / static_cast<double>(eigs.values.size());
}

CircularLawStats circular_law_distance(const EigenSet& eigs) {
  const std::size_t n = eigs.values.size();
  if (n < 32) throw ValidationError("need at least 32 eigenvalues");

  std::vector<double> radii(n);
  for (std::size_t k = 0; k < n; ++k) radii[k] = std::abs(eigs.values[k]);
  std::sort(radii.begin(), radii.end());

  CircularLawStats stats;
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = std::min(radii[k] * radii[k], 1.0);
    const double hi = static_cast<double>(k + 1) / nd - f;
    const double lo = f - static_cast<double>(k) / nd;
    stats.ks_radial = std::max({stats.ks_radial, hi, lo});
  }

  std::array<double, 12> sectors{};
  for (const cd& v : eigs.values) {
    const double theta = std::atan2(v.imag(), v.real());
    int idx = static_cast<int>(std::floor((theta + std::numbers::pi) /
                                          (2.0 * std::numbers::pi) * 12.0));
    idx = std::clamp(idx, 0, 11);
    sectors[static_cast<std::size_t>(idx)] += 1.0;
  }
  const double expected = nd / 12.0;
  for (double o : sectors) {
    const double d = o - expected;
    stats.chi2_angle += d * d / expected;
  }
  return stats;
}

}  // namespace gfht
