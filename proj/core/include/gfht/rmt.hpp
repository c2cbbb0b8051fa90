#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gfht/image.hpp"
#include "gfht/spectral.hpp"

namespace gfht {

struct EigenSet {
  std::vector<std::complex<double>> values;
  std::size_t source_dim = 0;
};

// Centered side x side crop; side must not exceed either dimension.
Layer central_crop(const Layer& layer, std::size_t side);

// Shifts/scales a square layer to mean 0 and unit population variance,
// then divides by sqrt(N).
RealMatrix standardize_matrix(const Layer& layer);

// All complex eigenvalues of a real square matrix: Householder reduction
// to Hessenberg form, then Francis double-shift QR on the result. Throws
// NumericError if the iteration budget (40 N) runs out.
EigenSet eigenvalues(const RealMatrix& a);

// Empirical spectral distribution at (x, y): fraction of eigenvalues with
// Re <= x and Im <= y.
double esd(const EigenSet& eigs, double x, double y);

// Fraction of eigenvalues with |lambda| <= r.
double radial_fraction(const EigenSet& eigs, double r);

struct CircularLawStats {
  // KS distance between the radial empirical CDF and min(r^2, 1).
  double ks_radial = 0.0;
  // chi-square of the angular histogram over 12 sectors against uniform.
  double chi2_angle = 0.0;
};

CircularLawStats circular_law_distance(const EigenSet& eigs);

}  // namespace gfht
