#pragma once

#include <vector>

#include "ssp/filters.hpp"
#include "ssp/grid.hpp"

namespace ssp {

// Relative content distance ||a - b||_2 / ||b||_2.
double content_l2(const Grid& a, const Grid& b);

// First and second moments of a feature cloud. Covariance uses the population
// (1/n) normalization and must stay symmetric PSD within the stated tolerances
// (symmetry 1e-10, smallest eigenvalue >= -1e-8).
struct FeatureSet {
    std::vector<double> mean;
    std::vector<double> covariance;  // row-major d*d
    int dim = 0;

    static FeatureSet from_vectors(const std::vector<std::vector<double>>& vectors);
    static FeatureSet from_moments(std::vector<double> mean, std::vector<double> covariance);

    double cov(int i, int j) const { return covariance[static_cast<std::size_t>(i) * dim + j]; }
};

// Frechet distance between the Gaussians fitted to p and q:
//   ||mu_p - mu_q||^2 + tr(Sp + Sq - 2 (Sp Sq)^(1/2)).
// The matrix square root goes through the symmetrized product
// Sp^(1/2) Sq Sp^(1/2), eigendecomposed with a cyclic Jacobi sweep and
// eigenvalues clamped at zero.
double frechet_gaussian(const FeatureSet& p, const FeatureSet& q);

// (1 + content_dist) * (1 + style_dist); both arguments must be >= 0.
double artfid_composite(double content_dist, double style_dist);

// Low-band energy fraction of a grid under the given low-pass filter, in
// [0, 1]. Errors on an all-zero grid.
double band_ratio(const Grid& g, const FilterSpec& filter);

namespace detail {
// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations;
// a is row-major d*d, eigenvalues land in w. Used by frechet_gaussian and
// exposed for its unit tests.
void jacobi_eigen(std::vector<double>& a, int d, std::vector<double>& w,
                  std::vector<double>& vectors);
}  // namespace detail

}  // namespace ssp
