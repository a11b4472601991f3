#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>

namespace llab {

/// Floating-point type for all field and spectral computations.
using Real = double;
using Complex = std::complex<Real>;

/// Signed index type used for flat grid indices and sizes.
using Index = Eigen::Index;

using ArrayXr = Eigen::Array<Real, Eigen::Dynamic, 1>;
using ArrayXc = Eigen::Array<Complex, Eigen::Dynamic, 1>;
using VectorXr = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using MatrixXr = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace llab
