#pragma once

#include <Eigen/Dense>
#include <complex>

namespace epl {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Matrix3C = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace epl
