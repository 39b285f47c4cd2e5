#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ctc/rational_scalar.hpp"

namespace ctc {

using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using Cx = std::complex<double>;
using CxMat = Eigen::MatrixXcd;
using CxVec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

using Index = Eigen::Index;

} // namespace ctc
