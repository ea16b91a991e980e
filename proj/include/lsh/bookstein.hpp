#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>

namespace lsh {

/// Similarity u^B = scale * R * (u - translation) pinning two anchor landmarks
/// to (-1/2, 0) and (1/2, 0). scale = 1 / ||u2 - u1|| for the original anchors.
struct Bookstein2D {
    double scale = 1.0;
    double angle = 0.0;
    Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
    Eigen::Vector2d translation = Eigen::Vector2d::Zero();

    Eigen::Vector2d apply(const Eigen::Vector2d& u) const {
        return scale * (rotation * (u - translation));
    }
};

/// Composition R1(phi) R2(omega) R3(theta) of axis rotations after centering
/// on the first two anchors, divided by D12 = ||u2 - u1||. The first two
/// anchors land at (-+1/2, 0, 0); the third anchor lands in the z = 0 plane.
struct Bookstein3D {
    double divisor = 1.0; // D12
    double phi = 0.0, omega = 0.0, theta = 0.0;
    Eigen::Matrix3d r1 = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d r2 = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d r3 = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    double scale() const { return 1.0 / divisor; }
    Eigen::Matrix3d rotation() const { return r1 * r2 * r3; }
    Eigen::Vector3d apply(const Eigen::Vector3d& u) const {
        return rotation() * (u - translation) / divisor;
    }
};

std::pair<Eigen::MatrixXd, Bookstein2D> bookstein_2d(const Eigen::MatrixXd& coords,
                                                     const std::array<int, 2>& anchors);

std::pair<Eigen::MatrixXd, Bookstein3D> bookstein_3d(const Eigen::MatrixXd& coords,
                                                     const std::array<int, 3>& anchors);

/// Exact affine pushforward of a Gaussian: mu^B = cR(mu - b), Sigma^B = c^2 R Sigma R^T.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> transform_gaussian(const Eigen::VectorXd& mu,
                                                               const Eigen::MatrixXd& sigma,
                                                               const Bookstein2D& t);
std::pair<Eigen::VectorXd, Eigen::MatrixXd> transform_gaussian(const Eigen::VectorXd& mu,
                                                               const Eigen::MatrixXd& sigma,
                                                               const Bookstein3D& t);

} // namespace lsh
