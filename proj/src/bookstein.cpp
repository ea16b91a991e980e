#include "lsh/bookstein.hpp"

#include <cmath>

#include "lsh/errors.hpp"

namespace lsh {

namespace {

void check_anchor_indices(const Eigen::MatrixXd& coords, const int* anchors, int count) {
    for (int i = 0; i < count; ++i) {
        if (anchors[i] < 0 || anchors[i] >= coords.rows())
            throw ConfigError("bookstein: anchor index out of range");
        for (int j = 0; j < i; ++j)
            if (anchors[i] == anchors[j]) throw ConfigError("bookstein: repeated anchor index");
    }
}

void pin_anchor_rows(Eigen::MatrixXd& out, const int* anchors) {
    // The transform places the anchors at (+-1/2, 0, ...) up to rounding;
    // pin them exactly so downstream identities hold bitwise.
    out.row(anchors[0]).setZero();
    out.row(anchors[1]).setZero();
    out(anchors[0], 0) = -0.5;
    out(anchors[1], 0) = 0.5;
}

} // namespace

std::pair<Eigen::MatrixXd, Bookstein2D> bookstein_2d(const Eigen::MatrixXd& coords,
                                                     const std::array<int, 2>& anchors) {
    if (coords.cols() != 2) throw ConfigError("bookstein_2d: coordinates must be N x 2");
    check_anchor_indices(coords, anchors.data(), 2);

    const Eigen::Vector2d u1 = coords.row(anchors[0]);
    const Eigen::Vector2d u2 = coords.row(anchors[1]);
    const Eigen::Vector2d diff = u2 - u1;
    const double len = diff.norm();
    if (!(len > 0.0) || !std::isfinite(len))
        throw ConfigError("bookstein_2d: anchor points are coincident");

    Bookstein2D t;
    t.translation = 0.5 * (u1 + u2);
    t.scale = 1.0 / len;
    t.angle = std::atan2(diff.y(), diff.x());
    const double c = std::cos(t.angle), s = std::sin(t.angle);
    t.rotation << c, s, -s, c;

    Eigen::MatrixXd out(coords.rows(), 2);
    for (Eigen::Index i = 0; i < coords.rows(); ++i)
        out.row(i) = t.apply(coords.row(i).transpose()).transpose();
    pin_anchor_rows(out, anchors.data());
    return {std::move(out), t};
}

std::pair<Eigen::MatrixXd, Bookstein3D> bookstein_3d(const Eigen::MatrixXd& coords,
                                                     const std::array<int, 3>& anchors) {
    if (coords.cols() != 3) throw ConfigError("bookstein_3d: coordinates must be N x 3");
    check_anchor_indices(coords, anchors.data(), 3);

    const Eigen::Vector3d u1 = coords.row(anchors[0]);
    const Eigen::Vector3d u2 = coords.row(anchors[1]);
    const Eigen::Vector3d u3 = coords.row(anchors[2]);

    Bookstein3D t;
    t.translation = 0.5 * (u1 + u2);
    const Eigen::Vector3d w2 = u2 - t.translation;
    const Eigen::Vector3d w3 = u3 - t.translation;
    t.divisor = 2.0 * w2.norm();
    if (!(t.divisor > 0.0) || !std::isfinite(t.divisor))
        throw ConfigError("bookstein_3d: first two anchors are coincident");

    // R3 about z and R2 about y send the second anchor onto the positive x axis.
    t.theta = std::atan2(w2.y(), w2.x());
    double c = std::cos(t.theta), s = std::sin(t.theta);
    t.r3 << c, s, 0, -s, c, 0, 0, 0, 1;

    t.omega = std::atan2(w2.z(), std::hypot(w2.x(), w2.y()));
    c = std::cos(t.omega), s = std::sin(t.omega);
    t.r2 << c, 0, s, 0, 1, 0, -s, 0, c;

    // R1 about x zeroes the third anchor's z component.
    const Eigen::Vector3d w3r = t.r2 * (t.r3 * w3);
    const double planar = std::hypot(w3r.y(), w3r.z());
    if (planar < 1e-12 * w2.norm())
        throw ConfigError("bookstein_3d: anchors are collinear");
    t.phi = std::atan2(w3r.z(), w3r.y());
    c = std::cos(t.phi), s = std::sin(t.phi);
    t.r1 << 1, 0, 0, 0, c, s, 0, -s, c;

    Eigen::MatrixXd out(coords.rows(), 3);
    const Eigen::Matrix3d rot = t.rotation();
    for (Eigen::Index i = 0; i < coords.rows(); ++i)
        out.row(i) = (rot * (coords.row(i).transpose() - t.translation)).transpose() / t.divisor;
    pin_anchor_rows(out, anchors.data());
    out(anchors[2], 2) = 0.0;
    return {std::move(out), t};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> transform_gaussian(const Eigen::VectorXd& mu,
                                                               const Eigen::MatrixXd& sigma,
                                                               const Bookstein2D& t) {
    const Eigen::VectorXd mu_b = t.scale * (t.rotation * (mu - t.translation));
    const Eigen::MatrixXd sigma_b =
        t.scale * t.scale * (t.rotation * sigma * t.rotation.transpose());
    return {mu_b, sigma_b};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> transform_gaussian(const Eigen::VectorXd& mu,
                                                               const Eigen::MatrixXd& sigma,
                                                               const Bookstein3D& t) {
    const Eigen::Matrix3d rot = t.rotation();
    const double c = t.scale();
    const Eigen::VectorXd mu_b = c * (rot * (mu - t.translation));
    const Eigen::MatrixXd sigma_b = c * c * (rot * sigma * rot.transpose());
    return {mu_b, sigma_b};
}

} // namespace lsh
