#include "lsh/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace lsh {

void LatentConfiguration::validate() const {
    if (dim() != 2 && dim() != 3)
        throw ConfigError("latent configuration: dimension must be 2 or 3, got " +
                          std::to_string(dim()));
    if (!coords.allFinite())
        throw DataError("latent configuration: coordinates must be finite");
    if (bookstein) {
        if (static_cast<int>(anchors.size()) != dim())
            throw ConfigError("bookstein configuration: expected " + std::to_string(dim()) +
                              " anchors");
        Eigen::VectorXd a1 = Eigen::VectorXd::Zero(dim());
        Eigen::VectorXd a2 = Eigen::VectorXd::Zero(dim());
        a1(0) = -0.5;
        a2(0) = 0.5;
        if (coords.row(anchors[0]).transpose() != a1 || coords.row(anchors[1]).transpose() != a2)
            throw DataError("bookstein configuration: anchor rows are not at (+-1/2, 0, ...)");
    }
}

void RadiusSchedule::validate() const {
    if (radii.empty()) throw ConfigError("radius schedule: needs at least r_2");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0))
            throw ConfigError("radius schedule: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw ConfigError("radius schedule: radii must be strictly increasing");
    }
}

namespace {

// Fixed-capacity point in up to 3 dimensions.
using Pt = std::array<double, 3>;

constexpr double kRelSlack = 1e-12;

double dist2(const Pt& a, const Pt& b, int d) {
    double s = 0.0;
    for (int l = 0; l < d; ++l) {
        const double diff = a[l] - b[l];
        s += diff * diff;
    }
    return s;
}

struct SmallBall {
    Pt center{0.0, 0.0, 0.0};
    double radius2 = -1.0; // negative: contains nothing

    bool contains(const Pt& p, int d) const {
        if (radius2 < 0.0) return false;
        return dist2(p, center, d) <= radius2 * (1.0 + kRelSlack);
    }
};

// Ball with all boundary points equidistant from the center, the center lying
// in their affine hull. Solves 2 v_j . x = ||v_j||^2 with v_j = q_j - q_0 by
// Gaussian elimination on an (m-1) x (m-1) system, m <= 4. An affinely
// dependent boundary (coincident or collinear degeneracy) falls back to the
// ball of the first m-1 points.
SmallBall ball_with_boundary(const Pt* boundary, int m, int d) {
    SmallBall ball;
    if (m == 0) return ball;
    if (m == 1) {
        ball.center = boundary[0];
        ball.radius2 = 0.0;
        return ball;
    }

    double a[3][3] = {};
    double b[3] = {};
    const int rows = m - 1;
    double scale = 0.0;
    for (int j = 0; j < rows; ++j) {
        for (int k = 0; k < rows; ++k) {
            double dot = 0.0;
            for (int l = 0; l < d; ++l)
                dot += (boundary[j + 1][l] - boundary[0][l]) * (boundary[k + 1][l] - boundary[0][l]);
            a[j][k] = 2.0 * dot;
            scale = std::max(scale, std::abs(a[j][k]));
        }
        b[j] = dist2(boundary[j + 1], boundary[0], d);
    }
    const double pivot_tol = scale * 1e-14 + 1e-300;

    for (int col = 0; col < rows; ++col) {
        int pivot = col;
        for (int r = col + 1; r < rows; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < pivot_tol) return ball_with_boundary(boundary, m - 1, d);
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < rows; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < rows; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    double coef[3] = {};
    for (int r = rows - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < rows; ++c) s -= a[r][c] * coef[c];
        coef[r] = s / a[r][r];
    }

    ball.center = boundary[0];
    for (int j = 0; j < rows; ++j)
        for (int l = 0; l < d; ++l)
            ball.center[l] += coef[j] * (boundary[j + 1][l] - boundary[0][l]);
    ball.radius2 = dist2(ball.center, boundary[0], d);
    return ball;
}

// Move-to-front Welzl over the first n entries of pts.
SmallBall welzl(Pt* pts, int n, Pt* boundary, int m, int d) {
    SmallBall ball = ball_with_boundary(boundary, m, d);
    if (m == d + 1) return ball;

    for (int i = 0; i < n; ++i) {
        if (ball.contains(pts[i], d)) continue;
        boundary[m] = pts[i];
        ball = welzl(pts, i, boundary, m + 1, d);
        // move-to-front: points that defined a ball early get re-tested first
        const Pt hit = pts[i];
        for (int j = i; j > 0; --j) pts[j] = pts[j - 1];
        pts[0] = hit;
    }
    return ball;
}

SmallBall miniball_small(Pt* pts, int n, int d) {
    Pt boundary[4];
    return welzl(pts, n, boundary, 0, d);
}

} // namespace

Ball miniball(const Eigen::MatrixXd& points) {
    const int n = static_cast<int>(points.rows());
    const int d = static_cast<int>(points.cols());
    if (n < 1) throw ConfigError("miniball: empty point set");
    if (d != 2 && d != 3) throw ConfigError("miniball: dimension must be 2 or 3");

    std::vector<Pt> pts(static_cast<std::size_t>(n), Pt{0.0, 0.0, 0.0});
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < d; ++l) pts[static_cast<std::size_t>(i)][l] = points(i, l);

    const SmallBall ball = miniball_small(pts.data(), n, d);
    Ball out;
    out.center = Eigen::VectorXd(d);
    for (int l = 0; l < d; ++l) out.center(l) = ball.center[l];
    out.radius = std::sqrt(std::max(ball.radius2, 0.0));
    return out;
}

double miniball_radius(const Eigen::MatrixXd& coords, const Edge& edge) {
    const int d = static_cast<int>(coords.cols());
    const int n = static_cast<int>(edge.size());
    Pt pts[8];
    if (n > 8) {
        Eigen::MatrixXd sub(n, d);
        for (int i = 0; i < n; ++i) sub.row(i) = coords.row(edge[static_cast<std::size_t>(i)]);
        return miniball(sub).radius;
    }
    for (int i = 0; i < n; ++i) {
        pts[i] = Pt{0.0, 0.0, 0.0};
        for (int l = 0; l < d; ++l) pts[i][l] = coords(edge[static_cast<std::size_t>(i)], l);
    }
    return std::sqrt(std::max(miniball_small(pts, n, d).radius2, 0.0));
}

bool hyperedge_present(const Eigen::MatrixXd& coords, const Edge& edge, double r) {
    for (int idx : edge)
        if (idx < 0 || idx >= coords.rows()) throw ConfigError("hyperedge_present: bad index");
    return miniball_radius(coords, edge) <= r;
}

std::vector<Edge> cech_k_layer(const Eigen::MatrixXd& coords, double r, int k) {
    if (k < 2) throw ConfigError("cech layer: order must be >= 2");
    const int n = static_cast<int>(coords.rows());
    const double diam2 = 4.0 * r * r;

    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
    std::vector<Edge> layer;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if ((coords.row(i) - coords.row(j)).squaredNorm() <= diam2) {
                nbr[static_cast<std::size_t>(i)].push_back(j);
                if (k == 2) layer.push_back({i, j});
            }
        }
    if (k == 2) return layer;

    // Grow cliques in lexicographic order: extend each order-(j-1) member with
    // a node above its maximum that is adjacent to every member, then filter
    // by the miniball test.
    std::vector<Edge> frontier;
    for (int i = 0; i < n; ++i)
        for (int j : nbr[static_cast<std::size_t>(i)]) frontier.push_back({i, j});

    for (int order = 3; order <= k; ++order) {
        std::vector<Edge> next;
        for (const Edge& clique : frontier) {
            // candidate extensions: common neighbours above max(clique)
            std::vector<int> cand = nbr[static_cast<std::size_t>(clique[0])];
            for (std::size_t m = 1; m < clique.size(); ++m) {
                const auto& list = nbr[static_cast<std::size_t>(clique[m])];
                std::vector<int> merged;
                std::set_intersection(cand.begin(), cand.end(), list.begin(), list.end(),
                                      std::back_inserter(merged));
                cand.swap(merged);
                if (cand.empty()) break;
            }
            for (int v : cand) {
                if (v <= clique.back()) continue;
                Edge grown = clique;
                grown.push_back(v);
                if (order == 2 || miniball_radius(coords, grown) <= r) next.push_back(grown);
            }
        }
        frontier.swap(next);
    }
    return frontier;
}

Hypergraph build_nsrgh(const Eigen::MatrixXd& coords, const RadiusSchedule& radii,
                       int order_cap) {
    radii.validate();
    const int K = radii.max_order();
    if (K > order_cap)
        throw ConfigError("nsRGH: max order " + std::to_string(K) + " exceeds the cap " +
                          std::to_string(order_cap) +
                          "; clique enumeration beyond it is rejected");
    const int n = static_cast<int>(coords.rows());
    if (K > n) throw ConfigError("nsRGH: max order exceeds node count");

    Hypergraph h(n, K);
    for (int k = 2; k <= K; ++k)
        for (Edge& e : cech_k_layer(coords, radii.r(k), k)) h.add_edge(std::move(e));
    return h;
}

} // namespace lsh
