#pragma once

// Closed-form operations on the Poincare ball model of hyperbolic space:
// distance, exponential/logarithm maps, Mobius addition, conformal factor,
// and the circle-inversion reflection used by combinatorial tree embedding.
//
// All functions are pure; all reals are 64-bit doubles.

#include <stdexcept>
#include <vector>

namespace herd {

using Vec = std::vector<double>;

// Ball of curvature -c: points z with c*|z|^2 < 1.
struct BallConfig {
    int dim = 2;
    double curvature = 1.0;

    void validate() const;
};

struct BallPoint {
    Vec coords;

    BallPoint() = default;
    explicit BallPoint(Vec c) : coords(std::move(c)) {}
    BallPoint(double x, double y) : coords{x, y} {}

    bool operator==(const BallPoint&) const = default;
};

struct TangentVec {
    Vec coords;

    TangentVec() = default;
    explicit TangentVec(Vec c) : coords(std::move(c)) {}
    TangentVec(double x, double y) : coords{x, y} {}

    bool operator==(const TangentVec&) const = default;
};

// Small vector helpers shared across modules.
double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& a);
double norm(const Vec& a);

// Norm below which a tangent vector / offset is treated as exactly zero.
inline constexpr double kZeroNormEps = 1e-15;
// Slack on the open-ball constraint: results with 1 - c|z|^2 below this are
// rescaled back onto c|z|^2 = 1 - kBoundaryEps.
inline constexpr double kBoundaryEps = 1e-12;

// lambda_z = 2 / (1 - c|z|^2). Throws std::domain_error on or outside the
// boundary.
double conformal_factor(const BallPoint& z, const BallConfig& cfg);

// Mobius addition z (+)_c v. Recovers Euclidean addition as c -> 0.
BallPoint mobius_add(const BallPoint& z, const BallPoint& v, const BallConfig& cfg);

// Geodesic distance, symmetric, zero iff z1 == z2.
double distance(const BallPoint& z1, const BallPoint& z2, const BallConfig& cfg);

// exp_base(v): maps a tangent vector at `base` to the ball. exp_base(0) = base
// exactly.
BallPoint exp_map(const BallPoint& base, const TangentVec& v, const BallConfig& cfg);

// log_base(y): inverse of exp_map at the same base. log_base(base) = 0 exactly.
TangentVec log_map(const BallPoint& base, const BallPoint& y, const BallConfig& cfg);

// Circle inversion F sending z_q to the origin, applied to each target.
// F is a hyperbolic isometry and an involution. When |z_q| < kBoundaryEps the
// map is the identity (nothing to move).
std::vector<BallPoint> reflect_to_origin(const BallPoint& z_q,
                                         const std::vector<BallPoint>& targets,
                                         const BallConfig& cfg);

// True iff c*|z|^2 < 1 strictly.
bool in_ball(const BallPoint& z, const BallConfig& cfg);

}  // namespace herd
