#include "herd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace herd {

void BallConfig::validate() const {
    if (dim < 1) throw std::invalid_argument("BallConfig: dim must be >= 1");
    if (!(curvature > 0.0) || !std::isfinite(curvature))
        throw std::invalid_argument("BallConfig: curvature must be a positive real");
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(const Vec& a) { return dot(a, a); }

double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

namespace {

void require_finite(const Vec& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite coordinate");
}

void require_in_ball(const BallPoint& z, const BallConfig& cfg, const char* what) {
    require_finite(z.coords, what);
    if (cfg.curvature * norm_sq(z.coords) >= 1.0)
        throw std::domain_error(std::string(what) + ": point on or outside the ball boundary");
}

// Rescale a freshly computed point back inside the open ball if rounding
// pushed it within kBoundaryEps of the boundary.
BallPoint clamp_to_ball(BallPoint z, const BallConfig& cfg) {
    const double c = cfg.curvature;
    const double n2 = norm_sq(z.coords);
    if (1.0 - c * n2 < kBoundaryEps) {
        const double scale = std::sqrt((1.0 - kBoundaryEps) / (c * n2));
        for (double& x : z.coords) x *= scale;
    }
    return z;
}

}  // namespace

bool in_ball(const BallPoint& z, const BallConfig& cfg) {
    return cfg.curvature * norm_sq(z.coords) < 1.0;
}

double conformal_factor(const BallPoint& z, const BallConfig& cfg) {
    cfg.validate();
    require_in_ball(z, cfg, "conformal_factor");
    return 2.0 / (1.0 - cfg.curvature * norm_sq(z.coords));
}

BallPoint mobius_add(const BallPoint& z, const BallPoint& v, const BallConfig& cfg) {
    cfg.validate();
    require_in_ball(z, cfg, "mobius_add");
    require_in_ball(v, cfg, "mobius_add");

    const double c = cfg.curvature;
    const double zv = dot(z.coords, v.coords);
    const double z2 = norm_sq(z.coords);
    const double v2 = norm_sq(v.coords);
    const double denom = 1.0 + 2.0 * c * zv + c * c * z2 * v2;
    const double az = (1.0 + 2.0 * c * zv + c * v2) / denom;
    const double av = (1.0 - c * z2) / denom;

    BallPoint out;
    out.coords.resize(z.coords.size());
    for (size_t i = 0; i < z.coords.size(); ++i)
        out.coords[i] = az * z.coords[i] + av * v.coords[i];
    return clamp_to_ball(std::move(out), cfg);
}

double distance(const BallPoint& z1, const BallPoint& z2, const BallConfig& cfg) {
    cfg.validate();
    require_in_ball(z1, cfg, "distance");
    require_in_ball(z2, cfg, "distance");

    const double c = cfg.curvature;
    Vec diff(z1.coords.size());
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = z1.coords[i] - z2.coords[i];
    const double arg = 1.0 + 2.0 * c * norm_sq(diff) /
                                 ((1.0 - c * norm_sq(z1.coords)) * (1.0 - c * norm_sq(z2.coords)));
    // Rounding can leave arg a hair below 1 for coincident points.
    return std::acosh(std::max(1.0, arg)) / std::sqrt(c);
}

BallPoint exp_map(const BallPoint& base, const TangentVec& v, const BallConfig& cfg) {
    cfg.validate();
    require_in_ball(base, cfg, "exp_map");
    require_finite(v.coords, "exp_map");

    const double vn = norm(v.coords);
    if (vn < kZeroNormEps) return base;

    const double sc = std::sqrt(cfg.curvature);
    const double lambda = conformal_factor(base, cfg);
    const double scale = std::tanh(sc * lambda * vn / 2.0) / (sc * vn);

    BallPoint step;
    step.coords.resize(v.coords.size());
    for (size_t i = 0; i < v.coords.size(); ++i) step.coords[i] = scale * v.coords[i];
    // Huge tangent vectors round tanh to 1, putting the step on the boundary;
    // pull it back inside before composing.
    step = clamp_to_ball(std::move(step), cfg);
    return mobius_add(base, step, cfg);
}

TangentVec log_map(const BallPoint& base, const BallPoint& y, const BallConfig& cfg) {
    cfg.validate();
    require_in_ball(base, cfg, "log_map");
    require_in_ball(y, cfg, "log_map");

    BallPoint neg_base;
    neg_base.coords.resize(base.coords.size());
    for (size_t i = 0; i < base.coords.size(); ++i) neg_base.coords[i] = -base.coords[i];

    const BallPoint w = mobius_add(neg_base, y, cfg);
    const double wn = norm(w.coords);
    if (wn < kZeroNormEps) return TangentVec(Vec(base.coords.size(), 0.0));

    const double sc = std::sqrt(cfg.curvature);
    const double lambda = conformal_factor(base, cfg);
    const double scale = 2.0 / (sc * lambda) * std::atanh(sc * wn) / wn;

    TangentVec out;
    out.coords.resize(w.coords.size());
    for (size_t i = 0; i < w.coords.size(); ++i) out.coords[i] = scale * w.coords[i];
    return out;
}

std::vector<BallPoint> reflect_to_origin(const BallPoint& z_q,
                                         const std::vector<BallPoint>& targets,
                                         const BallConfig& cfg) {
    cfg.validate();
    require_finite(z_q.coords, "reflect_to_origin");
    for (const auto& t : targets) require_in_ball(t, cfg, "reflect_to_origin");

    const double c = cfg.curvature;
    const double qn2 = norm_sq(z_q.coords);
    if (qn2 < kBoundaryEps * kBoundaryEps) return targets;  // z_q already at origin

    // Inversion center u = z_q / (c|z_q|^2), radius^2 = |u|^2 - 1/c. For c=1
    // this is the textbook u = z_q / |z_q|^2 form.
    Vec u(z_q.coords.size());
    for (size_t i = 0; i < u.size(); ++i) u[i] = z_q.coords[i] / (c * qn2);
    const double radius2 = norm_sq(u) - 1.0 / c;

    std::vector<BallPoint> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        Vec d(u.size());
        for (size_t i = 0; i < u.size(); ++i) d[i] = t.coords[i] - u[i];
        const double dn2 = norm_sq(d);
        if (dn2 < kZeroNormEps * kZeroNormEps)
            throw std::domain_error("reflect_to_origin: target coincides with inversion center");
        BallPoint r;
        r.coords.resize(u.size());
        for (size_t i = 0; i < u.size(); ++i) r.coords[i] = u[i] + radius2 / dn2 * d[i];
        out.push_back(clamp_to_ball(std::move(r), cfg));
    }
    return out;
}

}  // namespace herd
