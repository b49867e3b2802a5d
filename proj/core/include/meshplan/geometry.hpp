#pragma once

#include <cmath>

namespace meshplan {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dist(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Angle in degrees between the rays c->a and c->b, in [0, 180].
/// Zero-length rays are treated as angle 0.
double angle_deg(const Point2& c, const Point2& a, const Point2& b);

/// Is point p inside the closed circular sector with apex `c`, direction ray
/// c->dir, full beamwidth `bw_deg` and radius `rad`?
bool point_in_sector(const Point2& p, const Point2& c, const Point2& dir,
                     double bw_deg, double rad);

/// Does the closed segment [a, b] intersect the closed sector
/// {p : dist(c,p) <= rad, angle(c->dir, c->p) <= bw/2}?
bool segment_intersects_sector(const Point2& a, const Point2& b, const Point2& c,
                               const Point2& dir, double bw_deg, double rad);

/// Closed-segment vs closed-segment intersection test.
bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1,
                        const Point2& q2);

}  // namespace meshplan
