#include "meshplan/geometry.hpp"

#include <algorithm>

namespace meshplan {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dot2(double ax, double ay, double bx, double by) { return ax * bx + ay * by; }

bool on_segment(const Point2& p, const Point2& q, const Point2& r) {
    return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
           std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
}

}  // namespace

double angle_deg(const Point2& c, const Point2& a, const Point2& b) {
    const double ax = a.x - c.x, ay = a.y - c.y;
    const double bx = b.x - c.x, by = b.y - c.y;
    const double na = std::hypot(ax, ay);
    const double nb = std::hypot(bx, by);
    if (na == 0.0 || nb == 0.0) return 0.0;
    double cosv = dot2(ax, ay, bx, by) / (na * nb);
    cosv = std::clamp(cosv, -1.0, 1.0);
    return std::acos(cosv) * 180.0 / kPi;
}

bool point_in_sector(const Point2& p, const Point2& c, const Point2& dir,
                     double bw_deg, double rad) {
    if (dist(p, c) > rad) return false;
    if (p.x == c.x && p.y == c.y) return true;  // apex
    return angle_deg(c, dir, p) <= bw_deg / 2.0;
}

bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1,
                        const Point2& q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(q1, p1, q2)) return true;
    if (d2 == 0 && on_segment(q1, p2, q2)) return true;
    if (d3 == 0 && on_segment(p1, q1, p2)) return true;
    if (d4 == 0 && on_segment(p1, q2, p2)) return true;
    return false;
}

bool segment_intersects_sector(const Point2& a, const Point2& b, const Point2& c,
                               const Point2& dir, double bw_deg, double rad) {
    if (rad <= 0.0) return false;
    if (point_in_sector(a, c, dir, bw_deg, rad)) return true;
    if (point_in_sector(b, c, dir, bw_deg, rad)) return true;

    // Apex on the segment covers the degenerate crossings.
    if (cross(a, b, c) == 0 && on_segment(a, c, b)) return true;

    const double dx = dir.x - c.x, dy = dir.y - c.y;
    const double dlen = std::hypot(dx, dy);
    if (dlen == 0.0) return false;
    const double base = std::atan2(dy, dx);
    const double half = (bw_deg / 2.0) * kPi / 180.0;

    // Radial boundary segments.
    for (double sign : {-1.0, 1.0}) {
        const double ang = base + sign * half;
        Point2 end{c.x + rad * std::cos(ang), c.y + rad * std::sin(ang)};
        if (segments_intersect(a, b, c, end)) return true;
    }

    // Arc: circle-segment intersections that fall inside the angular range.
    const double fx = a.x - c.x, fy = a.y - c.y;
    const double ex = b.x - a.x, ey = b.y - a.y;
    const double qa = ex * ex + ey * ey;
    if (qa == 0.0) return false;
    const double qb = 2.0 * (fx * ex + fy * ey);
    const double qc = fx * fx + fy * fy - rad * rad;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return false;
    const double sq = std::sqrt(disc);
    for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
        if (t < 0.0 || t > 1.0) continue;
        Point2 p{a.x + t * ex, a.y + t * ey};
        if (angle_deg(c, dir, p) <= bw_deg / 2.0) return true;
    }
    return false;
}

}  // namespace meshplan
