#include <hybrid_games/geometry.h>

#include <algorithm>
#include <cmath>

namespace hybrid_games {

std::array<Vector2d, 4> OrientedRectangle::Corners() const {
  const Vector2d along(std::cos(heading), std::sin(heading));
  const Vector2d across(-along.y(), along.x());
  const Vector2d half_l = 0.5 * length * along;
  const Vector2d half_w = 0.5 * width * across;
  return {center - half_l - half_w, center + half_l - half_w,
          center + half_l + half_w, center - half_l + half_w};
}

Vector2d OrientedRectangle::ToBody(const Vector2d& p) const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  const Vector2d d = p - center;
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y()};
}

int Orientation(const Vector2d& a, const Vector2d& b, const Vector2d& c) {
  const double cross =
      (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
  return (cross > 0.0) - (cross < 0.0);
}

namespace {

// c lies within the bounding box of segment [a, b]; only meaningful when the
// three points are collinear.
bool OnSegment(const Vector2d& a, const Vector2d& b, const Vector2d& c) {
  return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= c.y() && c.y() <= std::max(a.y(), b.y());
}

bool LexLess(const Vector2d& a, const Vector2d& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

}  // namespace

bool SegmentsIntersect(const Vector2d& p1, const Vector2d& p2,
                       const Vector2d& q1, const Vector2d& q2) {
  const int o1 = Orientation(p1, p2, q1);
  const int o2 = Orientation(p1, p2, q2);
  const int o3 = Orientation(q1, q2, p1);
  const int o4 = Orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && OnSegment(p1, p2, q1)) return true;
  if (o2 == 0 && OnSegment(p1, p2, q2)) return true;
  if (o3 == 0 && OnSegment(q1, q2, p1)) return true;
  if (o4 == 0 && OnSegment(q1, q2, p2)) return true;
  return false;
}

bool SegmentIntersectsRectangle(const Vector2d& a, const Vector2d& b,
                                const OrientedRectangle& rect) {
  // Canonical endpoint order keeps the floating-point test symmetric.
  const bool swap = LexLess(b, a);
  const Vector2d p = rect.ToBody(swap ? b : a);
  const Vector2d q = rect.ToBody(swap ? a : b);
  const double hl = 0.5 * rect.length;
  const double hw = 0.5 * rect.width;

  auto inside = [&](const Vector2d& v) {
    return std::abs(v.x()) <= hl && std::abs(v.y()) <= hw;
  };
  if (inside(p) || inside(q)) return true;

  // Quick reject on the axis-aligned bounding boxes.
  if (std::max(p.x(), q.x()) < -hl || std::min(p.x(), q.x()) > hl ||
      std::max(p.y(), q.y()) < -hw || std::min(p.y(), q.y()) > hw)
    return false;

  const std::array<Vector2d, 4> corners = {Vector2d(-hl, -hw), Vector2d(hl, -hw),
                                           Vector2d(hl, hw), Vector2d(-hl, hw)};
  for (int ee = 0; ee < 4; ee++)
    if (SegmentsIntersect(p, q, corners[ee], corners[(ee + 1) % 4])) return true;
  return false;
}

bool RectanglesOverlap(const OrientedRectangle& a, const OrientedRectangle& b) {
  const auto ca = a.Corners();
  const auto cb = b.Corners();
  const std::array<Vector2d, 4> axes = {
      Vector2d(std::cos(a.heading), std::sin(a.heading)),
      Vector2d(-std::sin(a.heading), std::cos(a.heading)),
      Vector2d(std::cos(b.heading), std::sin(b.heading)),
      Vector2d(-std::sin(b.heading), std::cos(b.heading))};
  for (const auto& axis : axes) {
    double amin = ca[0].dot(axis), amax = amin;
    double bmin = cb[0].dot(axis), bmax = bmin;
    for (int kk = 1; kk < 4; kk++) {
      amin = std::min(amin, ca[kk].dot(axis));
      amax = std::max(amax, ca[kk].dot(axis));
      bmin = std::min(bmin, cb[kk].dot(axis));
      bmax = std::max(bmax, cb[kk].dot(axis));
    }
    if (amax <= bmin || bmax <= amin) return false;
  }
  return true;
}

}  // namespace hybrid_games
