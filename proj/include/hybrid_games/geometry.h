#pragma once

#include <hybrid_games/types.h>

#include <array>

namespace hybrid_games {

struct OrientedRectangle {
  Vector2d center = Vector2d::Zero();
  double length = 1.0;   // along the heading
  double width = 1.0;    // across the heading
  double heading = 0.0;  // radians

  // Counter-clockwise, starting at the rear-right corner.
  std::array<Vector2d, 4> Corners() const;

  // Point expressed in the rectangle's body frame.
  Vector2d ToBody(const Vector2d& p) const;
};

// Sign of the cross product (b - a) x (c - a).
int Orientation(const Vector2d& a, const Vector2d& b, const Vector2d& c);

// Closed segment/segment intersection, including touching and collinear
// overlap.
bool SegmentsIntersect(const Vector2d& p1, const Vector2d& p2,
                       const Vector2d& q1, const Vector2d& q2);

// True iff the closed segment [a, b] meets the closed rectangle. Symmetric in
// a and b.
bool SegmentIntersectsRectangle(const Vector2d& a, const Vector2d& b,
                                const OrientedRectangle& rect);

// Separating-axis overlap test for two closed rectangles. Rectangles that
// only touch along an edge or corner do not count as overlapping.
bool RectanglesOverlap(const OrientedRectangle& a, const OrientedRectangle& b);

}  // namespace hybrid_games
