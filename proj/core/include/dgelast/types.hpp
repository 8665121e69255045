#ifndef DGELAST_TYPES_HPP
#define DGELAST_TYPES_HPP

#include <Eigen/Dense>

namespace dgelast {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Axis-aligned rectangle (x0,y0) x (x1,y1).
struct Rect {
  double x0 = -1.0;
  double y0 = -1.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool degenerate() const { return width() <= 0.0 || height() <= 0.0; }
};

} // namespace dgelast

#endif
