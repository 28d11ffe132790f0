#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace pdgeom {

// A point of a metric pair. Continuous kinds use `coords` (length = ambient
// dimension); finite kinds use `index` into the ground set. Points of a
// disjoint union additionally carry the component path in `sides`
// (outermost union first, each entry 0 = left or 1 = right), terminating in
// either representation.
struct Point {
  std::vector<double> coords;
  std::size_t index = 0;
  bool uses_index = false;
  std::vector<int> sides;

  static Point of_coords(std::vector<double> c) {
    Point p;
    p.coords = std::move(c);
    return p;
  }

  static Point of_index(std::size_t i) {
    Point p;
    p.index = i;
    p.uses_index = true;
    return p;
  }

  // The same point viewed from one union level up / down.
  Point in_component(int side) const {
    Point p = *this;
    p.sides.insert(p.sides.begin(), side);
    return p;
  }

  Point peeled() const {
    Point p = *this;
    p.sides.erase(p.sides.begin());
    return p;
  }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.sides != b.sides || a.uses_index != b.uses_index) return false;
    return a.uses_index ? a.index == b.index : a.coords == b.coords;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

  // Total order used only to canonicalize serialization.
  friend bool operator<(const Point& a, const Point& b) {
    if (a.sides != b.sides) return a.sides < b.sides;
    if (a.uses_index != b.uses_index) return b.uses_index;
    return a.uses_index ? a.index < b.index : a.coords < b.coords;
  }
};

}  // namespace pdgeom
