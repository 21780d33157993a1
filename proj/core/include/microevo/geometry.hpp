#pragma once

#include <algorithm>
#include <cmath>

namespace microevo {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const = default;

    double length() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).length(); }

/// Axis-aligned rectangle, min corner inclusive, max corner inclusive.
struct Rect {
    Vec2 min;
    Vec2 max;

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double diagonal() const { return std::hypot(width(), height()); }
    Vec2 center() const { return {(min.x + max.x) / 2.0, (min.y + max.y) / 2.0}; }

    bool contains(const Vec2& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    Vec2 clamp(const Vec2& p) const {
        return {std::clamp(p.x, min.x, max.x), std::clamp(p.y, min.y, max.y)};
    }
};

}  // namespace microevo
