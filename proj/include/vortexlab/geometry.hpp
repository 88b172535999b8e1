#pragma once

#include <cmath>
#include <iosfwd>

namespace vtx {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm2(const Vec2& a) { return dot(a, a); }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

/// Symplectic rotation J v = (v_y, -v_x).
inline Vec2 symplectic(const Vec2& v) { return {v.y, -v.x}; }

std::ostream& operator<<(std::ostream& os, const Vec2& v);

/// Flat torus (R/lZ) x (R/wZ).  All pairwise interactions use the
/// minimal image of a displacement, all field grids the fundamental
/// domain [0,l) x [0,w).
struct TorusGeometry {
    double l = 1.0;
    double w = 1.0;

    TorusGeometry() = default;
    TorusGeometry(double l_, double w_) : l(l_), w(w_) {}

    double area() const { return l * w; }

    /// Map a displacement into [-l/2, l/2) x [-w/2, w/2).
    Vec2 minimal_image(Vec2 d) const {
        d.x -= l * std::floor(d.x / l + 0.5);
        d.y -= w * std::floor(d.y / w + 0.5);
        return d;
    }

    /// Map a point into the fundamental domain [0, l) x [0, w).
    Vec2 wrap(Vec2 p) const {
        p.x -= l * std::floor(p.x / l);
        p.y -= w * std::floor(p.y / w);
        return p;
    }

    double distance(const Vec2& a, const Vec2& b) const {
        return norm(minimal_image(a - b));
    }
};

} // namespace vtx
