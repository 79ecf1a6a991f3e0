#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rollset {

constexpr double kPi = 3.14159265358979323846;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double px, double py) : x(px), y(py) {}

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::sqrt(norm_sq(p)); }
inline double dist_sq(Point2 a, Point2 b) { return norm_sq(a - b); }
inline double dist(Point2 a, Point2 b) { return std::sqrt(dist_sq(a, b)); }
inline Point2 perp(Point2 p) { return {-p.y, p.x}; }

/// Wraps an angle into (-pi, pi].
double normalize_angle(double a);

struct Disc {
    Point2 center;
    double radius = 1.0;

    Disc(Point2 c, double r) : center(c), radius(r) {
        if (!(r > 0.0)) throw std::invalid_argument("Disc: radius must be positive");
    }
    bool contains(Point2 p) const { return dist_sq(p, center) <= radius * radius; }
};

/// Circular arc of fixed radius. Sweep is signed, counterclockwise positive,
/// |sweep| <= 2*pi. start_angle is stored in (-pi, pi].
struct ArcSegment {
    Point2 center;
    double radius = 1.0;
    double start_angle = 0.0;
    double sweep = 0.0;

    ArcSegment() = default;
    ArcSegment(Point2 c, double r, double start, double sw);

    double length() const { return radius * std::abs(sweep); }
    Point2 point_at(double t) const {
        double a = start_angle + t * sweep;
        return {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
    }
    Point2 start_point() const { return point_at(0.0); }
    Point2 end_point() const { return point_at(1.0); }
};

double arc_length(const ArcSegment& a);

/// Distance from a point to the arc (nearest point on the arc itself).
double dist_to_arc(Point2 p, const ArcSegment& a);

struct BoundingBox {
    double xmin = std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void expand(Point2 p) {
        xmin = std::min(xmin, p.x);
        ymin = std::min(ymin, p.y);
        xmax = std::max(xmax, p.x);
        ymax = std::max(ymax, p.y);
    }
    void expand(const BoundingBox& b) {
        xmin = std::min(xmin, b.xmin);
        ymin = std::min(ymin, b.ymin);
        xmax = std::max(xmax, b.xmax);
        ymax = std::max(ymax, b.ymax);
    }
    BoundingBox inflated(double m) const { return {xmin - m, ymin - m, xmax + m, ymax + m}; }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diagonal() const { return std::hypot(width(), height()); }
    bool valid() const { return xmin <= xmax && ymin <= ymax; }
    bool contains(Point2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

/// Ordered planar sample with duplicates removed. Construction merges points
/// closer than the dedupe tolerance (first occurrence wins); the default
/// tolerance is 1e-12 times the bounding-box diagonal.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point2> pts, double dedupe_tolerance = -1.0);

    const std::vector<Point2>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Point2& operator[](std::size_t i) const { return points_[i]; }
    double dedupe_tolerance() const { return tol_; }
    const BoundingBox& bbox() const { return bbox_; }

private:
    std::vector<Point2> points_;
    double tol_ = 0.0;
    BoundingBox bbox_;
};

PointSet read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const PointSet& ps);

// Robust predicates: double-precision evaluation with a forward error bound,
// exact rational fallback when the filter cannot certify the sign.

/// Sign of the orientation determinant of (a,b,c): +1 counterclockwise,
/// -1 clockwise, 0 exactly collinear.
int orient2d(Point2 a, Point2 b, Point2 c);

/// Sign of the in-circle determinant: +1 when d lies strictly inside the
/// circumcircle of the counterclockwise triangle (a,b,c), -1 outside, 0 on it.
int incircle(Point2 a, Point2 b, Point2 c, Point2 d);

/// In-circle with exact cocircular ties broken by lexicographic symbolic
/// perturbation on the point indices (smallest index carries the largest
/// perturbation). Never returns 0 for distinct non-collinear configurations.
int incircle_perturbed(Point2 a, Point2 b, Point2 c, Point2 d,
                       std::uint32_t ia, std::uint32_t ib, std::uint32_t ic, std::uint32_t id);

double dist_to_set(Point2 x, const PointSet& a);
std::pair<Point2, bool> nearest_point(Point2 x, const PointSet& a, double tie_tolerance);
double hausdorff_pointsets(const PointSet& a, const PointSet& b);

/// Uniform bucket grid over a point span; used to make neighbor and
/// nearest-distance queries cheap during hull construction and membership
/// tests. Holds indices into the caller's point storage.
class PointGrid {
public:
    PointGrid() = default;
    PointGrid(const std::vector<Point2>& pts, double cell_size);
    PointGrid(const std::vector<Point2>& pts, const std::vector<std::uint32_t>& subset,
              double cell_size);

    /// True if some stored point lies strictly within `radius` of c.
    bool any_within(Point2 c, double radius) const;

    /// Exact distance to the nearest stored point, or +inf when empty.
    double nearest_dist(Point2 c) const;

    /// Invokes f(index) for every stored point within `radius` of c
    /// (inclusive).
    template <typename F>
    void for_each_within(Point2 c, double radius, F&& f) const {
        if (count_ == 0) return;
        double r2 = radius * radius;
        auto [i0, j0] = cell_of({c.x - radius, c.y - radius});
        auto [i1, j1] = cell_of({c.x + radius, c.y + radius});
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                for (std::uint32_t idx : bucket(i, j))
                    if (dist_sq((*pts_)[idx], c) <= r2) f(idx);
    }

private:
    std::pair<int, int> cell_of(Point2 p) const;
    const std::vector<std::uint32_t>& bucket(int i, int j) const;

    const std::vector<Point2>* pts_ = nullptr;
    std::vector<std::vector<std::uint32_t>> buckets_;
    double cell_ = 1.0;
    double ox_ = 0.0, oy_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::size_t count_ = 0;
    static const std::vector<std::uint32_t> kEmptyBucket;
};

}  // namespace rollset
