#include "rollset/geom.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace rollset {

double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

ArcSegment::ArcSegment(Point2 c, double r, double start, double sw)
    : center(c), radius(r), start_angle(normalize_angle(start)), sweep(sw) {
    if (!(r > 0.0)) throw std::invalid_argument("ArcSegment: radius must be positive");
    if (std::abs(sw) > 2.0 * kPi + 1e-12) throw std::invalid_argument("ArcSegment: |sweep| exceeds 2*pi");
}

double arc_length(const ArcSegment& a) { return a.length(); }

double dist_to_arc(Point2 p, const ArcSegment& a) {
    Point2 v = p - a.center;
    double phi = std::atan2(v.y, v.x);
    // Angular offset from start in the sweep direction, in [0, 2*pi).
    double off = a.sweep >= 0.0 ? phi - a.start_angle : a.start_angle - phi;
    off = std::fmod(off, 2.0 * kPi);
    if (off < 0.0) off += 2.0 * kPi;
    if (off <= std::abs(a.sweep)) return std::abs(norm(v) - a.radius);
    return std::sqrt(std::min(dist_sq(p, a.start_point()), dist_sq(p, a.end_point())));
}

PointSet::PointSet(std::vector<Point2> pts, double dedupe_tolerance) {
    for (const Point2& p : pts)
        if (!p.finite()) throw std::invalid_argument("PointSet: non-finite coordinate");
    BoundingBox raw;
    for (const Point2& p : pts) raw.expand(p);
    tol_ = dedupe_tolerance >= 0.0 ? dedupe_tolerance
                                   : (pts.empty() ? 0.0 : 1e-12 * raw.diagonal());

    if (tol_ == 0.0) {
        // Merge exact duplicates only.
        struct Hash {
            std::size_t operator()(const std::pair<double, double>& p) const {
                std::hash<double> h;
                return h(p.first) * 1000003 ^ h(p.second);
            }
        };
        std::unordered_map<std::pair<double, double>, bool, Hash> seen;
        for (const Point2& p : pts)
            if (seen.emplace(std::pair{p.x, p.y}, true).second) points_.push_back(p);
    } else {
        double cell = tol_;
        auto key = [cell](Point2 p) {
            return std::pair<long long, long long>{(long long)std::floor(p.x / cell),
                                                   (long long)std::floor(p.y / cell)};
        };
        struct KeyHash {
            std::size_t operator()(const std::pair<long long, long long>& k) const {
                return std::hash<long long>()(k.first) * 1000003 ^ std::hash<long long>()(k.second);
            }
        };
        std::unordered_map<std::pair<long long, long long>, std::vector<std::uint32_t>, KeyHash> grid;
        double t2 = tol_ * tol_;
        for (const Point2& p : pts) {
            auto [ci, cj] = key(p);
            bool dup = false;
            for (long long j = cj - 1; j <= cj + 1 && !dup; ++j)
                for (long long i = ci - 1; i <= ci + 1 && !dup; ++i) {
                    auto it = grid.find({i, j});
                    if (it == grid.end()) continue;
                    for (std::uint32_t idx : it->second)
                        if (dist_sq(points_[idx], p) <= t2) {
                            dup = true;
                            break;
                        }
                }
            if (!dup) {
                grid[key(p)].push_back((std::uint32_t)points_.size());
                points_.push_back(p);
            }
        }
    }
    for (const Point2& p : points_) bbox_.expand(p);
}

PointSet read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty point file: " + path);
    // Tolerate an optional UTF-8 BOM and whitespace around the header.
    std::string hdr = line;
    if (hdr.rfind("\xEF\xBB\xBF", 0) == 0) hdr = hdr.substr(3);
    hdr.erase(std::remove_if(hdr.begin(), hdr.end(), [](char c) { return std::isspace((unsigned char)c); }),
              hdr.end());
    if (hdr != "x,y") throw std::runtime_error(path + ": expected header 'x,y'");
    std::vector<Point2> pts;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string fx, fy, extra;
        if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ','))
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": missing field");
        if (std::getline(ss, extra, ','))
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": too many fields");
        try {
            std::size_t usedx = 0, usedy = 0;
            double x = std::stod(fx, &usedx);
            double y = std::stod(fy, &usedy);
            if (!std::isfinite(x) || !std::isfinite(y))
                throw std::invalid_argument("non-finite");
            pts.push_back({x, y});
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": bad numeric field");
        }
    }
    return PointSet(std::move(pts));
}

void write_points_csv(const std::string& path, const PointSet& ps) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write point file: " + path);
    out << "x,y\n";
    char buf[80];
    for (const Point2& p : ps.points()) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
        out << buf;
    }
}

namespace {

// Filter constants, computed once. epsilon is 2^-53.
struct PredicateBounds {
    double epsilon;
    double ccw_a;
    double icc_a;
    PredicateBounds() {
        epsilon = 1.0;
        while (1.0 + epsilon / 2.0 != 1.0) epsilon /= 2.0;
        ccw_a = (3.0 + 16.0 * epsilon) * epsilon;
        icc_a = (10.0 + 96.0 * epsilon) * epsilon;
    }
};
const PredicateBounds kBounds;

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

int orient2d_exact(Point2 a, Point2 b, Point2 c) {
    mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    mpq_class det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sgn(det);
}

int incircle_exact(Point2 a, Point2 b, Point2 c, Point2 d) {
    mpq_class adx = mpq_class(a.x) - mpq_class(d.x), ady = mpq_class(a.y) - mpq_class(d.y);
    mpq_class bdx = mpq_class(b.x) - mpq_class(d.x), bdy = mpq_class(b.y) - mpq_class(d.y);
    mpq_class cdx = mpq_class(c.x) - mpq_class(d.x), cdy = mpq_class(c.y) - mpq_class(d.y);
    mpq_class alift = adx * adx + ady * ady;
    mpq_class blift = bdx * bdx + bdy * bdy;
    mpq_class clift = cdx * cdx + cdy * cdy;
    mpq_class det = alift * (bdx * cdy - bdy * cdx) + blift * (cdx * ady - cdy * adx) +
                    clift * (adx * bdy - ady * bdx);
    return sgn(det);
}

}  // namespace

int orient2d(Point2 a, Point2 b, Point2 c) {
    double detleft = (a.x - c.x) * (b.y - c.y);
    double detright = (a.y - c.y) * (b.x - c.x);
    double det = detleft - detright;
    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return sign_of(det);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return sign_of(det);
        detsum = -detleft - detright;
    } else {
        return sign_of(det);
    }
    if (std::abs(det) >= kBounds.ccw_a * detsum) return sign_of(det);
    return orient2d_exact(a, b, c);
}

int incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;

    double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    double cdxady = cdx * ady, adxcdy = adx * cdy;
    double adxbdy = adx * bdy, bdxady = bdx * ady;
    double alift = adx * adx + ady * ady;
    double blift = bdx * bdx + bdy * bdy;
    double clift = cdx * cdx + cdy * cdy;

    double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                       (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                       (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) > kBounds.icc_a * permanent) return sign_of(det);
    return incircle_exact(a, b, c, d);
}

int incircle_perturbed(Point2 a, Point2 b, Point2 c, Point2 d,
                       std::uint32_t ia, std::uint32_t ib, std::uint32_t ic, std::uint32_t id) {
    int s = incircle(a, b, c, d);
    if (s != 0) return s;
    // Exactly cocircular. Perturb the lifted weights w_i -> w_i - eps_i with
    // eps ordered by index (smaller index, larger eps); the first nonzero
    // cofactor in that order decides. Cofactor of row p is the orientation of
    // the remaining rows, with alternating sign.
    struct Term {
        std::uint32_t index;
        int row;  // 0=a,1=b,2=c,3=d
    };
    Term terms[4] = {{ia, 0}, {ib, 1}, {ic, 2}, {id, 3}};
    std::sort(terms, terms + 4, [](Term l, Term r) { return l.index < r.index; });
    for (const Term& t : terms) {
        int o;
        int rowsign;
        switch (t.row) {
            case 0: o = orient2d(b, c, d); rowsign = -1; break;
            case 1: o = orient2d(a, c, d); rowsign = +1; break;
            case 2: o = orient2d(a, b, d); rowsign = -1; break;
            default: o = orient2d(a, b, c); rowsign = +1; break;
        }
        if (o != 0) return rowsign * o;
    }
    return 0;  // all four collinear
}

double dist_to_set(Point2 x, const PointSet& a) {
    if (a.empty()) throw std::domain_error("dist_to_set: empty point set");
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& p : a.points()) best = std::min(best, dist_sq(x, p));
    return std::sqrt(best);
}

std::pair<Point2, bool> nearest_point(Point2 x, const PointSet& a, double tie_tolerance) {
    if (a.empty()) throw std::domain_error("nearest_point: empty point set");
    if (tie_tolerance < 0.0) throw std::invalid_argument("nearest_point: negative tie tolerance");
    std::size_t best = 0;
    double bestd = dist(x, a[0]);
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < a.size(); ++i) {
        double d = dist(x, a[i]);
        if (d < bestd) {
            second = bestd;
            bestd = d;
            best = i;
        } else {
            second = std::min(second, d);
        }
    }
    bool unique = !(second - bestd <= tie_tolerance);
    return {a[best], unique};
}

double hausdorff_pointsets(const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty()) throw std::domain_error("hausdorff_pointsets: empty point set");
    auto directed = [](const PointSet& s, const PointSet& t) {
        double worst = 0.0;
        for (const Point2& p : s.points()) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point2& q : t.points()) best = std::min(best, dist_sq(p, q));
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

const std::vector<std::uint32_t> PointGrid::kEmptyBucket;

PointGrid::PointGrid(const std::vector<Point2>& pts, double cell_size) : pts_(&pts), cell_(cell_size) {
    std::vector<std::uint32_t> all(pts.size());
    for (std::uint32_t i = 0; i < pts.size(); ++i) all[i] = i;
    *this = PointGrid(pts, all, cell_size);
}

PointGrid::PointGrid(const std::vector<Point2>& pts, const std::vector<std::uint32_t>& subset,
                     double cell_size)
    : pts_(&pts), cell_(cell_size) {
    if (!(cell_ > 0.0)) throw std::invalid_argument("PointGrid: cell size must be positive");
    count_ = subset.size();
    if (count_ == 0) return;
    BoundingBox bb;
    for (std::uint32_t i : subset) bb.expand(pts[i]);
    ox_ = bb.xmin;
    oy_ = bb.ymin;
    nx_ = std::max(1, (int)std::floor(bb.width() / cell_) + 1);
    ny_ = std::max(1, (int)std::floor(bb.height() / cell_) + 1);
    buckets_.resize((std::size_t)nx_ * ny_);
    for (std::uint32_t i : subset) {
        auto [cx, cy] = cell_of(pts[i]);
        buckets_[(std::size_t)cy * nx_ + cx].push_back(i);
    }
}

std::pair<int, int> PointGrid::cell_of(Point2 p) const {
    int i = (int)std::floor((p.x - ox_) / cell_);
    int j = (int)std::floor((p.y - oy_) / cell_);
    return {std::clamp(i, 0, nx_ - 1), std::clamp(j, 0, ny_ - 1)};
}

const std::vector<std::uint32_t>& PointGrid::bucket(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return kEmptyBucket;
    return buckets_[(std::size_t)j * nx_ + i];
}

bool PointGrid::any_within(Point2 c, double radius) const {
    if (count_ == 0) return false;
    double r2 = radius * radius;
    int i0 = (int)std::floor((c.x - radius - ox_) / cell_);
    int i1 = (int)std::floor((c.x + radius - ox_) / cell_);
    int j0 = (int)std::floor((c.y - radius - oy_) / cell_);
    int j1 = (int)std::floor((c.y + radius - oy_) / cell_);
    i0 = std::max(i0, 0); j0 = std::max(j0, 0);
    i1 = std::min(i1, nx_ - 1); j1 = std::min(j1, ny_ - 1);
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
            for (std::uint32_t idx : bucket(i, j))
                if (dist_sq((*pts_)[idx], c) < r2) return true;
    return false;
}

double PointGrid::nearest_dist(Point2 c) const {
    if (count_ == 0) return std::numeric_limits<double>::infinity();
    // Virtual (unclamped) cell of the query; rings expand from it so the
    // (ring-1)*cell lower bound stays valid for queries outside the grid.
    int vi = (int)std::floor((c.x - ox_) / cell_);
    int vj = (int)std::floor((c.y - oy_) / cell_);
    // First ring that touches the grid rectangle, and the last that could.
    int dx = vi < 0 ? -vi : (vi >= nx_ ? vi - nx_ + 1 : 0);
    int dy = vj < 0 ? -vj : (vj >= ny_ ? vj - ny_ + 1 : 0);
    int ring0 = std::max(dx, dy);
    int ringmax = std::max(std::max(std::abs(vi), std::abs(vi - (nx_ - 1))),
                           std::max(std::abs(vj), std::abs(vj - (ny_ - 1))));
    double best2 = std::numeric_limits<double>::infinity();
    auto scan = [&](int i, int j) {
        for (std::uint32_t idx : bucket(i, j)) best2 = std::min(best2, dist_sq((*pts_)[idx], c));
    };
    for (int ring = ring0; ring <= ringmax; ++ring) {
        if (best2 < std::numeric_limits<double>::infinity()) {
            double bound = (double)(ring - 1) * cell_;
            if (bound > 0.0 && bound * bound > best2) break;
        }
        if (ring == 0) {
            scan(vi, vj);
            continue;
        }
        int i0 = std::max(vi - ring, 0), i1 = std::min(vi + ring, nx_ - 1);
        int jt = vj - ring, jb = vj + ring;
        if (jt >= 0 && jt < ny_)
            for (int i = i0; i <= i1; ++i) scan(i, jt);
        if (jb != jt && jb >= 0 && jb < ny_)
            for (int i = i0; i <= i1; ++i) scan(i, jb);
        int j0 = std::max(vj - ring + 1, 0), j1 = std::min(vj + ring - 1, ny_ - 1);
        int il = vi - ring, ir = vi + ring;
        if (il >= 0 && il < nx_)
            for (int j = j0; j <= j1; ++j) scan(il, j);
        if (ir != il && ir >= 0 && ir < nx_)
            for (int j = j0; j <= j1; ++j) scan(ir, j);
    }
    return std::sqrt(best2);
}

}  // namespace rollset
