#include "rollset/delaunay.hpp"

#include <algorithm>
#include <numeric>

namespace rollset {

Point2 circumcenter(Point2 a, Point2 b, Point2 c) {
    // Translated to a for stability.
    double bx = b.x - a.x, by = b.y - a.y;
    double cx = c.x - a.x, cy = c.y - a.y;
    double d = 2.0 * (bx * cy - by * cx);
    double b2 = bx * bx + by * by;
    double c2 = cx * cx + cy * cy;
    double ux = (cy * b2 - by * c2) / d;
    double uy = (bx * c2 - cx * b2) / d;
    return {a.x + ux, a.y + uy};
}

Point2 Triangulation::circumcenter(std::uint32_t tri_id) const {
    const auto& t = triangles[tri_id];
    return rollset::circumcenter(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
}

namespace {

// Quad-edge mesh. Directed edge ids come in groups of four (e, rot e,
// sym e, invrot e); only the primal quarters (id % 2 == 0) carry vertices.
class QuadEdge {
public:
    explicit QuadEdge(const std::vector<Point2>& pts) : pts_(&pts) {}

    int make_edge(std::uint32_t org, std::uint32_t dst) {
        int e;
        if (!free_.empty()) {
            e = free_.back();
            free_.pop_back();
        } else {
            e = (int)next_.size();
            next_.resize(e + 4);
            vert_.resize(e + 4, UINT32_MAX);
            alive_.resize(e / 4 + 1, 0);
        }
        next_[e] = e;
        next_[sym(e)] = sym(e);
        next_[rot(e)] = invrot(e);
        next_[invrot(e)] = rot(e);
        vert_[e] = org;
        vert_[sym(e)] = dst;
        alive_[e / 4] = 1;
        return e;
    }

    static int rot(int e) { return (e & ~3) | ((e + 1) & 3); }
    static int invrot(int e) { return (e & ~3) | ((e + 3) & 3); }
    static int sym(int e) { return (e & ~3) | ((e + 2) & 3); }

    int onext(int e) const { return next_[e]; }
    int oprev(int e) const { return rot(next_[rot(e)]); }
    int lnext(int e) const { return rot(next_[invrot(e)]); }
    int lprev(int e) const { return sym(next_[e]); }
    int rprev(int e) const { return next_[sym(e)]; }

    std::uint32_t org(int e) const { return vert_[e]; }
    std::uint32_t dest(int e) const { return vert_[sym(e)]; }
    Point2 orgp(int e) const { return (*pts_)[vert_[e]]; }
    Point2 destp(int e) const { return (*pts_)[vert_[sym(e)]]; }

    void splice(int a, int b) {
        int alpha = rot(next_[a]);
        int beta = rot(next_[b]);
        std::swap(next_[a], next_[b]);
        std::swap(next_[alpha], next_[beta]);
    }

    int connect(int a, int b) {
        int e = make_edge(dest(a), org(b));
        splice(e, lnext(a));
        splice(sym(e), b);
        return e;
    }

    void delete_edge(int e) {
        splice(e, oprev(e));
        splice(sym(e), oprev(sym(e)));
        alive_[e / 4] = 0;
        free_.push_back(e & ~3);
    }

    std::size_t group_count() const { return alive_.size(); }
    bool group_alive(std::size_t g) const { return alive_[g] != 0; }

private:
    const std::vector<Point2>* pts_;
    std::vector<int> next_;
    std::vector<std::uint32_t> vert_;
    std::vector<char> alive_;
    std::vector<int> free_;
};

struct Builder {
    QuadEdge mesh;
    const std::vector<Point2>& pts;        // sorted coordinates
    const std::vector<std::uint32_t>& ids;  // sorted position -> original index

    Builder(const std::vector<Point2>& p, const std::vector<std::uint32_t>& original)
        : mesh(p), pts(p), ids(original) {}

    bool right_of(std::uint32_t v, int e) const {
        return orient2d(pts[v], mesh.destp(e), mesh.orgp(e)) > 0;
    }
    bool left_of(std::uint32_t v, int e) const {
        return orient2d(pts[v], mesh.orgp(e), mesh.destp(e)) > 0;
    }
    // Strictly-inside test with index perturbation, on original indices so
    // cocircular resolution does not depend on the sort.
    bool in_circle(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
        return incircle_perturbed(pts[a], pts[b], pts[c], pts[d], ids[a], ids[b], ids[c], ids[d]) > 0;
    }

    // Returns (le, re): counterclockwise hull edge out of the leftmost vertex
    // and clockwise hull edge out of the rightmost.
    std::pair<int, int> build(std::uint32_t lo, std::uint32_t hi) {
        std::uint32_t n = hi - lo;
        if (n == 2) {
            int a = mesh.make_edge(lo, lo + 1);
            return {a, QuadEdge::sym(a)};
        }
        if (n == 3) {
            int a = mesh.make_edge(lo, lo + 1);
            int b = mesh.make_edge(lo + 1, lo + 2);
            mesh.splice(QuadEdge::sym(a), b);
            int o = orient2d(pts[lo], pts[lo + 1], pts[lo + 2]);
            if (o > 0) {
                mesh.connect(b, a);
                return {a, QuadEdge::sym(b)};
            }
            if (o < 0) {
                int c = mesh.connect(b, a);
                return {QuadEdge::sym(c), c};
            }
            return {a, QuadEdge::sym(b)};  // collinear triple
        }

        std::uint32_t mid = lo + n / 2;
        auto [ldo, ldi] = build(lo, mid);
        auto [rdi, rdo] = build(mid, hi);

        // Lower common tangent.
        for (;;) {
            if (left_of(mesh.org(rdi), ldi)) {
                ldi = mesh.lnext(ldi);
            } else if (right_of(mesh.org(ldi), rdi)) {
                rdi = mesh.rprev(rdi);
            } else {
                break;
            }
        }

        int basel = mesh.connect(QuadEdge::sym(rdi), ldi);
        if (mesh.org(ldi) == mesh.org(ldo)) ldo = QuadEdge::sym(basel);
        if (mesh.org(rdi) == mesh.org(rdo)) rdo = basel;

        for (;;) {
            auto valid = [&](int e) { return right_of(mesh.dest(e), basel); };

            int lcand = mesh.onext(QuadEdge::sym(basel));
            if (valid(lcand)) {
                while (in_circle(mesh.dest(basel), mesh.org(basel), mesh.dest(lcand),
                                 mesh.dest(mesh.onext(lcand)))) {
                    int t = mesh.onext(lcand);
                    mesh.delete_edge(lcand);
                    lcand = t;
                }
            }
            int rcand = mesh.oprev(basel);
            if (valid(rcand)) {
                while (in_circle(mesh.dest(basel), mesh.org(basel), mesh.dest(rcand),
                                 mesh.dest(mesh.oprev(rcand)))) {
                    int t = mesh.oprev(rcand);
                    mesh.delete_edge(rcand);
                    rcand = t;
                }
            }
            bool lvalid = valid(lcand);
            bool rvalid = valid(rcand);
            if (!lvalid && !rvalid) break;
            if (!lvalid || (rvalid && in_circle(mesh.dest(lcand), mesh.org(lcand), mesh.org(rcand),
                                                mesh.dest(rcand)))) {
                basel = mesh.connect(rcand, QuadEdge::sym(basel));
            } else {
                basel = mesh.connect(QuadEdge::sym(basel), QuadEdge::sym(lcand));
            }
        }
        return {ldo, rdo};
    }
};

}  // namespace

Triangulation delaunay(const PointSet& a) {
    Triangulation out;
    out.vertices = a;
    std::uint32_t n = (std::uint32_t)a.size();
    if (n < 2) return out;

    // Sort positions lexicographically; keep the map back to input order.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
        if (a[i].x != a[j].x) return a[i].x < a[j].x;
        return a[i].y < a[j].y;
    });
    std::vector<Point2> sorted(n);
    for (std::uint32_t k = 0; k < n; ++k) sorted[k] = a[order[k]];

    Builder builder(sorted, order);
    builder.build(0, n);
    const QuadEdge& mesh = builder.mesh;

    // Extract faces: every left cycle of length three whose vertices turn
    // counterclockwise is a triangle; the outer face winds clockwise.
    std::unordered_map<std::uint64_t, EdgeTriangles>& edges = out.edges_;
    std::vector<char> visited;
    std::size_t groups = mesh.group_count();
    visited.assign(groups * 4, 0);

    auto record_edge = [&](std::uint32_t i, std::uint32_t j) {
        edges.try_emplace(Triangulation::edge_key(i, j));
    };

    for (std::size_t g = 0; g < groups; ++g) {
        if (!mesh.group_alive(g)) continue;
        int base = (int)(g * 4);
        record_edge(order[mesh.org(base)], order[mesh.dest(base)]);
        for (int q = 0; q < 4; q += 2) {
            int e0 = base + q;
            if (visited[e0]) continue;
            int cycle[4];
            int len = 0;
            int e = e0;
            do {
                if (len < 4) cycle[len] = e;
                ++len;
                visited[e] = 1;
                e = mesh.lnext(e);
            } while (e != e0 && len <= 4);
            if (len != 3) continue;
            std::uint32_t v0 = mesh.org(cycle[0]);
            std::uint32_t v1 = mesh.org(cycle[1]);
            std::uint32_t v2 = mesh.org(cycle[2]);
            if (orient2d(sorted[v0], sorted[v1], sorted[v2]) <= 0) continue;
            std::uint32_t i0 = order[v0], i1 = order[v1], i2 = order[v2];
            std::int32_t tid = (std::int32_t)out.triangles.size();
            out.triangles.push_back({i0, i1, i2});
            for (auto [p, q2] : {std::pair{i0, i1}, {i1, i2}, {i2, i0}}) {
                EdgeTriangles& et = edges[Triangulation::edge_key(p, q2)];
                if (et.count < 2) et.tri[et.count] = tid;
                ++et.count;
            }
        }
    }
    return out;
}

}  // namespace rollset
