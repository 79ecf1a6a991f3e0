#include "rollset/rchull.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rollset {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double mod_two_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

struct Cut {
    double lo, hi;        // [lo, hi] in [0, 2*pi), hi may exceed 2*pi before splitting
    std::uint32_t owner;  // neighbor that produced the cut
};

// Signed area contribution of one arc to the loop integral
// (1/2) * closed-curve integral of (x dy - y dx).
double arc_area_term(const ArcSegment& a) {
    double s0 = a.start_angle;
    double s1 = a.start_angle + a.sweep;
    double term = a.radius * (a.center.x * (std::sin(s1) - std::sin(s0)) -
                              a.center.y * (std::cos(s1) - std::cos(s0))) +
                  a.radius * a.radius * a.sweep;
    return 0.5 * term;
}

ArcSegment reversed(const ArcSegment& a) {
    return ArcSegment(a.center, a.radius, a.start_angle + a.sweep, -a.sweep);
}

}  // namespace

double RConvexHull::dist_to_center_locus(Point2 x) const {
    double best = std::numeric_limits<double>::infinity();
    grid_free_.for_each_within(x, 2.0 * r_ + 1e-12 * r_, [&](std::uint32_t fi) {
        Point2 c = (*free_positions_)[fi];
        Point2 v = x - c;
        double phi = std::atan2(v.y, v.x);
        double vd = norm(v);
        for (const FreeInterval& iv : free_ivals_[fi]) {
            double off = mod_two_pi(phi - iv.start);
            double d;
            if (off <= iv.sweep) {
                d = std::abs(vd - r_);
            } else {
                Point2 e0 = {c.x + r_ * std::cos(iv.start), c.y + r_ * std::sin(iv.start)};
                Point2 e1 = {c.x + r_ * std::cos(iv.start + iv.sweep),
                             c.y + r_ * std::sin(iv.start + iv.sweep)};
                d = std::sqrt(std::min(dist_sq(x, e0), dist_sq(x, e1)));
            }
            best = std::min(best, d);
        }
    });
    return best;
}

bool RConvexHull::contains(Point2 x) const {
    double d0 = grid_all_.nearest_dist(x);
    if (d0 >= r_) return false;
    if (d0 <= 1e-12 * r_) return true;  // sample points are always inside
    return !(dist_to_center_locus(x) < r_);
}

double RConvexHull::boundary_length() const {
    double total = 0.0;
    for (const HullArc& a : boundary_.arcs) total += a.arc.length();
    return total;
}

PointSet RConvexHull::isolated_points() const {
    std::vector<Point2> pts;
    pts.reserve(isolated_.size());
    for (std::uint32_t i : isolated_) pts.push_back((*sample_)[i]);
    return PointSet(std::move(pts), 0.0);
}

RConvexHull build_hull(const PointSet& sample, double r) {
    if (!(r > 0.0)) throw std::domain_error("build_hull: r must be positive");
    if (sample.empty()) throw std::domain_error("build_hull: empty sample");

    RConvexHull hull;
    hull.sample_ = std::make_shared<const PointSet>(sample);
    hull.free_positions_ = std::make_shared<std::vector<Point2>>();
    hull.r_ = r;
    const PointSet& pts = *hull.sample_;
    const std::size_t n = pts.size();

    double diag = pts.bbox().diagonal();
    double cell = std::max(diag / std::sqrt((double)std::max<std::size_t>(n, 1)), r / 16.0);
    if (!(cell > 0.0)) cell = std::max(r, 1.0);
    hull.grid_all_ = PointGrid(pts.points(), cell);

    // Delaunay adjacency; neighbors closer than 2r cut the circle of
    // admissible empty-disc centers around each point.
    std::vector<std::vector<std::uint32_t>> adj(n);
    if (n >= 2) {
        Triangulation tri = delaunay(pts);
        for (const auto& [key, et] : tri.edges()) {
            auto i = (std::uint32_t)(key >> 32);
            auto j = (std::uint32_t)(key & 0xffffffffu);
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }

    // Free intervals of each point's radius-r circle: directions whose
    // center is at distance >= r from every other sample point. Only
    // Delaunay neighbors can cut (they define the Voronoi cell).
    hull.free_ivals_.clear();
    std::vector<std::int32_t> free_index(n, -1);
    struct Junction {
        Point2 center;
        std::uint32_t i, j;
    };
    std::vector<Junction> junctions;

    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<Cut> cuts;
        for (std::uint32_t j : adj[i]) {
            double d = dist(pts[i], pts[j]);
            if (d >= 2.0 * r) continue;
            double beta = std::acos(std::clamp(d / (2.0 * r), -1.0, 1.0));
            if (!(beta > 0.0)) continue;
            Point2 v = pts[j] - pts[i];
            double phi = mod_two_pi(std::atan2(v.y, v.x));
            double lo = phi - beta, hi = phi + beta;
            if (lo < 0.0) {
                cuts.push_back({lo + kTwoPi, kTwoPi, j});
                cuts.push_back({0.0, hi, j});
            } else if (hi > kTwoPi) {
                cuts.push_back({lo, kTwoPi, j});
                cuts.push_back({0.0, hi - kTwoPi, j});
            } else {
                cuts.push_back({lo, hi, j});
            }
        }

        std::vector<RConvexHull::FreeInterval> ivals;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoint_owners;  // (start owner, end owner)
        if (cuts.empty()) {
            ivals.push_back({0.0, kTwoPi});
        } else {
            std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.lo < b.lo; });
            // Merge overlapping cut blocks, tracking the neighbor that
            // produced each end of a block.
            struct Block {
                double lo, hi;
                std::uint32_t lo_owner, hi_owner;
            };
            std::vector<Block> merged;
            for (const Cut& c : cuts) {
                if (!merged.empty() && c.lo <= merged.back().hi) {
                    if (c.hi > merged.back().hi) {
                        merged.back().hi = c.hi;
                        merged.back().hi_owner = c.owner;
                    }
                } else {
                    merged.push_back({c.lo, c.hi, c.owner, c.owner});
                }
            }
            // Free intervals are the gaps between consecutive blocks, plus
            // the wrap-around gap from the last block back to the first.
            std::size_t m = merged.size();
            for (std::size_t k = 0; k < m; ++k) {
                const Block& cur = merged[k];
                const Block& nxt = merged[(k + 1) % m];
                double a = cur.hi;
                double b = (k + 1 == m) ? nxt.lo + kTwoPi : nxt.lo;
                double sweep = b - a;
                if (sweep <= 1e-15) continue;
                ivals.push_back({mod_two_pi(a), sweep});
                endpoint_owners.push_back({cur.hi_owner, nxt.lo_owner});
            }
        }

        if (!ivals.empty()) {
            free_index[i] = (std::int32_t)hull.free_pts_.size();
            hull.free_pts_.push_back(i);
            hull.free_ivals_.push_back(ivals);
            hull.free_positions_->push_back(pts[i]);
            // Junctions: free-interval endpoints are the intersections of the
            // pair's Voronoi edge with the radius-r circle. Emit each once.
            for (std::size_t k = 0; k < endpoint_owners.size(); ++k) {
                const auto& iv = ivals[k];
                if (iv.sweep >= kTwoPi - 1e-15) continue;  // full circle, no junctions
                auto [ow_start, ow_end] = endpoint_owners[k];
                if (i < ow_start) {
                    double a = iv.start;
                    junctions.push_back({{pts[i].x + r * std::cos(a), pts[i].y + r * std::sin(a)},
                                         i, ow_start});
                }
                if (i < ow_end) {
                    double a = iv.start + iv.sweep;
                    junctions.push_back({{pts[i].x + r * std::cos(a), pts[i].y + r * std::sin(a)},
                                         i, ow_end});
                }
            }
        }
    }

    double cell_free = std::max(cell, r / 8.0);
    hull.grid_free_ = PointGrid(*hull.free_positions_, cell_free);

    // Candidate empty-disc centers, validated by the nearest-sample check.
    const double tol = 1e-9 * r;
    std::vector<HullArc>& arcs = hull.boundary_.arcs;
    for (const Junction& jc : junctions) {
        if (hull.grid_all_.any_within(jc.center, r - tol)) continue;
        Point2 p = pts[jc.i], q = pts[jc.j];
        Point2 m = 0.5 * (p + q);
        double d = dist(p, q);
        Point2 u = (1.0 / d) * perp(q - p);
        double t = dot(jc.center - m, u);
        Point2 dir = (t >= 0.0 ? 1.0 : -1.0) * u;
        double a_p = std::atan2(p.y - jc.center.y, p.x - jc.center.x);
        double a_q = std::atan2(q.y - jc.center.y, q.x - jc.center.x);
        double a_w = std::atan2(dir.y, dir.x);
        double delta = mod_two_pi(a_q - a_p);
        double dw = mod_two_pi(a_w - a_p);
        // Keep the arc on the side where moving the center reduces clearance;
        // discs further along `dir` stay empty and occlude the far side.
        double sweep = (dw < delta) ? delta - kTwoPi : delta;
        HullArc ha;
        ha.arc = ArcSegment(jc.center, r, a_p, sweep);
        ha.endpoint_i = jc.i;
        ha.endpoint_j = jc.j;
        arcs.push_back(ha);
    }

    // Trim away arc portions lying strictly within r of the center locus:
    // those are covered by other empty discs and are not hull boundary.
    {
        std::vector<HullArc> kept;
        const int kSamples = 17;
        const double slack = 1e-12 * r;
        for (const HullArc& ha : arcs) {
            auto clearance = [&](double t) {
                return hull.dist_to_center_locus(ha.arc.point_at(t)) - r;
            };
            double ts[kSamples];
            double gs[kSamples];
            bool any_clear = false, any_occ = false;
            for (int k = 0; k < kSamples; ++k) {
                ts[k] = (k + 1.0) / (kSamples + 1.0);
                gs[k] = clearance(ts[k]);
                (gs[k] >= -slack ? any_clear : any_occ) = true;
            }
            if (!any_occ) {
                kept.push_back(ha);
                continue;
            }
            if (!any_clear) continue;  // fully covered, e.g. a sparse pair's lens arcs
            // Partial: locate sign changes and keep the clear sub-arcs.
            std::vector<std::pair<double, double>> clear_runs;
            double run_start = gs[0] >= -slack ? 0.0 : -1.0;
            for (int k = 0; k <= kSamples; ++k) {
                double t0 = k == 0 ? 0.0 : ts[k - 1];
                double t1 = k == kSamples ? 1.0 : ts[k];
                bool s0 = k == 0 ? (gs[0] >= -slack) : (gs[k - 1] >= -slack);
                bool s1 = k == kSamples ? (gs[kSamples - 1] >= -slack) : (gs[k] >= -slack);
                if (s0 == s1) continue;
                double lo = t0, hi = t1;
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (lo + hi);
                    bool cm = clearance(mid) >= -slack;
                    (cm == s0 ? lo : hi) = mid;
                }
                double crossing = 0.5 * (lo + hi);
                if (s0) {  // clear run ends
                    clear_runs.push_back({run_start, crossing});
                    run_start = -1.0;
                } else {
                    run_start = crossing;
                }
            }
            if (run_start >= 0.0) clear_runs.push_back({run_start, 1.0});
            for (auto [t0, t1] : clear_runs) {
                if (t1 - t0 <= 1e-9) continue;
                double s0 = ha.arc.start_angle + t0 * ha.arc.sweep;
                HullArc part;
                part.arc = ArcSegment(ha.arc.center, r, s0, (t1 - t0) * ha.arc.sweep);
                part.endpoint_i = t0 == 0.0 ? ha.endpoint_i : kNoSample;
                part.endpoint_j = t1 == 1.0 ? ha.endpoint_j : kNoSample;
                kept.push_back(part);
            }
        }
        arcs = std::move(kept);
    }

    // Stitch arcs into closed chains by matching endpoints: sample indices
    // match exactly; trimmed endpoints match geometrically within 1e-9*r.
    {
        struct End {
            std::uint32_t arc;
            int which;  // 0 = start, 1 = end
        };
        std::map<std::uint32_t, std::vector<End>> at_sample;
        std::vector<std::pair<Point2, End>> loose;
        for (std::uint32_t ai = 0; ai < arcs.size(); ++ai) {
            if (arcs[ai].endpoint_i != kNoSample)
                at_sample[arcs[ai].endpoint_i].push_back({ai, 0});
            else
                loose.push_back({arcs[ai].arc.start_point(), {ai, 0}});
            if (arcs[ai].endpoint_j != kNoSample)
                at_sample[arcs[ai].endpoint_j].push_back({ai, 1});
            else
                loose.push_back({arcs[ai].arc.end_point(), {ai, 1}});
        }
        // node id per (arc, which)
        std::vector<std::array<std::int64_t, 2>> node(arcs.size(), {-1, -1});
        std::int64_t next_node = 0;
        std::vector<std::vector<End>> node_ends;
        for (auto& [si, ends] : at_sample) {
            for (const End& e : ends) node[e.arc][e.which] = next_node;
            node_ends.push_back(ends);
            ++next_node;
        }
        double merge_tol = 1e-9 * r;
        std::vector<char> loose_done(loose.size(), 0);
        for (std::size_t a = 0; a < loose.size(); ++a) {
            if (loose_done[a]) continue;
            std::vector<End> group = {loose[a].second};
            loose_done[a] = 1;
            for (std::size_t b = a + 1; b < loose.size(); ++b) {
                if (loose_done[b]) continue;
                if (dist(loose[a].first, loose[b].first) <= merge_tol) {
                    group.push_back(loose[b].second);
                    loose_done[b] = 1;
                }
            }
            for (const End& e : group) node[e.arc][e.which] = next_node;
            node_ends.push_back(group);
            ++next_node;
        }

        std::vector<char> used(arcs.size(), 0);
        for (std::uint32_t start = 0; start < arcs.size(); ++start) {
            if (used[start]) continue;
            std::vector<std::uint32_t> chain;
            std::vector<HullArc> oriented;
            std::uint32_t cur = start;
            int enter_end = 0;  // we traverse cur from its 'enter_end' side
            std::int64_t chain_start_node = node[start][0];
            bool closed = false, stuck = false;
            while (true) {
                used[cur] = 1;
                HullArc h = arcs[cur];
                if (enter_end == 1) {
                    h.arc = reversed(h.arc);
                    std::swap(h.endpoint_i, h.endpoint_j);
                }
                chain.push_back(cur);
                oriented.push_back(h);
                std::int64_t exit_node = node[cur][1 - enter_end];
                if (exit_node == chain_start_node) {
                    closed = true;
                    break;
                }
                // find an unused end at exit_node other than (cur, 1-enter_end)
                bool found = false;
                for (const End& e : node_ends[(std::size_t)exit_node]) {
                    if (e.arc == cur && e.which == 1 - enter_end) continue;
                    if (used[e.arc]) continue;
                    cur = e.arc;
                    enter_end = e.which;
                    found = true;
                    break;
                }
                if (!found) {
                    stuck = true;
                    break;
                }
            }
            if (closed) {
                // Orient so material lies on the left (clockwise arcs).
                int pos = 0, neg = 0;
                for (const HullArc& h : oriented) (h.arc.sweep > 0 ? pos : neg)++;
                if (pos > neg) {
                    std::reverse(oriented.begin(), oriented.end());
                    std::reverse(chain.begin(), chain.end());
                    for (HullArc& h : oriented) {
                        h.arc = reversed(h.arc);
                        std::swap(h.endpoint_i, h.endpoint_j);
                    }
                }
                int cid = (int)hull.boundary_.chains.size();
                for (std::size_t k = 0; k < chain.size(); ++k) {
                    oriented[k].chain_id = cid;
                    arcs[chain[k]] = oriented[k];
                }
                hull.boundary_.chains.push_back(chain);
            } else if (stuck) {
                ChainDiagnostic diag;
                diag.fragment = chain;
                diag.message = "chain failed to close";
                hull.boundary_.diagnostics.push_back(diag);
            }
        }
    }

    // Chain nesting and connected components of the arc-bounded region:
    // positive-area chains (material inside) start components, negative-area
    // chains are hole boundaries assigned to the tightest enclosing outer.
    {
        const auto& chains = hull.boundary_.chains;
        std::size_t nc = chains.size();
        std::vector<double> area(nc, 0.0);
        for (std::size_t c = 0; c < nc; ++c)
            for (std::uint32_t ai : chains[c]) area[c] += arc_area_term(arcs[ai].arc);

        auto point_in_chain = [&](std::size_t c, Point2 pt) {
            for (int attempt = 0; attempt < 12; ++attempt) {
                double y0 = pt.y + ((attempt + 1) / 2) * (attempt % 2 ? -1.0 : 1.0) * 3e-7 * r;
                int crossings = 0;
                bool degenerate = false;
                for (std::uint32_t ai : chains[c]) {
                    const ArcSegment& a = arcs[ai].arc;
                    double dy = y0 - a.center.y;
                    if (std::abs(std::abs(dy) - a.radius) < 1e-9 * r) { degenerate = true; break; }
                    if (std::abs(dy) >= a.radius) continue;
                    double dx = std::sqrt(a.radius * a.radius - dy * dy);
                    for (double sx : {-dx, dx}) {
                        double x = a.center.x + sx;
                        if (std::abs(x - pt.x) < 1e-9 * r) { degenerate = true; break; }
                        if (x <= pt.x) continue;
                        double theta = std::atan2(dy, sx);
                        double off = a.sweep >= 0 ? mod_two_pi(theta - a.start_angle)
                                                  : mod_two_pi(a.start_angle - theta);
                        double lim = std::abs(a.sweep);
                        if (off < 1e-9 || std::abs(off - lim) < 1e-9) { degenerate = true; break; }
                        if (off <= lim) ++crossings;
                    }
                    if (degenerate) break;
                }
                if (!degenerate) return (crossings % 2) == 1;
            }
            return false;  // unresolved; treated as outside
        };

        auto& comp = hull.boundary_.component_ids;
        comp.assign(nc, -1);
        int next_comp = 0;
        std::vector<std::size_t> outer;
        for (std::size_t c = 0; c < nc; ++c)
            if (area[c] > 0.0) {
                comp[c] = next_comp++;
                outer.push_back(c);
            }
        for (std::size_t c = 0; c < nc; ++c) {
            if (comp[c] >= 0) continue;
            Point2 rep = arcs[chains[c][0]].arc.point_at(0.5);
            double best_area = std::numeric_limits<double>::infinity();
            int best = -1;
            for (std::size_t o : outer) {
                if (area[o] < best_area && point_in_chain(o, rep)) {
                    best_area = area[o];
                    best = comp[o];
                }
            }
            comp[c] = best >= 0 ? best : next_comp++;
        }
        hull.boundary_.component_count = next_comp;
    }

    // Classification: regular points sit on surviving arcs; points whose
    // whole circle of admissible centers survives, or whose incident arcs
    // were all covered, are singleton components.
    {
        std::vector<char> on_arc(n, 0);
        for (const HullArc& a : arcs) {
            if (a.endpoint_i != kNoSample) on_arc[a.endpoint_i] = 1;
            if (a.endpoint_j != kNoSample) on_arc[a.endpoint_j] = 1;
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            if (on_arc[i]) {
                hull.regular_.push_back(i);
            } else if (free_index[i] >= 0) {
                hull.isolated_.push_back(i);
            }
        }
    }

    return hull;
}

bool hull_membership_oracle(const PointSet& sample, double r, Point2 x, double pitch) {
    if (sample.empty()) throw std::domain_error("hull_membership_oracle: empty sample");
    if (!(pitch > 0.0) || !(r > 0.0)) throw std::domain_error("hull_membership_oracle: bad parameters");
    double diag = sample.bbox().diagonal();
    PointGrid grid(sample.points(),
                   std::max(diag / std::sqrt((double)sample.size()), r / 16.0));
    int kmax = (int)std::floor(r / pitch);
    for (int j = -kmax; j <= kmax; ++j) {
        double yy = x.y + j * pitch;
        double half = r * r - (double)j * pitch * j * pitch;
        if (half <= 0.0) continue;
        int imax = (int)std::floor(std::sqrt(half) / pitch);
        int i = -imax;
        while (i <= imax) {
            Point2 y{x.x + i * pitch, yy};
            if (dist_sq(y, x) < r * r) {
                double d = grid.nearest_dist(y);
                if (d >= r) return false;  // outside: y is an admissible center covering x
                // Centers closer than (r - d) to y fail too; skip them.
                int skip = (int)std::floor((r - d) / pitch);
                i += std::max(1, skip);
                continue;
            }
            ++i;
        }
    }
    return true;
}

}  // namespace rollset
