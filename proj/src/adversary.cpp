#include "omegaprobe/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "omegaprobe/cloud.hpp"

namespace omegaprobe {

namespace {

constexpr double kAngleMargin = 0.01;    // witness angles stay this far above omega
constexpr double kFlatMargin = 2e-5;     // and this far below pi
constexpr double kReach = 0.95;          // witness stays inside this radius
constexpr double kClearance = 1e-7;      // non-touching vertices keep off every answered line
constexpr double kRoomyGap = 0.05;      // turning a gap needs before it takes another reveal
constexpr double kReplayTol = 1e-9;
constexpr double kSameTol = 1e-12;

bool is_right_angle(double omega) { return std::abs(omega - kPi / 2) <= 1e-12; }

std::vector<DirectedLine> disc_sides(double radius, int count) {
    std::vector<DirectedLine> out;
    for (int k = 0; k < count; ++k) {
        Vec nrm = unit_at(kTwoPi * k / count);
        out.push_back({radius * nrm, left_normal(nrm)});
    }
    return out;
}

// vertices either lie on a line (within tol) or keep clear of it
bool off_or_on(double signed_dist) { return signed_dist <= kReplayTol || signed_dist >= kClearance; }

bool clear_of(const ConvexPolygon& poly, const DirectedLine& line, const ProbeResult& r) {
    if (!r) {
        double lo = 1e300, hi = -1e300;
        for (const auto& v : poly.vertices()) {
            double s = cross(line.direction, v - line.origin);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        return lo >= kClearance || hi <= -kClearance;
    }
    for (const auto& v : poly.vertices()) {
        if (!off_or_on(cross(r->dir1, v - r->q))) return false;
        if (!off_or_on(-cross(r->dir2, v - r->q))) return false;
    }
    return true;
}

Point incenter(const Point& a, const Point& b, const Point& c) {
    double la = (b - c).norm(), lb = (a - c).norm(), lc = (a - b).norm();
    return (la * a + lb * b + lc * c) / (la + lb + lc);
}

// Farthest point beyond the chord (chain[gap], chain[gap+1]) that stays
// consistent with every answer and inside the cone of the neighbouring chords.
std::optional<Point> far_corner(const InfoLedger& led, const std::vector<Point>& ch, std::size_t gap) {
    const Point& a = ch[gap];
    const Point& b = ch[(gap + 1) % ch.size()];
    auto extra = led.miss_sides(Point(0, 0));
    auto disc = disc_sides(kReach, 48);
    extra.insert(extra.end(), disc.begin(), disc.end());
    if (ch.size() >= 3) {
        // stay inside the cone of the neighbouring edges so the hull keeps every revealed point
        const Point& before = ch[(gap + ch.size() - 1) % ch.size()];
        const Point& after = ch[(gap + 2) % ch.size()];
        extra.push_back({a, (a - before).normalized()});
        extra.push_back({b, (after - b).normalized()});
    }
    auto reg = feasible_edge_region(ch, gap, led.wedges(), 2.0, extra);
    if (reg.empty || reg.degenerate) return std::nullopt;

    Vec d = (b - a).normalized();
    Point far = a;
    double best = 0.0;
    for (const auto& v : reg.boundary) {
        double h = -cross(d, v - a);
        if (h > best) {
            best = h;
            far = v;
        }
    }
    if (best <= 1e-9) return std::nullopt;
    return far;
}

// Smallest turning still available in any open gap; a gap whose far corner is
// nearly flat can take few more vertices.
double turning_room(const InfoLedger& led) {
    auto ch = led.chain();
    if (ch.size() < 2) return kPi;
    auto conf = led.confirmed(ch);
    double room = kPi;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (conf[i]) continue;
        auto far = far_corner(led, ch, i);
        if (!far) return 0.0;
        const Point& a = ch[i];
        const Point& b = ch[(i + 1) % ch.size()];
        Vec u = (a - *far).normalized(), v = (b - *far).normalized();
        double apex = std::acos(std::clamp(u.dot(v), -1.0, 1.0));
        room = std::min(room, kPi - apex);
    }
    return room;
}

}  // namespace

// ---------------------------------------------------------------- ledger

bool InfoLedger::has(const Point& x) const {
    for (const auto& p : pts_)
        if ((p - x).norm() <= tol_) return true;
    return false;
}

void InfoLedger::add(const DirectedLine& line, const ProbeResult& r) {
    if (!r) {
        misses_.push_back(line);
        return;
    }
    outs_.push_back(*r);
    if (!has(r->p1)) pts_.push_back(r->p1);
    if (!has(r->p2)) pts_.push_back(r->p2);
}

std::vector<Point> InfoLedger::chain() const {
    if (pts_.size() <= 2) return pts_;
    return convex_hull(pts_);
}

bool InfoLedger::pinned(const Point& a, const Point& b) const {
    for (const auto& o : outs_) {
        for (int arm = 0; arm < 2; ++arm) {
            const Vec& d = arm == 0 ? o.dir1 : o.dir2;
            if (std::abs(cross(d, a - o.q)) > tol_ || std::abs(cross(d, b - o.q)) > tol_) continue;
            double along = (b - a).dot(d);
            if (arm == 0 ? along > 0 : along < 0) return true;
        }
    }
    return false;
}

std::vector<bool> InfoLedger::confirmed(const std::vector<Point>& ch) const {
    std::vector<bool> out(ch.size(), false);
    if (ch.size() < 2) return out;
    for (std::size_t i = 0; i < ch.size(); ++i) out[i] = pinned(ch[i], ch[(i + 1) % ch.size()]);
    return out;
}

int InfoLedger::unconfirmed() const {
    auto ch = chain();
    auto c = confirmed(ch);
    return static_cast<int>(std::count(c.begin(), c.end(), false));
}

std::vector<Wedge> InfoLedger::wedges() const {
    std::vector<Wedge> out;
    for (const auto& o : outs_) out.push_back({o.q, o.dir1, o.dir2});
    return out;
}

std::vector<DirectedLine> InfoLedger::miss_sides(const Point& inside) const {
    std::vector<DirectedLine> out;
    for (const auto& l : misses_) {
        if (cross(l.direction, inside - l.origin) >= 0)
            out.push_back(l);
        else
            out.push_back({l.origin, -l.direction});
    }
    return out;
}

// ---------------------------------------------------------------- adversary

std::string stage_name(AdversaryStage s) {
    switch (s) {
        case AdversaryStage::Init: return "init";
        case AdversaryStage::Grow: return "grow";
        case AdversaryStage::Confirm: return "confirm";
        case AdversaryStage::Final: return "final";
    }
    return "?";
}

Adversary::Adversary(double omega, int n, std::uint64_t seed) : omega_(omega), n_(n), rng_(seed) {
    check_omega(omega);
    if (n < 4) throw InvalidParams("adversary needs n >= 4");
    if (is_right_angle(omega) && n < 5) throw InvalidParams("adversary needs n >= 5 at omega = pi/2");
}

Adversary new_adversary(double omega, int n, std::uint64_t seed) { return Adversary(omega, n, seed); }

AdversaryStage Adversary::stage() const {
    int revealed = static_cast<int>(ledger_.points().size());
    if (ledger_.valid_answers() < 2) return AdversaryStage::Init;
    if (revealed < n_ - 1) return AdversaryStage::Grow;
    if (revealed == n_ - 1 && ledger_.unconfirmed() > 1) return AdversaryStage::Confirm;
    return AdversaryStage::Final;
}

std::vector<Point> Adversary::provisional() const {
    if (!started_) return {};
    auto pts = ledger_.points();
    pts.insert(pts.end(), hidden_.begin(), hidden_.end());
    return convex_hull(pts);
}

FeasibleRegion Adversary::region() const {
    auto extra = ledger_.miss_sides(Point(0, 0));
    auto disc = disc_sides(1.0, 64);
    extra.insert(extra.end(), disc.begin(), disc.end());
    auto ch = ledger_.chain();
    if (ch.empty()) ch.push_back(Point(0, 0));
    return feasible_region(ch, ledger_.wedges(), 2.0, extra);
}

// Cap on the potential after the k-th valid answer: the first answer gives two
// points, the second may give two more, every later one at most one. At a right
// angle the opening may bank one more unit.
int potential_cap(double omega, int k) {
    if (k <= 1) return 2;
    return k + 2 + (is_right_angle(omega) ? 1 : 0);
}

int Adversary::allowance() const {
    return potential_cap(omega_, ledger_.valid_answers() + 1) - ledger_.potential();
}

ProbeResult Adversary::first_valid(const DirectedLine& line) {
    double clearance = 1.0;
    for (const auto& side : ledger_.miss_sides(Point(0, 0)))
        clearance = std::min(clearance, cross(side.direction, Point(0, 0) - side.origin));
    const double depth = std::min(0.5, 0.5 * clearance);
    const Vec fwd = line.direction;
    const Vec side = right_normal(fwd);
    const Point p(0, 0);

    std::vector<Point> verts;
    if (is_right_angle(omega_)) {
        // regular pentagon with the contact pair as a diagonal and one corner behind it
        const double r = depth;
        const double s = 2.0 * r / ((1.0 + std::sqrt(5.0)) / 2.0);
        auto local = [&](double x, double y) { return Point(p + x * side + y * fwd); };
        Point v1 = local(r, 0), v2 = local(-r, 0);
        Point back = local(0, -r * std::tan(kPi / 5));
        Point u1 = v1 + s * (std::cos(3 * kPi / 5) * side + std::sin(3 * kPi / 5) * fwd);
        Point u2 = u1 - s * side;
        verts = {v1, u1, u2, v2, back};
    } else {
        const double r = depth * std::tan(omega_ / 2);
        verts = {p + r * side, p + r * fwd, p - r * side, p - r * fwd};
    }
    ConvexPolygon g(convex_hull(verts));
    auto cloud = build_cloud(g, omega_);
    auto ans = probe_polygon(g, cloud, line);
    hidden_.clear();
    for (const auto& v : g.vertices())
        if (!ans || ((v - ans->p1).norm() > kSameTol && (v - ans->p2).norm() > kSameTol)) hidden_.push_back(v);
    started_ = true;
    return ans;
}

Adversary::Verdict Adversary::judge(const Candidate& c, const DirectedLine& line) const {
    Verdict out;
    const auto& revealed = ledger_.points();
    std::vector<Point> pts = revealed;
    pts.insert(pts.end(), c.hidden.begin(), c.hidden.end());
    auto hull = convex_hull(pts);
    if (hull.size() != pts.size() || hull.size() < 3 || static_cast<int>(hull.size()) > n_) return out;

    ConvexPolygon poly;
    try {
        poly = ConvexPolygon(hull);
    } catch (const Error&) {
        return out;
    }
    for (std::size_t i = 0; i < poly.size(); ++i) {
        double a = poly.angle_at(i);
        if (a < omega_ + kAngleMargin || a > kPi - kFlatMargin) return out;
        if (poly[i].norm() > kReach) return out;
        Vec e = poly[poly.next(i)] - poly[i];
        if (e.norm() < 1e-4) return out;
        if (cross(e.normalized(), Point(0, 0) - poly[i]) < 1e-3) return out;
    }
    // no two edges may be flush with both arms of one wedge
    for (std::size_t i = 0; i < poly.size(); ++i) {
        double ai = angle_of(poly[poly.next(i)] - poly[i]);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            if (i == j) continue;
            double aj = angle_of(poly[poly.next(j)] - poly[j]);
            if (std::abs(normalize_angle(aj - ai) - (kPi + omega_)) < 1e-6) return out;
        }
    }

    OmegaCloud cloud;
    try {
        cloud = build_cloud(poly, omega_);
    } catch (const Error&) {
        return out;
    }
    for (const auto& rec : transcript()) {
        if (!clear_of(poly, rec.line, rec.result)) return out;
        if (!same_result(probe_polygon(poly, cloud, rec.line), rec.result, kReplayTol)) return out;
    }
    auto ans = probe_polygon(poly, cloud, line);
    if (!clear_of(poly, line, ans)) return out;
    if (ans && ans->apex_on_polygon) return out;

    InfoLedger after = ledger_;
    after.add(line, ans);
    int revealed_after = static_cast<int>(after.points().size());
    if (after.unconfirmed() == 0 && revealed_after < n_) return out;
    out.ok = true;
    out.answer = ans;
    out.gain = after.potential() - ledger_.potential();
    return out;
}

std::vector<Point> Adversary::sample_gap(std::size_t gap, int count) {
    auto ch = ledger_.chain();
    if (ch.size() < 2) return {};
    const Point& a = ch[gap];
    const Point& b = ch[(gap + 1) % ch.size()];
    auto corner = far_corner(ledger_, ch, gap);
    if (!corner) return {};
    const Point far = *corner;
    // Sitting close to the far corner keeps most of the gap's turning for both
    // halves, so later reveals in either half still have room.
    Point inc = incenter(a, b, far);
    std::vector<Point> out;
    for (double f : {0.3, 0.6}) out.push_back(far + f * (inc - far));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 2; k < count - 1; ++k) {
        double s = u01(rng_), t = u01(rng_);
        if (s + t > 1) {
            s = 1 - s;
            t = 1 - t;
        }
        Point x = a + s * (b - a) + t * (far - a);
        Point toward = far + (0.2 + 0.6 * u01(rng_)) * (inc - far);
        out.push_back(toward + 0.5 * u01(rng_) * (x - toward));
    }
    out.push_back(inc);
    return out;
}

std::vector<std::vector<Adversary::Candidate>> Adversary::candidates(const DirectedLine& line) {
    auto ch = ledger_.chain();
    auto conf = ledger_.confirmed(ch);
    const int revealed = static_cast<int>(ch.size());
    const int total = revealed + static_cast<int>(hidden_.size());
    const double tol = kReplayTol;

    // which unconfirmed gap, if any, the line runs along
    std::optional<std::size_t> gap;
    if (ch.size() >= 2) {
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (conf[i]) continue;
            const Point& a = ch[i];
            const Point& b = ch[(i + 1) % ch.size()];
            if (std::abs(cross(line.direction, a - line.origin)) <= tol &&
                std::abs(cross(line.direction, b - line.origin)) <= tol) {
                gap = i;
                break;
            }
        }
    }
    auto in_gap = [&](const Point& t, std::size_t i) {
        const Point& a = ch[i];
        const Point& b = ch[(i + 1) % ch.size()];
        return cross(b - a, t - a) < 0;
    };
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < ch.size(); ++i)
        if (!conf[i]) open.push_back(i);

    std::vector<Candidate> keep = {{hidden_}};

    // pull hidden vertices toward the middle of their gap's chord
    auto shrunk = [&](std::vector<Point> hs, double f) {
        for (auto& t : hs) {
            for (std::size_t i = 0; i < ch.size() && ch.size() >= 2; ++i) {
                if (!in_gap(t, i)) continue;
                Point mid = 0.5 * (ch[i] + ch[(i + 1) % ch.size()]);
                t = mid + f * (t - mid);
                break;
            }
        }
        return hs;
    };

    std::vector<Candidate> reveal;
    if (gap) {
        std::vector<Point> others;
        for (const auto& t : hidden_)
            if (!in_gap(t, *gap)) others.push_back(t);
        for (const auto& x : sample_gap(*gap, 12)) {
            if (total < n_) {
                auto h = hidden_;
                h.push_back(x);
                reveal.push_back({h});
                for (double f : {0.6, 0.3}) {
                    auto hf = shrunk(hidden_, f);
                    hf.push_back(x);
                    reveal.push_back({hf});
                }
            }
            auto h = others;
            h.push_back(x);
            reveal.push_back({h});
            for (double f : {0.6, 0.3}) {
                auto hf = shrunk(others, f);
                hf.push_back(x);
                reveal.push_back({hf});
            }
            for (std::size_t k = 0; k < hidden_.size(); ++k) {
                auto m = hidden_;
                m[k] = x;
                reveal.push_back({m});
            }
        }
    }

    std::vector<Candidate> confirm;
    if (gap) {
        std::vector<Point> others, inside;
        for (const auto& t : hidden_) (in_gap(t, *gap) ? inside : others).push_back(t);
        if (!inside.empty()) {
            confirm.push_back({others});
            for (std::size_t g : open) {
                if (g == *gap) continue;
                for (const auto& x : sample_gap(g, 4)) {
                    auto h = others;
                    h.push_back(x);
                    confirm.push_back({h});
                }
            }
        }
    }

    std::vector<Candidate> misc;
    for (double f : {0.6, 0.3}) misc.push_back({shrunk(hidden_, f)});
    std::uniform_int_distribution<std::size_t> pick(0, std::max<std::size_t>(open.size(), 1) - 1);
    for (std::size_t k = 0; k < hidden_.size(); ++k) {
        const Point t = hidden_[k];
        auto dropped = hidden_;
        dropped.erase(dropped.begin() + static_cast<long>(k));
        misc.push_back({dropped});
        for (std::size_t i = 0; i < ch.size() && ch.size() >= 2; ++i) {
            if (!in_gap(t, i)) continue;
            Point mid = 0.5 * (ch[i] + ch[(i + 1) % ch.size()]);
            for (double f : {0.6, 0.3, 0.1}) {
                auto m = hidden_;
                m[k] = mid + f * (t - mid);
                misc.push_back({m});
            }
            break;
        }
        if (!open.empty()) {
            for (const auto& x : sample_gap(open[pick(rng_)], 3)) {
                auto m = hidden_;
                m[k] = x;
                misc.push_back({m});
            }
        }
    }
    if (total < n_ && !open.empty()) {
        for (const auto& x : sample_gap(open[pick(rng_)], 3)) {
            auto h = hidden_;
            h.push_back(x);
            misc.push_back({h});
        }
    }

    std::vector<std::vector<Candidate>> out;
    auto append = [&](const std::vector<Candidate>& v) {
        if (!v.empty()) out.push_back(v);
    };
    if (!gap) {
        append(keep);
        append(misc);
        return out;
    }
    // a thin gap gets confirmed rather than split again, so the last reveals still fit
    bool roomy = false;
    if (auto far = far_corner(ledger_, ch, *gap)) {
        Vec u = (ch[*gap] - *far).normalized(), v = (ch[(*gap + 1) % ch.size()] - *far).normalized();
        roomy = kPi - std::acos(std::clamp(u.dot(v), -1.0, 1.0)) >= kRoomyGap;
    }
    if (stage() == AdversaryStage::Final || revealed == n_) {
        if (revealed < n_) append(reveal);
        append(keep);
        if (revealed < n_) append(misc);
    } else if (roomy) {
        append(reveal);
        append(keep);
        append(misc);
        append(confirm);
    } else {
        append(confirm);
        append(keep);
        append(misc);
        append(reveal);
    }
    return out;
}

ProbeResult Adversary::probe(const DirectedLine& line) {
    ProbeResult ans;
    if (!started_) {
        if (std::abs(cross(line.direction, Point(0, 0) - line.origin)) <= kReplayTol) ans = first_valid(line);
    } else {
        const int allow = allowance();
        std::optional<Verdict> chosen;
        std::optional<Verdict> fallback;
        std::vector<Point> chosen_hidden, fallback_hidden;
        // groups come in order of preference; inside a group take the stingy
        // answer that leaves the most room for later reveals
        for (const auto& group : candidates(line)) {
            double best_room = -1.0;
            for (const auto& c : group) {
                Verdict v = judge(c, line);
                if (!v.ok) continue;
                if (v.gain <= 1) {
                    InfoLedger after = ledger_;
                    after.add(line, v.answer);
                    double room = turning_room(after);
                    if (room > best_room) {
                        best_room = room;
                        chosen = v;
                        chosen_hidden = c.hidden;
                    }
                } else if (!fallback || v.gain < fallback->gain) {
                    fallback = v;
                    fallback_hidden = c.hidden;
                }
            }
            if (chosen) break;
        }
        if (!chosen && fallback) {
            chosen = fallback;
            chosen_hidden = fallback_hidden;
        }
        if (chosen) {
            if (chosen->gain > allow) ++forced_;
            ans = chosen->answer;
            hidden_ = chosen_hidden;
        } else {
            // nothing passes the checks; stay honest to the current witness
            ++forced_;
            auto pts = ledger_.points();
            pts.insert(pts.end(), hidden_.begin(), hidden_.end());
            ConvexPolygon g(convex_hull(pts));
            ans = probe_polygon(g, build_cloud(g, omega_), line);
        }
        if (ans) {
            std::vector<Point> still;
            for (const auto& t : hidden_)
                if ((t - ans->p1).norm() > kSameTol && (t - ans->p2).norm() > kSameTol) still.push_back(t);
            hidden_ = still;
        }
    }
    ledger_.add(line, ans);
    record(line, ans);
    phi_history_.push_back(ledger_.potential());
    return ans;
}

AuditReport audit(const Adversary& adv, const Transcript& transcript) {
    const double omega = adv.omega();
    const int n = adv.n();
    auto verts = adv.provisional();
    ConvexPolygon g;
    try {
        g = ConvexPolygon(verts);
    } catch (const Error& e) {
        throw InconsistencyFound(-1, std::string("final witness is not a convex polygon: ") + e.what());
    }
    if (static_cast<int>(g.size()) != n)
        throw InconsistencyFound(-1, "final witness has " + std::to_string(g.size()) + " vertices, expected " +
                                         std::to_string(n));
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.angle_at(i) <= omega) throw InconsistencyFound(-1, "final witness has a narrow vertex");

    auto cloud = build_cloud(g, omega);
    AuditReport rep;
    InfoLedger ledger;
    for (std::size_t i = 0; i < transcript.size(); ++i) {
        const auto& rec = transcript[i];
        auto honest = probe_polygon(g, cloud, rec.line);
        if (!same_result(honest, rec.result, kReplayTol))
            throw InconsistencyFound(static_cast<int>(i), "answer differs from the final witness");
        ledger.add(rec.line, rec.result);
        if (ledger.potential() > potential_cap(omega, ledger.valid_answers()))
            throw InconsistencyFound(static_cast<int>(i), "answer reveals too much");
        rep.potential.push_back(ledger.potential());
    }
    for (const auto& p : ledger.points())
        if (!g.vertex_near(p, kReplayTol)) throw InconsistencyFound(-1, "a revealed point is not a witness vertex");
    rep.probes = static_cast<int>(transcript.size());
    rep.final_vertices = static_cast<int>(g.size());
    rep.revealed = static_cast<int>(ledger.points().size());
    rep.unconfirmed = ledger.unconfirmed();
    rep.lower_bound = is_right_angle(omega) ? 2 * n - 3 : 2 * n - 2;
    return rep;
}

}  // namespace omegaprobe
