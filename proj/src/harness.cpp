#include "omegaprobe/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "omegaprobe/cloud.hpp"
#include "omegaprobe/reconstruct.hpp"

namespace omegaprobe {

std::mt19937_64 trial_rng(std::uint64_t seed, int trial_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial_index), 0x6f6d6567u};
    return std::mt19937_64(seq);
}

bool epsilon_hypothesis_holds(const ConvexPolygon& poly, double omega, double eps) {
    auto narrow = narrow_vertices(poly, omega);
    for (int a : narrow) {
        for (int b : narrow) {
            if (a == b) continue;
            std::size_t first = poly.next(a);
            if (static_cast<int>(first) == b) continue;  // joined by an edge
            bool witness = false;
            for (std::size_t v = first; static_cast<int>(v) != b; v = poly.next(v)) {
                if (angle_ccw(poly[b], poly[v], poly[a]) <= kPi - eps) {
                    witness = true;
                    break;
                }
            }
            if (!witness) return false;
        }
    }
    return true;
}

namespace {

// exterior turns summing to 2pi within per-vertex bounds; nullopt if impossible
std::optional<std::vector<double>> sample_turns(const std::vector<double>& lo, const std::vector<double>& hi,
                                                std::mt19937_64& rng) {
    const std::size_t n = lo.size();
    double slo = std::accumulate(lo.begin(), lo.end(), 0.0);
    double shi = std::accumulate(hi.begin(), hi.end(), 0.0);
    if (slo > kTwoPi || shi < kTwoPi) return std::nullopt;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
    double s = std::accumulate(g.begin(), g.end(), 0.0);
    double slack = 0.0;
    if (s < kTwoPi) {
        for (std::size_t i = 0; i < n; ++i) slack += hi[i] - g[i];
        for (std::size_t i = 0; i < n; ++i) g[i] += (kTwoPi - s) * (hi[i] - g[i]) / slack;
    } else {
        for (std::size_t i = 0; i < n; ++i) slack += g[i] - lo[i];
        for (std::size_t i = 0; i < n; ++i) g[i] -= (s - kTwoPi) * (g[i] - lo[i]) / slack;
    }
    return g;
}

std::optional<std::vector<Point>> close_chain(const std::vector<double>& dir_angle, std::vector<double> len) {
    const std::size_t n = dir_angle.size();
    Vec r(0, 0);
    for (std::size_t i = 0; i < n; ++i) r += len[i] * unit_at(dir_angle[i]);
    if (r.norm() > 0) {
        double target = angle_of(-r);
        bool done = false;
        for (std::size_t j = 0; j < n && !done; ++j) {
            std::size_t k = (j + 1) % n;
            double gap = normalize_angle(dir_angle[k] - dir_angle[j]);
            double rel = normalize_angle(target - dir_angle[j]);
            if (rel <= gap) {
                Vec a = unit_at(dir_angle[j]), b = unit_at(dir_angle[k]);
                double den = cross(a, b);
                if (std::abs(den) < 1e-12) return std::nullopt;
                double la = cross(-r, b) / den;
                double lb = cross(a, -r) / den;
                if (la < -1e-12 || lb < -1e-12) return std::nullopt;
                len[j] += std::max(0.0, la);
                len[k] += std::max(0.0, lb);
                done = true;
            }
        }
        if (!done) return std::nullopt;
    }
    std::vector<Point> v(n);
    v[0] = Point(0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) v[i + 1] = v[i] + len[i] * unit_at(dir_angle[i]);
    return v;
}

}  // namespace

ConvexPolygon gen_polygon(const ExperimentConfig& cfg, int trial_index) {
    check_omega(cfg.omega);
    if (!(cfg.margin > 0)) throw InvalidParams("margin must be positive");
    const int k = cfg.target_narrow;
    if (k < 0 || k > 3) throw Infeasible("narrow target must be 0..3");
    if (k == 3 && cfg.omega <= kPi / 3 + 1e-12) throw Infeasible("three narrow vertices need omega > pi/3");
    if (cfg.n_min > cfg.n_max || cfg.n_min < 3) throw InvalidParams("bad n range");

    auto rng = trial_rng(cfg.seed, trial_index);
    const int n = cfg.n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.n_max - cfg.n_min + 1));
    if (k > n) throw Infeasible("more narrow vertices than vertices");
    if (cfg.adjacent_narrow && k != 2) throw InvalidParams("adjacent narrow pair needs target 2");

    const double turn_min = std::min(0.02, 0.5 * kTwoPi / n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 5000; ++attempt) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::vector<bool> narrow(n, false);
        if (cfg.adjacent_narrow) {
            int i = static_cast<int>(rng() % n);
            narrow[i] = narrow[(i + 1) % n] = true;
        } else {
            std::shuffle(order.begin(), order.end(), rng);
            for (int i = 0; i < k; ++i) narrow[order[i]] = true;
        }
        std::vector<double> lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
            if (narrow[i]) {
                lo[i] = kPi - cfg.omega + cfg.margin;
                hi[i] = kPi - turn_min;
            } else {
                lo[i] = turn_min;
                hi[i] = kPi - cfg.omega - cfg.margin;
            }
            if (lo[i] >= hi[i]) throw Infeasible("angle bounds leave no room");
        }
        auto turns = sample_turns(lo, hi, rng);
        if (!turns) throw Infeasible("turn bounds cannot sum to a full revolution");
        // vertex i turns between edge i-1 and edge i
        std::vector<double> dir(n);
        double a = kTwoPi * u(rng);
        for (int i = 0; i < n; ++i) {
            a += (*turns)[i];
            dir[i] = normalize_angle(a);
        }
        std::vector<double> len(n);
        for (auto& l : len) l = 0.4 + u(rng);
        auto verts = close_chain(dir, len);
        if (!verts) continue;
        Point c(0, 0);
        std::vector<Point> vs = *verts;
        try {
            ConvexPolygon raw(vs);
            c = raw.centroid();
        } catch (const DegeneratePolygon&) {
            continue;
        }
        double r = 0;
        for (auto& p : vs) {
            p -= c;
            r = std::max(r, p.norm());
        }
        for (auto& p : vs) p /= r;
        ConvexPolygon poly;
        try {
            poly = ConvexPolygon(vs);
        } catch (const DegeneratePolygon&) {
            continue;
        }
        bool edges_ok = true;
        for (std::size_t i = 0; i < poly.size(); ++i)
            if ((poly[poly.next(i)] - poly[i]).norm() < 1e-3) edges_ok = false;
        if (!edges_ok) continue;
        if (count_narrow(poly, cfg.omega) != k) continue;
        bool margins = true;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            double d = std::abs(poly.angle_at(i) - cfg.omega);
            if (d < cfg.margin - 1e-9) margins = false;
        }
        if (!margins) continue;
        if (k >= 2 && cfg.epsilon && !epsilon_hypothesis_holds(poly, cfg.omega, *cfg.epsilon)) continue;
        return poly;
    }
    throw Infeasible("generator gave up after 5000 attempts");
}

double aligned_vertex_error(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size() || a.empty()) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s) {
        double worst = 0;
        for (std::size_t i = 0; i < n && worst < best; ++i) worst = std::max(worst, (a[i] - b[(i + s) % n]).norm());
        best = std::min(best, worst);
    }
    return best;
}

}  // namespace omegaprobe

namespace omegaprobe {

int probe_bound(const std::string& algorithm, int n, int narrow) {
    if (algorithm == "input1") return 2 * n - 2;
    if (algorithm == "input2") return 2 * n - 3;
    if (algorithm == "general") {
        static const int extra[4] = {-1, -1, 2, 3};
        return 2 * n - 1 + narrow + extra[std::clamp(narrow, 0, 3)];
    }
    return 4 * n + 16;  // greedy has no proven bound; this is its runaway guard
}

std::string pick_algorithm(const ExperimentConfig& cfg, int n, int narrow) {
    if (cfg.algorithm != "auto") return cfg.algorithm;
    if (narrow == 0 && cfg.omega < kPi / 2 - 1e-12) return "input1";
    if (narrow == 0 && n >= 5) return "input2";
    if (narrow == 0) return "input1";
    return "general";
}

int ExperimentReport::failures() const {
    return static_cast<int>(std::count_if(trials.begin(), trials.end(), [](const TrialRecord& t) { return !t.ok(); }));
}

int ExperimentReport::max_excess() const {
    int m = std::numeric_limits<int>::min();
    for (const auto& t : trials) m = std::max(m, t.probes_used - t.bound);
    return trials.empty() ? 0 : m;
}

std::string ExperimentReport::to_csv() const {
    std::string out = "trial,n,narrow,algorithm,probes_used,bound,exact_match,vertex_error,best_effort,hit_gain,error\n";
    char buf[512];
    for (const auto& t : trials) {
        std::string err = t.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%s,%d,%d,%d,%.3e,%d,%d,%s\n", t.trial, t.n, t.narrow, t.algorithm.c_str(),
                      t.probes_used, t.bound, t.exact_match ? 1 : 0, t.hausdorff_error, t.best_effort ? 1 : 0,
                      t.hit_gain, err.c_str());
        out += buf;
    }
    return out;
}

std::string ExperimentReport::summary() const {
    int exact = 0, within = 0, errors = 0;
    double worst = 0;
    for (const auto& t : trials) {
        exact += t.exact_match;
        within += t.probes_used <= t.bound;
        errors += !t.error.empty();
        if (std::isfinite(t.hausdorff_error)) worst = std::max(worst, t.hausdorff_error);
    }
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "trials=%zu exact=%d within_budget=%d errors=%d max_excess=%d worst_vertex_error=%.3e -> %s\n",
                  trials.size(), exact, within, errors, max_excess(), worst, passed() ? "PASS" : "FAIL");
    return buf;
}

ReconResult run_algorithm(const std::string& algorithm, ProbeChannel& ch, std::optional<double> epsilon) {
    if (algorithm == "input1") return reconstruct_no_narrow(ch);
    if (algorithm == "input2") return reconstruct_right_angle(ch);
    if (algorithm == "general") return reconstruct_general(ch, epsilon);
    if (algorithm == "greedy") return reconstruct_greedy(ch);
    throw InvalidParams("unknown algorithm " + algorithm);
}

ExperimentReport run_suite(const ExperimentConfig& cfg) {
    ExperimentReport report;
    for (int i = 0; i < cfg.trials; ++i) {
        TrialRecord rec;
        rec.trial = i;
        try {
            ConvexPolygon poly = gen_polygon(cfg, i);
            rec.n = static_cast<int>(poly.size());
            rec.narrow = count_narrow(poly, cfg.omega);
            rec.algorithm = pick_algorithm(cfg, rec.n, rec.narrow);
            rec.bound = probe_bound(rec.algorithm, rec.n, rec.narrow);
            auto session = new_session(poly, cfg.omega, cfg.policy, cfg.seed * 7919 + static_cast<std::uint64_t>(i));
            try {
                ReconResult res = run_algorithm(rec.algorithm, session, cfg.epsilon);
                rec.best_effort = res.best_effort;
                rec.hit_gain = res.hit_gain.value_or(-1);
                rec.hausdorff_error = aligned_vertex_error(res.vertices, poly.vertices());
                rec.exact_match = !res.best_effort && rec.hausdorff_error <= 1e-6 * poly.diameter();
            } catch (const std::exception& e) {
                rec.error = e.what();
            }
            rec.probes_used = session.probes_used();
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        report.trials.push_back(rec);
    }
    return report;
}

}  // namespace omegaprobe
