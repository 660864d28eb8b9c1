#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "omegaprobe/cloud.hpp"
#include "omegaprobe/geometry.hpp"

namespace omegaprobe {

enum class ArmPolicy { AdversarialMinimal, BisectorSymmetric, SeededRandom };

ArmPolicy parse_policy(const std::string& name);
std::string policy_name(ArmPolicy p);

struct ProbeOutcome {
    Point q;
    Vec dir1;  // right arm
    Vec dir2;  // left arm
    Point p1;
    Point p2;
    bool apex_on_polygon = false;
};

// nullopt is a miss
using ProbeResult = std::optional<ProbeOutcome>;

struct Circle {
    Point center;
    double radius = 0.0;
};

struct TranscriptRecord {
    int t = 0;
    DirectedLine line;
    ProbeResult result;
};

using Transcript = std::vector<TranscriptRecord>;

// Answers agree when both miss, or apex, arms and contacts match within tol.
bool same_result(const ProbeResult& a, const ProbeResult& b, double tol);

// Everything a reconstruction algorithm may use.
class ProbeChannel {
public:
    virtual ~ProbeChannel() = default;
    virtual ProbeResult probe(const DirectedLine& line) = 0;
    virtual double omega() const = 0;
    virtual Point interior_point() const = 0;
    virtual Circle enclosure() const = 0;
    int probes_used() const { return static_cast<int>(transcript_.size()); }
    const Transcript& transcript() const { return transcript_; }
    // true vertex count, only for budget guards; never steers probing
    virtual int audit_vertex_count() const = 0;
    virtual int audit_narrow_count() const { return 0; }

protected:
    void record(const DirectedLine& line, const ProbeResult& r) {
        transcript_.push_back({static_cast<int>(transcript_.size()), line, r});
    }

private:
    Transcript transcript_;
};

// Honest answer for a known polygon with a prebuilt cloud.
ProbeResult probe_polygon(const ConvexPolygon& poly, const OmegaCloud& cloud, const DirectedLine& line,
                          ArmPolicy policy = ArmPolicy::AdversarialMinimal, std::mt19937_64* rng = nullptr);

class ProbeSession : public ProbeChannel {
public:
    ProbeSession(ConvexPolygon hidden, double omega, ArmPolicy policy, std::uint64_t seed);

    ProbeResult probe(const DirectedLine& line) override;
    double omega() const override { return omega_; }
    Point interior_point() const override { return p_; }
    Circle enclosure() const override { return psi_; }
    int audit_vertex_count() const override { return static_cast<int>(hidden_.size()); }
    int audit_narrow_count() const override { return count_narrow(hidden_, omega_); }

    // harness side only
    const ConvexPolygon& hidden() const { return hidden_; }
    const OmegaCloud& cloud() const;
    ArmPolicy policy() const { return policy_; }

private:
    ConvexPolygon hidden_;
    double omega_;
    Point p_;
    Circle psi_;
    ArmPolicy policy_;
    std::mt19937_64 rng_;
    mutable std::optional<OmegaCloud> cloud_;
};

ProbeSession new_session(const ConvexPolygon& poly, double omega,
                         ArmPolicy policy = ArmPolicy::AdversarialMinimal, std::uint64_t seed = 0);

// Independent reference oracle: bisection on the angular width along the line.
ProbeResult brute_force_probe(const ConvexPolygon& poly, double omega, const DirectedLine& line);
ProbeResult brute_force_probe(const ProbeSession& s, const DirectedLine& line);

// Spread of directions from x to the polygon's vertices (x outside the polygon).
double angular_width(const ConvexPolygon& poly, const Point& x);

}  // namespace omegaprobe
