#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "omegaprobe/geometry.hpp"
#include "omegaprobe/probe.hpp"
#include "omegaprobe/reconstruct.hpp"

namespace omegaprobe {

struct ExperimentConfig {
    double omega = kPi / 3;
    int n_min = 5;
    int n_max = 30;
    int trials = 10;
    int target_narrow = 0;
    double margin = 0.05;
    std::optional<double> epsilon;
    bool adjacent_narrow = false;  // force the narrow pair to share an edge
    std::uint64_t seed = 1;
    std::string algorithm = "auto";  // auto | input1 | input2 | general | greedy
    ArmPolicy policy = ArmPolicy::AdversarialMinimal;
};

struct TrialRecord {
    int trial = 0;
    int n = 0;
    int narrow = 0;
    std::string algorithm;
    int probes_used = 0;
    int bound = 0;
    bool exact_match = false;
    double hausdorff_error = 0.0;
    bool best_effort = false;
    int hit_gain = -1;  // right-angle runs only
    std::string error;

    bool ok() const { return error.empty() && exact_match && probes_used <= bound; }
};

struct ExperimentReport {
    std::vector<TrialRecord> trials;

    int failures() const;
    int max_excess() const;  // max(probes_used - bound)
    bool passed() const { return failures() == 0 && max_excess() <= 0; }
    std::string to_csv() const;
    std::string summary() const;
};

std::mt19937_64 trial_rng(std::uint64_t seed, int trial_index);

// throws Infeasible when the narrow target cannot be met
ConvexPolygon gen_polygon(const ExperimentConfig& cfg, int trial_index);

// does every pair of narrow vertices joined by a chain of other vertices have a
// chain vertex whose angle toward the pair is at most pi - eps
bool epsilon_hypothesis_holds(const ConvexPolygon& poly, double omega, double eps);

// vertex-to-vertex distance after the best cyclic alignment; infinity when sizes differ
double aligned_vertex_error(const std::vector<Point>& a, const std::vector<Point>& b);

int probe_bound(const std::string& algorithm, int n, int narrow);
std::string pick_algorithm(const ExperimentConfig& cfg, int n, int narrow);

ReconResult run_algorithm(const std::string& algorithm, ProbeChannel& ch, std::optional<double> epsilon);

ExperimentReport run_suite(const ExperimentConfig& cfg);

}  // namespace omegaprobe
