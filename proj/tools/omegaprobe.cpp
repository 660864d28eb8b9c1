#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "omegaprobe/adversary.hpp"
#include "omegaprobe/cloud.hpp"
#include "omegaprobe/harness.hpp"
#include "omegaprobe/io.hpp"
#include "omegaprobe/probe.hpp"
#include "omegaprobe/reconstruct.hpp"

using namespace omegaprobe;

namespace {

std::uint64_t seed_or_env(std::uint64_t given) {
    if (const char* env = std::getenv("OMEGA_PROBE_SEED")) return std::strtoull(env, nullptr, 10);
    return given;
}

std::string result_json(const ProbeResult& r) {
    Transcript one = {{0, DirectedLine{}, r}};
    auto row = nlohmann::json::parse(transcript_to_jsonl(one));
    return row["result"].dump();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"omega-wedge probing of convex polygons"};
    app.require_subcommand(1);

    // generate
    ExperimentConfig gen_cfg;
    int gen_n = 8, gen_trial = 0;
    double gen_eps = -1;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "write a random polygon with a chosen narrow count");
    gen->add_option("--omega", gen_cfg.omega, "wedge angle in radians");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--narrow", gen_cfg.target_narrow, "vertices with angle at most omega");
    gen->add_option("--margin", gen_cfg.margin, "gap between any angle and omega");
    gen->add_option("--epsilon", gen_eps, "plant the epsilon hypothesis for narrow pairs");
    gen->add_flag("--adjacent", gen_cfg.adjacent_narrow, "make the narrow pair share an edge");
    gen->add_option("--seed", gen_cfg.seed);
    gen->add_option("--trial", gen_trial);
    gen->add_option("--out", gen_out, "file to write; stdout when absent");

    // probe
    std::string probe_poly, probe_line, probe_policy = "adversarial-minimal";
    double probe_omega = kPi / 3;
    std::uint64_t probe_seed = 0;
    auto* probe = app.add_subcommand("probe", "one probe against a polygon file");
    probe->add_option("--polygon", probe_poly)->required();
    probe->add_option("--omega", probe_omega);
    probe->add_option("--line", probe_line, "ox,oy,dx,dy")->required();
    probe->add_option("--policy", probe_policy);
    probe->add_option("--seed", probe_seed);

    // cloud
    std::string cloud_poly, cloud_svg;
    double cloud_omega = kPi / 3;
    auto* cloud = app.add_subcommand("cloud", "arc chain of the omega-cloud as CSV");
    cloud->add_option("--polygon", cloud_poly)->required();
    cloud->add_option("--omega", cloud_omega);
    cloud->add_option("--svg", cloud_svg, "also draw polygon and cloud");

    // reconstruct
    std::string rec_poly, rec_algo = "auto", rec_out, rec_transcript, rec_policy = "adversarial-minimal";
    double rec_omega = kPi / 3, rec_eps = -1;
    auto* rec = app.add_subcommand("reconstruct", "recover a polygon file through probes only");
    rec->add_option("--polygon", rec_poly)->required();
    rec->add_option("--omega", rec_omega);
    rec->add_option("--algorithm", rec_algo)->check(CLI::IsMember({"auto", "input1", "input2", "general", "greedy"}));
    rec->add_option("--epsilon", rec_eps);
    rec->add_option("--policy", rec_policy);
    rec->add_option("--out", rec_out);
    rec->add_option("--transcript", rec_transcript);

    // duel
    double duel_omega = kPi / 3;
    int duel_n = 6;
    std::string duel_algo = "input1", duel_transcript;
    std::uint64_t duel_seed = 1;
    auto* duel = app.add_subcommand("duel", "play an algorithm against the adversary");
    duel->add_option("--omega", duel_omega);
    duel->add_option("--n", duel_n);
    duel->add_option("--algorithm", duel_algo)->check(CLI::IsMember({"input1", "input2", "general", "greedy"}));
    duel->add_option("--seed", duel_seed);
    duel->add_option("--transcript", duel_transcript);

    // verify
    std::string ver_poly, ver_transcript;
    double ver_omega = kPi / 3;
    auto* verify = app.add_subcommand("verify", "replay a transcript against a polygon");
    verify->add_option("--polygon", ver_poly)->required();
    verify->add_option("--omega", ver_omega);
    verify->add_option("--transcript", ver_transcript)->required();

    // suite
    ExperimentConfig suite_cfg;
    double suite_eps = -1;
    std::string suite_csv, suite_policy = "adversarial-minimal";
    auto* suite = app.add_subcommand("suite", "budget experiment over random polygons");
    suite->add_option("--omega", suite_cfg.omega);
    suite->add_option("--n-min", suite_cfg.n_min);
    suite->add_option("--n-max", suite_cfg.n_max);
    suite->add_option("--trials", suite_cfg.trials);
    suite->add_option("--narrow", suite_cfg.target_narrow);
    suite->add_option("--margin", suite_cfg.margin);
    suite->add_option("--epsilon", suite_eps);
    suite->add_flag("--adjacent", suite_cfg.adjacent_narrow);
    suite->add_option("--seed", suite_cfg.seed);
    suite->add_option("--algorithm", suite_cfg.algorithm);
    suite->add_option("--policy", suite_policy);
    suite->add_option("--csv", suite_csv, "per-trial rows; stdout when absent");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            gen_cfg.n_min = gen_cfg.n_max = gen_n;
            gen_cfg.seed = seed_or_env(gen_cfg.seed);
            if (gen_eps > 0) gen_cfg.epsilon = gen_eps;
            auto poly = gen_polygon(gen_cfg, gen_trial);
            if (gen_out.empty())
                std::cout << polygon_to_json(poly);
            else
                save_polygon(gen_out, poly);
            return 0;
        }
        if (*probe) {
            auto poly = load_polygon(probe_poly);
            auto s = new_session(poly, probe_omega, parse_policy(probe_policy), seed_or_env(probe_seed));
            std::cout << result_json(s.probe(parse_line(probe_line))) << "\n";
            return 0;
        }
        if (*cloud) {
            auto poly = load_polygon(cloud_poly);
            auto c = build_cloud(poly, cloud_omega);
            std::cout << cloud_to_csv(c);
            if (!cloud_svg.empty()) write_file(cloud_svg, cloud_to_svg(poly, c));
            return 0;
        }
        if (*rec) {
            auto poly = load_polygon(rec_poly);
            int narrow = count_narrow(poly, rec_omega);
            ExperimentConfig cfg;
            cfg.omega = rec_omega;
            cfg.algorithm = rec_algo;
            std::string algo = pick_algorithm(cfg, static_cast<int>(poly.size()), narrow);
            auto s = new_session(poly, rec_omega, parse_policy(rec_policy));
            std::optional<double> eps;
            if (rec_eps > 0) eps = rec_eps;
            bool ok = false;
            try {
                auto r = run_algorithm(algo, s, eps);
                double err = aligned_vertex_error(r.vertices, poly.vertices());
                int bound = probe_bound(algo, static_cast<int>(poly.size()), narrow);
                ok = !r.best_effort && err <= 1e-6 * poly.diameter() && r.probes_used <= bound;
                if (!r.vertices.empty() && r.vertices.size() >= 3) {
                    auto text = polygon_to_json(ConvexPolygon(r.vertices));
                    if (rec_out.empty())
                        std::cout << text;
                    else
                        write_file(rec_out, text);
                }
                std::printf("algorithm=%s probes_used=%d bound=%d vertex_error=%.3e best_effort=%d -> %s\n",
                            algo.c_str(), r.probes_used, bound, err, r.best_effort ? 1 : 0, ok ? "PASS" : "FAIL");
                for (const auto& [a, b] : r.unresolved)
                    std::printf("unresolved edge (%.17g, %.17g) -> (%.17g, %.17g)\n", a.x(), a.y(), b.x(), b.y());
            } catch (const Error& e) {
                std::printf("algorithm=%s error: %s -> FAIL\n", algo.c_str(), e.what());
            }
            if (!rec_transcript.empty()) save_transcript(rec_transcript, s.transcript());
            return ok ? 0 : 1;
        }
        if (*duel) {
            auto adv = new_adversary(duel_omega, duel_n, seed_or_env(duel_seed));
            bool ok = false;
            try {
                auto r = run_algorithm(duel_algo, adv, std::nullopt);
                auto rep = audit(adv, adv.transcript());
                ok = rep.meets_lower_bound() && rep.unconfirmed == 0 && rep.revealed == duel_n;
                std::printf("algorithm=%s n=%d probes=%d lower_bound=%d audit=ok -> %s\n", duel_algo.c_str(), duel_n,
                            r.probes_used, rep.lower_bound, ok ? "PASS" : "FAIL");
            } catch (const InconsistencyFound& e) {
                std::printf("audit failed at probe %d: %s -> FAIL\n", e.probe_index, e.what());
            } catch (const Error& e) {
                std::printf("error: %s -> FAIL\n", e.what());
            }
            if (!duel_transcript.empty()) save_transcript(duel_transcript, adv.transcript());
            return ok ? 0 : 1;
        }
        if (*verify) {
            auto poly = load_polygon(ver_poly);
            auto tr = load_transcript(ver_transcript);
            auto c = build_cloud(poly, ver_omega);
            for (const auto& r : tr) {
                if (!same_result(probe_polygon(poly, c, r.line), r.result, 1e-9)) {
                    std::printf("record %d disagrees with the polygon -> FAIL\n", r.t);
                    return 1;
                }
            }
            std::printf("%zu records replay -> PASS\n", tr.size());
            return 0;
        }
        if (*suite) {
            suite_cfg.seed = seed_or_env(suite_cfg.seed);
            suite_cfg.policy = parse_policy(suite_policy);
            if (suite_eps > 0) suite_cfg.epsilon = suite_eps;
            auto rep = run_suite(suite_cfg);
            if (suite_csv.empty())
                std::cout << rep.to_csv();
            else
                write_file(suite_csv, rep.to_csv());
            std::cout << rep.summary();
            return rep.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
