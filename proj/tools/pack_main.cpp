#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "leopack/config.hpp"
#include "leopack/experiment.hpp"
#include "leopack/perception.hpp"
#include "leopack/planner.hpp"
#include "leopack/ply.hpp"
#include "leopack/sim.hpp"
#include "leopack/spiral.hpp"

namespace fs = std::filesystem;
using namespace leopack;

namespace {

int g_log_level = 1;  // 0 error, 1 info, 2 debug

void log_info(const std::string& msg) {
    if (g_log_level >= 1) std::cerr << "[pack] " << msg << "\n";
}

// Distinct exit code per error family.
int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "config validation error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityExceeded& e) {
        std::cerr << "template error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidDims& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    } catch (const EmptyCloud& e) {
        std::cerr << "perception error: " << e.what() << "\n";
        return 4;
    } catch (const TooFewSections& e) {
        std::cerr << "perception error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

ReferenceTemplate make_template(const ExperimentConfig& cfg) {
    const int m = cfg.M > 0 ? cfg.M : default_sample_count(cfg.object.length);
    return generate_template(cfg.box, cfg.object, m);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* lvl = std::getenv("PACK_LOG")) {
        std::string s = lvl;
        g_log_level = s == "debug" ? 2 : s == "error" ? 0 : 1;
    }

    CLI::App app{"Linear elastic object packing pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    bool record = false;
    bool check = false;
    int repeats = 1;
    std::vector<std::string> batch_configs;

    auto add_common = [&](CLI::App* sub, bool need_config = true) {
        auto* opt = sub->add_option("--config", config_path, "config file");
        if (need_config) opt->required();
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--out", out_dir, "output directory");
    };

    auto* t_cmd = app.add_subcommand("template", "generate the reference template");
    add_common(t_cmd);
    auto* p_cmd = app.add_subcommand("perceive", "render + perceive the initial scene");
    add_common(p_cmd);
    auto* pl_cmd = app.add_subcommand("plan", "print the per-loop reference sets");
    add_common(pl_cmd);
    auto* r_cmd = app.add_subcommand("run", "run the full packing task");
    add_common(r_cmd);
    r_cmd->add_flag("--record", record, "write per-movement SVG frames");
    r_cmd->add_flag("--check", check, "exit nonzero unless quality gates pass");
    auto* b_cmd = app.add_subcommand("batch", "run a set of configs repeatedly");
    b_cmd->add_option("--config", batch_configs, "config files")->required();
    b_cmd->add_option("--repeats", repeats, "runs per config");
    b_cmd->add_option("--out", out_dir, "output directory");
    b_cmd->add_option("--seed", seed, "ignored; batch seeds by repeat index");
    auto* c_cmd = app.add_subcommand("check", "run with quality gates");
    add_common(c_cmd);

    CLI11_PARSE(app, argc, argv);

    auto load = [&]() {
        ExperimentConfig cfg = load_config(config_path);
        if (seed >= 0) cfg.seed = std::uint64_t(seed);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return cfg;
    };

    if (t_cmd->parsed()) {
        return run_guarded([&] {
            ExperimentConfig cfg = load();
            ReferenceTemplate tpl = make_template(cfg);
            fs::create_directories(cfg.out_dir);
            const std::string path =
                (fs::path(cfg.out_dir) / "template.ply").string();
            write_ply_file(path, tpl.points, /*ordered=*/true);
            std::cout << "samples=" << tpl.size()
                      << " length=" << tpl.total_length()
                      << " capacity=" << tpl.capacity << " file=" << path
                      << "\n";
            return 0;
        });
    }

    if (p_cmd->parsed()) {
        return run_guarded([&] {
            ExperimentConfig cfg = load();
            WorldState world =
                make_initial_world(cfg.box, cfg.object, cfg.z0);
            PointCloud cloud = render_cloud(world, cfg.density,
                                            cfg.noise_sigma, cfg.r_occ,
                                            cfg.z0, cfg.seed);
            PerceptionParams pp;
            pp.rays = cfg.N;
            PerceptionResult res = perceive(cloud, cfg.box, pp);
            fs::create_directories(cfg.out_dir);
            write_ply_file((fs::path(cfg.out_dir) / "cloud.ply").string(),
                           cloud);
            write_ply_file((fs::path(cfg.out_dir) / "skeleton.ply").string(),
                           res.skeleton.points, /*ordered=*/true);
            nlohmann::json j;
            j["points"] = cloud.size();
            j["outside_points"] = res.outside_count;
            j["inside_points"] = res.inside.size();
            j["est_length"] = res.est_length;
            j["est_width"] = res.est_width;
            std::cout << j.dump() << "\n";
            return 0;
        });
    }

    if (pl_cmd->parsed()) {
        return run_guarded([&] {
            ExperimentConfig cfg = load();
            ReferenceTemplate tpl = make_template(cfg);
            WorldState world =
                make_initial_world(cfg.box, cfg.object, cfg.z0);
            PointCloud cloud = render_cloud(world, cfg.density,
                                            cfg.noise_sigma, cfg.r_occ,
                                            cfg.z0, cfg.seed);
            PerceptionParams pp;
            pp.rays = cfg.N;
            PerceptionResult res = perceive(cloud, cfg.box, pp);
            auto indices = placing_indices(tpl, cfg.delta_l);
            for (std::size_t k : indices) {
                nlohmann::json j;
                j["k"] = k;
                const Point3& pl = tpl.points[k];
                j["placing"] = {pl.x, pl.y, pl.z};
                Point3 g = grasping_point(tpl, k, res.skeleton);
                j["grasping"] = {g.x, g.y, g.z};
                try {
                    Point3 f =
                        fixing_point(tpl, k, cfg.delta_f, ArmId::Right);
                    j["fixing"] = {f.x, f.y, f.z};
                } catch (const NotEnoughPackedLength&) {
                    j["fixing"] = nullptr;
                }
                std::cout << j.dump() << "\n";
            }
            return 0;
        });
    }

    if (r_cmd->parsed() || c_cmd->parsed()) {
        if (c_cmd->parsed()) check = true;
        return run_guarded([&] {
            ExperimentConfig cfg = load();
            log_info("running task from " + config_path + " (seed " +
                     std::to_string(cfg.seed) + ")");
            TaskTrace trace = run_experiment(cfg, cfg.out_dir, record);
            log_info(std::string("status ") + status_name(trace.status) +
                     ", loops " + std::to_string(trace.loops.size()));
            if (trace.status == TaskStatus::Fault) return 6;
            if (check) {
                std::string fail = check_trace(trace);
                if (!fail.empty()) {
                    std::cerr << "check failed: " << fail << "\n";
                    return 6;
                }
            }
            return trace.status == TaskStatus::Success ? 0 : 6;
        });
    }

    if (b_cmd->parsed()) {
        return run_guarded([&] {
            const std::string dir = out_dir.empty() ? "batch_out" : out_dir;
            auto rows = run_batch(batch_configs, repeats, dir);
            std::cout << "rows=" << rows.size() << " summary=" << dir
                      << "/summary.csv\n";
            return 0;
        });
    }
    return 1;
}
