#include "leopack/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "leopack/ply.hpp"
#include "leopack/sim.hpp"

namespace fs = std::filesystem;

namespace leopack {

namespace {

std::string padded(int value, int width) {
    std::ostringstream os;
    os.width(width);
    os.fill('0');
    os << value;
    return os.str();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

TaskTrace run_experiment(const ExperimentConfig& config,
                         const std::string& out_dir, bool record_frames) {
    fs::create_directories(out_dir);
    if (record_frames) fs::create_directories(fs::path(out_dir) / "frames");

    WorldState world =
        make_initial_world(config.box, config.object, config.z0 > 0
                                                          ? config.z0
                                                          : config.box.height + 100);
    if (config.Q > 0) {
        // Resample the generated layout at the requested node count.
        ObjectSpec obj = config.object;
        std::vector<Point3> centerline;
        const auto& src = world.rod.nodes;
        centerline.reserve(std::size_t(config.Q));
        for (int i = 0; i < config.Q; ++i) {
            double t = double(i) / double(config.Q - 1) * double(src.size() - 1);
            std::size_t a = std::size_t(t);
            std::size_t b = std::min(a + 1, src.size() - 1);
            centerline.push_back(src[a] + (src[b] - src[a]) * (t - double(a)));
        }
        world.rod = make_rod(obj, centerline);
    }

    std::ofstream events(fs::path(out_dir) / "events.log");
    Recorder rec;
    rec.event = [&](const std::string& line) { events << line << "\n"; };
    rec.cloud = [&](int frame, const PointCloud& cloud) {
        write_ply_file((fs::path(out_dir) / ("cloud_" + padded(frame, 4) + ".ply"))
                           .string(),
                       cloud);
    };
    if (record_frames)
        rec.snapshot = [&](const WorldState& w, int movement_index) {
            write_scene_svg(w, (fs::path(out_dir) / "frames" /
                                (padded(movement_index, 4) + ".svg"))
                                   .string());
        };

    RunParams params = run_params(config);
    TaskTrace trace = run_task(world, params, &rec);
    events.close();

    write_ply_file((fs::path(out_dir) / "template.ply").string(),
                   trace.tpl.points, /*ordered=*/true);
    write_metrics_csv(trace, (fs::path(out_dir) / "metrics.csv").string());
    write_trace_json(trace, (fs::path(out_dir) / "trace.json").string());
    write_scene(world, (fs::path(out_dir) / "final_rod.ply").string(),
                (fs::path(out_dir) / "final_scene.json").string());
    return trace;
}

void write_metrics_csv(const TaskTrace& trace, const std::string& path) {
    std::ofstream os(path);
    os << "loop,s,w,e_in,e_out,e,mu,sigma2\n";
    for (const auto& row : trace.rows) {
        os << row.shape.loop_index << "," << row.shape.s << ","
           << fmt(row.shape.w) << "," << fmt(row.shape.e_in) << ","
           << fmt(row.shape.e_out) << "," << fmt(row.shape.e) << ","
           << fmt(row.mu) << "," << fmt(row.sigma2) << "\n";
    }
}

void write_trace_json(const TaskTrace& trace, const std::string& path) {
    nlohmann::json j;
    j["status"] = status_name(trace.status);
    if (!trace.fault_reason.empty()) j["fault_reason"] = trace.fault_reason;
    j["initial_est_length"] = trace.initial_est_length;
    j["initial_est_width"] = trace.initial_est_width;
    j["template_samples"] = trace.tpl.size();
    j["placing_indices"] = trace.placing;

    j["loops"] = nlohmann::json::array();
    for (const auto& lr : trace.loops) {
        nlohmann::json l;
        l["index"] = lr.index;
        l["active"] = arm_name(lr.active);
        l["placing_index"] = lr.placing_index;
        l["tail_tuck"] = lr.tail_tuck;
        l["fix_applied"] = lr.fix_applied;
        l["change_active"] = lr.change_active;
        l["packed_before_release"] = lr.packed_before_release;
        l["packed_after_release"] = lr.packed_after_release;
        l["release_inside_shift"] = lr.release_inside_shift;
        j["loops"].push_back(l);
    }

    j["movements"] = nlohmann::json::array();
    for (const auto& m : trace.movements) {
        nlohmann::json e;
        e["loop"] = m.loop;
        e["behavior"] = behavior_name(m.behavior);
        e["m"] = std::string(arm_name(m.movement.role)) + "," +
                 gripper_name(m.movement.gripper) + "," +
                 primitive_name(m.movement.primitive);
        e["flag"] = m.flag;
        j["movements"].push_back(e);
    }

    j["rows"] = nlohmann::json::array();
    for (const auto& row : trace.rows) {
        nlohmann::json r;
        r["loop"] = row.shape.loop_index;
        r["s"] = row.shape.s;
        r["w"] = row.shape.w;
        r["e_in"] = row.shape.e_in;
        r["e_out"] = row.shape.e_out;
        r["e"] = row.shape.e;
        r["mu"] = row.mu;
        r["sigma2"] = row.sigma2;
        j["rows"].push_back(r);
    }

    std::ofstream os(path);
    os << j.dump(2) << "\n";
}

std::string check_trace(const TaskTrace& trace) {
    if (trace.status != TaskStatus::Success)
        return std::string("status ") + status_name(trace.status);
    if (trace.rows.empty()) return "no metric rows";
    const auto& last = trace.rows.back();
    const double half = trace.tpl.object.diameter / 2;
    if (std::abs(last.shape.e - half) > 0.25 * trace.tpl.object.diameter)
        return "final e " + fmt(last.shape.e) + " outside d_O/2 band";
    if (last.shape.e_out > 2.0)
        return "final e_out " + fmt(last.shape.e_out) + " above 2 mm";
    return "";
}

std::vector<BatchRow> run_batch(const std::vector<std::string>& config_paths,
                                int repeats, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::vector<std::string> sorted = config_paths;
    std::sort(sorted.begin(), sorted.end());

    std::vector<BatchRow> rows;
    for (const auto& path : sorted) {
        for (int rep = 0; rep < std::max(1, repeats); ++rep) {
            BatchRow row;
            row.config = fs::path(path).stem().string();
            row.seed = std::uint64_t(rep);
            try {
                ExperimentConfig cfg = load_config(path);
                cfg.seed = row.seed;
                std::string sub =
                    (fs::path(out_dir) /
                     (row.config + "_s" + std::to_string(rep)))
                        .string();
                TaskTrace trace = run_experiment(cfg, sub, false);
                row.status = status_name(trace.status);
                row.loops = int(trace.loops.size());
                if (!trace.rows.empty()) {
                    row.e = trace.rows.back().shape.e;
                    row.mu = trace.rows.back().mu;
                    row.sigma2 = trace.rows.back().sigma2;
                }
            } catch (const std::exception& ex) {
                row.status = std::string("Error: ") + ex.what();
            }
            rows.push_back(row);
        }
    }

    std::ofstream os(fs::path(out_dir) / "summary.csv");
    os << "config,seed,loops,status,e,mu,sigma2,success_rate\n";
    for (const auto& r : rows)
        os << r.config << "," << r.seed << "," << r.loops << "," << r.status
           << "," << fmt(r.e) << "," << fmt(r.mu) << "," << fmt(r.sigma2)
           << ",\n";

    // Per-config aggregates.
    for (std::size_t i = 0; i < rows.size();) {
        std::size_t j = i;
        while (j < rows.size() && rows[j].config == rows[i].config) ++j;
        const std::size_t n = j - i;
        double mean_e = 0, success = 0;
        for (std::size_t k = i; k < j; ++k) {
            mean_e += rows[k].e;
            if (rows[k].status == "Success") success += 1;
        }
        mean_e /= double(n);
        os << rows[i].config << ",mean,," << "," << fmt(mean_e) << ",,,"
           << fmt(success / double(n)) << "\n";
        if (n > 1) {
            double ss = 0;
            for (std::size_t k = i; k < j; ++k)
                ss += (rows[k].e - mean_e) * (rows[k].e - mean_e);
            os << rows[i].config << ",std,," << ","
               << fmt(std::sqrt(ss / double(n - 1))) << ",,,\n";
        } else {
            os << rows[i].config << ",std,," << ",,,,\n";
        }
        i = j;
    }
    return rows;
}

}  // namespace leopack
