#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leopack/config.hpp"
#include "leopack/experiment.hpp"
#include "leopack/metrics.hpp"
#include "leopack/perception.hpp"
#include "leopack/planner.hpp"
#include "leopack/sim.hpp"
#include "leopack/spiral.hpp"

namespace py = pybind11;
using namespace leopack;

namespace {

using PyPoint = std::tuple<double, double, double>;

PointCloud to_cloud(const std::vector<PyPoint>& pts) {
    PointCloud out;
    out.reserve(pts.size());
    for (const auto& [x, y, z] : pts) out.push_back({x, y, z});
    return out;
}

std::vector<PyPoint> from_cloud(const PointCloud& cloud) {
    std::vector<PyPoint> out;
    out.reserve(cloud.size());
    for (const auto& p : cloud) out.emplace_back(p.x, p.y, p.z);
    return out;
}

}  // namespace

PYBIND11_MODULE(_leopack, m) {
    m.doc() = "Packing pipeline for long linear elastic objects";

    py::class_<BoxSpec>(m, "BoxSpec")
        .def(py::init([](double l, double w, double h) {
                 BoxSpec b{l, w, h};
                 b.validate();
                 return b;
             }),
             py::arg("length"), py::arg("width"), py::arg("height"))
        .def_readonly("length", &BoxSpec::length)
        .def_readonly("width", &BoxSpec::width)
        .def_readonly("height", &BoxSpec::height);

    py::class_<ObjectSpec>(m, "ObjectSpec")
        .def_readonly("length", &ObjectSpec::length)
        .def_readonly("diameter", &ObjectSpec::diameter)
        .def_readonly("youngs_modulus", &ObjectSpec::youngs_modulus)
        .def_readonly("density", &ObjectSpec::density);

    m.def(
        "make_object",
        [](const std::string& material, double length, double diameter) {
            return make_object(material_from_name(material), length, diameter);
        },
        py::arg("material"), py::arg("length"), py::arg("diameter"));

    py::class_<ReferenceTemplate>(m, "ReferenceTemplate")
        .def_property_readonly(
            "points",
            [](const ReferenceTemplate& t) { return from_cloud(t.points); })
        .def_readonly("cum_len", &ReferenceTemplate::cum_len)
        .def_readonly("capacity", &ReferenceTemplate::capacity)
        .def("total_length", &ReferenceTemplate::total_length)
        .def("spacing", &ReferenceTemplate::spacing)
        .def("__len__", &ReferenceTemplate::size);

    m.def("max_capacity", &max_capacity, py::arg("box"),
          py::arg("rod_diameter"));
    m.def("default_sample_count", &default_sample_count);
    m.def("generate_template", &generate_template, py::arg("box"),
          py::arg("object"), py::arg("samples"));
    m.def(
        "placing_indices",
        [](const ReferenceTemplate& tpl, double delta_l) {
            return placing_indices(tpl, delta_l);
        },
        py::arg("template"), py::arg("delta_l"));

    m.def(
        "perceive",
        [](const std::vector<PyPoint>& raw, const BoxSpec& box, int rays) {
            PerceptionParams params;
            params.rays = rays;
            PerceptionResult res = perceive(to_cloud(raw), box, params);
            py::dict d;
            d["inside"] = from_cloud(res.inside);
            d["skeleton"] = from_cloud(res.skeleton.points);
            d["outside_count"] = res.outside_count;
            d["est_length"] = res.est_length;
            d["est_width"] = res.est_width;
            return d;
        },
        py::arg("cloud"), py::arg("box"), py::arg("rays") = 180);

    m.def(
        "shape_difference",
        [](const std::vector<PyPoint>& inside,
           const std::vector<PyPoint>& skeleton, const ReferenceTemplate& tpl,
           int s) {
            OrderedSkeleton skel;
            skel.points = to_cloud(skeleton);
            ShapeDifference d = shape_difference(to_cloud(inside), skel, tpl, s);
            py::dict out;
            out["e_in"] = d.e_in;
            out["e_out"] = d.e_out;
            out["e"] = d.e;
            out["w"] = d.w;
            out["s"] = d.s;
            return out;
        },
        py::arg("inside"), py::arg("skeleton"), py::arg("template"),
        py::arg("s"));

    m.def("parse_config", &parse_config);
    m.def("render_config", &render_config);

    m.def(
        "render_initial_cloud",
        [](const std::string& config_text, std::uint64_t seed) {
            ExperimentConfig cfg = parse_config(config_text);
            WorldState world = make_initial_world(cfg.box, cfg.object, cfg.z0);
            return from_cloud(render_cloud(world, cfg.density, cfg.noise_sigma,
                                           cfg.r_occ, cfg.z0, seed));
        },
        py::arg("config_text"), py::arg("seed") = 0);

    m.def(
        "run_config",
        [](const std::string& config_text, const std::string& out_dir) {
            ExperimentConfig cfg = parse_config(config_text);
            TaskTrace trace = run_experiment(cfg, out_dir, false);
            py::dict d;
            d["status"] = status_name(trace.status);
            d["loops"] = trace.loops.size();
            d["placing_indices"] = trace.placing;
            if (!trace.rows.empty()) {
                d["final_e"] = trace.rows.back().shape.e;
                d["final_mu"] = trace.rows.back().mu;
                d["final_sigma2"] = trace.rows.back().sigma2;
            }
            return d;
        },
        py::arg("config_text"), py::arg("out_dir"));
}
