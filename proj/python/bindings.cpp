#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "roitrack/app.hpp"
#include "roitrack/controller.hpp"
#include "roitrack/geometry.hpp"
#include "roitrack/metrics.hpp"
#include "roitrack/protocol.hpp"
#include "roitrack/telemetry.hpp"
#include "roitrack/trials.hpp"

namespace py = pybind11;
using namespace roitrack;

PYBIND11_MODULE(_roitrack, m) {
  m.doc() = "Elliptical-ROI pan/tilt tracking core";
  m.attr("__version__") = app::kToolVersion;
  m.attr("MAX_GIMBAL_RATE") = kMaxGimbalRate;

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<fk::ProtocolError>(m, "ProtocolError", PyExc_ValueError);
  py::register_exception<app::UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<FrameSpec>(m, "FrameSpec")
      .def(py::init<int, int>(), py::arg("width") = 1920, py::arg("height") = 720)
      .def_readwrite("width", &FrameSpec::width)
      .def_readwrite("height", &FrameSpec::height);

  py::class_<ImagePoint>(m, "ImagePoint")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &ImagePoint::x)
      .def_readwrite("y", &ImagePoint::y)
      .def("__repr__", [](const ImagePoint& p) {
        return "ImagePoint(x=" + format_exact(p.x) + ", y=" + format_exact(p.y) + ")";
      });

  py::class_<EllipseRoi>(m, "EllipseRoi")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &EllipseRoi::a)
      .def_readwrite("b", &EllipseRoi::b)
      .def_static("from_fractions", &EllipseRoi::from_fractions, py::arg("frame"), py::arg("frac_x"),
                  py::arg("frac_y"));

  py::enum_<Sector>(m, "Sector")
      .value("Right", Sector::Right)
      .value("Top", Sector::Top)
      .value("Left", Sector::Left)
      .value("Bottom", Sector::Bottom);

  m.def("to_centered", &to_centered, py::arg("row"), py::arg("col"), py::arg("frame") = FrameSpec{});
  m.def("to_polar", [](const ImagePoint& p) {
    const auto pp = to_polar(p);
    return py::make_tuple(pp.r, pp.theta);
  });
  m.def("relative_position", &relative_position, py::arg("point"), py::arg("roi"));
  m.def("classify_sector", &classify_sector, py::arg("theta"));
  m.def("is_inside", &is_inside, py::arg("point"), py::arg("roi"));

  py::class_<GimbalCommand>(m, "GimbalCommand")
      .def(py::init<double, double>(), py::arg("yaw_rate") = 0.0, py::arg("pitch_rate") = 0.0)
      .def_readwrite("yaw_rate", &GimbalCommand::yaw_rate)
      .def_readwrite("pitch_rate", &GimbalCommand::pitch_rate)
      .def("idle", &GimbalCommand::idle)
      .def(py::self == py::self)
      .def("__repr__", [](const GimbalCommand& c) {
        return "GimbalCommand(yaw_rate=" + format_exact(c.yaw_rate) +
               ", pitch_rate=" + format_exact(c.pitch_rate) + ")";
      });

  py::class_<ControllerConfig>(m, "ControllerConfig")
      .def(py::init([](double frac_x, double frac_y, double rate, FrameSpec frame) {
             return ControllerConfig::with_fractions(frame, frac_x, frac_y, rate);
           }),
           py::arg("frac_x") = kDefaultRoiFraction, py::arg("frac_y") = kDefaultRoiFraction,
           py::arg("rate") = kMaxGimbalRate, py::arg("frame") = FrameSpec{})
      .def_readwrite("rate_magnitude", &ControllerConfig::rate_magnitude)
      .def_readwrite("frame", &ControllerConfig::frame)
      .def_readwrite("roi", &ControllerConfig::roi);

  m.def("step", &step, py::arg("point"), py::arg("cfg"));
  m.def("step_series", [](const std::vector<ImagePoint>& pts, const ControllerConfig& cfg) {
    return step_series(pts, cfg);
  });

  m.def("encode", [](const GimbalCommand& c) {
    std::vector<std::string> out;
    for (const auto& f : fk::encode(c)) out.push_back(f.text);
    return out;
  });
  m.def("decode", [](const std::string& frame) { return fk::decode(frame); });

  py::class_<TrialSample>(m, "TrialSample")
      .def_readonly("t", &TrialSample::t)
      .def_readonly("x", &TrialSample::x)
      .def_readonly("y", &TrialSample::y)
      .def_readonly("p", &TrialSample::p)
      .def_readonly("sector", &TrialSample::sector)
      .def_readonly("yaw_cmd", &TrialSample::yaw_cmd)
      .def_readonly("pitch_cmd", &TrialSample::pitch_cmd)
      .def_readonly("visible", &TrialSample::visible);

  py::class_<TrialConfig>(m, "TrialConfig")
      .def_readwrite("arena_id", &TrialConfig::arena_id)
      .def_readwrite("usv_speed", &TrialConfig::usv_speed)
      .def_readwrite("duration", &TrialConfig::duration)
      .def_readwrite("seed", &TrialConfig::seed)
      .def_readwrite("jitter_amplitude", &TrialConfig::jitter_amplitude)
      .def_readwrite("dt", &TrialConfig::dt)
      .def_readwrite("controller", &TrialConfig::controller);

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("config", &TrialRecord::config)
      .def_readonly("samples", &TrialRecord::samples)
      .def("to_csv", [](const TrialRecord& r) { return to_csv(r); });

  m.def("baseline_config", &baseline_config, py::arg("arena_id"));
  m.def("run_trial", &run_trial, py::arg("cfg"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_batch",
      [](const TrialConfig& cfg, const std::vector<std::uint64_t>& seeds) {
        return run_batch(cfg, static_cast<int>(seeds.size()), seeds);
      },
      py::arg("cfg"), py::arg("seeds"), py::call_guard<py::gil_scoped_release>());
  m.def("parse_csv", [](const std::string& text) { return parse_csv(text); });

  py::class_<Excursion>(m, "Excursion")
      .def_readonly("t_start", &Excursion::t_start)
      .def_readonly("t_end", &Excursion::t_end)
      .def_readonly("p_max", &Excursion::p_max)
      .def_readonly("open", &Excursion::open);
  m.def("detect_excursions", &detect_excursions, py::arg("record"));

  py::class_<SensitivityReport>(m, "SensitivityReport")
      .def_readonly("trials", &SensitivityReport::trials)
      .def_readonly("n", &SensitivityReport::n)
      .def_readonly("n_per_trial", &SensitivityReport::n_per_trial)
      .def_readonly("per_peak_s", &SensitivityReport::per_peak_s)
      .def_readonly("mean_s", &SensitivityReport::mean_s)
      .def_readonly("normalized_s", &SensitivityReport::normalized_s)
      .def_readonly("success", &SensitivityReport::success)
      .def_readonly("yaw_seconds", &SensitivityReport::yaw_seconds)
      .def_readonly("pitch_seconds", &SensitivityReport::pitch_seconds)
      .def_readonly("overlap_seconds", &SensitivityReport::overlap_seconds)
      .def("__str__", [](const SensitivityReport& r) { return app::report_text(r); });
  m.def("summarize", [](const std::vector<TrialRecord>& recs) { return summarize(recs); });
  m.def("normalize", &normalize, py::arg("mean_s"), py::arg("n"));
  m.def("cross_arena_normalized",
        [](const std::vector<SensitivityReport>& rs) { return cross_arena_normalized(rs); });

  m.def(
      "simulate",
      [](int arena, int trials, std::uint64_t seed, const std::filesystem::path& out_dir) {
        app::RunSettings s;
        s.arena_id = arena;
        s.trials = trials;
        s.seed = seed;
        const auto r = app::simulate(s, out_dir);
        return py::make_tuple(static_cast<int>(r.code), r.report);
      },
      py::arg("arena"), py::arg("trials"), py::arg("seed"), py::arg("out_dir"));
}
