#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "eprsteer/bounds.hpp"
#include "eprsteer/errors.hpp"
#include "eprsteer/experiment.hpp"
#include "eprsteer/protocol.hpp"
#include "eprsteer/random.hpp"
#include "eprsteer/report_json.hpp"
#include "eprsteer/states.hpp"

namespace py = pybind11;
using namespace eprsteer;

namespace {

using Axis = std::array<double, 3>;
using Matrix = std::vector<std::vector<Complex>>;

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(dump_json(j)); }

Matrix to_rows(const DensityMatrix& rho) {
    Matrix rows(static_cast<std::size_t>(rho.dim()));
    for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c) rows[static_cast<std::size_t>(r)].push_back(rho(r, c));
    return rows;
}

DensityMatrix from_rows(const Matrix& rows) {
    const int d = static_cast<int>(rows.size());
    if (d != 2 && d != 4) throw DomainError("density matrix must be 2x2 or 4x4");
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r) {
        if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != d) throw DomainError("density matrix must be square");
        for (int c = 0; c < d; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return DensityMatrix(m);
}

std::vector<Axis> axes_of(const MeasurementScheme& s) {
    std::vector<Axis> out;
    for (const auto& u : s.axes()) out.push_back({u.x, u.y, u.z});
    return out;
}

MeasurementScheme scheme_from(const std::vector<Axis>& axes) {
    std::vector<BlochVector> v;
    for (const auto& a : axes) v.push_back({a[0], a[1], a[2]});
    return MeasurementScheme::from_axes(std::move(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "EPR-steering bounds, Werner-state protocol simulation and counting statistics";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<EstimationError>(m, "EstimationError", PyExc_RuntimeError);

    m.def("supported_setting_counts", &supported_setting_counts);
    m.def("scheme_axes", [](int n) { return axes_of(scheme_axes(n)); }, py::arg("n"));
    m.def("steering_bound", [](int n) { return to_python(to_json(steering_bound(scheme_axes(n)))); }, py::arg("n"));
    m.def("steering_bound_axes", [](const std::vector<Axis>& axes) { return to_python(to_json(steering_bound(scheme_from(axes)))); },
          py::arg("axes"));
    m.def("analytic_bound", &analytic_bound, py::arg("n"));

    m.def("werner", [](double mu) { return to_rows(werner(mu)); }, py::arg("mu"));
    m.def("tangle", [](const Matrix& rho) { return tangle(from_rows(rho)); }, py::arg("rho"));
    m.def("concurrence", [](const Matrix& rho) { return concurrence(from_rows(rho)); }, py::arg("rho"));
    m.def("linear_entropy", [](const Matrix& rho) { return linear_entropy(from_rows(rho)); }, py::arg("rho"));
    m.def("fidelity", [](const Matrix& a, const Matrix& b) { return fidelity(from_rows(a), from_rows(b)); },
          py::arg("rho"), py::arg("sigma"));
    m.def("classify", [](double mu) { return std::string(regime_name(classify(WernerParameter(mu)))); }, py::arg("mu"));

    m.def("honest_steering", [](double mu, int n) { return to_python(to_json(honest_steering(werner(mu), scheme_axes(n)))); },
          py::arg("mu"), py::arg("n"));
    m.def(
        "cheat_steering",
        [](int n, const std::string& kind) {
            return to_python(to_json(cheat_steering(make_ensemble(n, parse_kind(kind)), scheme_axes(n))));
        },
        py::arg("n"), py::arg("kind"));
    m.def("chsh_max", [](double mu) { return to_python(to_json(chsh_max(werner(mu)))); }, py::arg("mu"));

    m.def(
        "full_pipeline",
        [](double mu, int n, double shots, std::uint64_t seed) {
            PipelineReport r;
            {
                py::gil_scoped_release release;
                r = full_pipeline({.mu = mu, .n = n, .shots = shots, .seed = seed});
            }
            return to_python(to_json(r));
        },
        py::arg("mu"), py::arg("n"), py::arg("shots") = 1e4, py::arg("seed") = 0);
    m.def(
        "tomography",
        [](double mu, double shots, std::uint64_t seed) {
            const auto target = werner(mu);
            const auto rho_hat = tomography(sample_counts(target, tomography_settings(), shots, stream_seed(seed, 0)));
            return py::dict(py::arg("rho_hat") = to_rows(rho_hat), py::arg("fidelity_to_target") = fidelity(rho_hat, target),
                            py::arg("tangle") = tangle(rho_hat), py::arg("linear_entropy") = linear_entropy(rho_hat));
        },
        py::arg("mu"), py::arg("shots") = 1e4, py::arg("seed") = 0);
}
