// Python bindings for the main operations: model construction, linear
// stability, the coefficient pipeline, normal-form dynamics and the PDE runs.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "httlab/diagnostics.hpp"
#include "httlab/errors.hpp"
#include "httlab/io.hpp"
#include "httlab/manifold.hpp"
#include "httlab/nf_dynamics.hpp"
#include "httlab/pde.hpp"
#include "httlab/stability.hpp"

namespace py = pybind11;
using namespace httlab;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& el : j) out.append(json_to_py(el));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (auto& [key, val] : j.items()) out[py::str(key)] = json_to_py(val);
            return out;
        }
        default: return py::none();
    }
}

Json py_to_json(const py::handle& obj) {
    return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Model model_from_py(const py::dict& descriptor) { return model_from_json(py_to_json(descriptor)); }

CanonicalCoeffs coeffs_from_py(const py::dict& d) { return canonical_from_json(py_to_json(d)); }

}  // namespace

PYBIND11_MODULE(_httlab, m) {
    m.doc() = "Hopf-Turing-Turing bifurcation toolkit";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericalError>(m, "NumericalError");

    m.def("equilibrium", [](const py::dict& descriptor) {
        Model mod = model_from_py(descriptor);
        return py::make_tuple(mod.equilibrium.u, mod.equilibrium.v);
    }, py::arg("model"), "closed-form equilibrium of a model descriptor");

    m.def("derivatives", [](const py::dict& descriptor) {
        Model mod = model_from_py(descriptor);
        auto d = derivatives_at(mod.pair, mod.equilibrium);
        py::dict out;
        out["f_u"] = d.f_u; out["f_v"] = d.f_v; out["g_u"] = d.g_u; out["g_v"] = d.g_v;
        out["f_uu"] = d.f_uu; out["f_uv"] = d.f_uv; out["f_vv"] = d.f_vv;
        out["g_uu"] = d.g_uu; out["g_uv"] = d.g_uv; out["g_vv"] = d.g_vv;
        out["f_uuu"] = d.f_uuu; out["f_uuv"] = d.f_uuv; out["f_uvv"] = d.f_uvv;
        out["f_vvv"] = d.f_vvv;
        out["g_uuu"] = d.g_uuu; out["g_uuv"] = d.g_uuv; out["g_uvv"] = d.g_uvv;
        out["g_vvv"] = d.g_vvv;
        return out;
    }, py::arg("model"), "reaction partials at the equilibrium up to third order");

    m.def("hopf_alpha", [](const py::dict& descriptor) {
        Model mod = model_from_py(descriptor);
        return hopf_alpha(derivatives_at(mod.pair, mod.equilibrium));
    }, py::arg("model"));

    m.def("neutral_curve", [](const py::dict& descriptor, int n, double D_u, double L) {
        Model mod = model_from_py(descriptor);
        return neutral_curve(derivatives_at(mod.pair, mod.equilibrium), n, D_u, L);
    }, py::arg("model"), py::arg("n"), py::arg("D_u"), py::arg("L") = 1.0);

    m.def("degenerate_point_12", [](const py::dict& descriptor, double L) {
        Model mod = model_from_py(descriptor);
        auto pt = degenerate_point_12(derivatives_at(mod.pair, mod.equilibrium), M_PI / L);
        return py::make_tuple(pt.D_u, pt.D_v);
    }, py::arg("model"), py::arg("L") = 1.0);

    m.def("htt_point", [](const py::dict& descriptor, double L, int n_check) {
        Model mod = model_from_py(descriptor);
        auto pt = htt_point(derivatives_at(mod.pair, mod.equilibrium), L, n_check);
        return json_to_py(to_json(pt));
    }, py::arg("model"), py::arg("L") = 1.0, py::arg("n_check") = 64,
       "HTT point with the full verification map");

    m.def("coefficients", [](const py::dict& descriptor, double L) {
        Model mod = model_from_py(descriptor);
        auto d = derivatives_at(mod.pair, mod.equilibrium);
        return json_to_py(to_json(compute_coefficients(d, htt_point(d, L))));
    }, py::arg("model"), py::arg("L") = 1.0,
       "every layer of the center-manifold coefficient pipeline");

    m.def("nf_vector_field",
          [](std::array<double, 3> state, std::array<double, 3> mu, const py::dict& coeffs,
             bool resonance_terms) {
              ReducedParams p{mu[0], mu[1], mu[2], coeffs_from_py(coeffs), resonance_terms};
              auto f = nf_vector_field({state[0], state[1], state[2]}, p);
              return std::array<double, 3>{f.r0, f.z1, f.z2};
          },
          py::arg("state"), py::arg("mu"), py::arg("coeffs"),
          py::arg("resonance_terms") = true);

    m.def("nf_equilibria", [](std::array<double, 3> mu, const py::dict& coeffs) {
        ReducedParams p{mu[0], mu[1], mu[2], coeffs_from_py(coeffs), true};
        py::list out;
        for (const auto& info : nf_equilibria(p)) out.append(json_to_py(to_json(info)));
        return out;
    }, py::arg("mu"), py::arg("coeffs"));

    m.def("hopf_hopf", [](double rho, const py::dict& coeffs) {
        auto c = coeffs_from_py(coeffs);
        auto h = mm12_hopf_hopf(rho, c);
        hopf_hopf_coeffs(h, c);
        return json_to_py(to_json(h));
    }, py::arg("rho"), py::arg("coeffs"),
       "MM_{1:2} Hopf-Hopf point data, cubic coefficients and unfolding case");

    m.def("classify_unfolding", [](double b, double c, double d, double delta) {
        return to_string(classify_unfolding(b, c, d, delta));
    }, py::arg("b"), py::arg("c"), py::arg("d"), py::arg("delta_tilde"));

    m.def("integrate_reduced",
          [](std::array<double, 3> state0, std::array<double, 3> mu, const py::dict& coeffs,
             double t_end, std::size_t n_samples, bool resonance_terms) {
              ReducedParams p{mu[0], mu[1], mu[2], coeffs_from_py(coeffs), resonance_terms};
              auto traj = integrate_reduced(p, {state0[0], state0[1], state0[2]}, 0.0, t_end,
                                            n_samples);
              py::array_t<double> out({traj.size(), std::size_t(4)});
              auto w = out.mutable_unchecked<2>();
              for (std::size_t i = 0; i < traj.size(); ++i) {
                  w(i, 0) = traj[i].t;
                  w(i, 1) = traj[i].state.r0;
                  w(i, 2) = traj[i].state.z1;
                  w(i, 3) = traj[i].state.z2;
              }
              return out;
          },
          py::arg("state0"), py::arg("mu"), py::arg("coeffs"), py::arg("t_end"),
          py::arg("n_samples") = 1000, py::arg("resonance_terms") = true,
          "trajectory of the rescaled reduced system as an (n, 4) array of t, r0, z1, z2");

    m.def("lyapunov_max",
          [](std::array<double, 3> state0, std::array<double, 3> mu, const py::dict& coeffs,
             double t_total, double t_renorm) {
              ReducedParams p{mu[0], mu[1], mu[2], coeffs_from_py(coeffs), true};
              return lyapunov_max(p, {state0[0], state0[1], state0[2]}, t_total, t_renorm)
                  .lambda_max;
          },
          py::arg("state0"), py::arg("mu"), py::arg("coeffs"), py::arg("t_total") = 50000.0,
          py::arg("t_renorm") = 1.0);

    m.def("estimate_period", [](const std::vector<double>& t, const std::vector<double>& x) {
        auto est = estimate_period(t, x);
        py::dict out;
        out["periodic"] = est.periodic;
        out["period"] = est.period;
        out["spread"] = est.spread;
        out["reason"] = est.reason;
        return out;
    }, py::arg("t"), py::arg("x"));

    m.def("simulate_pde",
          [](const py::dict& descriptor, double D_u, double D_v, double alpha, double L,
             int n_points, const std::string& bc, double t_end, std::size_t n_samples,
             double ic_amplitude, std::uint64_t seed) {
              Model mod = model_from_py(descriptor);
              SystemParams params{D_u, D_v, alpha, L};
              Grid grid = bc == "periodic" ? Grid::periodic(n_points, L)
                                           : Grid::neumann(n_points, L);
              PdeSimulator sim(mod, params, grid);
              FieldState st =
                  default_initial_state(grid, mod.equilibrium, ic_amplitude, seed);
              auto traj = sim.run(st, t_end, n_samples);
              py::array_t<double> t_arr(traj.size());
              py::array_t<double> u_arr({traj.size(), std::size_t(n_points)});
              py::array_t<double> v_arr({traj.size(), std::size_t(n_points)});
              auto tw = t_arr.mutable_unchecked<1>();
              auto uw = u_arr.mutable_unchecked<2>();
              auto vw = v_arr.mutable_unchecked<2>();
              for (std::size_t i = 0; i < traj.size(); ++i) {
                  tw(i) = traj[i].t;
                  for (int jx = 0; jx < n_points; ++jx) {
                      uw(i, jx) = traj[i].u[jx];
                      vw(i, jx) = traj[i].v[jx];
                  }
              }
              return py::make_tuple(t_arr, u_arr, v_arr);
          },
          py::arg("model"), py::arg("D_u"), py::arg("D_v"), py::arg("alpha") = 1.0,
          py::arg("L") = 1.0, py::arg("n_points") = 128, py::arg("bc") = "neumann",
          py::arg("t_end") = 100.0, py::arg("n_samples") = 200,
          py::arg("ic_amplitude") = 1e-3, py::arg("seed") = 42,
          "method-of-lines run from a seeded perturbation of the equilibrium");
}
