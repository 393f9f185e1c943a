#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "liemm/cli.hpp"
#include "liemm/repdim.hpp"

namespace py = pybind11;
using namespace liemm;

namespace {

// mpz values cross as Python ints via their decimal string
py::int_ to_py(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

}  // namespace

PYBIND11_MODULE(_liemm, m) {
  m.doc() = "Bindings for the liemm verification core";
  m.attr("__version__") = kToolVersion;

  m.def("weyl_dim", [](const Partition& lam, int n) { return to_py(weyl_dim(lam, n)); }, py::arg("partition"),
        py::arg("n"));
  m.def("sum_dim_squares", [](int s, int n) { return to_py(sum_dim_squares(s, n)); }, py::arg("s"), py::arg("n"));
  m.def(
      "max_dim",
      [](int s, int n) {
        auto r = max_dim(s, n);
        return py::make_tuple(r.lambda, to_py(r.dim));
      },
      py::arg("s"), py::arg("n"));
  m.def("partitions_of", &partitions_of, py::arg("s"), py::arg("max_parts"));

  py::register_exception<NoBound>(m, "NoBound", PyExc_ValueError);
  m.def(
      "omega_bound",
      [](double x, double y, double z, double D, double dmax, bool logs) {
        return omega_bound(OmegaInputs{x, y, z, D, dmax, logs});
      },
      py::arg("size_x"), py::arg("size_y"), py::arg("size_z"), py::arg("D"), py::arg("dmax"), py::arg("logs") = false);

  m.def("subcommands", &subcommand_names);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"liemm"};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(full, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one CLI invocation in-process; returns (exit_code, stdout, stderr).");
}
