#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lefweave/certify.hpp"
#include "lefweave/dsl.hpp"
#include "lefweave/invariants.hpp"
#include "lefweave/runner.hpp"

namespace py = pybind11;
using namespace lef;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
class PyWorkspace {
 public:
  PyWorkspace(const std::string& text, const std::string& file)
      : ws_(dsl::build_workspace(dsl::parse(text, file), file)) {}

  std::vector<std::string> fibers() const { return ws_.fiber_names(); }
  std::vector<std::string> data() const { return ws_.datum_names(); }
  std::vector<std::string> scripts() const { return ws_.script_names(); }

  std::string presentation(const std::string& name) const { return to_string(datum(name)); }

  std::vector<std::vector<std::string>> classes(const std::string& name) const {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : datum(name).cycles) {
      std::vector<std::string> row;
      for (const Int& x : c.klass.coords) row.push_back(x.str());
      out.push_back(std::move(row));
    }
    return out;
  }

  std::string invariants(const std::string& name) const { return export_json(compute_invariants(datum(name))).dump(); }

  std::string verify(const std::string& script) const {
    if (!ws_.has_script(script)) throw Error(ErrorCode::UndefinedName, "undefined script '" + script + "'");
    const auto& s = ws_.script(script);
    return export_json(verify_certificate(ws_.datum(s.datum).datum, s.certificate)).dump();
  }

  std::string search(const std::string& name, std::size_t depth, std::size_t width, unsigned threads) const {
    const SearchResult r = search_certificate(datum(name), depth, width, threads);
    nlohmann::json out{{"nodes", r.nodes}, {"result", r.certificate ? "found" : "none"}};
    out["certificate"] = r.certificate ? export_json(*r.certificate) : nlohmann::json(nullptr);
    return out.dump();
  }

  /// Subflexibilizes a datum and flexifies the result; returns the verdict.
  std::string flexify(const std::string& name, const std::vector<std::vector<long long>>& disks) const {
    std::vector<IntVector> t;
    for (const auto& d : disks) t.emplace_back(d.begin(), d.end());
    const LefschetzDatum sf = subflexibilize(datum(name), t);
    const FlexifyResult fx = flexify_after_handles(sf);
    nlohmann::json out = export_json(verify_certificate(fx.interleaved, fx.certificate));
    out["subflexibilized"] = to_string(sf);
    return out.dump();
  }

 private:
  const LefschetzDatum& datum(const std::string& name) const {
    if (!ws_.has_datum(name)) {
      const std::string hint = dsl::suggest(name, ws_.datum_names());
      throw Error(ErrorCode::UndefinedName,
                  "undefined datum '" + name + "'" + (hint.empty() ? "" : "; did you mean '" + hint + "'?"));
    }
    return ws_.datum(name).datum;
  }

  dsl::Workspace ws_;
};

}  // namespace

PYBIND11_MODULE(_lefweave, m) {
  m.doc() = "Symbolic calculus for Weinstein Lefschetz presentations";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "LefweaveError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = error.get_stored();
      py::object exc = type(std::string(e.what()));
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def(
      "run",
      [](const std::string& text, const std::string& file, std::optional<std::size_t> depth,
         std::optional<std::size_t> width, unsigned threads) {
        RunResult r = run_source(text, file, RunOptions{depth, width, threads});
        std::vector<std::string> lines;
        for (const auto& o : r.outputs) lines.push_back(o.dump());
        return py::make_tuple(lines, r.exit_code);
      },
      py::arg("text"), py::arg("file") = "<input>", py::arg("depth") = py::none(), py::arg("width") = py::none(),
      py::arg("threads") = 1u);

  m.def(
      "pretty", [](const std::string& text, const std::string& file) { return dsl::pretty(dsl::parse(text, file)); },
      py::arg("text"), py::arg("file") = "<input>");

  py::class_<PyWorkspace>(m, "Workspace")
      .def(py::init<const std::string&, const std::string&>(), py::arg("text"), py::arg("file") = "<input>")
      .def("fibers", &PyWorkspace::fibers)
      .def("data", &PyWorkspace::data)
      .def("scripts", &PyWorkspace::scripts)
      .def("presentation", &PyWorkspace::presentation)
      .def("classes", &PyWorkspace::classes)
      .def("invariants", &PyWorkspace::invariants)
      .def("verify", &PyWorkspace::verify)
      .def("search", &PyWorkspace::search, py::arg("datum"), py::arg("depth") = 4, py::arg("width") = 10000,
           py::arg("threads") = 1u)
      .def("flexify", &PyWorkspace::flexify, py::arg("datum"), py::arg("disks"));
}
