// Thin bindings. Everything crosses the boundary as JSON text in the same
// shapes the CLI reads and writes; the Python side turns it into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tcspan/build.hpp"
#include "tcspan/dual.hpp"
#include "tcspan/error.hpp"
#include "tcspan/io.hpp"
#include "tcspan/jumps.hpp"
#include "tcspan/oracle.hpp"
#include "tcspan/verify.hpp"

namespace py = pybind11;
using namespace tcspan;
using io::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(e.what());
  }
}

Poset poset_of(const std::string& text) { return io::poset_from_json(parse(text)); }

std::string out(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  m.def("version", [] { return std::string(io::version()); });
  m.def("hypergrid", [](std::uint64_t side, std::size_t d) { return out(io::poset_to_json(hypergrid(side, d))); });
  m.def("canonicalize", [](const std::string& p) { return out(io::poset_to_json(canonicalize_embedding(poset_of(p)))); });
  m.def("sample_poset", [](std::size_t n, std::size_t d, std::uint64_t seed, std::uint64_t trial) {
    return out(io::poset_to_json(sample_poset({n, d, seed, trial})));
  });
  m.def("build", [](const std::string& p) { return out(io::spanner_to_json(build_steiner_2tc(poset_of(p)))); });
  m.def("verify", [](const std::string& h, const std::string& p, unsigned k, unsigned threads) {
    const SpannerGraph g = io::spanner_from_json(parse(h));
    const Poset q = poset_of(p);
    py::gil_scoped_release nogil;
    return out(io::report_to_json(is_steiner_ktc(g, q, k, threads)));
  });
  m.def("oracle", [](const std::string& p, unsigned k) {
    const Poset q = poset_of(p);
    return out(io::oracle_to_json(k == 2 ? min_2tc_bruteforce(q) : min_ktc_bruteforce(q, k)));
  });
  m.def("certify", [](std::uint64_t side, std::size_t d) {
    py::gil_scoped_release nogil;
    return out(io::certificate_to_json(certify(side, d)));
  });
  m.def("jump_count", [](const std::string& p) { return enumerate_jumps(poset_of(p)).size(); });
  m.def("jump_stats", [](std::size_t n, std::size_t d, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    py::gil_scoped_release nogil;
    return out(io::jump_stats_summary(monte_carlo_jumps(n, d, trials, seed, threads)));
  });
}
