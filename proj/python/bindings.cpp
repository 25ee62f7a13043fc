#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vmeander/algorithms.hpp"
#include "vmeander/cli.hpp"
#include "vmeander/diagram.hpp"
#include "vmeander/gauss.hpp"
#include "vmeander/invariants.hpp"
#include "vmeander/moves.hpp"

namespace py = pybind11;
using namespace vmeander;

namespace {

py::dict transform_dict(const SemimeanderResult& r) {
  py::dict out;
  out["diagram"] = serialize_diagram(r.diagram);
  out["code"] = serialize_gauss(to_gauss(r.diagram));
  out["trace"] = serialize_trace(r.trace, r.diagram);
  out["cuts"] = r.cuts.cut_edges;
  out["input_classical"] = r.input_classical;
  out["output_classical"] = r.output_classical;
  out["input_crossings"] = r.input_crossings;
  out["output_crossings"] = r.output_crossings;
  out["semimeander_classical"] = r.semimeander_classical;
  out["identity"] = r.identity;
  out["within_bound"] = r.within_bound;
  out["small_counterexample"] = r.small_counterexample;
  out["bound"] = r.bound_value ? py::cast(*r.bound_value) : py::none();
  return out;
}

std::string jsonl(const cli::Report& r) { return r.to_jsonl(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Virtual knot diagrams, arc numbers and meander forms";

  py::register_exception<GaussError>(m, "GaussError", PyExc_ValueError);
  py::register_exception<DiagramError>(m, "DiagramError", PyExc_ValueError);
  py::register_exception<MoveError>(m, "MoveError", PyExc_ValueError);
  py::register_exception<AlgorithmError>(m, "AlgorithmError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<GaussCode>(m, "GaussCode")
      .def(py::init([](const std::string& text) { return parse_gauss(text); }), py::arg("text") = "")
      .def("__str__", &serialize_gauss)
      .def("__repr__", [](const GaussCode& c) { return "GaussCode('" + serialize_gauss(c) + "')"; })
      .def("__len__", &GaussCode::size)
      .def("__eq__", [](const GaussCode& a, const GaussCode& b) { return a == b; })
      .def_property_readonly("chord_count", &GaussCode::chord_count)
      .def("chords",
           [](const GaussCode& c) {
             std::vector<std::tuple<int, std::size_t, std::size_t, int>> out;
             for (const Chord& ch : c.chords()) out.emplace_back(ch.id, ch.pos_over, ch.pos_under, ch.sign);
             return out;
           })
      .def("relabeled", &GaussCode::relabeled)
      .def("mirrored", &GaussCode::mirrored)
      .def("reversed", &GaussCode::reversed)
      .def("normalized", [](const GaussCode& c) { return normalize(c).code; });

  m.def("min_arc_number", [](const GaussCode& c) {
    const KArcReport k = min_arc_number(c);
    py::dict out;
    out["min_arcs"] = k.min_arcs;
    out["witness"] = k.witness.cuts;
    out["classical"] = k.classical_crossings;
    return out;
  });
  m.def("brute_min_arc_number", &brute_min_arc_number);
  m.def("is_k_arc_split", [](const GaussCode& c, std::vector<std::size_t> cuts) {
    return is_k_arc_split(c, ArcSplit{std::move(cuts)});
  });
  m.def("delete_chord", &delete_chord);
  m.def("parity_projection", &parity_projection);
  m.def("chord_parity", [](const GaussCode& c, int id) {
    return chord_parity(c, id) == Parity::Odd ? "odd" : "even";
  });
  m.def("carter_genus", &carter_genus);
  m.def("reduce", &reduce);
  m.def("is_reduced", &is_reduced);

  m.def("writhe", &writhe);
  m.def("odd_writhe", &odd_writhe);
  m.def("affine_index_polynomial", [](const GaussCode& c) { return affine_index_polynomial(c).to_string(); });
  m.def("f_polynomial", [](const GaussCode& c, int cap) { return f_polynomial(c, cap).to_string(); },
        py::arg("code"), py::arg("cap") = kDefaultFPolyCap);
  m.def("f_polynomial_frontier", [](const GaussCode& c) { return f_polynomial_frontier(c).to_string(); });
  m.def("kauffman_bracket", [](const GaussCode& c, int cap) { return kauffman_bracket(c, cap).to_string(); },
        py::arg("code"), py::arg("cap") = kDefaultFPolyCap);

  py::class_<PlanarDiagram>(m, "Diagram")
      .def(py::init<>())
      .def_static("from_gauss", &from_gauss)
      .def_static("parse", [](const std::string& text) { return parse_diagram(text); })
      .def("serialize", &serialize_diagram)
      .def("to_gauss", &to_gauss)
      .def("canonical", &PlanarDiagram::canonical)
      .def_property_readonly("classical_count", &PlanarDiagram::classical_count)
      .def_property_readonly("virtual_count", &PlanarDiagram::virtual_count)
      .def_property_readonly("vertex_count", &PlanarDiagram::vertex_count)
      .def_property_readonly("face_count", [](const PlanarDiagram& d) { return d.faces().size(); })
      .def_property_readonly("genus", &PlanarDiagram::genus)
      .def("__eq__", [](const PlanarDiagram& a, const PlanarDiagram& b) { return a == b; })
      .def("__str__", &serialize_diagram);

  m.def("is_semimeander", &is_semimeander);
  m.def("is_strong_semimeander", &is_strong_semimeander);
  m.def("is_meander", &is_meander);
  m.def("is_strong_meander", &is_strong_meander);

  m.def("semimeanderize", [](const PlanarDiagram& d, bool bounded) {
    return transform_dict(bounded ? semimeanderize_bounded(d) : semimeanderize(d));
  }, py::arg("diagram"), py::arg("bounded") = false);
  m.def("meanderize", [](const PlanarDiagram& d) { return transform_dict(meanderize(d)); });
  m.def("within_sqrt3_power", &within_sqrt3_power);

  m.def("replay_trace", [](const std::string& text) {
    const ParsedTrace p = parse_trace(text);
    if (!p.initial) throw MoveError("trace has no initial diagram");
    MoveTrace t;
    t.initial = *p.initial;
    t.steps = p.steps;
    return serialize_diagram(replay(t));
  });

  m.def("karc_upper_bounds", [](const GaussCode& c, int kmax, long budget) {
    const KArcBounds b = karc_upper_bounds(c, kmax, budget);
    py::dict out;
    py::list rows;
    for (const KArcBound& k : b.bounds) {
      py::dict row;
      row["k"] = k.k;
      row["best"] = k.best ? py::cast(*k.best) : py::none();
      rows.append(row);
    }
    out["bounds"] = rows;
    out["partial"] = b.partial;
    out["explored"] = b.explored;
    return out;
  }, py::arg("code"), py::arg("kmax"), py::arg("budget") = 20000);

  // Command reports as JSON lines; the package wrapper decodes them.
  py::module_ cmd = m.def_submodule("cmd");
  cmd.def("arcs", [](const std::string& in) { return jsonl(cli::cmd_arcs(cli::load_input(in))); });
  cmd.def("semimeander", [](const std::string& in, bool bounded, bool strong) {
    return jsonl(cli::cmd_semimeander(cli::load_input(in), bounded, strong, {}));
  }, py::arg("input"), py::arg("bounded") = false, py::arg("strong") = true);
  cmd.def("meander", [](const std::string& in) { return jsonl(cli::cmd_meander(cli::load_input(in), {})); });
  cmd.def("merge", [](const std::string& in, std::vector<std::size_t> cuts, int k) {
    return jsonl(cli::cmd_merge(cli::load_input(in), std::move(cuts), k, {}));
  }, py::arg("input"), py::arg("cuts") = std::vector<std::size_t>{}, py::arg("k") = 2);
  cmd.def("project", [](const std::string& in) { return jsonl(cli::cmd_project(cli::load_input(in))); });
  cmd.def("gen", [](int n, std::uint64_t seed, int count) {
    return jsonl(cli::cmd_gen({n, seed, count, false}));
  }, py::arg("n"), py::arg("seed") = 1, py::arg("count") = 1);
  cmd.def("verify", [](const std::string& corpus, std::uint64_t seed, int count) {
    cli::VerifyOptions o;
    o.corpus_path = corpus;
    o.seed = seed;
    o.count = count;
    py::gil_scoped_release release;
    return jsonl(cli::cmd_verify(o));
  }, py::arg("corpus") = "", py::arg("seed") = 42, py::arg("count") = 100);
}
