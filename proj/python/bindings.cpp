#include "mwp/corpus.hpp"
#include "mwp/error.hpp"
#include "mwp/heads.hpp"
#include "mwp/labels.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using nlohmann::json;

namespace {

std::vector<mwp::ExactValue> parse_bindings(const std::vector<std::string>& values) {
  std::vector<mwp::ExactValue> out;
  for (const auto& v : values) out.push_back(mwp::parse_answer(v).value);
  return out;
}

std::string evaluate(const std::string& equation, const std::vector<std::string>& bindings) {
  const auto b = parse_bindings(bindings);
  const mwp::EvalValue v = mwp::evaluate(mwp::parse_equation(mwp::strip_assignment_head(equation)), b);
  return json{{"value", v.render()}, {"exact", v.exact()}, {"float", v.to_double()}}.dump();
}

std::string convert(const std::string& text, const std::string& from, const std::string& to) {
  const mwp::EquationTree t = from == "prefix" ? mwp::parse_prefix(text)
                                               : mwp::parse_equation(mwp::strip_assignment_head(text));
  return mwp::to_string(t, to == "prefix" ? mwp::Notation::Prefix : mwp::Notation::Infix);
}

std::string recognize_numbers(const std::string& text) {
  json out = json::array();
  for (const auto& n : mwp::recognize_numbers(mwp::tokenize_text(text))) {
    out.push_back({{"position", n.position},
                   {"surface", n.surface},
                   {"value", n.value.canonical()},
                   {"kind", mwp::to_string(n.kind)}});
  }
  return out.dump();
}

std::string parse_answer(const std::string& answer) {
  const mwp::TypedNumber n = mwp::parse_answer(answer);
  return json{{"value", n.value.canonical()}, {"kind", mwp::to_string(n.kind)}}.dump();
}

mwp::MwpRecord record_from(const std::string& record_json) {
  std::istringstream in(record_json);
  mwp::IngestResult r = mwp::ingest(in);
  if (r.records.size() != 1) {
    throw mwp::Error(mwp::Errc::InvalidArgument,
                     r.errors.empty() ? "expected one record" : r.errors.front().message);
  }
  return std::move(r.records.front());
}

std::string map_problem(const std::string& text, int k) {
  const auto tokens = mwp::tokenize_text(text);
  return mwp::to_json(mwp::map_numbers(tokens, mwp::recognize_numbers(tokens), k)).dump();
}

std::string classify(const std::string& record_json, std::size_t max_text_tokens, std::size_t max_eq_tokens,
                     int k, double tolerance) {
  mwp::FilterLimits limits;
  limits.max_text_tokens = max_text_tokens;
  limits.max_equation_tokens = max_eq_tokens;
  limits.max_quantities = k;
  limits.tolerance = tolerance;
  return mwp::classify(record_from(record_json), limits, {}).to_json().dump();
}

std::string label_bundle(const std::string& record_json, std::uint64_t seed, std::vector<std::string> vocab) {
  const mwp::MwpRecord r = record_from(record_json);
  const mwp::Analysis a = mwp::analyze(r);
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  return mwp::emit_label_bundle(r, a, seed, vocab).to_json().dump();
}

std::string grad_check(const std::string& task_name, std::size_t h, std::size_t hidden, std::size_t instances,
                       std::uint64_t seed) {
  const mwp::HeadTask task = mwp::head_task_from_string(task_name);
  const mwp::HeadConfig cfg = mwp::random_head_config(task, h, hidden, 12, instances, seed);
  return mwp::grad_check(task, cfg.params, cfg.z, cfg.instances).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Math word problem preprocessing and auxiliary-label toolkit";

  static PyObject* error = py::exception<mwp::Error>(m, "MwpError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const mwp::Error& e) {
      PyErr_SetString(error, (std::string(mwp::errc_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("evaluate", &evaluate, py::arg("equation"), py::arg("bindings") = std::vector<std::string>{});
  m.def("convert", &convert, py::arg("text"), py::arg("source") = "infix", py::arg("target") = "prefix");
  m.def("operator_count", [](const std::string& equation) {
    return mwp::parse_equation(mwp::strip_assignment_head(equation)).operator_count();
  });
  m.def("tokenize_text", &mwp::tokenize_text);
  m.def("recognize_numbers", &recognize_numbers);
  m.def("parse_answer", &parse_answer);
  m.def("map_problem", &map_problem, py::arg("text"), py::arg("k") = mwp::kDefaultMaxQuantities);
  m.def("classify", &classify, py::arg("record"), py::arg("max_text_tokens") = 100, py::arg("max_eq_tokens") = 20,
        py::arg("k") = mwp::kDefaultMaxQuantities, py::arg("tolerance") = 1e-4);
  m.def("label_bundle", &label_bundle, py::arg("record"), py::arg("seed"),
        py::arg("vocab") = std::vector<std::string>{});
  m.def("grad_check", &grad_check, py::arg("task"), py::arg("h") = 8, py::arg("hidden") = 8,
        py::arg("instances") = 50, py::arg("seed") = 0);
}
