// Python bindings. Reports cross the boundary as the same JSON documents the
// CLI prints with --json; the package wrapper decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hpt/corpus.hpp"
#include "hpt/driver.hpp"

namespace py = pybind11;

namespace {

hpt::Options options(bool open_corpus, std::uint64_t step_budget) {
  hpt::Options o;
  o.open_corpus = open_corpus;
  o.step_budget = step_budget;
  return o;
}

std::string check_text(const std::string& text, const std::string& name,
                       bool open_corpus, std::uint64_t step_budget) {
  hpt::CheckReport report;
  hpt::Session s = hpt::open_session(options(open_corpus, step_budget), report);
  hpt::check_source(s, {name, text}, report);
  return hpt::report_json(report);
}

std::string check_files(const std::vector<std::string>& paths, bool open_corpus,
                        std::uint64_t step_budget) {
  return hpt::report_json(hpt::run_check(paths, options(open_corpus, step_budget)));
}

std::string eval_expr(const std::string& expr, bool open_corpus,
                      std::uint64_t step_budget) {
  return hpt::eval_json(hpt::run_eval(expr, options(open_corpus, step_budget)));
}

std::string corpus(std::uint64_t step_budget) {
  hpt::CorpusRun run = hpt::run_corpus(hpt::load_corpus(), options(false, step_budget));
  return hpt::report_json(run.report);
}

py::list manifest() {
  py::list out;
  for (const auto& e : hpt::load_corpus().manifest) {
    py::dict d;
    d["name"] = e.name;
    d["kind"] = e.kind;
    d["anchor"] = e.anchor;
    d["summary"] = e.summary;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_hpt, m) {
  m.doc() = "Dependent type checker for path algebra";
  const std::uint64_t budget = hpt::kDefaultStepBudget;
  m.def("check_text", &check_text, py::arg("text"), py::arg("name") = "<input>",
        py::arg("open_corpus") = false, py::arg("step_budget") = budget);
  m.def("check_files", &check_files, py::arg("paths"), py::arg("open_corpus") = false,
        py::arg("step_budget") = budget);
  m.def("eval_expr", &eval_expr, py::arg("expr"), py::arg("open_corpus") = true,
        py::arg("step_budget") = budget);
  m.def("corpus", &corpus, py::arg("step_budget") = budget);
  m.def("manifest", &manifest);
}
