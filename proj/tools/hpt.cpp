#include <unistd.h>

#include <CLI11.hpp>
#include <iostream>

#include "hpt/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hpt: a small dependent type checker for path algebra"};
  app.require_subcommand(1);

  hpt::Options opts;
  bool json = false;
  bool no_color = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", json, "Print a machine-readable report");
    cmd->add_flag("--no-color", no_color, "Disable colored output");
    cmd->add_option("--step-budget", opts.step_budget,
                    "Evaluation step budget per declaration")
        ->check(CLI::PositiveNumber);
  };

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Check .hpt files in order");
  check->add_option("files", files, "Files to check");
  check->add_flag("--open-corpus", opts.open_corpus,
                  "Load the bundled corpus first");
  add_common(check);

  std::string expr;
  auto* evalc = app.add_subcommand("eval", "Normalize an expression");
  evalc->add_option("-e,--expr", expr, "Expression to evaluate")->required();
  evalc->add_flag("--open-corpus", opts.open_corpus,
                  "Load the bundled corpus first");
  add_common(evalc);

  auto* corpus = app.add_subcommand("corpus", "Check the bundled corpus");
  add_common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opts.color = !no_color && !json && isatty(STDOUT_FILENO);

  if (*check) {
    hpt::CheckReport r = hpt::run_check(files, opts);
    std::cout << (json ? hpt::report_json(r) + "\n"
                       : hpt::render_report(r, opts.color));
    return hpt::exit_code(r);
  }
  if (*evalc) {
    hpt::EvalResult r = hpt::run_eval(expr, opts);
    if (json) {
      std::cout << hpt::eval_json(r) << "\n";
    } else {
      for (const auto& d : r.report.diagnostics)
        std::cout << hpt::render_diagnostic(d, r.report.sources, opts.color);
      if (r.value)
        std::cout << "value: " << *r.value << "\ntype: " << *r.type << "\n";
    }
    return r.value && r.report.ok() ? 0 : 1;
  }

  hpt::CorpusRun run;
  try {
    run = hpt::run_corpus(hpt::load_corpus(), opts);
  } catch (const hpt::Error& e) {
    run.report.diagnostics.push_back(hpt::diagnostic_from(e, "<corpus>"));
  }
  std::cout << (json ? hpt::report_json(run.report) + "\n"
                     : hpt::render_corpus(run, opts.color));
  return hpt::exit_code(run.report);
}
