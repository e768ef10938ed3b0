#pragma once

#include <string>

#include "hpt/corpus.hpp"
#include "hpt/driver.hpp"
#include "hpt/elab.hpp"
#include "hpt/kernel.hpp"
#include "hpt/surface.hpp"

namespace hpt::test {

// The bundled corpus, checked once per process.
const CorpusRun& corpus_run();
const GlobalEnv& corpus_globals();

// Parses, elaborates and kernel-checks every declaration of `text` on top of
// `base`. Throws the first error.
GlobalEnv check_text(const GlobalEnv& base, const std::string& text);

ElabTerm elab(const GlobalEnv& globals, const std::string& text);

// Kernel normal form of a closed term at its inferred type.
TermPtr nf(const GlobalEnv& globals, const ElabTerm& t);

std::string show(const TermPtr& t);

}  // namespace hpt::test
