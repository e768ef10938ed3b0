#pragma once

// The bundled proof corpus: dependency-ordered sources, the manifest that
// indexes every declaration, and the definitional assertions it must pass.

#include <string>
#include <vector>

namespace hpt {

struct SourceFile {
  std::string name;
  std::string text;
};

struct CorpusEntry {
  std::string name;
  std::string kind;  // definition | lemma | theorem | axiom | assertion
  std::string anchor;
  std::string summary;
};

struct RequiredAssertion {
  std::string lhs;
  std::string rhs;
  std::string type;
};

struct CorpusData {
  std::string origin;  // directory, or "<bundled>"
  std::vector<SourceFile> sources;
  std::vector<CorpusEntry> manifest;
  SourceFile assertions;  // `#assert defeq` declarations
};

// Reads the corpus from $HPT_CORPUS_DIR when set, otherwise returns the copy
// compiled into the binary. Throws Error(Io) on unreadable directories.
CorpusData load_corpus();
CorpusData load_corpus_dir(const std::string& dir);
CorpusData bundled_corpus();

std::vector<SourceFile> prelude_sources();
std::vector<CorpusEntry> manifest();
std::vector<RequiredAssertion> required_assertions();

std::vector<CorpusEntry> parse_manifest(const std::string& text,
                                        const std::string& file);

}  // namespace hpt
