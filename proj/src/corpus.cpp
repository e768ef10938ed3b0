#include "hpt/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hpt/error.hpp"
#include "hpt/surface.hpp"

namespace hpt {

namespace detail {
const std::vector<std::pair<std::string, std::string>>& embedded_corpus();
}

namespace {

constexpr const char* kManifest = "manifest.tsv";
constexpr const char* kAssertions = "assertions.hpt";

bool is_source_name(const std::string& name) {
  return name.size() > 7 && std::isdigit(static_cast<unsigned char>(name[0])) &&
         std::isdigit(static_cast<unsigned char>(name[1])) && name[2] == '-' &&
         name.ends_with(".hpt");
}

CorpusData assemble(std::string origin,
                    std::vector<std::pair<std::string, std::string>> files) {
  std::sort(files.begin(), files.end());
  CorpusData data;
  data.origin = std::move(origin);
  bool have_manifest = false;
  for (auto& [name, text] : files) {
    if (is_source_name(name)) {
      data.sources.push_back({name, text});
    } else if (name == kAssertions) {
      data.assertions = {name, text};
    } else if (name == kManifest) {
      data.manifest = parse_manifest(text, name);
      have_manifest = true;
    }
  }
  if (!have_manifest)
    throw Error(ErrorKind::Io, {}, "corpus at " + data.origin +
                                       " has no " + kManifest);
  return data;
}

}  // namespace

std::vector<CorpusEntry> parse_manifest(const std::string& text,
                                        const std::string& file) {
  std::vector<CorpusEntry> out;
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 3)
      throw Error(ErrorKind::Io, SourceSpan{file, lineno, 1, lineno, 1},
                  "manifest record needs name, kind and anchor");
    out.push_back({fields[0], fields[1], fields[2],
                   fields.size() > 3 ? fields[3] : std::string()});
  }
  return out;
}

CorpusData bundled_corpus() {
  return assemble("<bundled>", detail::embedded_corpus());
}

CorpusData load_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error(ErrorKind::Io, {}, "corpus directory '" + dir + "' not found");
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (!entry.is_regular_file()) continue;
    if (!is_source_name(name) && name != kManifest && name != kAssertions)
      continue;
    std::ifstream f(entry.path(), std::ios::binary);
    if (!f)
      throw Error(ErrorKind::Io, {}, "cannot read " + entry.path().string());
    std::ostringstream ss;
    ss << f.rdbuf();
    files.emplace_back(name, ss.str());
  }
  return assemble(dir, std::move(files));
}

CorpusData load_corpus() {
  if (const char* dir = std::getenv("HPT_CORPUS_DIR"); dir && *dir)
    return load_corpus_dir(dir);
  return bundled_corpus();
}

std::vector<SourceFile> prelude_sources() { return load_corpus().sources; }

std::vector<CorpusEntry> manifest() { return load_corpus().manifest; }

std::vector<RequiredAssertion> required_assertions() {
  CorpusData data = load_corpus();
  std::vector<RequiredAssertion> out;
  for (const auto& d : parse_file(data.assertions.text, data.assertions.name)) {
    if (const auto* a = std::get_if<decl::AssertDefeq>(&d.node))
      out.push_back({print_surface(a->lhs), print_surface(a->rhs),
                     print_surface(a->type)});
  }
  return out;
}

}  // namespace hpt
