#pragma once

#include <string>
#include <vector>

#include "ttforge/rosemap.hpp"

namespace ttforge {

// The eighteen explicit rank-3 representatives, keyed by the numeral each
// carries in the source. Metadata is advisory: every claim is re-derived by
// the pipeline, never trusted.
struct CorpusEntry {
  std::string name;        // e.g. "VI"
  int claimed_power = 1;   // stored map may need this power to be rotationless
  std::string text;        // automorphism text format

  RoseMap map() const { return parse_rosemap(text); }
};

const std::vector<CorpusEntry>& corpus();

// File-backed corpus: one <name>.aut per entry with metadata comments.
std::vector<CorpusEntry> load_corpus_dir(const std::string& dir);
void write_corpus_dir(const std::string& dir);

}  // namespace ttforge
