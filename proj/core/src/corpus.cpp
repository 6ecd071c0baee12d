#include "ttforge/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ttforge {

namespace {

CorpusEntry entry(std::string name, int power, std::string a, std::string b,
                  std::string c) {
  std::ostringstream os;
  os << "# graph: " << name << "\n";
  if (power != 1) os << "# rotationless-power: " << power << "\n";
  os << "a -> " << a << "\n";
  os << "b -> " << b << "\n";
  os << "c -> " << c << "\n";
  return {std::move(name), power, os.str()};
}

std::vector<CorpusEntry> make_corpus() {
  std::vector<CorpusEntry> v;
  v.push_back(entry("I", 1, "acBcaBcacacBca", "ACbCACACb", "cacBcaBcac"));
  v.push_back(entry("II", 1, "aBca", "bACACCAC", "caccacaBcac"));
  v.push_back(entry("IV", 1, "cBa", "bcAb", "cBabcAbc"));
  v.push_back(entry("VI", 1, "abacbabaCabacbaba", "baC", "cABABABCABAc"));
  v.push_back(entry("VIII", 1, "aCaaBaCbAAcaCaaBaCa", "bAAc", "cAbAAcAbAAc"));
  v.push_back(entry("IX", 1, "abCbCabCbCBcBACBabCbC", "bcabCbcBcBAcabCb",
                    "cBcBA"));
  v.push_back(entry(
      "X", 1,
      "abacbabacAbCABACABABCABAbabacBabacbabacabacBa",
      "babacAbCABACABABCABAbabacAbCABACABABCABAb",
      "babacAbCABACABABCABAbabacAbCABACABABCABAbabacbabacAbCABACABABCABAbabac"));
  v.push_back(entry("XI", 1, "aBBCbCBcBcbcAbcBcbcABcB", "bCbaCBCbCBaCBCbCb",
                    "cBcbcABcBcbcAbcBcbcABc"));
  v.push_back(entry("XII", 1, "aCBBCbCBcBcbccAbcBcbccABcB",
                    "bCbaCCBCbCBaCCBCbCb", "cBcbccABcBcbccAbcBcbccABc"));
  v.push_back(entry("XIII", 1, "acBccbcBCBCCbCAcBacBccbcBCBCCbCAB",
                    "bacBccbcbCBCCbCAbCacBccbcb",
                    "cBacBccbcBCBCCbCABacBccbc"));
  v.push_back(entry("XIV", 1, "acabaabcabaa",
                    "AABACBAABACAbAABACacabaabcabaabAABACAABACBAABACAb",
                    "cabaaB"));
  v.push_back(entry("XV", 1, "aCBBCbCBcBcbbcAbcBcbbcABcB",
                    "bCbaCBBCbCBaCBBCbCb", "cBcbbcABcBcbbcAbcBcbbcAbc"));
  v.push_back(entry("XVI", 1, "aBccbcBc", "bCBCCbACb", "caBccbcBc"));
  v.push_back(entry("XVII", 1, "acbccBcBacbccBacbcc", "bCCBCAbCCCBCAbCCBCAbCb",
                    "cBacbccBBcBacbccBacbcccBacbccBacbccBcBacbccBacbcc"));
  v.push_back(entry("XVIII", 1, "aBcBaBC", "bAbCbAbAb", "cbAbCbAbAbCbAbAbc"));
  v.push_back(entry("XIX", 1, "accBcbc", "bCBCbCCAbCb", "cBaccBcbcBaccBcbc"));
  v.push_back(entry("XX", 2, "abCCbbcb", "bc",
                    "cabCCbbcbabCCbbcbCCBabCCbbcbbccabCCbbcb"));
  v.push_back(entry("XXI", 1, "abaBaacBabaBaacbabaBaacabaBaacBa",
                    "babaBaacAbCAAbABACAAbABABCAAbABAb", "abaBaac"));
  return v;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = make_corpus();
  return c;
}

std::vector<CorpusEntry> load_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<CorpusEntry> out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".aut") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    CorpusEntry e;
    e.text = ss.str();
    e.name = p.stem().string();
    if (auto pos = e.name.find("graph_"); pos == 0) e.name = e.name.substr(6);
    std::istringstream lines(e.text);
    std::string line;
    while (std::getline(lines, line)) {
      if (auto pos = line.find("# rotationless-power:"); pos != std::string::npos)
        e.claimed_power = std::stoi(line.substr(pos + 21));
      if (auto pos = line.find("# graph:"); pos != std::string::npos) {
        std::string n = line.substr(pos + 8);
        n.erase(std::remove_if(n.begin(), n.end(), ::isspace), n.end());
        if (!n.empty()) e.name = n;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const CorpusEntry& e : corpus()) {
    std::ofstream out(fs::path(dir) / ("graph_" + e.name + ".aut"));
    out << e.text;
  }
}

}  // namespace ttforge
