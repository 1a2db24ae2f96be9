#include "advsl/textdata.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "advsl/errors.hpp"
#include "advsl/rng.hpp"
#include "json.hpp"

namespace advsl {

Vocabulary::Vocabulary() {
  tokens_ = {kPadToken, kUnkToken};
  index_ = {{kPadToken, kPadId}, {kUnkToken, kUnkId}};
}

int Vocabulary::add(const std::string& tok) {
  auto it = index_.find(tok);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(tokens_.size());
  tokens_.push_back(tok);
  index_.emplace(tok, id);
  return id;
}

int Vocabulary::id_of(const std::string& tok) const {
  auto it = index_.find(tok);
  return it == index_.end() ? kUnkId : it->second;
}

bool Vocabulary::contains(const std::string& tok) const { return index_.count(tok) > 0; }

namespace {

// Unicode White_Space codepoints.
bool is_unicode_space(uint32_t cp) {
  switch (cp) {
    case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
    case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Decodes one UTF-8 codepoint starting at i; advances i past it. Invalid
// bytes are passed through as single-byte codepoints.
uint32_t next_codepoint(const std::string& s, size_t& i, size_t& len) {
  unsigned char c = s[i];
  size_t n;
  uint32_t cp;
  if (c < 0x80) {
    n = 1;
    cp = c;
  } else if ((c >> 5) == 0x6) {
    n = 2;
    cp = c & 0x1F;
  } else if ((c >> 4) == 0xE) {
    n = 3;
    cp = c & 0x0F;
  } else if ((c >> 3) == 0x1E) {
    n = 4;
    cp = c & 0x07;
  } else {
    len = 1;
    ++i;
    return c;
  }
  if (i + n > s.size()) {
    len = 1;
    ++i;
    return c;
  }
  for (size_t k = 1; k < n; ++k) {
    unsigned char cc = s[i + k];
    if ((cc >> 6) != 0x2) {
      len = 1;
      ++i;
      return c;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  len = n;
  i += n;
  return cp;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string shortest_repr(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text, bool lowercase) {
  std::vector<std::string> out;
  std::string cur;
  size_t i = 0;
  while (i < text.size()) {
    size_t start = i;
    size_t len = 0;
    uint32_t cp = next_codepoint(text, i, len);
    if (is_unicode_space(cp)) {
      if (!cur.empty()) {
        out.push_back(std::move(cur));
        cur.clear();
      }
    } else {
      for (size_t k = 0; k < len; ++k) {
        char c = text[start + k];
        cur.push_back(lowercase ? ascii_lower(c) : c);
      }
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  if (out.empty()) out.push_back(kUnkToken);
  return out;
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpora, int min_count) {
  if (min_count < 1) throw ContractViolation("build_vocab: min_count must be >= 1");
  std::unordered_map<std::string, int> counts;
  std::vector<const std::string*> order;
  for (const auto& seq : corpora) {
    for (const auto& tok : seq) {
      auto [it, inserted] = counts.emplace(tok, 0);
      if (inserted) order.push_back(&it->first);
      ++it->second;
    }
  }
  Vocabulary vocab;
  for (const std::string* tok : order) {
    if (counts[*tok] >= min_count) vocab.add(*tok);
  }
  return vocab;
}

void seeded_row(const std::string& word, int dim, std::span<double> out) {
  Rng rng(splitmix64(fnv1a64(word)));
  double half = 0.5 / static_cast<double>(dim);
  for (int k = 0; k < dim; ++k) out[k] = rng.uniform(-half, half);
}

namespace {

struct VectorFile {
  int count = 0;
  int dim = 0;
  std::vector<std::pair<std::string, std::vector<double>>> rows;
};

VectorFile parse_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open vector file: " + path);
  VectorFile vf;
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ":1: empty vector file");
  {
    std::istringstream hs(line);
    if (!(hs >> vf.count >> vf.dim) || vf.count < 0 || vf.dim < 1) {
      throw FormatError(path + ":1: malformed header, expected \"<count> <dim>\"");
    }
    std::string extra;
    if (hs >> extra) throw FormatError(path + ":1: malformed header, expected \"<count> <dim>\"");
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    size_t sp = line.find(' ');
    if (sp == std::string::npos || sp == 0) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected \"<word> <values...>\"");
    }
    std::string word = line.substr(0, sp);
    std::vector<double> values;
    values.reserve(vf.dim);
    const char* p = line.data() + sp + 1;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) {
        throw FormatError(path + ":" + std::to_string(lineno) + ": bad numeral");
      }
      values.push_back(v);
      p = res.ptr;
    }
    if (static_cast<int>(values.size()) != vf.dim) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(vf.dim) + " values, got " + std::to_string(values.size()));
    }
    vf.rows.emplace_back(std::move(word), std::move(values));
  }
  if (static_cast<int>(vf.rows.size()) != vf.count) {
    throw FormatError(path + ": header declares " + std::to_string(vf.count) + " rows, file has " +
                      std::to_string(vf.rows.size()));
  }
  return vf;
}

EmbeddingTable table_for(const Vocabulary& vocab, const VectorFile& vf) {
  EmbeddingTable table;
  table.dim = vf.dim;
  table.matrix = Matrix(vocab.size(), vf.dim);
  table.frozen = true;
  std::unordered_map<std::string, const std::vector<double>*> by_word;
  by_word.reserve(vf.rows.size());
  for (const auto& [word, values] : vf.rows) by_word[word] = &values;
  for (int id = 0; id < vocab.size(); ++id) {
    if (id == kPadId) continue;  // stays zero
    auto it = by_word.find(vocab.token(id));
    if (it != by_word.end()) {
      std::copy(it->second->begin(), it->second->end(), table.matrix.row(id).begin());
    } else {
      seeded_row(vocab.token(id), vf.dim, table.matrix.row(id));
    }
  }
  return table;
}

}  // namespace

LoadedVectors load_vectors(const std::string& path) {
  VectorFile vf = parse_vector_file(path);
  LoadedVectors out;
  for (const auto& [word, values] : vf.rows) out.vocab.add(word);
  out.table = table_for(out.vocab, vf);
  return out;
}

EmbeddingTable load_vectors(const std::string& path, const Vocabulary& vocab) {
  return table_for(vocab, parse_vector_file(path));
}

void save_vectors(const std::string& path, const Vocabulary& vocab, const EmbeddingTable& table) {
  if (vocab.size() != table.vocab_size()) {
    throw ContractViolation("save_vectors: vocabulary and table sizes differ");
  }
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open for writing: " + path);
  out << (vocab.size() - 2) << ' ' << table.dim << '\n';
  for (int id = 2; id < vocab.size(); ++id) {
    out << vocab.token(id);
    for (double v : table.matrix.row(id)) out << ' ' << shortest_repr(v);
    out << '\n';
  }
  if (!out) throw FormatError("write failed: " + path);
}

Padded truncate_pad(const std::vector<int>& ids, int max_len) {
  if (max_len < 1) throw ContractViolation("truncate_pad: max_len must be >= 1");
  Padded p;
  p.ids.assign(max_len, kPadId);
  p.mask.assign(max_len, 0);
  int t = std::min<int>(max_len, static_cast<int>(ids.size()));
  for (int i = 0; i < t; ++i) {
    p.ids[i] = ids[i];
    p.mask[i] = 1;
  }
  return p;
}

Corpus load_corpus(const std::string& path, bool lowercase) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open corpus: " + path);
  Corpus corpus;
  corpus.name = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected object with \"text\"");
    }
    Document doc;
    doc.tokens = tokenize(j["text"].get<std::string>(), lowercase);
    if (j.contains("label")) {
      if (!j["label"].is_string()) {
        throw FormatError(path + ":" + std::to_string(lineno) + ": \"label\" must be a string");
      }
      doc.label = j["label"].get<std::string>();
    }
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open for writing: " + path);
  for (const auto& doc : corpus.docs) {
    std::string text;
    for (size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i) text += ' ';
      text += doc.tokens[i];
    }
    nlohmann::json j;
    j["text"] = text;
    if (doc.label) j["label"] = *doc.label;
    out << j.dump() << '\n';
  }
  if (!out) throw FormatError("write failed: " + path);
}

std::vector<std::string> class_names_from(const Corpus& corpus) {
  std::set<std::string> names;
  for (const auto& doc : corpus.docs) {
    if (doc.label) names.insert(*doc.label);
  }
  return {names.begin(), names.end()};
}

Dataset encode(const Corpus& corpus, const Vocabulary& vocab,
               const std::vector<std::string>& class_names) {
  std::unordered_map<std::string, int> class_ids;
  for (size_t i = 0; i < class_names.size(); ++i) class_ids[class_names[i]] = static_cast<int>(i);
  Dataset ds;
  ds.num_classes = static_cast<int>(class_names.size());
  ds.name = corpus.name;
  ds.examples.reserve(corpus.docs.size());
  for (size_t i = 0; i < corpus.docs.size(); ++i) {
    const Document& doc = corpus.docs[i];
    Example ex;
    ex.token_ids.reserve(doc.tokens.size());
    for (const auto& tok : doc.tokens) ex.token_ids.push_back(vocab.id_of(tok));
    if (doc.label) {
      auto it = class_ids.find(*doc.label);
      if (it == class_ids.end()) {
        throw ContractViolation(corpus.name + ": document " + std::to_string(i + 1) +
                                " has unknown label \"" + *doc.label + "\"");
      }
      ex.label = it->second;
    }
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

}  // namespace advsl
