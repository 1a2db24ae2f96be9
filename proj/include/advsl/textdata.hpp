#ifndef ADVSL_TEXTDATA_HPP
#define ADVSL_TEXTDATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "advsl/matrix.hpp"

namespace advsl {

inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;
inline constexpr const char* kPadToken = "<pad>";
inline constexpr const char* kUnkToken = "<unk>";

// Token-to-id bijection. Ids 0 and 1 are reserved for <pad> and <unk>.
class Vocabulary {
 public:
  Vocabulary();

  // Returns the id of tok, inserting it if absent.
  int add(const std::string& tok);
  // Returns the id of tok, or kUnkId if absent.
  int id_of(const std::string& tok) const;
  bool contains(const std::string& tok) const;
  const std::string& token(int id) const { return tokens_[id]; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  int size() const { return static_cast<int>(tokens_.size()); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

enum class Origin { gold, pseudo };

struct Example {
  std::vector<int> token_ids;  // length T >= 1
  std::optional<int> label;    // class id in [0, num_classes)
  double weight = 1.0;
  Origin origin = Origin::gold;
};

struct Dataset {
  std::vector<Example> examples;
  int num_classes = 0;
  std::string name;

  size_t size() const { return examples.size(); }
};

// |V| x d embedding rows. Row kPadId stays zero and is never updated or
// perturbed. Tables loaded from disk default to frozen.
struct EmbeddingTable {
  int dim = 0;
  Matrix matrix;
  bool frozen = false;

  int vocab_size() const { return matrix.rows; }
};

// Whitespace tokenization over Unicode space codepoints. Lowercasing is
// ASCII-only (documented limitation; the corpora this targets are either
// already lowercased or, like Thai, keep casing off anyway).
// Whitespace-only input yields a single <unk> token, never an empty sequence.
std::vector<std::string> tokenize(const std::string& text, bool lowercase);

// <pad>, <unk>, then every token with frequency >= min_count, in first
// occurrence order across the given corpora.
Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpora, int min_count);

// Word-vector text format: first line "<count> <dim>", then
// "<word> <v1> ... <vdim>" with single spaces. Values round-trip exactly
// through save_vectors/load thanks to shortest-exact formatting.
struct LoadedVectors {
  Vocabulary vocab;
  EmbeddingTable table;
};

// Induces the vocabulary from the file's words (plus <pad>/<unk>).
LoadedVectors load_vectors(const std::string& path);
// Copies rows for covered words; uncovered words get a deterministic
// per-word seeded uniform init in [-0.5/d, 0.5/d].
EmbeddingTable load_vectors(const std::string& path, const Vocabulary& vocab);
void save_vectors(const std::string& path, const Vocabulary& vocab, const EmbeddingTable& table);

// Deterministic per-word row used for words absent from a vector file.
void seeded_row(const std::string& word, int dim, std::span<double> out);

struct Padded {
  std::vector<int> ids;   // exactly max_len entries
  std::vector<int> mask;  // 1 for real tokens, 0 for padding
};

// Head-truncates to max_len, right-pads with <pad>.
Padded truncate_pad(const std::vector<int>& ids, int max_len);

// ---- Corpus ingestion (JSON Lines: {"text": ..., "label": optional}) ----

struct Document {
  std::vector<std::string> tokens;
  std::optional<std::string> label;
};

struct Corpus {
  std::vector<Document> docs;
  std::string name;
};

Corpus load_corpus(const std::string& path, bool lowercase);
void save_corpus(const std::string& path, const Corpus& corpus);

// Class-name-to-id mapping is the sorted order of distinct label strings.
std::vector<std::string> class_names_from(const Corpus& corpus);

// Maps tokens and labels to ids. Labels absent from class_names raise a
// contract violation naming the offending document.
Dataset encode(const Corpus& corpus, const Vocabulary& vocab,
               const std::vector<std::string>& class_names);

}  // namespace advsl

#endif  // ADVSL_TEXTDATA_HPP
