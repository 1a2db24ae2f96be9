#ifndef ADVSL_MODEL_HPP
#define ADVSL_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advsl/matrix.hpp"
#include "advsl/textdata.hpp"

namespace advsl {

enum class Arch { linear, mlp1 };

std::string arch_name(Arch arch);
Arch arch_from_name(const std::string& name);

// Classifier over mean-pooled word embeddings: lookup -> masked mean ->
// head -> softmax. The linear head keeps the loss convex in the input
// embeddings; mlp1 (one ReLU hidden layer) shows the training scheme is
// architecture-agnostic.
struct ModelParams {
  Arch arch = Arch::linear;
  EmbeddingTable embeddings;
  int num_classes = 0;
  int hidden = 0;  // mlp1 only

  // linear head
  Matrix W;               // |Y| x d
  std::vector<double> b;  // |Y|

  // mlp1 head
  Matrix W1;               // hidden x d
  std::vector<double> b1;  // hidden
  Matrix W2;               // |Y| x hidden
  std::vector<double> b2;  // |Y|
};

// Head weights ~ U[-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
ModelParams init_model(Arch arch, EmbeddingTable embeddings, int num_classes, int hidden,
                       uint64_t seed);

struct ForwardTrace {
  Matrix input_embeds;  // T x d, post-perturbation
  std::vector<int> mask;
  std::vector<int> ids;
  std::vector<double> pooled;  // d
  std::vector<double> z1, a1;  // mlp1 intermediates
  std::vector<double> logits;  // |Y|
  std::vector<double> probs;   // |Y|
  std::optional<double> loss;  // cross-entropy when a label was given
};

struct GradientBundle {
  Matrix d_embeddings;  // |V| x d; zero when embeddings are frozen
  Matrix d_W;
  std::vector<double> d_b;
  Matrix d_W1;
  std::vector<double> d_b1;
  Matrix d_W2;
  std::vector<double> d_b2;
  Matrix d_input;  // T x d; zero rows at masked positions
};

GradientBundle zero_gradients(const ModelParams& params, int seq_len);
// dst += src, fixed accumulation order.
void accumulate(GradientBundle& dst, const GradientBundle& src);
void scale(GradientBundle& g, double factor);

// perturbation, when given, must be T x d with zero rows at masked
// positions; it is added to the embedding lookup before pooling.
ForwardTrace forward(const ModelParams& params, const std::vector<int>& ids,
                     const std::vector<int>& mask, std::optional<int> label = std::nullopt,
                     const Matrix* perturbation = nullptr);

// Exact analytic gradients of the cross-entropy loss in trace. d_input is
// always produced; the embedding parameter gradient is zeroed when the
// table is frozen.
GradientBundle backward(const ModelParams& params, const ForwardTrace& trace, int label);

struct Prediction {
  int class_id = 0;
  double confidence = 0.0;  // max softmax probability
};

// Argmax with lowest-id tie-break.
Prediction predict(const ModelParams& params, const std::vector<int>& ids,
                   const std::vector<int>& mask);

// Softmax with max-subtraction; exposed for direct testing.
std::vector<double> stable_softmax(const std::vector<double>& logits);
// log(sum(exp(logits))) computed against the max.
double log_sum_exp(const std::vector<double>& logits);

// Checkpoint: JSON {version, arch, dim, vocab_size, num_classes, hidden,
// frozen, matrices}. Numerals use shortest round-trip formatting, so
// load(save(p)) == p bit for bit.
void save_checkpoint(const ModelParams& params, const std::string& path);
ModelParams load_checkpoint(const std::string& path);

bool models_equal(const ModelParams& a, const ModelParams& b);

}  // namespace advsl

#endif  // ADVSL_MODEL_HPP
