#pragma once

// Forward-only numeric encoder: an HCNet-style relation encoder over the
// lifted hypergraph and an NBFNet-style entity encoder over the KG, with
// seeded random weights. No training.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "motif/kg.hpp"
#include "motif/motif.hpp"

namespace motif {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct RelationLayer {
  Matrix w;  // d x 2d
  std::vector<double> b;
  /// One message vector per motif, in the order of EncoderWeights::motifs.
  std::vector<std::vector<double>> z;
  double alpha = 0.5;
};

struct EntityLayer {
  Matrix w;  // d x 2d
  std::vector<double> b;
  Matrix mlp_w1, mlp_w2;  // d x d each
  std::vector<double> mlp_b1, mlp_b2;
};

struct Decoder {
  Matrix w1;  // d x d
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0;
};

struct EncoderWeights {
  std::uint64_t seed = 0;
  std::size_t d = 0;
  std::vector<std::string> motifs;  // sorted motif names
  std::vector<RelationLayer> relation_layers;
  std::vector<EntityLayer> entity_layers;
  Decoder decoder;

  std::size_t motif_index(const std::string& name) const;
};

struct EncoderShape {
  std::size_t d = 32;
  std::size_t relation_layers = 4;
  std::size_t entity_layers = 4;
};

/// Every tensor is drawn from its own stream keyed by (seed, tensor name),
/// uniform in [-1/sqrt(d), 1/sqrt(d)]; alpha starts at 0.5.
EncoderWeights make_weights(std::uint64_t seed, const EncoderShape& shape,
                            std::vector<std::string> motif_names);
EncoderWeights make_weights(std::uint64_t seed, const EncoderShape& shape,
                            std::span<const Motif> motifs);

std::string weights_to_json(const EncoderWeights& w, int indent = -1);
EncoderWeights weights_from_json(std::string_view text);

/// Rows per layer, each of width d.
struct EmbeddingTable {
  std::size_t d = 0;
  std::size_t rows = 0;
  std::vector<std::vector<double>> layers;  // [layer][row * d + k]

  std::size_t num_layers() const noexcept { return layers.size(); }
  std::span<const double> at(std::size_t layer, std::size_t row) const {
    return std::span<const double>(layers.at(layer)).subspan(row * d, d);
  }
  std::span<const double> last(std::size_t row) const { return at(layers.size() - 1, row); }
};

std::string embeddings_to_json(const EmbeddingTable& table, const std::vector<std::string>& names,
                               int indent = -1);

enum class Aggregation {
  kCanonical,  // addends summed in byte-lexicographic order; exact under equal multisets
  kFast,       // addends summed in traversal order
};

enum class EntityConcat {
  kInitial,  // W[h_v^(0) || msg]
  kCurrent,  // W[h_v^(l) || msg]
};

enum class Normalization {
  kLayerNorm,  // parameter-free layer norm of the pre-activation, before ReLU
  kNone,       // the bare recurrence; products of embeddings can overflow
};

struct NumencOptions {
  Aggregation aggregation = Aggregation::kCanonical;
  EntityConcat entity_concat = EntityConcat::kInitial;
  Normalization normalization = Normalization::kLayerNorm;
};

/// p_i with entries sin(i / 10000^(2k/d)) and cos(i / 10000^(2k/d)).
std::vector<double> sinusoidal_pe(std::size_t position, std::size_t d);

/// Layers 0..t_max of h_{r|q}.
EmbeddingTable relation_forward(const RelationalHypergraph& h, RelId q, const EncoderWeights& w,
                                std::size_t t_max, const NumencOptions& options = {});

/// Layers 0..l_max of h_{v|u,q}, starting from the last layer of rel_embeds.
EmbeddingTable entity_forward(const KnowledgeGraph& g, const EmbeddingTable& rel_embeds, NodeId u,
                              RelId q, const EncoderWeights& w, std::size_t l_max,
                              const NumencOptions& options = {});

/// Two-layer decoder followed by a sigmoid, clamped into (0, 1).
double decode(const EncoderWeights& w, std::span<const double> h);

double score_link(const KnowledgeGraph& g, std::span<const Motif> motifs, const LinkQuery& link,
                  const EncoderWeights& w, std::size_t t_max, std::size_t l_max,
                  const NumencOptions& options = {});

}  // namespace motif
