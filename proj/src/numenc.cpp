#include "motif/numenc.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include <json.hpp>

#include "motif/error.hpp"

namespace motif {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class TensorStream {
 public:
  TensorStream(std::uint64_t seed, std::string_view name, double scale) : scale_(scale) {
    const std::uint64_t key = fnv1a(name);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    rng_.seed(seq);
  }

  // Portable mapping of 53 random bits onto [-scale, scale].
  double next() {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * scale_;
  }

  std::vector<double> vec(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = next();
    return v;
  }

  Matrix mat(std::size_t rows, std::size_t cols) { return {rows, cols, vec(rows * cols)}; }

 private:
  std::mt19937_64 rng_;
  double scale_;
};

void matvec_add(const Matrix& m, std::span<const double> x, std::span<const double> b,
                std::span<double> out) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0;
    const double* row = m.data.data() + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) s += row[j] * x[j];
    out[i] = s + b[i];
  }
}

void layer_norm(std::span<double> x) {
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double inv = 1.0 / std::sqrt(var + 1e-5);
  for (double& v : x) v = (v - mean) * inv;
}

void activate(std::span<double> x, Normalization norm) {
  if (norm == Normalization::kLayerNorm) layer_norm(x);
  for (double& v : x) v = v > 0 ? v : 0.0;
}

void relu(std::span<double> x) {
  for (double& v : x) v = v > 0 ? v : 0.0;
}

// Sums `count` addends of width d stored back to back in `buf` into `out`.
void aggregate(std::vector<double>& buf, std::size_t d, Aggregation mode, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t count = d == 0 ? 0 : buf.size() / d;
  if (count == 0) return;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  if (mode == Aggregation::kCanonical) {
    const std::size_t bytes = d * sizeof(double);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::memcmp(buf.data() + a * d, buf.data() + b * d, bytes) < 0;
    });
  }
  for (std::size_t i : order) {
    const double* v = buf.data() + i * d;
    for (std::size_t k = 0; k < d; ++k) out[k] += v[k];
  }
}

json matrix_json(const Matrix& m) { return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}}; }

Matrix matrix_from(const json& j) {
  Matrix m{j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
           j.at("data").get<std::vector<double>>()};
  if (m.data.size() != m.rows * m.cols) throw ParseError("matrix data does not match its shape");
  return m;
}

void check_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error("non-finite embedding entry");
  }
}

}  // namespace

std::size_t EncoderWeights::motif_index(const std::string& name) const {
  auto it = std::lower_bound(motifs.begin(), motifs.end(), name);
  if (it == motifs.end() || *it != name) {
    throw PreconditionError("no encoder weights for motif '" + name + "'");
  }
  return static_cast<std::size_t>(it - motifs.begin());
}

EncoderWeights make_weights(std::uint64_t seed, const EncoderShape& shape,
                            std::vector<std::string> motif_names) {
  if (shape.d == 0) throw PreconditionError("embedding width must be positive");
  std::sort(motif_names.begin(), motif_names.end());
  motif_names.erase(std::unique(motif_names.begin(), motif_names.end()), motif_names.end());

  const std::size_t d = shape.d;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  auto stream = [&](const std::string& name) { return TensorStream(seed, name, scale); };

  EncoderWeights w;
  w.seed = seed;
  w.d = d;
  w.motifs = std::move(motif_names);
  for (std::size_t t = 0; t < shape.relation_layers; ++t) {
    const std::string p = "rel." + std::to_string(t) + ".";
    RelationLayer layer;
    layer.w = stream(p + "W").mat(d, 2 * d);
    layer.b = stream(p + "b").vec(d);
    for (const std::string& m : w.motifs) layer.z.push_back(stream(p + "z." + m).vec(d));
    layer.alpha = 0.5;
    w.relation_layers.push_back(std::move(layer));
  }
  for (std::size_t l = 0; l < shape.entity_layers; ++l) {
    const std::string p = "ent." + std::to_string(l) + ".";
    EntityLayer layer;
    layer.w = stream(p + "W").mat(d, 2 * d);
    layer.b = stream(p + "b").vec(d);
    layer.mlp_w1 = stream(p + "mlp.W1").mat(d, d);
    layer.mlp_b1 = stream(p + "mlp.b1").vec(d);
    layer.mlp_w2 = stream(p + "mlp.W2").mat(d, d);
    layer.mlp_b2 = stream(p + "mlp.b2").vec(d);
    w.entity_layers.push_back(std::move(layer));
  }
  w.decoder.w1 = stream("dec.W1").mat(d, d);
  w.decoder.b1 = stream("dec.b1").vec(d);
  w.decoder.w2 = stream("dec.W2").vec(d);
  w.decoder.b2 = stream("dec.b2").next();
  return w;
}

EncoderWeights make_weights(std::uint64_t seed, const EncoderShape& shape,
                            std::span<const Motif> motifs) {
  std::vector<std::string> names;
  for (const Motif& m : motifs) names.push_back(m.name);
  return make_weights(seed, shape, std::move(names));
}

std::string weights_to_json(const EncoderWeights& w, int indent) {
  json j;
  j["seed"] = w.seed;
  j["d"] = w.d;
  j["motifs"] = w.motifs;
  j["relation_layers"] = json::array();
  for (const RelationLayer& l : w.relation_layers) {
    j["relation_layers"].push_back(
        {{"W", matrix_json(l.w)}, {"b", l.b}, {"z", l.z}, {"alpha", l.alpha}});
  }
  j["entity_layers"] = json::array();
  for (const EntityLayer& l : w.entity_layers) {
    j["entity_layers"].push_back({{"W", matrix_json(l.w)},
                                  {"b", l.b},
                                  {"mlp_W1", matrix_json(l.mlp_w1)},
                                  {"mlp_b1", l.mlp_b1},
                                  {"mlp_W2", matrix_json(l.mlp_w2)},
                                  {"mlp_b2", l.mlp_b2}});
  }
  j["decoder"] = {{"W1", matrix_json(w.decoder.w1)},
                  {"b1", w.decoder.b1},
                  {"W2", w.decoder.w2},
                  {"b2", w.decoder.b2}};
  return j.dump(indent);
}

EncoderWeights weights_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("weights: ") + e.what());
  }
  try {
    EncoderWeights w;
    w.seed = j.at("seed").get<std::uint64_t>();
    w.d = j.at("d").get<std::size_t>();
    w.motifs = j.at("motifs").get<std::vector<std::string>>();
    if (!std::is_sorted(w.motifs.begin(), w.motifs.end())) {
      throw ParseError("weights: motif names must be sorted");
    }
    const std::size_t d = w.d;
    auto check = [&](std::size_t got, std::size_t want, const char* what) {
      if (got != want) throw ParseError(std::string("weights: bad shape for ") + what);
    };
    for (const json& l : j.at("relation_layers")) {
      RelationLayer layer;
      layer.w = matrix_from(l.at("W"));
      layer.b = l.at("b").get<std::vector<double>>();
      layer.z = l.at("z").get<std::vector<std::vector<double>>>();
      layer.alpha = l.at("alpha").get<double>();
      check(layer.w.rows, d, "W");
      check(layer.w.cols, 2 * d, "W");
      check(layer.b.size(), d, "b");
      check(layer.z.size(), w.motifs.size(), "z");
      for (const auto& z : layer.z) check(z.size(), d, "z");
      w.relation_layers.push_back(std::move(layer));
    }
    for (const json& l : j.at("entity_layers")) {
      EntityLayer layer;
      layer.w = matrix_from(l.at("W"));
      layer.b = l.at("b").get<std::vector<double>>();
      layer.mlp_w1 = matrix_from(l.at("mlp_W1"));
      layer.mlp_b1 = l.at("mlp_b1").get<std::vector<double>>();
      layer.mlp_w2 = matrix_from(l.at("mlp_W2"));
      layer.mlp_b2 = l.at("mlp_b2").get<std::vector<double>>();
      check(layer.w.rows, d, "W");
      check(layer.w.cols, 2 * d, "W");
      check(layer.b.size(), d, "b");
      check(layer.mlp_w1.rows * layer.mlp_w1.cols, d * d, "mlp_W1");
      check(layer.mlp_w2.rows * layer.mlp_w2.cols, d * d, "mlp_W2");
      check(layer.mlp_b1.size(), d, "mlp_b1");
      check(layer.mlp_b2.size(), d, "mlp_b2");
      w.entity_layers.push_back(std::move(layer));
    }
    const json& dec = j.at("decoder");
    w.decoder.w1 = matrix_from(dec.at("W1"));
    w.decoder.b1 = dec.at("b1").get<std::vector<double>>();
    w.decoder.w2 = dec.at("W2").get<std::vector<double>>();
    w.decoder.b2 = dec.at("b2").get<double>();
    check(w.decoder.w1.rows * w.decoder.w1.cols, d * d, "decoder W1");
    check(w.decoder.b1.size(), d, "decoder b1");
    check(w.decoder.w2.size(), d, "decoder W2");
    return w;
  } catch (const json::exception& e) {
    throw ParseError(std::string("weights: ") + e.what());
  }
}

std::string embeddings_to_json(const EmbeddingTable& table, const std::vector<std::string>& names,
                               int indent) {
  if (names.size() != table.rows) throw PreconditionError("one name per embedding row expected");
  json j;
  j["d"] = table.d;
  j["layers"] = json::array();
  for (std::size_t l = 0; l < table.num_layers(); ++l) {
    json layer = json::object();
    for (std::size_t r = 0; r < table.rows; ++r) {
      const auto v = table.at(l, r);
      layer[names[r]] = std::vector<double>(v.begin(), v.end());
    }
    j["layers"].push_back(std::move(layer));
  }
  return j.dump(indent);
}

std::vector<double> sinusoidal_pe(std::size_t position, std::size_t d) {
  if (d % 2 != 0) throw PreconditionError("positional encoding width must be even");
  std::vector<double> p(d);
  for (std::size_t k = 0; 2 * k < d; ++k) {
    const double angle = static_cast<double>(position) /
                         std::pow(10000.0, static_cast<double>(2 * k) / static_cast<double>(d));
    p[2 * k] = std::sin(angle);
    p[2 * k + 1] = std::cos(angle);
  }
  return p;
}

EmbeddingTable relation_forward(const RelationalHypergraph& h, RelId q, const EncoderWeights& w,
                                std::size_t t_max, const NumencOptions& options) {
  const std::size_t n = h.num_nodes();
  const std::size_t d = w.d;
  if (q >= n) throw PreconditionError("query relation is not a node of the hypergraph");
  if (t_max > w.relation_layers.size()) {
    throw PreconditionError("weights have only " + std::to_string(w.relation_layers.size()) +
                            " relation layers");
  }
  std::vector<std::size_t> type_weight;
  std::size_t max_arity = 0;
  for (const Motif& m : h.edge_types()) {
    type_weight.push_back(w.motif_index(m.name));
    max_arity = std::max(max_arity, m.arity());
  }
  std::vector<std::vector<double>> pe;
  for (std::size_t j = 0; j < max_arity; ++j) pe.push_back(sinusoidal_pe(j + 1, d));

  EmbeddingTable table{d, n, {}};
  std::vector<double> init(n * d, 0.0);
  std::fill(init.begin() + q * d, init.begin() + (q + 1) * d, 1.0);
  table.layers.push_back(std::move(init));

  std::vector<std::vector<double>> addends(n);
  std::vector<double> mixed, term(d), in(2 * d);
  for (std::size_t t = 1; t <= t_max; ++t) {
    const RelationLayer& layer = w.relation_layers[t - 1];
    const std::vector<double>& prev = table.layers.back();
    for (auto& a : addends) a.clear();
    for (std::size_t type = 0; type < h.num_edge_types(); ++type) {
      const TupleSet& edges = h.edges(type);
      const std::size_t k = edges.arity;
      const std::vector<double>& z = layer.z[type_weight[type]];
      mixed.resize(k * d);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto tuple = edges[e];
        for (std::size_t j = 0; j < k; ++j) {
          const double* hv = prev.data() + tuple[j] * d;
          for (std::size_t c = 0; c < d; ++c) {
            mixed[j * d + c] = layer.alpha * hv[c] + (1.0 - layer.alpha) * pe[j][c];
          }
        }
        for (std::size_t i = 0; i < k; ++i) {
          std::copy(z.begin(), z.end(), term.begin());
          for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            for (std::size_t c = 0; c < d; ++c) term[c] *= mixed[j * d + c];
          }
          auto& a = addends[tuple[i]];
          a.insert(a.end(), term.begin(), term.end());
        }
      }
    }
    std::vector<double> next(n * d);
    for (std::size_t r = 0; r < n; ++r) {
      std::copy(prev.begin() + r * d, prev.begin() + (r + 1) * d, in.begin());
      aggregate(addends[r], d, options.aggregation, std::span<double>(in).subspan(d));
      auto out = std::span<double>(next).subspan(r * d, d);
      matvec_add(layer.w, in, layer.b, out);
      activate(out, options.normalization);
    }
    check_finite(next);
    table.layers.push_back(std::move(next));
  }
  return table;
}

EmbeddingTable entity_forward(const KnowledgeGraph& g, const EmbeddingTable& rel_embeds, NodeId u,
                              RelId q, const EncoderWeights& w, std::size_t l_max,
                              const NumencOptions& options) {
  const std::size_t n = g.num_nodes();
  const std::size_t d = w.d;
  if (rel_embeds.num_layers() == 0 || rel_embeds.rows < g.num_relations() || rel_embeds.d != d) {
    throw PreconditionError("relation embeddings do not cover the graph's relations");
  }
  if (u >= n || q >= g.num_relations()) throw PreconditionError("link condition out of range");
  if (l_max > w.entity_layers.size()) {
    throw PreconditionError("weights have only " + std::to_string(w.entity_layers.size()) +
                            " entity layers");
  }
  EmbeddingTable table{d, n, {}};
  std::vector<double> init(n * d, 0.0);
  const auto hq = rel_embeds.last(q);
  std::copy(hq.begin(), hq.end(), init.begin() + u * d);
  table.layers.push_back(std::move(init));

  std::vector<double> transformed(g.num_relations() * d), hidden(d), buf, in(2 * d);
  for (std::size_t l = 1; l <= l_max; ++l) {
    const EntityLayer& layer = w.entity_layers[l - 1];
    for (RelId r = 0; r < g.num_relations(); ++r) {
      matvec_add(layer.mlp_w1, rel_embeds.last(r), layer.mlp_b1, hidden);
      relu(hidden);
      matvec_add(layer.mlp_w2, hidden, layer.mlp_b2,
                 std::span<double>(transformed).subspan(r * d, d));
    }
    const std::vector<double>& prev = table.layers.back();
    const std::vector<double>& self =
        options.entity_concat == EntityConcat::kInitial ? table.layers.front() : prev;
    std::vector<double> next(n * d);
    for (NodeId v = 0; v < n; ++v) {
      buf.clear();
      for (const Fact& f : g.in_facts(v)) {
        const double* hw = prev.data() + f.head * d;
        const double* m = transformed.data() + f.relation * d;
        for (std::size_t c = 0; c < d; ++c) buf.push_back(hw[c] * m[c]);
      }
      std::copy(self.begin() + v * d, self.begin() + (v + 1) * d, in.begin());
      aggregate(buf, d, options.aggregation, std::span<double>(in).subspan(d));
      auto out = std::span<double>(next).subspan(v * d, d);
      matvec_add(layer.w, in, layer.b, out);
      activate(out, options.normalization);
    }
    check_finite(next);
    table.layers.push_back(std::move(next));
  }
  return table;
}

double decode(const EncoderWeights& w, std::span<const double> h) {
  if (h.size() != w.d) throw PreconditionError("embedding width does not match the decoder");
  std::vector<double> hidden(w.d);
  matvec_add(w.decoder.w1, h, w.decoder.b1, hidden);
  relu(hidden);
  double s = w.decoder.b2;
  for (std::size_t k = 0; k < w.d; ++k) s += w.decoder.w2[k] * hidden[k];
  const double p = 1.0 / (1.0 + std::exp(-s));
  const double eps = 1e-12;
  return std::clamp(p, eps, 1.0 - eps);
}

double score_link(const KnowledgeGraph& g, std::span<const Motif> motifs, const LinkQuery& link,
                  const EncoderWeights& w, std::size_t t_max, std::size_t l_max,
                  const NumencOptions& options) {
  if (link.target >= g.num_nodes()) throw PreconditionError("link target out of range");
  const RelationalHypergraph h = has_fast_path(motifs) ? lift_fast(motifs, g) : lift(motifs, g);
  const EmbeddingTable rel = relation_forward(h, link.relation, w, t_max, options);
  const EmbeddingTable ent = entity_forward(g, rel, link.source, link.relation, w, l_max, options);
  return decode(w, ent.last(link.target));
}

}  // namespace motif
