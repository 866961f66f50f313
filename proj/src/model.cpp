#include "magnn/model.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "magnn/error.hpp"

namespace magnn {

using nlohmann::json;

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::clamped_identity: return "clamped_identity";
    case Activation::identity: return "identity";
  }
  return "?";
}

Activation parse_activation(std::string_view text) {
  if (text == "relu") return Activation::relu;
  if (text == "sigmoid") return Activation::sigmoid;
  if (text == "clamped_identity") return Activation::clamped_identity;
  if (text == "identity") return Activation::identity;
  throw Error("unknown activation '" + std::string(text) + "'");
}

double activate(Activation a, double x) {
  switch (a) {
    case Activation::relu:
    case Activation::clamped_identity: return x > 0.0 ? x : 0.0;
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::identity: return x;
  }
  return x;
}

std::vector<Diagnostic> validate_model(const MagnnModel& m) {
  using Kind = Diagnostic::Kind;
  std::vector<Diagnostic> out;
  const auto& sig = m.signature;
  if (m.layers.empty()) {
    out.push_back({Kind::empty_model, 0, "", 0, 0, "model has no layers"});
    return out;
  }
  if (sig.dim() == 0) out.push_back({Kind::dimension_mismatch, 0, "", 0, 0, "signature has no unary predicate"});
  if (!std::isfinite(m.threshold))
    out.push_back({Kind::non_finite, 0, "threshold", 0, 0, "threshold is not finite"});

  std::size_t expected_in = sig.dim();
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const Layer& layer = m.layers[l];
    const std::size_t ln = l + 1;
    auto where = [&](const std::string& mat) { return "layer " + std::to_string(ln) + " " + mat; };
    const std::size_t rows = layer.self.rows;

    if (layer.self.cols != expected_in)
      out.push_back({Kind::dimension_mismatch, ln, "A", 0, 0,
                     where("A") + " has " + std::to_string(layer.self.cols) + " columns, expected " +
                         std::to_string(expected_in)});
    if (layer.self.data.size() != layer.self.rows * layer.self.cols)
      out.push_back({Kind::dimension_mismatch, ln, "A", 0, 0, where("A") + " storage size mismatch"});
    if (layer.bias.size() != rows)
      out.push_back({Kind::dimension_mismatch, ln, "b", 0, 0,
                     where("b") + " has length " + std::to_string(layer.bias.size()) + ", expected " +
                         std::to_string(rows)});
    if (layer.colour.size() != sig.colours())
      out.push_back({Kind::dimension_mismatch, ln, "B", 0, 0,
                     where("B") + " has " + std::to_string(layer.colour.size()) +
                         " colour matrices, expected " + std::to_string(sig.colours())});
    if (layer.activation == Activation::identity)
      out.push_back({Kind::bad_activation, ln, "", 0, 0,
                     where("activation") + " 'identity' has negative range; use clamped_identity"});

    auto scan = [&](const Matrix& mat, const std::string& name) {
      for (std::size_t r = 0; r < mat.rows; ++r)
        for (std::size_t c = 0; c < mat.cols && r * mat.cols + c < mat.data.size(); ++c) {
          double w = mat(r, c);
          if (!std::isfinite(w))
            out.push_back({Kind::non_finite, ln, name, r + 1, c + 1, where(name) + " entry is not finite"});
          else if (w < 0.0)
            out.push_back({Kind::negative_weight, ln, name, r + 1, c + 1,
                           where(name) + "[" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                               "] = " + std::to_string(w) + " is negative"});
        }
    };
    scan(layer.self, "A");
    for (std::size_t c = 0; c < layer.colour.size(); ++c) {
      const Matrix& b = layer.colour[c];
      std::string name = "B:" + (c < sig.colours() ? sig.binary()[c] : std::to_string(c));
      if (b.rows != rows || b.cols != expected_in || b.data.size() != b.rows * b.cols)
        out.push_back({Kind::dimension_mismatch, ln, name, 0, 0,
                       where(name) + " is " + std::to_string(b.rows) + "x" + std::to_string(b.cols) +
                           ", expected " + std::to_string(rows) + "x" + std::to_string(expected_in)});
      scan(b, name);
    }
    for (std::size_t r = 0; r < layer.bias.size(); ++r)
      if (!std::isfinite(layer.bias[r]))
        out.push_back({Kind::non_finite, ln, "b", r + 1, 0, where("b") + " entry is not finite"});
    expected_in = rows;
  }
  if (expected_in != sig.dim())
    out.push_back({Kind::dimension_mismatch, m.layers.size(), "", 0, 0,
                   "output dimension " + std::to_string(expected_in) +
                       " differs from input dimension " + std::to_string(sig.dim())});
  return out;
}

void require_monotone(const MagnnModel& m) {
  auto diags = validate_model(m);
  if (!diags.empty()) throw PreconditionError("model is not a valid monotone MAGNN: " + diags.front().message);
}

namespace {

void require_shapes(const MagnnModel& m, const ColoredGraph& g) {
  if (g.dim() != m.signature.dim() || g.colour_count() != m.signature.colours())
    throw SignatureMismatch("graph does not match the model signature");
  std::size_t in = m.signature.dim();
  for (const Layer& layer : m.layers) {
    if (layer.self.cols != in || layer.bias.size() != layer.self.rows ||
        layer.colour.size() != m.signature.colours())
      throw PreconditionError("model layers have inconsistent dimensions");
    for (const Matrix& b : layer.colour)
      if (b.rows != layer.self.rows || b.cols != in)
        throw PreconditionError("model layers have inconsistent dimensions");
    in = layer.self.rows;
  }
  if (m.layers.empty() || in != m.signature.dim())
    throw PreconditionError("model output dimension differs from its input dimension");
}

}  // namespace

void forward(const MagnnModel& m, const ColoredGraph& g, LayerTrace& trace) {
  require_shapes(m, g);
  const std::size_t n = g.vertex_count();
  const std::size_t depth = m.layers.size();
  trace.vertices_ = n;
  trace.dims_.resize(depth + 1);
  trace.values_.resize(depth + 1);

  trace.dims_[0] = g.dim();
  auto& input = trace.values_[0];
  input.resize(n * g.dim());
  for (VertexId v = 0; v < n; ++v) {
    auto label = g.label(v);
    std::copy(label.begin(), label.end(), input.begin() + static_cast<std::ptrdiff_t>(v * g.dim()));
  }

  thread_local std::vector<double> mean;
  for (std::size_t l = 0; l < depth; ++l) {
    const Layer& layer = m.layers[l];
    const std::size_t in = layer.in_dim();
    const std::size_t out = layer.out_dim();
    const std::vector<double>& prev = trace.values_[l];
    std::vector<double>& next = trace.values_[l + 1];
    trace.dims_[l + 1] = out;
    next.resize(n * out);
    mean.resize(in);

    for (VertexId v = 0; v < n; ++v) {
      double* acc = next.data() + static_cast<std::size_t>(v) * out;
      const double* self_in = prev.data() + static_cast<std::size_t>(v) * in;
      for (std::size_t o = 0; o < out; ++o) {
        double s = layer.bias[o];
        for (std::size_t i = 0; i < in; ++i) s += layer.self(o, i) * self_in[i];
        acc[o] = s;
      }
      for (std::size_t c = 0; c < layer.colour.size(); ++c) {
        auto nb = g.neighbours(c, v, m.direction);
        if (nb.empty()) continue;
        std::fill(mean.begin(), mean.end(), 0.0);
        for (VertexId u : nb) {
          const double* u_in = prev.data() + static_cast<std::size_t>(u) * in;
          for (std::size_t i = 0; i < in; ++i) mean[i] += u_in[i];
        }
        const double count = static_cast<double>(nb.size());
        for (std::size_t i = 0; i < in; ++i) mean[i] /= count;
        const Matrix& w = layer.colour[c];
        for (std::size_t o = 0; o < out; ++o) {
          double s = 0.0;
          for (std::size_t i = 0; i < in; ++i) s += w(o, i) * mean[i];
          acc[o] += s;
        }
      }
      for (std::size_t o = 0; o < out; ++o) acc[o] = activate(layer.activation, acc[o]);
    }
  }
}

LayerTrace forward(const MagnnModel& m, const ColoredGraph& g) {
  LayerTrace trace;
  forward(m, g, trace);
  return trace;
}

Dataset predicted_facts(const MagnnModel& m, const ColoredGraph& g, const LayerTrace& trace) {
  Dataset out;
  const auto& unary = m.signature.unary();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto y = trace.output(v);
    for (std::size_t p = 0; p < y.size(); ++p)
      if (classify(y[p], m.threshold)) out.insert(Fact::unary(unary[p], g.constant(v)));
  }
  return out;
}

Dataset apply(const MagnnModel& m, const Dataset& d) {
  ColoredGraph g = encode(d, m.signature);
  LayerTrace trace = forward(m, g);
  return predicted_facts(m, g, trace);
}

MagnnModel majority_model(double threshold) {
  MagnnModel m;
  m.signature = Signature({"U"}, {"P"});
  Layer layer;
  layer.self = Matrix(1, 1, 0.0);
  layer.colour = {Matrix(1, 1, 1.0)};
  layer.bias = {0.0};
  layer.activation = Activation::clamped_identity;
  m.layers = {layer};
  m.threshold = threshold;
  return m;
}

namespace {

json matrix_to_json(const Matrix& mat) {
  json rows = json::array();
  for (std::size_t r = 0; r < mat.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < mat.cols; ++c) row.push_back(mat(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(what + " must be an array of rows");
  Matrix mat;
  mat.rows = j.size();
  mat.cols = mat.rows == 0 ? 0 : j.front().size();
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != mat.cols) throw Error(what + " has ragged rows");
    for (const auto& x : row) {
      if (!x.is_number()) throw Error(what + " contains a non-numeric entry");
      mat.data.push_back(x.get<double>());
    }
  }
  return mat;
}

}  // namespace

MagnnModel load_model(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("weight file is not valid JSON: ") + e.what());
  }
  try {
    MagnnModel m;
    const auto& sig = j.at("signature");
    m.signature = Signature(sig.at("unary").get<std::vector<std::string>>(),
                            sig.value("binary", std::vector<std::string>{}));
    for (const auto& jl : j.at("layers")) {
      Layer layer;
      layer.self = matrix_from_json(jl.at("A"), "A");
      layer.bias = jl.at("b").get<std::vector<double>>();
      layer.activation = parse_activation(jl.at("activation").get<std::string>());
      const json& jb = jl.contains("B") ? jl.at("B") : json::object();
      if (!jb.is_object()) throw Error("B must be an object keyed by binary predicate");
      for (const auto& [key, _] : jb.items())
        if (!m.signature.binary_index(key))
          throw Error("B has an entry for unknown binary predicate '" + key + "'");
      for (const auto& pred : m.signature.binary()) {
        if (!jb.contains(pred)) throw Error("B has no matrix for binary predicate '" + pred + "'");
        layer.colour.push_back(matrix_from_json(jb.at(pred), "B:" + pred));
      }
      m.layers.push_back(std::move(layer));
    }
    m.threshold = j.at("threshold").get<double>();
    m.direction = parse_direction(j.value("direction", std::string("out")));
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed weight file: ") + e.what());
  }
}

std::string save_model(const MagnnModel& m) {
  json j;
  j["signature"] = {{"unary", m.signature.unary()}, {"binary", m.signature.binary()}};
  json layers = json::array();
  for (const Layer& layer : m.layers) {
    json jl;
    jl["A"] = matrix_to_json(layer.self);
    json jb = json::object();
    for (std::size_t c = 0; c < layer.colour.size() && c < m.signature.colours(); ++c)
      jb[m.signature.binary()[c]] = matrix_to_json(layer.colour[c]);
    jl["B"] = std::move(jb);
    jl["b"] = layer.bias;
    jl["activation"] = std::string(to_string(layer.activation));
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  j["threshold"] = m.threshold;
  j["direction"] = std::string(to_string(m.direction));
  return j.dump(2) + "\n";
}

std::string model_digest(const MagnnModel& m) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : save_model(m)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace magnn
