#pragma once

// Two-head feed-forward network: a shared trunk of dense+activation layers,
// then a score head and a log-variance head. Each head is
//   dropout -> dense(trunk_out -> head_hidden) -> dense(head_hidden -> 1)
// with no nonlinearity inside the head.
// Backpropagation is written out by hand for this fixed topology.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hetmos/errors.hpp"
#include "hetmos/rng.hpp"

namespace hetmos {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Activation { tanh, relu };

inline std::string to_string(Activation a) { return a == Activation::tanh ? "tanh" : "relu"; }

inline Activation activation_from_string(const std::string& name) {
  if (name == "tanh") return Activation::tanh;
  if (name == "relu") return Activation::relu;
  throw ConfigError("unknown activation '" + name + "' (expected tanh or relu)");
}

// Bounds on the log-variance head output.
inline constexpr double kLogVarMin = -10.0;
inline constexpr double kLogVarMax = 10.0;

struct ArchConfig {
  int input_dim = 16;
  std::vector<int> trunk_dims{32};
  int head_hidden_dim = 16;
  double dropout_p = 0.5;
  Activation activation = Activation::tanh;

  void validate() const {
    if (input_dim < 1) throw ConfigError("input_dim must be >= 1");
    for (int w : trunk_dims)
      if (w < 1) throw ConfigError("trunk widths must be >= 1");
    if (head_hidden_dim < 1) throw ConfigError("head_hidden_dim must be >= 1");
    if (!(dropout_p >= 0.0 && dropout_p < 1.0)) throw ConfigError("dropout_p must lie in [0, 1)");
  }

  int trunk_output_dim() const { return trunk_dims.empty() ? input_dim : trunk_dims.back(); }

  bool operator==(const ArchConfig&) const = default;
};

template <typename Scalar>
struct Dense {
  Matrix<Scalar> weight;  // out x in
  Vector<Scalar> bias;    // out
};

template <typename Scalar>
struct Head {
  Dense<Scalar> hidden;
  Dense<Scalar> out;
};

// Parameter tensors of the network; also the shape of a gradient.
template <typename Scalar>
struct ParamSet {
  std::vector<Dense<Scalar>> trunk;
  Head<Scalar> score;
  Head<Scalar> logvar;
};

// Visits every dense layer in canonical order: trunk..., score.hidden,
// score.out, logvar.hidden, logvar.out.
template <typename P, typename F>
void for_each_dense(P& params, F&& f) {
  for (auto& layer : params.trunk) f(layer);
  f(params.score.hidden);
  f(params.score.out);
  f(params.logvar.hidden);
  f(params.logvar.out);
}

template <typename Scalar>
ParamSet<Scalar> zeros_like(const ParamSet<Scalar>& p) {
  ParamSet<Scalar> z = p;
  for_each_dense(z, [](Dense<Scalar>& d) {
    d.weight.setZero();
    d.bias.setZero();
  });
  return z;
}

template <typename Scalar>
std::size_t num_parameters(const ParamSet<Scalar>& p) {
  std::size_t n = 0;
  for_each_dense(p, [&n](const Dense<Scalar>& d) { n += d.weight.size() + d.bias.size(); });
  return n;
}

template <typename Scalar>
struct ModelParams {
  ArchConfig arch;
  ParamSet<Scalar> params;
  std::uint64_t rng_seed_used = 0;
};

template <typename Scalar>
struct HeteroPrediction {
  Scalar y_hat{0};
  Scalar s{0};       // log of predicted variance, clamped
  Scalar sigma2{1};  // exp(s)
};

template <typename Scalar>
HeteroPrediction<Scalar> make_prediction(Scalar y_hat, Scalar s) {
  using std::exp;
  using std::clamp;
  s = clamp(s, Scalar(kLogVarMin), Scalar(kLogVarMax));
  return {y_hat, s, exp(s)};
}

enum class Mode { deterministic, dropout };

template <typename Scalar>
struct HeadCache {
  Vector<Scalar> mask;  // empty when no dropout was applied
  Vector<Scalar> input;
  Vector<Scalar> hidden;
  Scalar raw_out{0};
};

template <typename Scalar>
struct ForwardCache {
  Vector<Scalar> input;
  std::vector<Vector<Scalar>> trunk_pre;
  std::vector<Vector<Scalar>> trunk_post;
  HeadCache<Scalar> score;
  HeadCache<Scalar> logvar;
};

template <typename Scalar>
struct ForwardResult {
  HeteroPrediction<Scalar> pred;
  ForwardCache<Scalar> cache;
};

namespace detail {

template <typename Scalar>
Dense<Scalar> init_dense(int in, int out, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Dense<Scalar> d{Matrix<Scalar>(out, in), Vector<Scalar>::Zero(out)};
  for (int r = 0; r < out; ++r)
    for (int c = 0; c < in; ++c) d.weight(r, c) = static_cast<Scalar>(dist(rng));
  return d;
}

template <typename Scalar>
Vector<Scalar> activate(Activation a, const Vector<Scalar>& pre) {
  if (a == Activation::tanh) return pre.array().tanh().matrix();
  return pre.cwiseMax(Scalar(0));
}

// Derivative of the activation, expressed through pre- and post-activation values.
template <typename Scalar>
Vector<Scalar> activate_grad(Activation a, const Vector<Scalar>& pre, const Vector<Scalar>& post) {
  if (a == Activation::tanh) return (Scalar(1) - post.array().square()).matrix();
  return (pre.array() > Scalar(0)).template cast<Scalar>().matrix();
}

template <typename Scalar>
Vector<Scalar> draw_mask(int n, double p, Rng& rng) {
  std::bernoulli_distribution keep(1.0 - p);
  const Scalar scale = Scalar(1.0 / (1.0 - p));
  Vector<Scalar> mask(n);
  for (int i = 0; i < n; ++i) mask(i) = keep(rng) ? scale : Scalar(0);
  return mask;
}

template <typename Scalar>
Scalar head_forward(const Head<Scalar>& head, const Vector<Scalar>& trunk_out,
                    bool use_dropout, double p, Rng& rng, HeadCache<Scalar>& cache) {
  if (use_dropout) {
    cache.mask = draw_mask<Scalar>(static_cast<int>(trunk_out.size()), p, rng);
    cache.input = trunk_out.cwiseProduct(cache.mask);
  } else {
    cache.mask.resize(0);
    cache.input = trunk_out;
  }
  cache.hidden = head.hidden.weight * cache.input + head.hidden.bias;
  cache.raw_out = (head.out.weight * cache.hidden + head.out.bias)(0);
  return cache.raw_out;
}

// Writes the head's parameter gradients into `grad` and returns the
// gradient with respect to the (pre-dropout) trunk output.
template <typename Scalar>
Vector<Scalar> head_backward(const Head<Scalar>& head, const HeadCache<Scalar>& cache, Scalar d_out,
                             Head<Scalar>& grad) {
  grad.out.weight = d_out * cache.hidden.transpose();
  grad.out.bias = Vector<Scalar>::Constant(1, d_out);
  Vector<Scalar> d_hidden = head.out.weight.transpose() * d_out;
  grad.hidden.weight = d_hidden * cache.input.transpose();
  grad.hidden.bias = d_hidden;
  Vector<Scalar> d_input = head.hidden.weight.transpose() * d_hidden;
  if (cache.mask.size() > 0) d_input = d_input.cwiseProduct(cache.mask);
  return d_input;
}

}  // namespace detail

template <typename Scalar = double>
ModelParams<Scalar> init_params(const ArchConfig& arch, std::uint64_t seed) {
  arch.validate();
  Rng rng = substream(seed, {stream::kInit});
  ModelParams<Scalar> m;
  m.arch = arch;
  m.rng_seed_used = seed;
  int in = arch.input_dim;
  for (int w : arch.trunk_dims) {
    m.params.trunk.push_back(detail::init_dense<Scalar>(in, w, rng));
    in = w;
  }
  for (Head<Scalar>* head : {&m.params.score, &m.params.logvar}) {
    head->hidden = detail::init_dense<Scalar>(in, arch.head_hidden_dim, rng);
    head->out = detail::init_dense<Scalar>(arch.head_hidden_dim, 1, rng);
  }
  return m;
}

// Throws ShapeError when any tensor disagrees with the architecture and
// InputError when any entry is non-finite.
template <typename Scalar>
void check_params(const ModelParams<Scalar>& m) {
  m.arch.validate();
  const auto& a = m.arch;
  if (m.params.trunk.size() != a.trunk_dims.size()) throw ShapeError("trunk depth does not match arch");
  auto expect = [](const Dense<Scalar>& d, int in, int out, const char* name) {
    if (d.weight.rows() != out || d.weight.cols() != in || d.bias.size() != out)
      throw ShapeError(std::string("layer '") + name + "' has shape inconsistent with arch");
    if (!d.weight.allFinite() || !d.bias.allFinite())
      throw InputError(std::string("layer '") + name + "' has non-finite entries");
  };
  int in = a.input_dim;
  for (std::size_t i = 0; i < a.trunk_dims.size(); ++i) {
    expect(m.params.trunk[i], in, a.trunk_dims[i], "trunk");
    in = a.trunk_dims[i];
  }
  expect(m.params.score.hidden, in, a.head_hidden_dim, "score.hidden");
  expect(m.params.score.out, a.head_hidden_dim, 1, "score.out");
  expect(m.params.logvar.hidden, in, a.head_hidden_dim, "logvar.hidden");
  expect(m.params.logvar.out, a.head_hidden_dim, 1, "logvar.out");
}

// Dropout mode uses `dropout_p`; masks are drawn from `rng` (score head first).
template <typename Scalar>
ForwardResult<Scalar> forward(const ModelParams<Scalar>& m, const Vector<Scalar>& x, Mode mode,
                              Rng& rng, double dropout_p) {
  if (x.size() != m.arch.input_dim)
    throw ShapeError("input has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(m.arch.input_dim));
  if (!x.allFinite()) throw InputError("input contains non-finite entries");
  if (!(dropout_p >= 0.0 && dropout_p < 1.0)) throw ConfigError("dropout_p must lie in [0, 1)");

  ForwardResult<Scalar> r;
  auto& c = r.cache;
  c.input = x;
  Vector<Scalar> h = x;
  for (const auto& layer : m.params.trunk) {
    c.trunk_pre.push_back(layer.weight * h + layer.bias);
    c.trunk_post.push_back(detail::activate(m.arch.activation, c.trunk_pre.back()));
    h = c.trunk_post.back();
  }
  const bool drop = mode == Mode::dropout && dropout_p > 0.0;
  const Scalar y = detail::head_forward(m.params.score, h, drop, dropout_p, rng, c.score);
  const Scalar s = detail::head_forward(m.params.logvar, h, drop, dropout_p, rng, c.logvar);
  r.pred = make_prediction(y, s);
  return r;
}

template <typename Scalar>
ForwardResult<Scalar> forward(const ModelParams<Scalar>& m, const Vector<Scalar>& x, Mode mode,
                              Rng& rng) {
  return forward(m, x, mode, rng, m.arch.dropout_p);
}

// Deterministic prediction without keeping the cache around.
template <typename Scalar>
HeteroPrediction<Scalar> predict(const ModelParams<Scalar>& m, const Vector<Scalar>& x) {
  Rng unused(0);
  return forward(m, x, Mode::deterministic, unused).pred;
}

// Gradient of a loss with respect to every parameter, given the upstream
// gradients on the (clamped) outputs. Dropout masks in the cache are replayed.
// The clamp on s passes no gradient once the raw output is outside its range.
template <typename Scalar>
ParamSet<Scalar> backward(const ForwardCache<Scalar>& c, const ModelParams<Scalar>& m, Scalar d_y_hat, Scalar d_s) {
  const auto& a = m.arch;
  if (c.trunk_pre.size() != m.params.trunk.size() || c.input.size() != a.input_dim ||
      c.score.hidden.size() != a.head_hidden_dim || c.logvar.hidden.size() != a.head_hidden_dim)
    throw ShapeError("forward cache does not match model parameters");

  if (c.logvar.raw_out < Scalar(kLogVarMin) || c.logvar.raw_out > Scalar(kLogVarMax)) d_s = Scalar(0);

  ParamSet<Scalar> g;
  g.trunk.resize(m.params.trunk.size());
  Vector<Scalar> d_h = detail::head_backward(m.params.score, c.score, d_y_hat, g.score);
  d_h += detail::head_backward(m.params.logvar, c.logvar, d_s, g.logvar);

  for (std::size_t k = m.params.trunk.size(); k-- > 0;) {
    const auto& layer = m.params.trunk[k];
    Vector<Scalar> d_pre = d_h.cwiseProduct(detail::activate_grad(a.activation, c.trunk_pre[k], c.trunk_post[k]));
    const Vector<Scalar>& in = k == 0 ? c.input : c.trunk_post[k - 1];
    g.trunk[k].weight = d_pre * in.transpose();
    g.trunk[k].bias = d_pre;
    d_h = layer.weight.transpose() * d_pre;
  }
  return g;
}

}  // namespace hetmos
