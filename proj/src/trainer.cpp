#include "hetmos/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetmos/errors.hpp"
#include "hetmos/io_util.hpp"
#include "hetmos/rng.hpp"

namespace hetmos {

LossKind loss_from_string(const std::string& name) {
  if (name == "nll") return LossKind::nll;
  if (name == "mse") return LossKind::mse;
  throw ConfigError("unknown loss '" + name + "' (expected nll or mse)");
}

std::string to_string(LossKind kind) { return kind == LossKind::nll ? "nll" : "mse"; }

OptimizerKind optimizer_from_string(const std::string& name) {
  if (name == "adam") return OptimizerKind::adam;
  if (name == "sgd") return OptimizerKind::sgd;
  throw ConfigError("unknown optimizer '" + name + "' (expected adam or sgd)");
}

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::adam ? "adam" : "sgd"; }

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0))
    throw ConfigError("invalid Adam hyperparameters");
}

namespace {

void add_scaled(ParamSet<double>& acc, const ParamSet<double>& g, double scale) {
  for (std::size_t i = 0; i < acc.trunk.size(); ++i) {
    acc.trunk[i].weight += scale * g.trunk[i].weight;
    acc.trunk[i].bias += scale * g.trunk[i].bias;
  }
  for (auto [a, b] : {std::pair{&acc.score, &g.score}, std::pair{&acc.logvar, &g.logvar}}) {
    a->hidden.weight += scale * b->hidden.weight;
    a->hidden.bias += scale * b->hidden.bias;
    a->out.weight += scale * b->out.weight;
    a->out.bias += scale * b->out.bias;
  }
}

// Collects pointers to matching tensors of several ParamSets, in canonical order.
template <typename F>
void zip_tensors(ParamSet<double>& p, ParamSet<double>& g, ParamSet<double>& m, ParamSet<double>& v, F&& f) {
  std::vector<Dense<double>*> ps, gs, ms, vs;
  for_each_dense(p, [&](Dense<double>& d) { ps.push_back(&d); });
  for_each_dense(g, [&](Dense<double>& d) { gs.push_back(&d); });
  for_each_dense(m, [&](Dense<double>& d) { ms.push_back(&d); });
  for_each_dense(v, [&](Dense<double>& d) { vs.push_back(&d); });
  for (std::size_t i = 0; i < ps.size(); ++i) {
    f(ps[i]->weight, gs[i]->weight, ms[i]->weight, vs[i]->weight);
    f(ps[i]->bias, gs[i]->bias, ms[i]->bias, vs[i]->bias);
  }
}

class Optimizer {
 public:
  Optimizer(const TrainConfig& cfg, const ParamSet<double>& shape)
      : cfg_(cfg), m_(zeros_like(shape)), v_(zeros_like(shape)) {}

  void step(ParamSet<double>& params, ParamSet<double>& grad) {
    ++t_;
    const double lr = cfg_.learning_rate;
    if (cfg_.optimizer == OptimizerKind::sgd) {
      add_scaled(params, grad, -lr);
      return;
    }
    const double b1 = cfg_.beta1, b2 = cfg_.beta2, eps = cfg_.epsilon;
    const double c1 = 1.0 - std::pow(b1, t_);
    const double c2 = 1.0 - std::pow(b2, t_);
    zip_tensors(params, grad, m_, v_, [&](auto& p, auto& g, auto& m, auto& v) {
      m = b1 * m + (1.0 - b1) * g;
      v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
      p.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
    });
  }

 private:
  TrainConfig cfg_;
  ParamSet<double> m_;
  ParamSet<double> v_;
  long t_ = 0;
};

void check_dims(const Dataset& data, const ArchConfig& arch, const char* what) {
  for (const auto& s : data)
    if (s.features.size() != arch.input_dim)
      throw ShapeError(std::string(what) + " sample '" + s.id + "' has " + std::to_string(s.features.size()) +
                       " features, model expects " + std::to_string(arch.input_dim));
}

}  // namespace

double dataset_loss(const ModelParams<double>& model, const Dataset& data, LossKind kind) {
  if (data.empty()) throw InputError("loss of an empty dataset");
  double acc = 0.0;
  for (const auto& s : data) acc += evaluate_loss(kind, predict(model, s.features), s.y).value;
  return acc / static_cast<double>(data.size());
}

TrainResult train(const Dataset& data, const ArchConfig& arch, const TrainConfig& cfg, const Dataset* validation) {
  if (data.empty()) throw InputError("training dataset is empty");
  cfg.validate();
  arch.validate();
  if (static_cast<std::size_t>(cfg.batch_size) > data.size())
    throw ConfigError("batch_size exceeds the number of training samples");
  check_dims(data, arch, "training");
  if (validation) check_dims(*validation, arch, "validation");

  TrainResult result{init_params<double>(arch, cfg.seed), {}};
  auto& model = result.params;
  Optimizer opt(cfg, model.params);
  Rng shuffle_rng = substream(cfg.seed, {stream::kShuffle});
  Rng dropout_rng = substream(cfg.seed, {stream::kTrainDropout});

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  ParamSet<double> grad = zeros_like(model.params);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      grad = zeros_like(model.params);
      for (std::size_t i = start; i < end; ++i) {
        const Sample& s = data[order[i]];
        const auto fwd = forward(model, s.features, Mode::dropout, dropout_rng);
        const auto loss = evaluate_loss(cfg.loss, fwd.pred, s.y);
        if (!std::isfinite(loss.value)) throw TrainingDiverged(epoch, "non-finite loss on sample '" + s.id + "'");
        epoch_loss += loss.value;
        add_scaled(grad, backward(fwd.cache, model, loss.d_y_hat, loss.d_s), inv_batch);
      }
      opt.step(model.params, grad);
    }
    epoch_loss /= static_cast<double>(data.size());
    if (!std::isfinite(epoch_loss)) throw TrainingDiverged(epoch, "non-finite epoch loss");
    result.history.train_loss.push_back(epoch_loss);
    if (validation && !validation->empty()) {
      const double v = dataset_loss(model, *validation, cfg.loss);
      if (!std::isfinite(v)) throw TrainingDiverged(epoch, "non-finite validation loss");
      result.history.val_loss.push_back(v);
    }
  }
  return result;
}

std::string history_to_csv(const TrainHistory& history) {
  std::string out = "epoch,train_loss,val_loss\n";
  for (std::size_t i = 0; i < history.train_loss.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_double(history.train_loss[i]) + ',';
    if (i < history.val_loss.size()) out += format_double(history.val_loss[i]);
    out += '\n';
  }
  return out;
}

}  // namespace hetmos
