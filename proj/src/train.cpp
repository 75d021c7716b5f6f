#include "qgrnn/train.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace qgrnn {

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(trotter_delta > 0.0)) throw std::invalid_argument("trotter_delta must be > 0");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be > 0");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) throw std::invalid_argument("adam_beta1 must be in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) throw std::invalid_argument("adam_beta2 must be in [0, 1)");
  if (!(adam_epsilon > 0.0)) throw std::invalid_argument("adam_epsilon must be > 0");
  if (!(init_low <= init_high)) throw std::invalid_argument("init_low must not exceed init_high");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (warmup_epochs < 0) throw std::invalid_argument("warmup_epochs must be >= 0");
  if (!(warmup_start_fraction > 0.0 && warmup_start_fraction <= 1.0)) {
    throw std::invalid_argument("warmup_start_fraction must be in (0, 1]");
  }
}

double fidelity_direct(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

double fidelity_swap_test(const StateVector& a, const StateVector& b) {
  if (a.qubit_count() != b.qubit_count()) throw std::invalid_argument("fidelity_swap_test: dimension mismatch");
  const std::size_t n = a.qubit_count();
  const std::size_t dim = a.dimension();
  // Ancilla |0> tensor |a> tensor |b>.
  std::vector<Complex> amps(std::size_t{1} << (2 * n + 1));
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) amps[(i << 1) | (j << (n + 1))] = a[i] * b[j];
  StateVector reg = StateVector::from_amplitudes(2 * n + 1, std::move(amps));
  reg = apply_hadamard(std::move(reg), 0);
  for (std::size_t k = 0; k < n; ++k) reg = apply_cswap(std::move(reg), 0, 1 + k, n + 1 + k);
  reg = apply_hadamard(std::move(reg), 0);
  return std::clamp(2.0 * prob_zero(reg, 0) - 1.0, 0.0, 1.0);
}

double batch_cost(const AnsatzParams& params, const StateVector& initial,
                  std::span<const TimeEvolvedSample> samples, double delta) {
  if (samples.empty()) throw std::invalid_argument("batch_cost: empty batch");
  if (initial.qubit_count() != params.node_count()) throw std::invalid_argument("batch_cost: dimension mismatch");
  const auto energies = params.to_graph().diagonal_energies();
  double total = 0.0;
  for (const auto& sample : samples) {
    if (sample.state.qubit_count() != initial.qubit_count()) {
      throw std::invalid_argument("batch_cost: sample dimension mismatch");
    }
    if (!(sample.time > 0.0)) {
      // U(0) = I
      total += fidelity_direct(sample.state, initial);
      continue;
    }
    const std::size_t layers = trotter_layer_count(sample.time, delta);
    const TrotterLayer layer(energies, params.node_count(), sample.time / static_cast<double>(layers));
    StateVector state = initial;
    for (std::size_t k = 0; k < layers; ++k) layer.apply(state);
    total += fidelity_direct(sample.state, state);
  }
  return -total / static_cast<double>(samples.size());
}

std::vector<double> grad_central(const AnsatzParams& params, const StateVector& initial,
                                 std::span<const TimeEvolvedSample> samples, double delta, double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("grad_central: fd_step must be > 0");
  std::vector<double> grad(params.size());
  AnsatzParams probe = params;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double x = params.flat()[k];
    probe.flat()[k] = x + fd_step;
    const double up = batch_cost(probe, initial, samples, delta);
    probe.flat()[k] = x - fd_step;
    const double down = batch_cost(probe, initial, samples, delta);
    probe.flat()[k] = x;
    grad[k] = (up - down) / (2.0 * fd_step);
  }
  return grad;
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads,
               const TrainConfig& config) {
  if (params.size() != grads.size()) throw std::invalid_argument("adam_step: params/grads length mismatch");
  if (state.m.empty() && state.v.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw std::invalid_argument("adam_step: optimizer state length mismatch");
  }
  ++state.step;
  const double b1 = config.adam_beta1, b2 = config.adam_beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < params.size(); ++k) {
    state.m[k] = b1 * state.m[k] + (1.0 - b1) * grads[k];
    state.v[k] = b2 * state.v[k] + (1.0 - b2) * grads[k] * grads[k];
    const double m_hat = state.m[k] / corr1;
    const double v_hat = state.v[k] / corr2;
    params[k] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_epsilon);
  }
}

AnsatzParams random_params(std::size_t node_count, std::uint64_t seed, double low, double high) {
  AnsatzParams p(node_count);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(low, high);
  for (auto& x : p.flat()) x = dist(rng);
  return p;
}

std::vector<TimeEvolvedSample> active_batch(std::span<const TimeEvolvedSample> samples, int epoch,
                                            const TrainConfig& config) {
  if (epoch > config.warmup_epochs || samples.empty()) return {samples.begin(), samples.end()};
  double t_top = 0.0;
  for (const auto& s : samples) t_top = std::max(t_top, s.time);
  const double f = config.warmup_start_fraction;
  const double cutoff = t_top * (f + (1.0 - f) * static_cast<double>(epoch - 1) / config.warmup_epochs);
  std::vector<TimeEvolvedSample> batch;
  for (const auto& s : samples)
    if (s.time <= cutoff) batch.push_back(s);
  if (batch.empty()) {
    batch.push_back(*std::min_element(samples.begin(), samples.end(),
                                      [](const auto& a, const auto& b) { return a.time < b.time; }));
  }
  return batch;
}

TrainResult train_qgrnn_from(AnsatzParams params, const StateVector& initial,
                             std::span<const TimeEvolvedSample> samples, const TrainConfig& config,
                             const EpochObserver& observer) {
  config.validate();
  if (samples.empty()) throw std::invalid_argument("train_qgrnn: no samples");
  if (params.node_count() != initial.qubit_count()) throw std::invalid_argument("train_qgrnn: dimension mismatch");
  AdamState adam;
  std::vector<CostPoint> history;
  history.reserve(static_cast<std::size_t>(config.epochs));
  double cost = 0.0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto grad = epoch > config.warmup_epochs
                          ? grad_central(params, initial, samples, config.trotter_delta, config.fd_step)
                          : grad_central(params, initial, active_batch(samples, epoch, config),
                                         config.trotter_delta, config.fd_step);
    adam_step(adam, params.flat(), grad, config);
    cost = batch_cost(params, initial, samples, config.trotter_delta);
    history.push_back({epoch, cost});
    if (observer) observer(epoch, cost, params);
  }
  return {std::move(params), std::move(history), cost};
}

TrainResult train_qgrnn(const StateVector& initial, std::span<const TimeEvolvedSample> samples,
                        const TrainConfig& config, const EpochObserver& observer) {
  config.validate();
  const std::uint64_t init_seed = derive_seed(config.seed, seed_stream::kInitParams);
  std::optional<TrainResult> best;
  for (int start = 0; start < config.restarts; ++start) {
    auto params = random_params(initial.qubit_count(), derive_seed(init_seed, static_cast<std::uint64_t>(start)),
                                config.init_low, config.init_high);
    TrainResult run = train_qgrnn_from(std::move(params), initial, samples, config, observer);
    run.selected_start = start;
    const bool accepted = run.final_cost <= config.accept_cost;
    if (!best || run.final_cost < best->final_cost) best = std::move(run);
    best->starts_used = start + 1;
    if (accepted) break;
  }
  return std::move(*best);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 over the combined value
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qgrnn
