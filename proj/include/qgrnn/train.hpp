#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qgrnn/ansatz.hpp"
#include "qgrnn/ising.hpp"
#include "qgrnn/state_vector.hpp"

namespace qgrnn {

struct TrainConfig {
  int batch_size = 15;
  double learning_rate = 0.5;
  int epochs = 150;
  double trotter_delta = 0.01;
  double t_max = 0.5;
  double fd_step = 1e-3;
  std::uint64_t seed = 0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double init_low = -1.0;
  double init_high = 1.0;
  // Time-window warm-up: during the first warmup_epochs epochs only samples
  // with t <= T * (f + (1 - f) * (epoch - 1) / warmup_epochs) enter the
  // gradient, where T is the largest sample time and f is
  // warmup_start_fraction. Later epochs use the full batch. 0 disables.
  int warmup_epochs = 75;
  double warmup_start_fraction = 0.2;
  // Independent seeded starts. Training stops at the first start whose final
  // cost reaches accept_cost; otherwise the lowest-cost start wins.
  int restarts = 4;
  double accept_cost = -0.999;

  // Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

struct CostPoint {
  int epoch;
  double cost;
};

struct TrainResult {
  AnsatzParams learned_params;
  std::vector<CostPoint> cost_history;  // one entry per epoch, cost after that epoch's update
  double final_cost;
  int starts_used = 1;                  // how many seeded starts ran
  int selected_start = 0;               // which start produced this result
};

double fidelity_direct(const StateVector& a, const StateVector& b);

// Fidelity read off the ancilla of a (2n+1)-qubit SWAP-test register:
// qubit 0 is the ancilla, qubits 1..n hold `a`, qubits n+1..2n hold `b`.
double fidelity_swap_test(const StateVector& a, const StateVector& b);

// -(1/N) sum_i |<psi(t_i)| U(params, t_i) |psi_0>|^2
double batch_cost(const AnsatzParams& params, const StateVector& initial,
                  std::span<const TimeEvolvedSample> samples, double delta);

// Central differences in flat-parameter order.
std::vector<double> grad_central(const AnsatzParams& params, const StateVector& initial,
                                 std::span<const TimeEvolvedSample> samples, double delta, double fd_step);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
};

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads,
               const TrainConfig& config);

AnsatzParams random_params(std::size_t node_count, std::uint64_t seed, double low, double high);

// Called after each epoch with (epoch, cost, current params) of the running start.
using EpochObserver = std::function<void(int, double, const AnsatzParams&)>;

TrainResult train_qgrnn(const StateVector& initial, std::span<const TimeEvolvedSample> samples,
                        const TrainConfig& config, const EpochObserver& observer = {});

// Samples entering the gradient at `epoch` under the warm-up schedule.
std::vector<TimeEvolvedSample> active_batch(std::span<const TimeEvolvedSample> samples, int epoch,
                                            const TrainConfig& config);

// Single start from explicit parameters; ignores restarts/accept_cost.
TrainResult train_qgrnn_from(AnsatzParams start, const StateVector& initial,
                             std::span<const TimeEvolvedSample> samples, const TrainConfig& config,
                             const EpochObserver& observer = {});

// Deterministic sub-seed for a named stream of a run seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

namespace seed_stream {
inline constexpr std::uint64_t kInitialState = 1;
inline constexpr std::uint64_t kEdges = 2;
inline constexpr std::uint64_t kTimes = 3;
inline constexpr std::uint64_t kInitParams = 4;
}  // namespace seed_stream

}  // namespace qgrnn
