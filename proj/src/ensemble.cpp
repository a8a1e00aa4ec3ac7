#include "nlpol/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "nlpol/error.hpp"

namespace nlpol {

EnsembleResult run_ensemble(const Grid& grid, const Physics& phys, const SchemeConfig& scheme,
                            const NoiseSpectrum& noise, double t_final,
                            std::vector<double> sample_times, const EnsembleConfig& config) {
  detail::require(config.members >= 1, "ensemble needs at least one member");
  detail::require(t_final >= 0, "t_final must be non-negative");
  sample_times.push_back(t_final);
  std::erase_if(sample_times, [&](double t) { return t < 0 || t > t_final; });
  std::sort(sample_times.begin(), sample_times.end());
  sample_times.erase(std::unique(sample_times.begin(), sample_times.end()), sample_times.end());

  const Propagator prop(grid, phys, scheme);
  const std::size_t members = config.members;
  std::vector<std::vector<Observables>> per_member(members);
  std::vector<double> drift(members, 0.0);
  std::optional<FieldState> first;

  auto run_one = [&](std::size_t m) {
    FieldState state = cw_state(grid, phys.cw, phys.alpha());
    seed_noise(state, noise, trajectory_seed(config.master_seed, m));
    const double norm0 = field_norm(state);
    std::vector<Observables> records;
    if (sample_times.front() == 0.0) records.push_back(observe(state));
    prop.propagate(state, t_final, sample_times,
                   [&](const FieldState& s) { records.push_back(observe(s)); });
    per_member[m] = std::move(records);
    drift[m] = norm0 > 0 ? std::abs(field_norm(state) / norm0 - 1.0) : 0.0;
    if (m == 0) first = std::move(state);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, members));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t m = next++; m < members; m = next++) {
      try {
        run_one(m);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = members;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleResult out;
  out.times = sample_times;
  out.snapshots.resize(sample_times.size());
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    out.snapshots[i].reserve(members);
    for (std::size_t m = 0; m < members; ++m) out.snapshots[i].push_back(per_member[m][i]);
  }
  out.final_norm_drift = std::move(drift);
  out.first_member_final = std::move(first);
  return out;
}

}  // namespace nlpol
