#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nlpol/measure.hpp"

namespace nlpol {

struct EnsembleConfig {
  std::size_t members = 200;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
};

struct EnsembleResult {
  std::vector<double> times;
  // snapshots[i][m]: observables of member m at times[i]
  std::vector<std::vector<Observables>> snapshots;
  std::vector<double> final_norm_drift;  // per member, relative
  std::optional<FieldState> first_member_final;
};

// CW + seed_noise(trajectory_seed(master, m)) for every member, propagated to t_final with
// observations at sample_times (t_final is always observed). Members run on a worker pool;
// the result does not depend on the worker count.
EnsembleResult run_ensemble(const Grid& grid, const Physics& phys, const SchemeConfig& scheme,
                            const NoiseSpectrum& noise, double t_final,
                            std::vector<double> sample_times, const EnsembleConfig& config);

}  // namespace nlpol
