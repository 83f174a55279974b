#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "belltime/correlation_data.hpp"
#include "belltime/local_model.hpp"
#include "belltime/real_format.hpp"
#include "belltime/schedule.hpp"

namespace belltime {

struct SimulateOptions {
  int workers = 1;                   // 0 picks the hardware concurrency
  bool stratified_quarters = false;  // exactly even emission across quarters
};

// One simulated run: every emitted pair with its settings and outcomes,
// ordered by emission time.
struct RunRecord {
  Schedule schedule;
  std::uint64_t seed = 0;
  std::uint64_t n_pairs = 0;
  bool stratified = false;
  std::vector<PairEvent> events;
};

// Events are generated in fixed-size chunks, each from its own seed-derived
// stream, so the result is bit-identical for any worker count.  The chunk
// size is part of the reproduction contract.
inline constexpr std::uint64_t kSimulateChunkSize = 1u << 16;

namespace detail {

inline void simulate_chunk(const LocalModel& model, const Schedule& schedule,
                           std::uint64_t master_seed, std::uint64_t chunk,
                           std::uint64_t chunk_begin, std::uint64_t chunk_end,
                           bool stratified, PairEvent* out) {
  Rng rng(derive_chunk_seed(master_seed, chunk));
  const double total = schedule.total_time();
  const double quarter = schedule.quarter_duration();
  for (std::uint64_t i = chunk_begin; i < chunk_end; ++i) {
    PairEvent& e = out[i - chunk_begin];
    if (stratified) {
      const auto q = static_cast<double>(i % 4);
      e.t = (q + rng.uniform01()) * quarter;
    } else {
      e.t = rng.uniform01() * total;
    }
    e.lambda = model.sample_lambda(rng, e.t);
    const auto settings = schedule.settings_at(e.t);
    e.a_setting = settings.first;
    e.b_setting = settings.second;
    const double pa = model.response_a(e.a_setting, e.lambda, e.t);
    const double pb = model.response_b(e.b_setting, e.lambda, e.t);
    if (!(pa >= 0.0 && pa <= 1.0) || !(pb >= 0.0 && pb <= 1.0)) {
      throw model_contract_error("model '" + model.name() +
                                 "': response outside [0, 1] during simulation");
    }
    e.a_outcome = rng.bernoulli(pa) ? +1 : -1;
    e.b_outcome = rng.bernoulli(pb) ? +1 : -1;
  }
}

}  // namespace detail

inline RunRecord simulate_run(const LocalModel& model, const Schedule& schedule,
                              std::uint64_t n_pairs, std::uint64_t seed,
                              const SimulateOptions& opt = {}) {
  if (n_pairs == 0) {
    throw std::invalid_argument("simulate_run: pair count must be positive");
  }
  RunRecord run{schedule, seed, n_pairs, opt.stratified_quarters, {}};
  run.events.resize(n_pairs);

  const std::uint64_t n_chunks = (n_pairs + kSimulateChunkSize - 1) / kSimulateChunkSize;
  std::uint64_t n_workers = opt.workers > 0
                                ? static_cast<std::uint64_t>(opt.workers)
                                : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min(n_workers, n_chunks);

  auto run_chunks = [&](std::uint64_t first_chunk, std::uint64_t last_chunk) {
    for (std::uint64_t c = first_chunk; c < last_chunk; ++c) {
      const std::uint64_t begin = c * kSimulateChunkSize;
      const std::uint64_t end = std::min(begin + kSimulateChunkSize, n_pairs);
      detail::simulate_chunk(model, schedule, seed, c, begin, end,
                             opt.stratified_quarters, run.events.data() + begin);
    }
  };

  if (n_workers <= 1) {
    run_chunks(0, n_chunks);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::uint64_t per_worker = (n_chunks + n_workers - 1) / n_workers;
    for (std::uint64_t w = 0; w < n_workers; ++w) {
      const std::uint64_t first = w * per_worker;
      const std::uint64_t last = std::min(first + per_worker, n_chunks);
      if (first >= last) break;
      pool.emplace_back([&, first, last] {
        try {
          run_chunks(first, last);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::stable_sort(run.events.begin(), run.events.end(),
                   [](const PairEvent& a, const PairEvent& b) { return a.t < b.t; });
  return run;
}

// Coincidence counts per settings pair.  Every event lands in exactly one
// counter of exactly one pair.
inline PerPairCounts tally(const RunRecord& run) {
  PerPairCounts counts{};
  for (const PairEvent& e : run.events) {
    CoincidenceCounts& c = counts[pair_index(run.schedule.pair_at(e.t))];
    if (e.a_outcome > 0) {
      (e.b_outcome > 0 ? c.pp : c.pm) += 1;
    } else {
      (e.b_outcome > 0 ? c.mp : c.mm) += 1;
    }
  }
  return counts;
}

// Estimates from tallied counts: P_AB as the double-detection fraction within
// the pair's own quarter, singles over the half of the run where the setting
// was in force, expectations as the +-1-weighted count ratio.  A settings
// pair with no events leaves its quantities undefined (a 0/0 ratio), which is
// reported, never coerced to a number.
inline CorrelationData estimate_correlation_data(const PerPairCounts& counts) {
  CorrelationData d;
  for (SettingsPair p : all_settings_pairs) {
    const CoincidenceCounts& c = counts[pair_index(p)];
    const std::uint64_t total = c.total();
    if (total == 0) {
      throw indeterminate_error(
          std::string("estimate_correlation_data: no events for settings pair ") +
          to_string(p) + "; its probabilities are 0/0-indeterminate");
    }
    const auto n = static_cast<double>(total);
    d.pair_probs[pair_index(p)] = static_cast<double>(c.pp) / n;
    d.expectations[pair_index(p)] =
        (static_cast<double>(c.pp) + static_cast<double>(c.mm) -
         static_cast<double>(c.pm) - static_cast<double>(c.mp)) /
        n;
  }

  std::uint64_t a_detected = 0, a_total = 0, b_detected = 0, b_total = 0;
  for (SettingsPair p : all_settings_pairs) {
    const CoincidenceCounts& c = counts[pair_index(p)];
    if (a_index(p) == 1) {
      a_detected += c.pp + c.pm;
      a_total += c.total();
    }
    if (b_index(p) == 0) {
      b_detected += c.pp + c.mp;
      b_total += c.total();
    }
  }
  d.single_a_prime = static_cast<double>(a_detected) / static_cast<double>(a_total);
  d.single_b = static_cast<double>(b_detected) / static_cast<double>(b_total);
  return d;
}

namespace detail {

inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Line-oriented audit format: one event per line with the emission time, a
// digest of the hidden value, the settings indices and both outcomes.
inline void write_run_record(std::ostream& os, const RunRecord& run) {
  const SettingsQuad& quad = run.schedule.quad();
  os << "# belltime run record v1\n";
  os << "# seed=" << run.seed << " n_pairs=" << run.n_pairs
     << " total_time=" << format_real(run.schedule.total_time())
     << " stratified=" << (run.stratified ? 1 : 0) << "\n";
  os << "# quad alpha=" << format_real(quad.alpha.radians())
     << " alpha_prime=" << format_real(quad.alpha_prime.radians())
     << " beta=" << format_real(quad.beta.radians())
     << " beta_prime=" << format_real(quad.beta_prime.radians()) << "\n";
  os << "# columns: t lambda_digest a_index b_index a_outcome b_outcome\n";
  char digest[17];
  for (const PairEvent& e : run.events) {
    const std::uint64_t h = detail::fnv1a64(&e.lambda, sizeof(e.lambda));
    for (int i = 0; i < 16; ++i) {
      digest[15 - i] = "0123456789abcdef"[(h >> (4 * i)) & 0xF];
    }
    digest[16] = '\0';
    const int ai = e.a_setting == quad.alpha ? 0 : 1;
    const int bi = e.b_setting == quad.beta ? 0 : 1;
    os << format_real(e.t) << ' ' << digest << ' ' << ai << ' ' << bi << ' '
       << (e.a_outcome > 0 ? "+1" : "-1") << ' ' << (e.b_outcome > 0 ? "+1" : "-1")
       << '\n';
  }
}

}  // namespace belltime
