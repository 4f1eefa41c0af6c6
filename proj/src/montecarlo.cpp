#include "beamcast/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

namespace beamcast {
namespace {

struct ChunkSums {
  KahanSum rate, rate_sq;
  KahanSum load, load_sq;
  std::vector<KahanSum> beam_rate, beam_rate_sq;
};

// Runs fn(chunk_index, rng, samples_in_chunk) for every chunk, possibly in
// parallel, and leaves the per-chunk results to the caller to reduce in
// index order.
void run_chunks(std::int64_t samples, std::uint64_t seed, int workers,
                const std::function<void(std::int64_t, SplitMix64&,
                                         std::int64_t)>& fn) {
  const std::int64_t n_chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  auto run_one = [&](std::int64_t c) {
    SplitMix64 rng(substream_key(seed, static_cast<std::uint64_t>(c)));
    std::int64_t count =
        std::min(kChunkSamples, samples - c * kChunkSamples);
    fn(c, rng, count);
  };
  if (workers <= 1 || n_chunks <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) run_one(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      run_one(c);
    }
  };
  std::vector<std::thread> pool;
  int count = static_cast<int>(
      std::min<std::int64_t>(workers, n_chunks));
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

RateEstimate reduce(const std::vector<ChunkSums>& chunks, int beams,
                    std::int64_t samples, std::uint64_t seed) {
  KahanSum rate, rate_sq, load, load_sq;
  std::vector<KahanSum> beam(beams), beam_sq(beams);
  for (const auto& c : chunks) {  // fixed reduction order: chunk index
    rate.add(c.rate.value());
    rate_sq.add(c.rate_sq.value());
    load.add(c.load.value());
    load_sq.add(c.load_sq.value());
    for (int m = 0; m < beams; ++m) {
      beam[m].add(c.beam_rate[m].value());
      beam_sq[m].add(c.beam_rate_sq[m].value());
    }
  }
  const double n = static_cast<double>(samples);
  auto finish = [n](double s, double ss, double& mean, double& se) {
    mean = s / n;
    double var = n > 1.0 ? std::max(0.0, (ss - s * s / n) / (n - 1.0)) : 0.0;
    se = std::sqrt(var / n);
  };
  RateEstimate est;
  est.samples = samples;
  est.seed = seed;
  finish(rate.value(), rate_sq.value(), est.mean_rate, est.std_error);
  finish(load.value(), load_sq.value(), est.mean_load, est.load_std_error);
  est.per_beam_rate.resize(beams);
  est.per_beam_se.resize(beams);
  for (int m = 0; m < beams; ++m) {
    finish(beam[m].value(), beam_sq[m].value(), est.per_beam_rate[m],
           est.per_beam_se[m]);
  }
  return est;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("BEAMCAST_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

RateEstimate simulate(const ChannelModel& model, const ThresholdPolicy& policy,
                      std::int64_t samples, std::uint64_t seed,
                      const SimulateOptions& options) {
  if (samples < 1) throw std::invalid_argument("simulate: samples must be >= 1");
  if (policy.thresholds.empty()) {
    throw std::invalid_argument("simulate: empty policy");
  }
  const int beams = model.beams();
  const int users = static_cast<int>(policy.size());
  const std::int64_t n_chunks = (samples + kChunkSamples - 1) / kChunkSamples;

  std::vector<ChunkSums> chunks(n_chunks);
  for (auto& c : chunks) {
    c.beam_rate.resize(beams);
    c.beam_rate_sq.resize(beams);
  }

  run_chunks(samples, seed, worker_count(),
             [&](std::int64_t ci, SplitMix64& rng, std::int64_t count) {
               ChunkSums& sums = chunks[ci];
               std::vector<double> row(beams);
               std::vector<double> best(beams);
               for (std::int64_t s = 0; s < count; ++s) {
                 std::fill(best.begin(), best.end(), 0.0);
                 int load = 0;
                 for (int i = 0; i < users; ++i) {
                   model.sample_sinr(rng, row);
                   const double tau = policy.thresholds[i];
                   if (options.best_beam_only) {
                     int arg = 0;
                     for (int m = 1; m < beams; ++m) {
                       if (row[m] > row[arg]) arg = m;
                     }
                     if (row[arg] >= tau && row[arg] > best[arg]) {
                       best[arg] = row[arg];
                     }
                   } else {
                     for (int m = 0; m < beams; ++m) {
                       if (row[m] >= tau && row[m] > best[m]) {
                         best[m] = row[m];
                       }
                     }
                   }
                   if (row[0] >= tau) ++load;
                 }
                 double rate = 0.0;
                 for (int m = 0; m < beams; ++m) {
                   double r = std::log1p(best[m]);
                   rate += r;
                   sums.beam_rate[m].add(r);
                   sums.beam_rate_sq[m].add(r * r);
                 }
                 sums.rate.add(rate);
                 sums.rate_sq.add(rate * rate);
                 sums.load.add(load);
                 sums.load_sq.add(static_cast<double>(load) * load);
               }
             });
  return reduce(chunks, beams, samples, seed);
}

RateEstimate simulate_pair_conditional(const ChannelModel& model,
                                       double tau_low, double tau_high,
                                       double y, std::int64_t samples,
                                       std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("simulate_pair_conditional: samples must be >= 1");
  }
  if (!(y >= 0.0)) {
    throw std::invalid_argument("simulate_pair_conditional: y must be >= 0");
  }
  const int beams = model.beams();
  const std::int64_t n_chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<ChunkSums> chunks(n_chunks);

  run_chunks(samples, seed, worker_count(),
             [&](std::int64_t ci, SplitMix64& rng, std::int64_t count) {
               ChunkSums& sums = chunks[ci];
               std::vector<double> row(beams);
               for (std::int64_t s = 0; s < count; ++s) {
                 model.sample_sinr(rng, row);
                 double a = row[0];
                 model.sample_sinr(rng, row);
                 double b = row[0];
                 int load = 0;
                 double z = y;
                 if (a >= tau_low) {
                   ++load;
                   if (a > z) z = a;
                 }
                 if (b >= tau_high) {
                   ++load;
                   if (b > z) z = b;
                 }
                 double r = std::log1p(z);
                 sums.rate.add(r);
                 sums.rate_sq.add(r * r);
                 sums.load.add(load);
                 sums.load_sq.add(static_cast<double>(load) * load);
               }
             });
  RateEstimate est = reduce(chunks, 0, samples, seed);
  return est;
}

}  // namespace beamcast
