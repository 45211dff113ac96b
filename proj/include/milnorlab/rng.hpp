#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace milnorlab {

// (master_seed, stream_id) fully determines a pseudo-random sequence, and
// distinct stream_ids decorrelate through a splitmix64 hash of the pair.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Call sites that fan out into many streams space their base stream_ids by
// this stride so derived ids never collide across phases of one analysis.
inline constexpr std::uint64_t kStreamStride = std::uint64_t(1) << 20;

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class RandomStream {
 public:
  explicit RandomStream(const RngSpec& spec) {
    std::uint64_t state = spec.master_seed ^ (0x9e3779b97f4a7c15ULL * (spec.stream_id + 1));
    std::uint64_t seed = detail::splitmix64(state);
    seed ^= detail::splitmix64(state);
    eng_.seed(seed);
    eng_.discard(8);
  }

  // Uniform in [0, 1) with 53 significant bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Box-Muller; the paired value is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::vector<double> gaussian(std::size_t dim) {
    std::vector<double> v(dim);
    for (auto& c : v) c = normal();
    return v;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Deterministic fan-out. [0, total) is cut into fixed-size chunks; chunk c is
// handed fn(stream for {spec.master_seed, spec.stream_id + c}, begin, end) no
// matter which worker picks it up, and the per-chunk outputs are concatenated
// in chunk order. The result is therefore a pure function of (inputs, spec),
// independent of `workers`.
template <typename T, typename Fn>
std::vector<T> run_chunked(std::size_t total, std::size_t chunk_size, std::size_t workers,
                           const RngSpec& spec, Fn&& fn) {
  if (total == 0) return {};
  if (chunk_size == 0) chunk_size = 1;
  std::size_t n_chunks = (total + chunk_size - 1) / chunk_size;
  std::vector<std::vector<T>> per_chunk(n_chunks);

  auto work_chunk = [&](std::size_t c) {
    std::size_t begin = c * chunk_size;
    std::size_t end = std::min(total, begin + chunk_size);
    RandomStream stream(RngSpec{spec.master_seed, spec.stream_id + c});
    per_chunk[c] = fn(stream, begin, end);
  };

  std::size_t n_workers = std::max<std::size_t>(1, std::min(workers, n_chunks));
  if (n_workers == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) work_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          std::size_t c = next.fetch_add(1);
          if (c >= n_chunks) return;
          work_chunk(c);
        }
      });
    for (auto& t : pool) t.join();
  }

  std::vector<T> out;
  for (auto& chunk : per_chunk)
    out.insert(out.end(), std::make_move_iterator(chunk.begin()),
               std::make_move_iterator(chunk.end()));
  return out;
}

}  // namespace milnorlab
