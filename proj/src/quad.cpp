#include "scatent/quad.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace scatent {

void QuadratureSpec::validate() const {
  if (radial_nodes < 2 || angular_nodes < 2)
    throw std::invalid_argument("QuadratureSpec: node counts must be >= 2");
  if (!(target_rel_err > 0)) throw std::invalid_argument("QuadratureSpec: target_rel_err must be > 0");
  if (!(radial_cutoff > 0)) throw std::invalid_argument("QuadratureSpec: radial_cutoff must be > 0");
  if (max_refinements < 1) throw std::invalid_argument("QuadratureSpec: max_refinements must be >= 1");
}

QuadratureSpec QuadratureSpec::scaled(int factor) const {
  QuadratureSpec out = *this;
  out.radial_nodes *= factor;
  out.angular_nodes *= factor;
  return out;
}

void MCSpec::validate() const {
  if (samples < 1) throw std::invalid_argument("MCSpec: samples must be >= 1");
  if (chunk_size < 1) throw std::invalid_argument("MCSpec: chunk_size must be >= 1");
}

Estimate refine_until_converged(const std::function<double(int)>& eval, const QuadratureSpec& spec) {
  spec.validate();
  constexpr double kRoundoff = 256 * std::numeric_limits<double>::epsilon();
  double coarse = eval(1);
  Estimate est{coarse, 0.0, Method::Quadrature, false};
  int factor = 1;
  for (int level = 0; level < spec.max_refinements; ++level) {
    factor *= 2;
    const double fine = eval(factor);
    const double diff = std::abs(fine - coarse);
    est.value = fine;
    est.abs_err = diff + kRoundoff * std::abs(fine);
    if (diff <= spec.target_rel_err * std::abs(fine) || fine == coarse) {
      est.converged = true;
      break;
    }
    coarse = fine;
  }
  if (!std::isfinite(est.value)) est.converged = false;
  return est;
}

Estimate integrate_radial_angular(const std::function<double(double, double)>& f,
                                  const QuadratureSpec& spec) {
  auto eval = [&](int factor) {
    const QuadratureSpec s = spec.scaled(factor);
    const auto radial = mapped_rule(gauss_rule<double>(s.radial_nodes), 0.0, s.radial_cutoff);
    const auto angular = gauss_rule<double>(s.angular_nodes);
    double total = 0;
    for (Eigen::Index i = 0; i < radial.size(); ++i) {
      double inner = 0;
      for (Eigen::Index j = 0; j < angular.size(); ++j)
        inner += angular.weights[j] * f(radial.nodes[i], angular.nodes[j]);
      total += radial.weights[i] * inner;
    }
    return total;
  };
  return refine_until_converged(eval, spec);
}

Estimate integrate_radial2_angular(const std::function<double(double, double, double)>& f,
                                   const QuadratureSpec& spec) {
  auto eval = [&](int factor) {
    const QuadratureSpec s = spec.scaled(factor);
    const auto radial = mapped_rule(gauss_rule<double>(s.radial_nodes), 0.0, s.radial_cutoff);
    const auto angular = gauss_rule<double>(s.angular_nodes);
    double total = 0;
    for (Eigen::Index i = 0; i < radial.size(); ++i) {
      double middle = 0;
      for (Eigen::Index k = 0; k < radial.size(); ++k) {
        double inner = 0;
        for (Eigen::Index j = 0; j < angular.size(); ++j)
          inner += angular.weights[j] * f(radial.nodes[i], radial.nodes[k], angular.nodes[j]);
        middle += radial.weights[k] * inner;
      }
      total += radial.weights[i] * middle;
    }
    return total;
  };
  return refine_until_converged(eval, spec);
}

NonFiniteSample::NonFiniteSample(std::uint64_t index, double value)
    : std::runtime_error("mc_gaussian: non-finite integrand value " + std::to_string(value) +
                         " at sample " + std::to_string(index)),
      index_(index) {}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Standard normals by Box-Muller from a per-chunk mt19937_64 stream.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    // (0, 1] so that log() is finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return radius * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct ChunkMoments {
  double count = 0;
  double mean = 0;
  double m2 = 0;
};

}  // namespace

Estimate mc_gaussian(const std::function<double(std::span<const double>)>& f, int dims,
                     const MCSpec& spec) {
  spec.validate();
  if (dims < 1) throw std::invalid_argument("mc_gaussian: dims must be >= 1");
  const std::uint64_t chunks = (spec.samples + spec.chunk_size - 1) / spec.chunk_size;
  std::vector<ChunkMoments> moments(chunks);
  const unsigned threads = spec.threads == 0 ? default_thread_count() : spec.threads;

  parallel_for(chunks, threads, [&](std::size_t c) {
    NormalStream normals(splitmix64(spec.seed ^ splitmix64(c + 1)));
    const std::uint64_t begin = c * spec.chunk_size;
    const std::uint64_t end = std::min(spec.samples, begin + spec.chunk_size);
    std::vector<double> z(static_cast<std::size_t>(dims));
    ChunkMoments m;
    for (std::uint64_t i = begin; i < end; ++i) {
      for (auto& zi : z) zi = normals.next();
      const double v = f(z);
      if (!std::isfinite(v)) throw NonFiniteSample(i, v);
      m.count += 1;
      const double delta = v - m.mean;
      m.mean += delta / m.count;
      m.m2 += delta * (v - m.mean);
    }
    moments[c] = m;
  });

  // Chan's pairwise merge in chunk order.
  ChunkMoments total;
  for (const auto& m : moments) {
    if (m.count == 0) continue;
    const double n = total.count + m.count;
    const double delta = m.mean - total.mean;
    total.mean += delta * m.count / n;
    total.m2 += m.m2 + delta * delta * total.count * m.count / n;
    total.count = n;
  }
  Estimate est{total.mean, 0.0, Method::MonteCarlo, true};
  if (total.count > 1) {
    const double variance = total.m2 / (total.count - 1);
    est.abs_err = std::sqrt(std::max(variance, 0.0) / total.count);
  }
  return est;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("SCATENT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace scatent
