#include "core/eden.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "core/errors.hpp"
#include "core/threads.hpp"

namespace latcomm {

namespace {

void check_config(const EdenConfig& cfg) {
  if (cfg.d < 1 || cfg.d > 3)
    throw std::invalid_argument("eden: d must be 1, 2 or 3");
  if (cfg.steps < 0) throw std::invalid_argument("eden: steps must be >= 0");
  if (cfg.trials < 1) throw std::invalid_argument("eden: trials must be >= 1");
}

}  // namespace

uint64_t split_seed(uint64_t root, uint64_t index) {
  // SplitMix64 (Steele, Lea, Flood 2014): state = root + (index+1)*golden,
  // then the standard finalizer.
  uint64_t z = root + (index + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t uniform_index(std::mt19937_64& rng, uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  const uint64_t limit = n * (UINT64_MAX / n);  // largest multiple of n
  uint64_t u;
  do {
    u = rng();
  } while (u >= limit);
  return u % n;
}

EdenState::EdenState(int d, const Site& root) : animal_(d, root) {
  for (const Site& z : neighbors(root, d)) pool_.push_back(Edge(root, z));
}

std::map<Site, std::vector<Edge>> EdenState::perimeter_by_outside_site()
    const {
  std::map<Site, std::vector<Edge>> groups;
  for (const Edge& e : animal_.perimeter_edges()) {
    const Site& outside = animal_.contains(e.a) ? e.b : e.a;
    groups[outside].push_back(e);
  }
  return groups;
}

bool EdenState::consistent() const {
  std::vector<Edge> live;
  for (const Edge& e : pool_)
    if (animal_.contains(e.a) != animal_.contains(e.b)) live.push_back(e);
  std::sort(live.begin(), live.end());
  if (std::adjacent_find(live.begin(), live.end()) != live.end()) return false;
  return live == animal_.perimeter_edges();
}

void eden_step(EdenState& s, std::mt19937_64& rng) {
  Site y;
  for (;;) {
    const uint64_t i = uniform_index(rng, s.pool_.size());
    const Edge e = s.pool_[i];
    const bool a_in = s.animal_.contains(e.a);
    if (a_in && s.animal_.contains(e.b)) {
      s.pool_[i] = s.pool_.back();  // stale, drop and redraw
      s.pool_.pop_back();
      continue;
    }
    y = a_in ? e.b : e.a;
    break;
  }
  s.animal_.push(y);
  for (const Site& z : neighbors(y, s.animal_.dims()))
    if (!s.animal_.contains(z)) s.pool_.push_back(Edge(y, z));
}

PerimeterStats perimeter_expectation_mc(const EdenConfig& cfg) {
  check_config(cfg);
  const int steps = cfg.steps;
  const long long trials = cfg.trials;
  const int chunks = static_cast<int>(std::min<long long>(trials, 16));

  std::vector<std::vector<double>> sums(chunks), sqsums(chunks);
  parallel_chunks(chunks, [&](int c) {
    auto& s1 = sums[c];
    auto& s2 = sqsums[c];
    s1.assign(steps + 1, 0.0);
    s2.assign(steps + 1, 0.0);
    const long long lo = trials * c / chunks;
    const long long hi = trials * (c + 1) / chunks;
    for (long long t = lo; t < hi; ++t) {
      std::mt19937_64 rng(split_seed(cfg.seed, static_cast<uint64_t>(t)));
      EdenState state(cfg.d);
      for (int i = 0; i <= steps; ++i) {
        const double p = state.perimeter_size();
        s1[i] += p;
        s2[i] += p * p;
        if (i < steps) eden_step(state, rng);
      }
    }
  });

  PerimeterStats out;
  out.cfg = cfg;
  out.mean.assign(steps + 1, 0.0);
  out.std_error.assign(steps + 1, 0.0);
  for (int i = 0; i <= steps; ++i) {
    double s1 = 0.0, s2 = 0.0;
    for (int c = 0; c < chunks; ++c) {  // fixed merge order
      s1 += sums[c][i];
      s2 += sqsums[c][i];
    }
    const double mean = s1 / static_cast<double>(trials);
    out.mean[i] = mean;
    if (trials > 1) {
      const double var =
          std::max(0.0, (s2 - trials * mean * mean) / (trials - 1));
      out.std_error[i] = std::sqrt(var / static_cast<double>(trials));
    }
  }
  return out;
}

namespace {

// Translation normal form: shift the minimum coordinates to zero, sort.
std::vector<SiteKey> canonical_animal(std::vector<Site> sites) {
  int32_t mx = sites[0].x, my = sites[0].y;
  for (const Site& s : sites) {
    mx = std::min(mx, s.x);
    my = std::min(my, s.y);
  }
  std::vector<SiteKey> key;
  key.reserve(sites.size());
  for (const Site& s : sites)
    key.push_back(site_key({s.x - mx, s.y - my, 0}));
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

std::vector<BigRat> perimeter_expectation_exact(int n, int d) {
  if (d != 2)
    throw std::invalid_argument("perimeter_expectation_exact: d must be 2");
  if (n < 0) throw std::invalid_argument("perimeter_expectation_exact: n < 0");
  if (n > 8)
    throw budget_error("perimeter_expectation_exact: capped at n = 8", n);

  std::map<std::vector<SiteKey>, BigRat> dist;
  dist[canonical_animal({kOrigin})] = 1;

  std::vector<BigRat> expectation;
  for (int step = 0; step <= n; ++step) {
    BigRat ep = 0;
    std::map<std::vector<SiteKey>, BigRat> next;
    for (const auto& [key, prob] : dist) {
      std::vector<Site> sites;
      std::unordered_set<SiteKey> inside;
      for (SiteKey k : key) {
        sites.push_back(site_from_key(k));
        inside.insert(k);
      }
      // Outside sites with the number of perimeter edges touching each.
      std::map<Site, int> outside;
      long long total = 0;
      for (const Site& s : sites)
        for (const Site& z : neighbors(s, 2))
          if (!inside.count(site_key(z))) {
            ++outside[z];
            ++total;
          }
      ep += prob * total;
      if (step == n) continue;
      for (const auto& [y, m] : outside) {
        std::vector<Site> grown = sites;
        grown.push_back(y);
        next[canonical_animal(std::move(grown))] += prob * BigRat(m, total);
      }
    }
    expectation.push_back(ep);
    dist = std::move(next);
  }
  return expectation;
}

ExponentFit exponent_fit(const std::vector<double>& series) {
  if (series.size() < 10)
    throw std::invalid_argument("exponent_fit: need at least 10 points");
  const int last = static_cast<int>(series.size()) - 1;
  const int first = std::max(1, last / 10);

  double sx = 0, sy = 0;
  int m = 0;
  for (int i = first; i <= last; ++i) {
    if (!(series[i] > 0))
      throw std::invalid_argument("exponent_fit: nonpositive value in window");
    sx += std::log(i);
    sy += std::log(series[i]);
    ++m;
  }
  const double xbar = sx / m, ybar = sy / m;
  double sxx = 0, sxy = 0;
  for (int i = first; i <= last; ++i) {
    const double dx = std::log(i) - xbar;
    sxx += dx * dx;
    sxy += dx * (std::log(series[i]) - ybar);
  }
  if (sxx == 0) throw std::invalid_argument("exponent_fit: degenerate window");

  ExponentFit fit;
  fit.points = m;
  fit.alpha = sxy / sxx;
  fit.k = std::exp(ybar - fit.alpha * xbar);
  double rss = 0;
  for (int i = first; i <= last; ++i) {
    const double r =
        std::log(series[i]) - (ybar + fit.alpha * (std::log(i) - xbar));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / m);
  fit.alpha_se = m > 2 ? std::sqrt(rss / (m - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace latcomm
