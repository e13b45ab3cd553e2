// Serial reference vs OpenMP timings for the parallel kernels.
//
//   galois_bench [--teams N] [--seasons N] [--reps N]

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "galois/attributes.hpp"
#include "galois/forecast.hpp"
#include "galois/lattice.hpp"

using namespace galois;

namespace {

double best_ms(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

void row(const char* kernel, const char* size, double serial, double parallel) {
  std::printf("%-16s %-22s %12.2f %12.2f %8.2fx\n", kernel, size, serial, parallel, serial / parallel);
}

FormalContext random_context(std::size_t objects, std::size_t attributes, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution cell(density);
  std::vector<std::string> objs, attrs;
  for (std::size_t o = 0; o < objects; ++o) objs.push_back("o" + std::to_string(o));
  for (std::size_t a = 0; a < attributes; ++a) attrs.push_back("a" + std::to_string(a));
  std::vector<std::vector<bool>> inc(objects, std::vector<bool>(attributes));
  for (auto& r : inc)
    for (std::size_t a = 0; a < attributes; ++a) r[a] = cell(rng);
  return FormalContext(objs, attrs, inc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Benchmark serial references against the OpenMP kernels"};
  int teams = 20, seasons = 3, reps = 3;
  cli.add_option("--teams", teams)->capture_default_str();
  cli.add_option("--seasons", seasons)->capture_default_str();
  cli.add_option("--reps", reps, "Repetitions; the best time is reported")->capture_default_str();
  CLI11_PARSE(cli, argc, argv);

  SyntheticLeagueOptions s;
  s.teams = teams;
  s.seasons = seasons;
  const auto league = synthesize_league(s);
  const auto specs = baseline_attributes();

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-16s %-22s %12s %12s %9s\n", "kernel", "size", "serial ms", "openmp ms", "speedup");

  char size[64];
  std::snprintf(size, sizeof size, "%zu rows x %zu specs", league.data.matches().size(), specs.size());
  row("build_monster", size, best_ms(reps, [&] { reference::build_monster(league.data, specs); }),
      best_ms(reps, [&] { build_monster(league.data, specs); }));

  const auto ctx = random_context(80, 16, 0.5, 7);
  const auto concepts = enumerate_concepts(ctx).concepts;
  std::snprintf(size, sizeof size, "%zu concepts", concepts.size());
  row("covering", size, best_ms(reps, [&] { reference::covering_relation(concepts); }),
      best_ms(reps, [&] { covering_relation(ctx, concepts); }));

  const auto monster = build_monster(league.data, specs);
  const auto weeks = weeks_from(league.data, league.data.seasons().back());
  SelectionPolicy policy;
  std::snprintf(size, sizeof size, "%zu weeks", weeks.size());
  const int fr = std::max(1, reps / 3);
  row("forecast_weeks", size, best_ms(fr, [&] { reference::forecast_weeks(league.data, monster, weeks, policy); }),
      best_ms(fr, [&] { forecast_weeks(league.data, monster, weeks, policy); }));
  return 0;
}
