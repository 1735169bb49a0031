// Acceptance runner: one line per criterion, each with a pinned time limit.

#include <dblcat/sweeps.hpp>

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace dblcat;

namespace {

struct Criterion {
  int number;
  std::string title;
  double limit;  // seconds
  std::function<std::vector<Sweep>()> run;
};

std::vector<PosD::HMor> pos_found;
std::vector<TopD::HMor> top_found;

}  // namespace

int main() {
  const unsigned seed = 20240601;
  const std::vector<Criterion> criteria{
      {1, "collage of the terminal functor is B, posets <= 4", 5, [] { return std::vector{collage_identity_sweep(4)}; }},
      {2, "Loc collage of the terminal functor is the downset frame, B <= 3", 5,
       [] { return std::vector{loc_terminal_sweep(3)}; }},
      {3, "Top 2-glueing over Sierpinski with the interior formula, X <= 3", 10,
       [] { return std::vector{top_glue2_sweep(3)}; }},
      {4, "2-glueing in Pos (X <= 3) and Cat (<= 2 objects, <= 4 morphisms)", 60,
       [] { return std::vector{pos_glue2_sweep(3), cat_glue2_sweep(2, 4)}; }},
      {5, "B-glueing over 3-chain, V, Lambda in Pos and Top, all peel orders", 60,
       [] { return std::vector{bglue_sweep<PosD>(3), bglue_sweep<TopD>(3)}; }},
      {6, "exponentials of locally closed inclusions in Pos and Top, D, Z, X <= 3", 600,
       [] {
         return std::vector{exponential_sweep<PosD>(ExponentialSweepOptions{}, &pos_found),
                            exponential_sweep<TopD>(ExponentialSweepOptions{}, &top_found)};
       }},
      {7, "open and closed inclusions are monomorphisms", 10,
       [] { return std::vector{mono_sweep<PosD>(pos_found, 3), mono_sweep<TopD>(top_found, 3)}; }},
      {8, "interchange, companion/conjoint and triangle laws, exhaustive <= 2 and 1000 samples at 3", 60,
       [seed] {
         return std::vector{law_sweep<PosD>(2, 1000, 3, seed), law_sweep<TopD>(2, 1000, 3, seed),
                            law_sweep<LocD>(2, 1000, 3, seed), law_sweep<CatD>(2, 1000, 3, seed)};
       }},
      {9, "50 seeded mutations per validator rejected with a located witness", 30,
       [seed] { return std::vector{mutation_sweep(50, seed)}; }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Stopwatch sw;
    auto sweeps = c.run();
    const double secs = sw.seconds();
    long checked = 0;
    std::string first;
    for (const auto& s : sweeps) {
      checked += s.report.checked;
      if (first.empty() && !s.report.ok()) first = s.report.name + ": " + s.report.failures.front();
    }
    const bool in_time = secs < c.limit;
    const bool pass = first.empty() && in_time && checked > 0;
    if (!pass) ++failed;
    std::printf("criterion %d: %s  %.2f s (limit %.0f s)  checked=%ld  %s\n", c.number, pass ? "PASS" : "FAIL", secs,
                c.limit, checked, c.title.c_str());
    if (!first.empty()) std::printf("  counterexample: %s\n", first.c_str());
    if (!in_time) std::printf("  over the time limit\n");
    if (checked == 0) std::printf("  nothing was checked\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
