#include <gtest/gtest.h>

#include <dblcat/sweeps.hpp>

using namespace dblcat;

namespace {

void expect_clean(const Sweep& s) {
  EXPECT_TRUE(s.report.ok()) << s.report.name << ": " << s.report.failures.front();
  EXPECT_GT(s.report.checked, 0) << s.report.name;
}

constexpr unsigned kSeed = 7;

}  // namespace

TEST(Laws, Pos) { expect_clean(law_sweep<PosD>(2, 50, 3, kSeed)); }
TEST(Laws, Top) { expect_clean(law_sweep<TopD>(1, 20, 2, kSeed)); }
TEST(Laws, Loc) { expect_clean(law_sweep<LocD>(2, 20, 3, kSeed)); }
TEST(Laws, Cat) { expect_clean(law_sweep<CatD>(1, 10, 2, kSeed)); }

TEST(Mutations, EveryMutationIsRejectedWithAWitness) { expect_clean(mutation_sweep(20, kSeed)); }

TEST(Mutations, SeedsAreReproducible) {
  auto a = mutation_sweep(5, 11);
  auto b = mutation_sweep(5, 11);
  EXPECT_EQ(a.report.checked, b.report.checked);
  EXPECT_EQ(a.report.failures, b.report.failures);
}

TEST(Collages, TerminalFunctors) {
  expect_clean(collage_identity_sweep(3));
  expect_clean(loc_terminal_sweep(2));
}

TEST(Collages, CatGlueing) { expect_clean(cat_glue2_sweep(2, 3)); }

TEST(Collages, LaxityAlwaysValidatesForTerminal) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& b : poset_classes(n)) {
      EXPECT_TRUE(validate_lax_functor(terminal_lax<PosD>(poset_cat(b))).ok());
      EXPECT_TRUE(validate_lax_functor(terminal_lax<TopD>(poset_cat(b))).ok());
    }
  }
}
