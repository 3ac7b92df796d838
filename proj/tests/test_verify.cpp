#include <gtest/gtest.h>

#include "genram/verify.hpp"
#include "support/fixtures.hpp"

namespace genram {
namespace {

using testing::D;
using testing::U;

VerifyOptions up_to(std::uint64_t max) {
  VerifyOptions o;
  o.max = max;
  return o;
}

TEST(Verify, EveryIdentityPassesForUnitaryUnderComplete) {
  for (auto id : all_identities()) {
    const auto r = verify_identity(id, D(), U(), up_to(40));
    EXPECT_TRUE(r.pass) << to_string(id) << ": " << r.counterexample.value_or("");
    EXPECT_GT(r.checked, 0U);
  }
}

TEST(Verify, MixedPairInOrder) {
  const auto a1 = testing::mixed_spec(41);
  const auto a2 = lattice_meet(a1, testing::mixed_spec(42));
  for (auto id : all_identities()) {
    if (id == Identity::Trig) continue;
    const auto r = verify_identity(id, a1, a2, up_to(40));
    EXPECT_TRUE(r.pass) << to_string(id) << ": " << r.counterexample.value_or("");
  }
}

TEST(Verify, HolderFailsWithWitness) {
  const auto r = verify_identity(Identity::Holder, U(), D(), up_to(20));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.order.has_value());
  EXPECT_EQ(r.order->order, Order::NotLe);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_NE(r.counterexample->find("witness"), std::string::npos);
}

TEST(Verify, OrthogonalityCounterexample) {
  const auto r = verify_identity(Identity::Orthogonality, testing::ortho_a1(), testing::ortho_a2(), up_to(64));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_NE(r.counterexample->find("entry=-72"), std::string::npos) << *r.counterexample;
}

TEST(Verify, MobiusLemmaCounterexample) {
  const auto r = verify_identity(Identity::MobiusLemma, U(), D(), up_to(10));
  EXPECT_FALSE(r.pass);
}

TEST(Verify, TrigNeedsComplete) {
  const auto r = verify_identity(Identity::Trig, testing::mixed_2u_3d(), U(), up_to(18));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.notes.front(), "A1 = D: no");
}

TEST(Verify, SamplingIsReproducible) {
  VerifyOptions o = up_to(5000);
  o.samples = 300;
  const auto a = verify_identity(Identity::Holder, D(), testing::mixed_spec(3), o);
  const auto b = verify_identity(Identity::Holder, D(), testing::mixed_spec(3), o);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.checked, 300U);
  EXPECT_EQ(format_report(a), format_report(b));
}

TEST(Verify, Names) {
  for (auto id : all_identities()) EXPECT_EQ(parse_identity(to_string(id)), id);
  EXPECT_FALSE(parse_identity("nope").has_value());
  EXPECT_THROW(verify_identity(Identity::Mult, D(), D(), up_to(0)), std::invalid_argument);
}

}  // namespace
}  // namespace genram
