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

#include <string>

#include "rankvar/io.hpp"
#include "rankvar/split.hpp"

using namespace rankvar;

namespace {

InteractionLog log_from(std::initializer_list<Interaction> rows) {
  InteractionLog log;
  log.rows = rows;
  return log;
}

}  // namespace

TEST_CASE("parse_interactions reads well-formed delimited text") {
  const auto parsed = parse_interactions(
      "user_id,item_id,rating,timestamp\n"
      "u1,i1,5.0,100\n"
      "u1,i2,4.5,101\n"
      "u2,i1,3.0,102\n");
  REQUIRE(parsed.log.size() == 3);
  CHECK(parsed.log.rows[0].user == "u1");
  CHECK(parsed.log.rows[0].item == "i1");
  CHECK(parsed.log.rows[0].rating == 5.0);
  CHECK(parsed.log.rows[0].timestamp == 100);
  CHECK(parsed.log.rows[2].user == "u2");
  CHECK(parsed.format.delimiter == ',');
}

TEST_CASE("parse_interactions accepts any column order and case") {
  const auto parsed = parse_interactions(
      "TIMESTAMP,Rating,item_id,USER_ID\n"
      "7,4.5,i9,u3\n");
  REQUIRE(parsed.log.size() == 1);
  CHECK(parsed.log.rows[0].user == "u3");
  CHECK(parsed.log.rows[0].item == "i9");
  CHECK(parsed.log.rows[0].rating == 4.5);
  CHECK(parsed.log.rows[0].timestamp == 7);
}

TEST_CASE("parse_interactions auto-detects tab delimiters") {
  const auto parsed = parse_interactions(
      "user_id\titem_id\trating\ttimestamp\n"
      "u1\ti1\t5\t1\n");
  REQUIRE(parsed.log.size() == 1);
  CHECK(parsed.format.delimiter == '\t');
}

TEST_CASE("parse_interactions handles a header-only file") {
  const auto parsed = parse_interactions("user_id,item_id,rating,timestamp\n");
  CHECK(parsed.log.empty());
}

TEST_CASE("parse_interactions rejects schema and row problems") {
  SUBCASE("missing column is a schema error") {
    try {
      parse_interactions("user_id,item_id,rating\nu1,i1,5\n");
      FAIL("expected a schema error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Schema);
      CHECK(std::string(e.what()).find("timestamp") != std::string::npos);
    }
  }
  SUBCASE("duplicate column is a schema error") {
    CHECK_THROWS_AS(
        parse_interactions("user_id,user_id,item_id,rating,timestamp\nu,u,i,5,1\n"), Error);
  }
  SUBCASE("unparseable rating carries the line number") {
    try {
      parse_interactions(
          "user_id,item_id,rating,timestamp\n"
          "u1,i1,5.0,100\n"
          "u1,i2,abc,101\n");
      FAIL("expected a row error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Row);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
      CHECK(std::string(e.what()).find("abc") != std::string::npos);
    }
  }
  SUBCASE("negative timestamp is a row error") {
    CHECK_THROWS_AS(parse_interactions("user_id,item_id,rating,timestamp\nu1,i1,5,-3\n"),
                    Error);
  }
  SUBCASE("wrong field count is a row error") {
    CHECK_THROWS_AS(parse_interactions("user_id,item_id,rating,timestamp\nu1,i1,5\n"), Error);
  }
  SUBCASE("empty input has no header") {
    CHECK_THROWS_AS(parse_interactions(""), Error);
  }
}

TEST_CASE("write_interactions mirrors the input layout byte-stably") {
  const std::string text =
      "timestamp,user_id,item_id,rating\n"
      "100,u1,i1,5\n"
      "101,u1,i2,4.5\n";
  const auto parsed = parse_interactions(text);
  CHECK(write_interactions(parsed.log, parsed.format) == text);
  CHECK(write_interactions(parsed.log, parsed.format) ==
        write_interactions(parsed.log, parsed.format));
}

TEST_CASE("filter_positive keeps ratings at or above the threshold") {
  const auto log = log_from({{"u", "a", 5.0, 1}, {"u", "b", 4.5, 2}, {"u", "c", 4.0, 3}});
  const auto kept = filter_positive(log, 4.5);
  REQUIRE(kept.size() == 2);
  CHECK(kept.rows[0].item == "a");
  CHECK(kept.rows[1].item == "b");  // 4.5 itself stays positive

  SUBCASE("very low threshold is a no-op") {
    CHECK(filter_positive(log, -1e300).size() == 3);
  }
  SUBCASE("threshold above every rating empties the log") {
    CHECK(filter_positive(log, 5.5).empty());
  }
  SUBCASE("input order is preserved") {
    const auto shuffled =
        log_from({{"u", "c", 4.6, 9}, {"u", "a", 5.0, 1}, {"u", "b", 4.7, 5}});
    const auto out = filter_positive(shuffled, 4.5);
    CHECK(out.rows[0].item == "c");
    CHECK(out.rows[1].item == "a");
    CHECK(out.rows[2].item == "b");
  }
}

TEST_CASE("temporal_split puts the latest ceil(fraction*n) rows into test") {
  InteractionLog log;
  for (int t = 10; t >= 1; --t) {
    log.rows.push_back({"u" + std::to_string(t), "i", 5.0, t});
  }
  const auto split = temporal_split(log, 0.2);
  REQUIRE(split.test.size() == 2);
  REQUIRE(split.train.size() == 8);
  CHECK(split.test.rows[0].timestamp == 9);
  CHECK(split.test.rows[1].timestamp == 10);
  CHECK(split.train.rows.back().timestamp == 8);

  SUBCASE("ceiling arithmetic: 3 rows at fraction 0.5 give 2 test rows") {
    InteractionLog three;
    three.rows = {{"a", "i", 5, 1}, {"b", "i", 5, 2}, {"c", "i", 5, 3}};
    const auto s = temporal_split(three, 0.5);
    CHECK(s.test.size() == 2);
    CHECK(s.train.size() == 1);
  }
  SUBCASE("equal timestamps break ties by original row order") {
    InteractionLog flat;
    flat.rows = {{"first", "i", 5, 7}, {"second", "i", 5, 7}, {"third", "i", 5, 7},
                 {"fourth", "i", 5, 7}};
    const auto s = temporal_split(flat, 0.5);
    REQUIRE(s.test.size() == 2);
    CHECK(s.train.rows[0].user == "first");
    CHECK(s.train.rows[1].user == "second");
    CHECK(s.test.rows[0].user == "third");
    CHECK(s.test.rows[1].user == "fourth");
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS_AS(temporal_split(InteractionLog{}, 0.2), Error);
  }
  SUBCASE("train max timestamp never exceeds test min timestamp") {
    CHECK(split.train.rows.back().timestamp <= split.test.rows.front().timestamp);
  }
}

TEST_CASE("drop_cold removes test rows with unseen users or items") {
  const auto train = log_from({{"u1", "a", 5, 1}, {"u2", "b", 5, 2}});
  SUBCASE("cold user rows vanish") {
    const auto test = log_from({{"u3", "a", 5, 9}, {"u1", "b", 5, 9}});
    const auto warm = drop_cold(train, test);
    REQUIRE(warm.size() == 1);
    CHECK(warm.rows[0].user == "u1");
  }
  SUBCASE("cold item rows vanish") {
    const auto test = log_from({{"u1", "zz", 5, 9}});
    CHECK(drop_cold(train, test).empty());
  }
  SUBCASE("warm test set passes through unchanged") {
    const auto test = log_from({{"u1", "b", 5, 9}, {"u2", "a", 5, 9}});
    CHECK(drop_cold(train, test).size() == 2);
  }
  SUBCASE("empty train drops everything") {
    const auto test = log_from({{"u1", "a", 5, 9}});
    CHECK(drop_cold(InteractionLog{}, test).empty());
  }
  SUBCASE("drop_cold is idempotent") {
    const auto test = log_from({{"u3", "a", 5, 9}, {"u1", "b", 5, 9}});
    const auto once = drop_cold(train, test);
    const auto twice = drop_cold(train, once);
    REQUIRE(twice.size() == once.size());
    CHECK(twice.rows[0].user == once.rows[0].user);
  }
}

TEST_CASE("extract_ground_truth groups test rows per user with ratings") {
  const auto test = log_from({{"u1", "a", 5.0, 1}, {"u1", "b", 4.5, 2}, {"u2", "c", 4.8, 3}});
  const auto truth = extract_ground_truth(test);
  REQUIRE(truth.user_count() == 2);
  CHECK(truth.find("u1")->size() == 2);
  CHECK(truth.find("u1")->rating("a") == 5.0);
  CHECK(truth.find("u1")->rating("b") == 4.5);
  CHECK(truth.find("u2")->size() == 1);

  SUBCASE("empty test yields empty ground truth") {
    CHECK(extract_ground_truth(InteractionLog{}).user_count() == 0);
  }
  SUBCASE("duplicate (user, item) is an error") {
    const auto dup = log_from({{"u1", "a", 5.0, 1}, {"u1", "a", 4.5, 2}});
    CHECK_THROWS_AS(extract_ground_truth(dup), Error);
  }
}

TEST_CASE("split config validates its ranges") {
  SplitConfig config;
  CHECK_NOTHROW(config.validate());
  config.test_fraction = 0.0;
  CHECK_THROWS_AS(config.validate(), Error);
  config.test_fraction = 1.0;
  CHECK_THROWS_AS(config.validate(), Error);
  config.test_fraction = 0.2;
  config.positive_threshold = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("parse_predictions derives ranks from row order") {
  const auto preds = parse_predictions(
      "user_id,item_id,score\n"
      "u1,a,0.9\n"
      "u1,b,0.8\n"
      "u2,c,0.7\n");
  CHECK(preds.user_count() == 2);
  CHECK(rank_of(preds, "u1", "b") == 2);
  CHECK(rank_of(preds, "u2", "c") == 1);

  SUBCASE("non-contiguous user rows are rejected with the line number") {
    try {
      parse_predictions(
          "user_id,item_id,score\n"
          "u1,a,0.9\n"
          "u2,c,0.7\n"
          "u1,b,0.8\n");
      FAIL("expected a row error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Row);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
  }
  SUBCASE("increasing scores within a user are rejected with the line number") {
    try {
      parse_predictions(
          "user_id,item_id,score\n"
          "u1,a,0.5\n"
          "u1,b,0.9\n");
      FAIL("expected a row error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Row);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("duplicate items within a user are rejected") {
    CHECK_THROWS_AS(parse_predictions("user_id,item_id,score\nu1,a,0.9\nu1,a,0.8\n"), Error);
  }
}

TEST_CASE("the full preprocessing pipeline composes") {
  // filter -> split -> drop_cold -> extract, end to end on a small log.
  InteractionLog log;
  for (int t = 1; t <= 20; ++t) {
    const std::string user = "u" + std::to_string(t % 4);
    const std::string item = "i" + std::to_string(t % 5);
    log.rows.push_back({user, item, t % 2 == 0 ? 5.0 : 3.0, t});
  }
  const auto positive = filter_positive(log, 4.5);
  CHECK(positive.size() == 10);
  const auto split = temporal_split(positive, 0.2);
  CHECK(split.test.size() == 2);
  const auto warm = drop_cold(split.train, split.test);
  const auto truth = extract_ground_truth(warm);
  for (const auto& user : truth.users_sorted()) {
    CHECK(truth.find(user)->size() >= 1);
  }
}
