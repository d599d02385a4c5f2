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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rankvar/error.hpp"

namespace rankvar {

// Identifiers are opaque tokens preserved verbatim from the input; equality
// is exact token equality.
using UserId = std::string;
using ItemId = std::string;

/// One (user, item, rating, timestamp) event. Ratings keep the scale of the
/// source data; timestamps are epoch units from the source.
struct Interaction {
  UserId user;
  ItemId item;
  double rating = 0.0;
  std::int64_t timestamp = 0;
};

/// Raw event log, in input row order until explicitly sorted by a splitter.
struct InteractionLog {
  std::vector<Interaction> rows;

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
};

/// Recommendation-list depth k; always >= 1.
class CutOff {
 public:
  explicit CutOff(std::size_t k) : k_(k) {
    if (k == 0) throw Error(ErrorKind::Config, "cutoff k must be >= 1");
  }
  std::size_t value() const { return k_; }

 private:
  std::size_t k_;
};

struct ScoredItem {
  ItemId item;
  double score = 0.0;
};

/// Per-user ordered recommendation lists. The rank of a list element is its
/// 1-based position. Items within one user's list are distinct and scores
/// are non-increasing; violations are rejected on insertion because they
/// change every downstream metric. Ties in score are accepted and the input
/// order is kept: the engine evaluates rankings, it does not re-rank.
class RankedPredictions {
 public:
  /// Throws ErrorKind::Data on duplicate items or increasing scores.
  void add_user(UserId user, std::vector<ScoredItem> list);

  bool has_user(const UserId& user) const { return lists_.count(user) != 0; }

  /// nullptr when the user is absent.
  const std::vector<ScoredItem>* find(const UserId& user) const;

  std::vector<UserId> users_sorted() const;
  std::size_t user_count() const { return lists_.size(); }

 private:
  std::unordered_map<UserId, std::vector<ScoredItem>> lists_;
};

/// Relevant items of one user with optional ratings.
struct RelevanceSet {
  std::unordered_map<ItemId, std::optional<double>> items;

  std::size_t size() const { return items.size(); }
  bool contains(const ItemId& item) const { return items.count(item) != 0; }

  /// nullopt when the item is absent or carries no rating.
  std::optional<double> rating(const ItemId& item) const {
    auto it = items.find(item);
    return it == items.end() ? std::nullopt : it->second;
  }
};

/// Test-side relevance: per user, a non-empty set of relevant items.
class GroundTruth {
 public:
  /// Throws ErrorKind::Data when rel is empty.
  void add_user(UserId user, RelevanceSet rel);

  bool has_user(const UserId& user) const { return sets_.count(user) != 0; }

  /// nullptr when the user is absent.
  const RelevanceSet* find(const UserId& user) const;

  std::vector<UserId> users_sorted() const;
  std::size_t user_count() const { return sets_.size(); }

  /// True when every relevant item of every user carries a rating.
  bool all_rated() const;

 private:
  std::unordered_map<UserId, RelevanceSet> sets_;
};

/// Prefix view of a single user's ranked list: the first min(size, k) items.
std::span<const ScoredItem> topk_view(std::span<const ScoredItem> list, CutOff k);

/// Every user's list shortened to at most k items; order and scores kept.
RankedPredictions truncate(const RankedPredictions& preds, CutOff k);

/// 1-based rank of `item` in `user`'s list, or nullopt when the item is not
/// ranked. Throws ErrorKind::Data when the user has no list at all.
std::optional<std::size_t> rank_of(const RankedPredictions& preds, const UserId& user,
                                   const ItemId& item);

}  // namespace rankvar
