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

#include "rankvar/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rankvar {

void RankedPredictions::add_user(UserId user, std::vector<ScoredItem> list) {
  if (user.empty()) throw Error(ErrorKind::Data, "empty user id in predictions");
  if (lists_.count(user) != 0) {
    throw Error(ErrorKind::Data, "user '" + user + "' listed twice in predictions");
  }
  std::unordered_set<ItemId> seen;
  seen.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const ScoredItem& entry = list[i];
    if (entry.item.empty()) {
      throw Error(ErrorKind::Data, "empty item id in predictions for user '" + user + "'");
    }
    if (!std::isfinite(entry.score)) {
      throw Error(ErrorKind::Data, "non-finite score for user '" + user + "'");
    }
    if (!seen.insert(entry.item).second) {
      throw Error(ErrorKind::Data, "duplicate item '" + entry.item + "' for user '" + user +
                                       "' in predictions");
    }
    if (i > 0 && list[i - 1].score < entry.score) {
      throw Error(ErrorKind::Data,
                  "scores not non-increasing for user '" + user + "' (rank is derived from order)");
    }
  }
  lists_.emplace(std::move(user), std::move(list));
}

const std::vector<ScoredItem>* RankedPredictions::find(const UserId& user) const {
  auto it = lists_.find(user);
  return it == lists_.end() ? nullptr : &it->second;
}

std::vector<UserId> RankedPredictions::users_sorted() const {
  std::vector<UserId> users;
  users.reserve(lists_.size());
  for (const auto& [user, _] : lists_) users.push_back(user);
  std::sort(users.begin(), users.end());
  return users;
}

void GroundTruth::add_user(UserId user, RelevanceSet rel) {
  if (user.empty()) throw Error(ErrorKind::Data, "empty user id in ground truth");
  if (rel.items.empty()) {
    throw Error(ErrorKind::Data, "user '" + user + "' has no relevant items");
  }
  if (sets_.count(user) != 0) {
    throw Error(ErrorKind::Data, "user '" + user + "' listed twice in ground truth");
  }
  for (const auto& [item, rating] : rel.items) {
    if (item.empty()) throw Error(ErrorKind::Data, "empty item id in ground truth");
    if (rating && !std::isfinite(*rating)) {
      throw Error(ErrorKind::Data, "non-finite rating for item '" + item + "'");
    }
  }
  sets_.emplace(std::move(user), std::move(rel));
}

const RelevanceSet* GroundTruth::find(const UserId& user) const {
  auto it = sets_.find(user);
  return it == sets_.end() ? nullptr : &it->second;
}

std::vector<UserId> GroundTruth::users_sorted() const {
  std::vector<UserId> users;
  users.reserve(sets_.size());
  for (const auto& [user, _] : sets_) users.push_back(user);
  std::sort(users.begin(), users.end());
  return users;
}

bool GroundTruth::all_rated() const {
  for (const auto& [_, rel] : sets_) {
    for (const auto& [item, rating] : rel.items) {
      (void)item;
      if (!rating) return false;
    }
  }
  return true;
}

std::span<const ScoredItem> topk_view(std::span<const ScoredItem> list, CutOff k) {
  return list.subspan(0, std::min(list.size(), k.value()));
}

RankedPredictions truncate(const RankedPredictions& preds, CutOff k) {
  RankedPredictions out;
  for (const UserId& user : preds.users_sorted()) {
    const auto& list = *preds.find(user);
    auto view = topk_view(list, k);
    out.add_user(user, std::vector<ScoredItem>(view.begin(), view.end()));
  }
  return out;
}

std::optional<std::size_t> rank_of(const RankedPredictions& preds, const UserId& user,
                                   const ItemId& item) {
  const auto* list = preds.find(user);
  if (list == nullptr) {
    throw Error(ErrorKind::Data, "user '" + user + "' not in predictions");
  }
  for (std::size_t i = 0; i < list->size(); ++i) {
    if ((*list)[i].item == item) return i + 1;
  }
  return std::nullopt;
}

}  // namespace rankvar
