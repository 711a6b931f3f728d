/*
 * Copyright 2026 The Trellis Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef TRELLIS_LRU_HPP
#define TRELLIS_LRU_HPP

#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>

namespace trellis {

/// Least-recently-used cache. Capacity 0 means unbounded.
template <typename K, typename V>
class LruCache {
 public:
  explicit LruCache(std::size_t capacity = 0) : capacity_(capacity) {}

  std::optional<V> get(const K& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    order_.splice(order_.begin(), order_, it->second.second);
    return it->second.first;
  }

  void put(const K& key, V value) {
    auto it = map_.find(key);
    if (it != map_.end()) {
      it->second.first = std::move(value);
      order_.splice(order_.begin(), order_, it->second.second);
      return;
    }
    order_.push_front(key);
    map_.emplace(key, std::make_pair(std::move(value), order_.begin()));
    if (capacity_ != 0 && map_.size() > capacity_) {
      map_.erase(order_.back());
      order_.pop_back();
    }
  }

  std::size_t size() const { return map_.size(); }
  std::size_t capacity() const { return capacity_; }
  void clear() {
    map_.clear();
    order_.clear();
  }

 private:
  std::size_t capacity_;
  std::list<K> order_;
  std::unordered_map<K, std::pair<V, typename std::list<K>::iterator>> map_;
};

}  // namespace trellis

#endif  // TRELLIS_LRU_HPP
