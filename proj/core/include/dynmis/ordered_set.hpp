#pragma once

#include <list>
#include <unordered_map>

#include "dynmis/types.hpp"

namespace dynmis {

/// Set of vertex ids with O(1) membership/erase and insertion-order iteration.
class OrderedVertexSet {
 public:
  bool contains(VertexId v) const { return loc_.count(v) != 0; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  bool insert(VertexId v) {
    if (contains(v)) return false;
    order_.push_back(v);
    loc_.emplace(v, std::prev(order_.end()));
    return true;
  }

  bool erase(VertexId v) {
    auto it = loc_.find(v);
    if (it == loc_.end()) return false;
    order_.erase(it->second);
    loc_.erase(it);
    return true;
  }

  void clear() {
    order_.clear();
    loc_.clear();
  }

  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

 private:
  std::list<VertexId> order_;
  std::unordered_map<VertexId, std::list<VertexId>::iterator> loc_;
};

}  // namespace dynmis
